"""Finite quadratic forms, p-adic Jordan constituents and genus symbols.

The 2-adic symbol of a quadratic form is not unique; symbols are compared
through a canonical form obtained by closing the symbol under the standard
block relations (same-scale unit twists, U/V exchanges, sign walking between
adjacent and next-adjacent scales) and taking the least representative.
"""

from fractions import Fraction
from functools import lru_cache
import itertools
import re

from .lattice import (Lattice, FiniteQuadraticForm, TRIVIAL_FQF,
                      discriminant_form)


def kronecker(a, p):
    """Kronecker symbol (a/p) for odd prime p and integer a coprime to p."""
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def _val(x, p):
    """p-adic valuation of a nonzero Fraction or int."""
    x = Fraction(x)
    v = 0
    n = x.numerator
    while n % p == 0:
        n //= p
        v += 1
    d = x.denominator
    while d % p == 0:
        d //= p
        v -= 1
    return v


def _unit(x, p, v):
    """x / p^v as a Fraction with zero p-valuation."""
    return Fraction(x) / Fraction(p) ** v


def _unit_mod(x, p, modulus):
    """Residue of a p-free rational mod modulus (p | modulus allowed)."""
    x = Fraction(x)
    return (x.numerator * pow(x.denominator, -1, modulus)) % modulus


# ---------------------------------------------------------------------------
# atoms
#
# odd p rank-1 block:  ("p", p, k, eps)       eps = Kronecker of the unit
# 2-adic rank-1 block: ("t", 2, k, theta)     theta in {1,3,5,7}
# 2-adic U block:      ("u", 2, k, 0)
# 2-adic V block:      ("v", 2, k, 0)
# scale p^k with k >= 1 throughout; k = 0 parts carry no quadratic form.
# ---------------------------------------------------------------------------


def jordan_decompose(L, p):
    """Jordan constituents of L tensor Z_p, all scales k >= 0.

    Returns a list of dicts sorted by scale:
      odd p: {"scale": k, "rank": m, "eps": +-1}
      p = 2: {"scale": k, "rank": m, "type": "I"|"II", "det8": d,
              "oddity": o or None}
    """
    if not _is_prime(p):
        raise ValueError("p must be prime")
    if not L.is_even:
        pass  # Jordan data is defined for odd lattices too
    atoms = _jordan_atoms(L.gram.to_fractions(), p)
    return _aggregate(atoms, p)


def _is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def _jordan_atoms(M, p):
    """Split a nondegenerate symmetric rational matrix p-adically into
    rank-1 and (for p=2) rank-2 unimodular-times-p^k blocks."""
    M = [row[:] for row in M]
    idx = list(range(len(M)))
    atoms = []
    while idx:
        nu = min(_val(M[i][j], p) for i in idx for j in idx if M[i][j] != 0)
        diag = [i for i in idx if M[i][i] != 0 and _val(M[i][i], p) == nu]
        if p != 2:
            if not diag:
                # bring the minimal valuation onto the diagonal
                i, j = next((i, j) for i in idx for j in idx
                            if i != j and M[i][j] != 0
                            and _val(M[i][j], p) == nu)
                for k in range(len(M)):
                    M[i][k] = M[i][k] + M[j][k]
                for k in range(len(M)):
                    M[k][i] = M[k][i] + M[k][j]
                diag = [i]
            i = diag[0]
            unit = _unit(M[i][i], p, nu)
            atoms.append(("p", p, nu, kronecker(
                unit.numerator * unit.denominator, p)))
            _clear_rank1(M, idx, i)
            idx.remove(i)
        else:
            if diag:
                i = diag[0]
                theta = _unit_mod(_unit(M[i][i], 2, nu), 2, 8)
                atoms.append(("t", 2, nu, theta))
                _clear_rank1(M, idx, i)
                idx.remove(i)
            else:
                i, j = next((i, j) for i in idx for j in idx
                            if i < j and M[i][j] != 0
                            and _val(M[i][j], 2) == nu)
                det_unit = _unit(M[i][i] * M[j][j] - M[i][j] ** 2, 2, 2 * nu)
                d8 = _unit_mod(det_unit, 2, 8)
                if d8 == 7:
                    atoms.append(("u", 2, nu, 0))
                elif d8 == 3:
                    atoms.append(("v", 2, nu, 0))
                else:
                    raise AssertionError("2-adic rank-2 block determinant")
                _clear_rank2(M, idx, i, j)
                idx.remove(i)
                idx.remove(j)
    return atoms


def _clear_rank1(M, idx, i):
    d = M[i][i]
    others = [k for k in idx if k != i]
    for k in others:
        if M[k][i] != 0:
            c = M[k][i] / d
            for t in range(len(M)):
                M[k][t] = M[k][t] - c * M[i][t]
            for t in range(len(M)):
                M[t][k] = M[t][k] - c * M[t][i]


def _clear_rank2(M, idx, i, j):
    a, b, c = M[i][i], M[i][j], M[j][j]
    det = a * c - b * b
    others = [k for k in idx if k not in (i, j)]
    for k in others:
        x, y = M[i][k], M[j][k]
        if x == 0 and y == 0:
            continue
        alpha = (c * x - b * y) / det
        beta = (a * y - b * x) / det
        for t in range(len(M)):
            M[k][t] = M[k][t] - alpha * M[i][t] - beta * M[j][t]
        for t in range(len(M)):
            M[t][k] = M[t][k] - alpha * M[t][i] - beta * M[t][j]


def _aggregate(atoms, p):
    """Aggregate a list of atoms at one prime into per-scale constituents."""
    by_scale = {}
    for a in atoms:
        by_scale.setdefault(a[2], []).append(a)
    out = []
    for k in sorted(by_scale):
        batch = by_scale[k]
        if p != 2:
            m = len(batch)
            eps = 1
            for a in batch:
                eps *= a[3]
            out.append({"scale": k, "rank": m, "eps": eps})
        else:
            thetas = [a[3] for a in batch if a[0] == "t"]
            nu = sum(1 for a in batch if a[0] == "u")
            nv = sum(1 for a in batch if a[0] == "v")
            m = len(thetas) + 2 * (nu + nv)
            d8 = 1
            for t in thetas:
                d8 = (d8 * t) % 8
            d8 = (d8 * pow(7, nu, 8) * pow(3, nv, 8)) % 8
            if thetas:
                out.append({"scale": k, "rank": m, "type": "I", "det8": d8,
                            "oddity": sum(thetas) % 8})
            else:
                out.append({"scale": k, "rank": m, "type": "II", "det8": d8,
                            "oddity": None})
    return out


class FqfSymbol:
    """Formal orthogonal sum of standard finite-quadratic-form atoms."""

    __slots__ = ("atoms",)

    def __init__(self, atoms=()):
        atoms = tuple(sorted(tuple(a) for a in atoms))
        for a in atoms:
            kind, p, k, extra = a
            if k < 1:
                raise ValueError("atom scale exponent must be >= 1")
            if kind == "p":
                if p == 2 or not _is_prime(p) or extra not in (1, -1):
                    raise ValueError("bad odd-prime atom %r" % (a,))
            elif kind == "t":
                if p != 2 or extra not in (1, 3, 5, 7):
                    raise ValueError("bad 2-adic unit atom %r" % (a,))
            elif kind in ("u", "v"):
                if p != 2 or extra != 0:
                    raise ValueError("bad 2-adic block atom %r" % (a,))
            else:
                raise ValueError("unknown atom kind %r" % (a,))
        self.atoms = atoms

    def __eq__(self, other):
        return isinstance(other, FqfSymbol) and self.atoms == other.atoms

    def __hash__(self):
        return hash(self.atoms)

    def __repr__(self):
        return "FqfSymbol(%s)" % (render_symbol(self),)

    def primes(self):
        return sorted({a[1] for a in self.atoms})

    def group_orders(self):
        """Invariant factors of the underlying group, ascending."""
        parts = []
        for kind, p, k, extra in self.atoms:
            if kind in ("u", "v"):
                parts.append((p, k))
                parts.append((p, k))
            else:
                parts.append((p, k))
        by_p = {}
        for p, k in parts:
            by_p.setdefault(p, []).append(k)
        for p in by_p:
            by_p[p].sort(reverse=True)
        depth = max((len(v) for v in by_p.values()), default=0)
        factors = []
        for i in range(depth):
            d = 1
            for p, ks in by_p.items():
                if i < len(ks):
                    d *= p ** ks[i]
            factors.append(d)
        return tuple(reversed(factors))


def fqf_sum(a, b):
    """Orthogonal sum of two symbols or two explicit forms."""
    if isinstance(a, FqfSymbol) and isinstance(b, FqfSymbol):
        return FqfSymbol(a.atoms + b.atoms)
    if isinstance(a, FiniteQuadraticForm) and isinstance(b, FiniteQuadraticForm):
        gens = []
        for F, off in ((a, 0), (b, 1)):
            for i, d in enumerate(F.orders):
                gens.append((off, i, d))
        n = len(gens)

        def qv(t):
            off, i, _ = t
            return (a, b)[off].q_diag[i]

        def bv(s, t):
            if s[0] != t[0]:
                return Fraction(0)
            F = (a, b)[s[0]]
            if s[1] == t[1]:
                return F.q_diag[s[1]] % 1
            return F.b_mat[s[1]][t[1]]

        orders = [g[2] for g in gens]
        q = [qv(g) for g in gens]
        bm = [[bv(gens[i], gens[j]) for j in range(n)] for i in range(n)]
        return _to_chain_form(orders, q, bm)
    raise TypeError("fqf_sum needs two symbols or two explicit forms")


def fqf_negate(x):
    """Negate a symbol or an explicit form."""
    if isinstance(x, FqfSymbol):
        out = []
        for kind, p, k, extra in x.atoms:
            if kind == "p":
                out.append(("p", p, k, extra * kronecker(p - 1, p)))
            elif kind == "t":
                out.append(("t", 2, k, (-extra) % 8))
            else:
                out.append((kind, p, k, extra))
        return FqfSymbol(out)
    if isinstance(x, FiniteQuadraticForm):
        if x.ngens == 0:
            return x
        return FiniteQuadraticForm(
            x.orders,
            [(-q) % 2 for q in x.q_diag],
            [[(-v) % 1 for v in row] for row in x.b_mat])
    raise TypeError("fqf_negate needs a symbol or an explicit form")


def signature_mod8(x):
    """Signature invariant mod 8 of a symbol or explicit form."""
    if isinstance(x, FiniteQuadraticForm):
        x = fqf_to_symbol(x)
    total = 0
    for kind, p, k, extra in x.atoms:
        if kind == "p":
            eta = 0 if extra == 1 else 1
            total += k * k * (1 - p) + 4 * k * eta
        elif kind == "t":
            omega = ((extra * extra - 1) // 8) % 2
            total += extra + 4 * omega * k
        elif kind == "u":
            total += 0
        else:
            total += 4 * k
    return total % 8


# ---------------------------------------------------------------------------
# canonical form under the block relations
# ---------------------------------------------------------------------------


def _two_adic_neighbors(state):
    """All states reachable in one relation step from a 2-adic atom multiset.

    state: sorted tuple of atoms (tag, k, theta) with tag in "tuv".
    """
    atoms = list(state)
    seen = []

    def emit(removed, added):
        rest = atoms[:]
        for r in removed:
            rest.remove(r)
        rest.extend(added)
        seen.append(tuple(sorted(rest)))

    by_scale = {}
    for a in atoms:
        by_scale.setdefault(a[1], []).append(a)
    scales = sorted(by_scale)
    for k in scales:
        here = by_scale[k]
        ts = sorted({a[2] for a in here if a[0] == "t"})
        nu = sum(1 for a in here if a[0] == "u")
        nv = sum(1 for a in here if a[0] == "v")
        # (b)
        if nu >= 2:
            emit([("u", k, 0)] * 2, [("v", k, 0)] * 2)
        if nv >= 2:
            emit([("v", k, 0)] * 2, [("u", k, 0)] * 2)
        # (c)
        for t1 in ts:
            for t2 in ts:
                if t1 == t2 and here.count(("t", k, t1)) < 2:
                    continue
                if t1 <= t2:
                    emit([("t", k, t1), ("t", k, t2)],
                         [("t", k, (5 * t1) % 8), ("t", k, (5 * t2) % 8)])
        # (d) forward
        for t1 in ts:
            if here.count(("t", k, t1)) >= 2:
                for t2 in ts:
                    need = 3 if t2 == t1 else 1
                    if here.count(("t", k, t2)) < need and t2 == t1:
                        continue
                    if t2 % 4 == t1 % 4:
                        emit([("t", k, t1)] * 2 + [("t", k, t2)],
                             [("v", k, 0), ("t", k, (-5 * t2) % 8)])
                    if t2 % 4 == (-t1) % 4:
                        emit([("t", k, t1)] * 2 + [("t", k, t2)],
                             [("u", k, 0), ("t", k, (-t2) % 8)])
        # (d) backward
        for t2 in ts:
            if nv:
                tp = (-5 * t2) % 8  # theta' with -5*theta' = t2 twice applied
                tp = (3 * t2) % 8
                for t1 in (tp % 4, tp % 4 + 4):
                    emit([("v", k, 0), ("t", k, t2)],
                         [("t", k, t1)] * 2 + [("t", k, tp)])
            if nu:
                tp = (-t2) % 8
                for t1 in ((-tp) % 4, (-tp) % 4 + 4):
                    emit([("u", k, 0), ("t", k, t2)],
                         [("t", k, t1)] * 2 + [("t", k, tp)])
        # relations linking scale k and k+1 / k+2
        nxt = by_scale.get(k + 1, [])
        ts_next = sorted({a[2] for a in nxt if a[0] == "t"})
        nu_next = sum(1 for a in nxt if a[0] == "u")
        nv_next = sum(1 for a in nxt if a[0] == "v")
        # (e)
        for t in ts_next:
            if nv:
                emit([("v", k, 0), ("t", k + 1, t)],
                     [("u", k, 0), ("t", k + 1, (5 * t) % 8)])
            if nu:
                emit([("u", k, 0), ("t", k + 1, t)],
                     [("v", k, 0), ("t", k + 1, (5 * t) % 8)])
        # (f)
        for t in ts:
            if nv_next:
                emit([("t", k, t), ("v", k + 1, 0)],
                     [("t", k, (5 * t) % 8), ("u", k + 1, 0)])
            if nu_next:
                emit([("t", k, t), ("u", k + 1, 0)],
                     [("t", k, (5 * t) % 8), ("v", k + 1, 0)])
        # (g)
        for t in ts:
            for t2 in ts_next:
                emit([("t", k, t), ("t", k + 1, t2)],
                     [("t", k, (t + 2 * t2) % 8),
                      ("t", k + 1, (5 * (t2 - 2 * t)) % 8)])
        # (h)
        nxt2 = by_scale.get(k + 2, [])
        for t in ts:
            for t2 in sorted({a[2] for a in nxt2 if a[0] == "t"}):
                emit([("t", k, t), ("t", k + 2, t2)],
                     [("t", k, (5 * t) % 8), ("t", k + 2, (5 * t2) % 8)])
        # (i): forms on a group of order 2
        if k == 1:
            for t in ts:
                emit([("t", 1, t)], [("t", 1, (5 * t) % 8)])
    return seen


@lru_cache(maxsize=None)
def _two_adic_class(state):
    """Closure of a 2-adic atom multiset under the relations; returns the
    frozenset of reachable states."""
    frontier = [state]
    reached = {state}
    while frontier:
        new = []
        for s in frontier:
            for t in _two_adic_neighbors(s):
                if t not in reached:
                    reached.add(t)
                    new.append(t)
        frontier = new
    return frozenset(reached)


def normalize_symbol(sym):
    """Canonical representative of a symbol under the block relations."""
    odd = []
    two = []
    for kind, p, k, extra in sym.atoms:
        if kind == "p":
            odd.append((p, k, extra))
        else:
            two.append((kind, k, extra))
    # odd part: aggregate per (p, k); individual unit classes are not
    # invariants, only rank and the product of Kronecker symbols
    agg = {}
    for p, k, eps in odd:
        key = (p, k)
        rank, tot = agg.get(key, (0, 1))
        agg[key] = (rank + 1, tot * eps)
    odd_atoms = []
    for (p, k), (rank, eps) in sorted(agg.items()):
        odd_atoms.extend([("p", p, k, 1)] * (rank - 1))
        odd_atoms.append(("p", p, k, eps))
    two_state = tuple(sorted(two))
    canon = min(_two_adic_class(two_state)) if two_state else ()
    return FqfSymbol(tuple(odd_atoms)
                     + tuple(("t", 2, k, t) if tag == "t" else (tag, 2, k, 0)
                             for tag, k, t in canon))


# ---------------------------------------------------------------------------
# materialization and explicit-form decomposition
# ---------------------------------------------------------------------------


def _smallest_nonresidue(p):
    for r in range(2, p):
        if kronecker(r, p) == -1:
            return r
    raise AssertionError


def _atom_parts(atom):
    """Cyclic constituents of one atom: (orders, q values, b cross value)."""
    kind, p, k, extra = atom
    if kind == "p":
        # q(g) = c / p^k with c even (q lands in Q/2Z) and (c/p) = eps
        c = 1 if extra == 1 else _smallest_nonresidue(p)
        if c % 2:
            c += p ** k
        return ([p ** k], [Fraction(c % (2 * p ** k), p ** k)], None)
    if kind == "t":
        c = pow(extra, -1, 2 ** (k + 1))
        return ([2 ** k], [Fraction(c, 2 ** k)], None)
    if kind == "u":
        return ([2 ** k, 2 ** k], [Fraction(0), Fraction(0)],
                Fraction(1, 2 ** k))
    inv3 = pow(3, -1, 2 ** (k + 1))
    q = Fraction((2 * inv3) % 2 ** (k + 1), 2 ** k)
    b = Fraction((-pow(3, -1, 2 ** k)) % 2 ** k, 2 ** k)
    return ([2 ** k, 2 ** k], [q, q], b)


def _to_chain_form(orders, q, bm):
    """Recombine cyclic generators with arbitrary orders into a
    FiniteQuadraticForm with a divisibility chain of orders."""
    # split every generator into prime-power multiples
    parts = []  # (prime, p^e, source index, multiplier)
    n = len(orders)
    for i, d in enumerate(orders):
        if d == 1:
            continue
        rest = d
        f = 2
        while rest > 1:
            if rest % f == 0:
                pe = 1
                while rest % f == 0:
                    rest //= f
                    pe *= f
                parts.append((f, pe, i, d // pe))
            f += 1 if f == 2 else 2
    by_p = {}
    for prime, pe, i, mult in parts:
        by_p.setdefault(prime, []).append((pe, i, mult))
    for prime in by_p:
        by_p[prime].sort(key=lambda t: -t[0])
    depth = max((len(v) for v in by_p.values()), default=0)
    combined = []  # list of lists of (source index, multiplier)
    orders_out = []
    for lvl in range(depth):
        pieces = []
        d = 1
        for prime, lst in sorted(by_p.items()):
            if lvl < len(lst):
                pe, i, mult = lst[lvl]
                d *= pe
                pieces.append((i, mult))
        combined.append(pieces)
        orders_out.append(d)
    combined.reverse()
    orders_out.reverse()
    if not orders_out:
        return TRIVIAL_FQF

    def qv(pieces):
        total = Fraction(0)
        for a, (i, m) in enumerate(pieces):
            total += m * m * q[i]
            for (j, m2) in pieces[a + 1:]:
                total += 2 * m * m2 * (bm[i][j] if i != j else q[i] % 1)
        return total % 2

    def bv(p1, p2):
        total = Fraction(0)
        for i, m in p1:
            for j, m2 in p2:
                total += m * m2 * (bm[i][j] if i != j else q[i] % 1)
        return total % 1

    qd = [qv(pc) for pc in combined]
    bmat = [[bv(combined[i], combined[j]) for j in range(len(combined))]
            for i in range(len(combined))]
    return FiniteQuadraticForm(orders_out, qd, bmat)


def materialize(sym):
    """Explicit FiniteQuadraticForm of a symbol."""
    orders = []
    q = []
    cross = []  # (i, j, value) among the flat generator list
    for atom in sym.atoms:
        ords, qs, b = _atom_parts(atom)
        base = len(orders)
        orders.extend(ords)
        q.extend(qs)
        if b is not None:
            cross.append((base, base + 1, b))
    n = len(orders)
    bm = [[Fraction(0)] * n for _ in range(n)]
    for i, j, b in cross:
        bm[i][j] = bm[j][i] = b
    return _to_chain_form(orders, q, bm)


def _fqf_elements_with_q(F):
    elems = F.elements()
    return {e: F.q(e) for e in elems}


def _element_order(F, x):
    o = 1
    for c, d in zip(x, F.orders):
        if c % d:
            g = _gcd(c % d, d)
            o = _lcm(o, d // g)
    return o


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _lcm(a, b):
    return a * b // _gcd(a, b)


def fqf_isometry(F1, F2, budget=4096):
    """Explicit isomorphism preserving q (generator images) or None.

    Raises RuntimeError when the groups are larger than the budget.
    """
    if F1.orders != F2.orders:
        return None
    if F1.order > budget:
        raise RuntimeError("group order %d exceeds budget %d"
                           % (F1.order, budget))
    if F1.ngens == 0:
        return ()
    q2 = _fqf_elements_with_q(F2)
    gens1 = [tuple(int(i == j) for j in range(F1.ngens))
             for i in range(F1.ngens)]
    cand = []
    for i, g in enumerate(gens1):
        want_q = F1.q(g)
        want_o = F1.orders[i]
        cand.append([e for e, qe in q2.items()
                     if qe == want_q and _element_order(F2, e) == want_o])

    n = F1.ngens
    images = [None] * n

    def ok(i):
        g = gens1[i]
        for j in range(i):
            if F1.b(g, gens1[j]) != F2.b(images[i], images[j]):
                return False
        return True

    def surjective():
        reached = {tuple([0] * n)}
        frontier = [tuple([0] * n)]
        while frontier:
            new = []
            for e in frontier:
                for img, d in zip(images, F2.orders):
                    s = tuple((a + b) % dd
                              for a, b, dd in zip(e, img, F2.orders))
                    if s not in reached:
                        reached.add(s)
                        new.append(s)
            frontier = new
            if len(reached) == F2.order:
                return True
        return len(reached) == F2.order

    def backtrack(i):
        if i == n:
            return surjective()
        for e in cand[i]:
            images[i] = e
            if ok(i) and backtrack(i + 1):
                return True
        images[i] = None
        return False

    if backtrack(0):
        return tuple(images)
    return None


def fqf_to_symbol(F, budget=4096):
    """Decompose an explicit form into standard atoms.

    Candidate symbols compatible with the group structure are enumerated
    and checked by explicit isometry search.
    """
    if F.ngens == 0:
        return FqfSymbol(())
    factors = []
    for d in F.orders:
        rest = d
        f = 2
        while rest > 1:
            if rest % f == 0:
                pe = 1
                while rest % f == 0:
                    rest //= f
                    pe *= f
                factors.append((f, pe))
            f += 1 if f == 2 else 2
    by_p = {}
    for p, pe in factors:
        by_p.setdefault(p, []).append(pe)

    per_prime_options = []
    for p, pes in sorted(by_p.items()):
        counts = {}
        for pe in pes:
            counts[pe] = counts.get(pe, 0) + 1
        if p != 2:
            scale_opts = []
            for pe, m in sorted(counts.items()):
                k = _val(pe, p)
                scale_opts.append([
                    tuple([("p", p, k, 1)] * (m - 1) + [("p", p, k, e)])
                    for e in (1, -1)])
            per_prime_options.append(
                [sum(c, ()) for c in itertools.product(*scale_opts)])
        else:
            scale_opts = []
            for pe, m in sorted(counts.items()):
                k = _val(pe, 2)
                opts = []
                for pairs in range(m // 2 + 1):
                    free = m - 2 * pairs
                    for nv in range(pairs + 1):
                        nu = pairs - nv
                        blocks = [("u", 2, k, 0)] * nu + [("v", 2, k, 0)] * nv
                        if free == 0:
                            opts.append(tuple(blocks))
                        else:
                            for thetas in itertools.combinations_with_replacement(
                                    (1, 3, 5, 7), free):
                                opts.append(tuple(blocks)
                                            + tuple(("t", 2, k, t)
                                                    for t in thetas))
                scale_opts.append(opts)
            per_prime_options.append(
                [sum(c, ()) for c in itertools.product(*scale_opts)])

    tried = set()
    for combo in itertools.product(*per_prime_options):
        atoms = sum(combo, ())
        sym = normalize_symbol(FqfSymbol(atoms))
        if sym in tried:
            continue
        tried.add(sym)
        if fqf_isometry(materialize(sym), F, budget=budget) is not None:
            return sym
    raise AssertionError("no atom decomposition found; form is not a "
                         "discriminant form of an even lattice")


def fqf_equivalent(a, b, budget=4096, witness=False):
    """Decide isomorphism of two forms (symbols or explicit forms)."""
    sa = a if isinstance(a, FqfSymbol) else fqf_to_symbol(a, budget)
    sb = b if isinstance(b, FqfSymbol) else fqf_to_symbol(b, budget)
    if sa.group_orders() != sb.group_orders():
        return (False, None) if witness else False
    same = normalize_symbol(sa) == normalize_symbol(sb)
    Fa, Fb = materialize(sa), materialize(sb)
    if Fa.order <= budget:
        w = fqf_isometry(Fa, Fb, budget)
        if (w is not None) != same:
            raise AssertionError("relation closure disagrees with the "
                                 "explicit isometry search")
        return (same, w) if witness else same
    return (same, None) if witness else same


# ---------------------------------------------------------------------------
# genus symbols of lattices
# ---------------------------------------------------------------------------


class GenusSymbol:
    """Signature plus per-prime Jordan constituents."""

    __slots__ = ("signature", "constituents")

    def __init__(self, signature, constituents):
        self.signature = tuple(signature)
        self.constituents = {p: list(cs) for p, cs in constituents.items()}

    def qsymbol(self):
        """Atoms of the discriminant quadratic form (scales k >= 1)."""
        atoms = []
        for p, cs in sorted(self.constituents.items()):
            for c in cs:
                if c["scale"] < 1:
                    continue
                atoms.extend(_constituent_atoms(p, c))
        return FqfSymbol(atoms)

    def __eq__(self, other):
        return (isinstance(other, GenusSymbol)
                and self.signature == other.signature
                and self.constituents == other.constituents)

    def __repr__(self):
        return "GenusSymbol(%r, %s)" % (self.signature, render_genus(self))


def _constituent_atoms(p, c):
    k = c["scale"]
    m = c["rank"]
    if p != 2:
        return [("p", p, k, 1)] * (m - 1) + [("p", p, k, c["eps"])]
    if c["type"] == "II":
        pairs = m // 2
        det_sign = 1 if c["det8"] in (1, 7) else -1
        if det_sign == 1:
            return [("u", 2, k, 0)] * pairs
        return [("u", 2, k, 0)] * (pairs - 1) + [("v", 2, k, 0)]
    det_sign = 1 if c["det8"] in (1, 7) else -1
    for thetas in itertools.combinations_with_replacement((1, 3, 5, 7), m):
        tot = sum(thetas) % 8
        prod = 1
        for t in thetas:
            prod = prod * t % 8
        if tot == c["oddity"] % 8 and (prod in (1, 7)) == (det_sign == 1):
            return [("t", 2, k, t) for t in thetas]
    raise ValueError("inconsistent 2-adic constituent %r" % (c,))


def genus_symbol(L):
    """Genus of an even nondegenerate lattice."""
    if not L.is_even:
        raise ValueError("genus symbol computed for even lattices only")
    det = L.det()
    primes = _prime_factors(2 * abs(det))
    constituents = {}
    for p in primes:
        constituents[p] = jordan_decompose(L, p)
    return GenusSymbol(L.signature(), constituents)


def _prime_factors(n):
    out = []
    f = 2
    while n > 1:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1 if f == 2 else 2
    return out


# ---------------------------------------------------------------------------
# rendering and parsing
# ---------------------------------------------------------------------------


def render_genus(gs):
    """Conway-Sloane style text for the nontrivial part of a genus."""
    pieces = []
    for p, cs in sorted(gs.constituents.items()):
        for c in cs:
            if c["scale"] < 1 or c["rank"] == 0:
                continue
            pieces.append(_render_constituent(p, c))
    return ",".join(pieces)


def _render_constituent(p, c):
    scale = p ** c["scale"]
    if p != 2:
        sign = "+" if c["eps"] == 1 else "-"
        return "%d^{%s%d}" % (scale, sign, c["rank"])
    det_sign = "+" if c["det8"] in (1, 7) else "-"
    if c["type"] == "II":
        return "%d_{II}^{%s%d}" % (scale, det_sign, c["rank"])
    return "%d_%d^{%s%d}" % (scale, c["oddity"] % 8, det_sign, c["rank"])


def render_symbol(sym):
    """Same text form, for a normalized FqfSymbol."""
    by = {}
    for kind, p, k, extra in sym.atoms:
        by.setdefault((p, k), []).append((kind, extra))
    pieces = []
    for (p, k), batch in sorted(by.items()):
        if p != 2:
            eps = 1
            for kind, e in batch:
                eps *= e
            c = {"scale": k, "rank": len(batch), "eps": eps}
        else:
            thetas = [e for kind, e in batch if kind == "t"]
            nu = sum(1 for kind, _ in batch if kind == "u")
            nv = sum(1 for kind, _ in batch if kind == "v")
            d8 = 1
            for t in thetas:
                d8 = d8 * t % 8
            d8 = d8 * pow(7, nu, 8) * pow(3, nv, 8) % 8
            c = {"scale": k, "rank": len(thetas) + 2 * (nu + nv),
                 "type": "I" if thetas else "II", "det8": d8,
                 "oddity": sum(thetas) % 8 if thetas else None}
        pieces.append(_render_constituent(p, c))
    return ",".join(pieces)


_COMPONENT_RE = re.compile(
    r"^(\d+)(?:_\{?(II|I|-?\d+)\}?)?\^\{?([+-]?)(\d+)\}?$")


def parse_symbol(text):
    """Parse a printed symbol like 2_{II}^{-6},4_3^{-1} into an FqfSymbol.

    Signed subscripts are accepted as residues mod 8.  The spelling "I"
    as a subscript is accepted as oddity 1 (it appears once in published
    data) and is reported via the second return value.
    """
    atoms = []
    flagged = False
    text = text.strip()
    if not text:
        return FqfSymbol(()), flagged
    for piece in text.split(","):
        piece = piece.strip()
        m = _COMPONENT_RE.match(piece)
        if not m:
            raise ValueError("cannot parse symbol component %r" % piece)
        scale = int(m.group(1))
        sub = m.group(2)
        sign = -1 if m.group(3) == "-" else 1
        rank = int(m.group(4))
        p = _prime_factors(scale)
        if len(p) != 1:
            raise ValueError("scale %d is not a prime power" % scale)
        p = p[0]
        k = _val(scale, p)
        if p != 2:
            if sub is not None:
                raise ValueError("odd-prime component with subscript: %r"
                                 % piece)
            atoms.extend([("p", p, k, 1)] * (rank - 1))
            atoms.append(("p", p, k, sign))
            continue
        if sub is None:
            raise ValueError("2-adic component needs a subscript: %r" % piece)
        if sub == "II":
            if rank % 2:
                raise ValueError("type II component of odd rank: %r" % piece)
            if sign == 1:
                atoms.extend([("u", 2, k, 0)] * (rank // 2))
            else:
                atoms.extend([("u", 2, k, 0)] * (rank // 2 - 1))
                atoms.append(("v", 2, k, 0))
            continue
        if sub == "I":
            oddity = 1
            flagged = True
        else:
            oddity = int(sub) % 8
        c = {"scale": k, "rank": rank, "type": "I", "det8": None,
             "oddity": oddity}
        det_sign = sign
        found = None
        for thetas in itertools.combinations_with_replacement((1, 3, 5, 7),
                                                              rank):
            prod = 1
            for t in thetas:
                prod = prod * t % 8
            if sum(thetas) % 8 == oddity and \
               (prod in (1, 7)) == (det_sign == 1):
                found = thetas
                break
        if found is None:
            raise ValueError("inconsistent 2-adic component %r" % piece)
        atoms.extend(("t", 2, k, t) for t in found)
    return FqfSymbol(atoms), flagged


# ---------------------------------------------------------------------------
# embedding and uniqueness criteria
# ---------------------------------------------------------------------------


def _sig_and_q(x):
    """Signature and discriminant symbol of a Lattice or a (signature, q)
    pair, where q may be an FqfSymbol or an explicit form."""
    if isinstance(x, Lattice):
        return x.signature(), genus_symbol(x).qsymbol()
    sig, q = x
    if isinstance(q, FiniteQuadraticForm):
        q = fqf_to_symbol(q)
    return tuple(sig), q


def embedding_compatible(M, K, ambient_signature, budget=4096):
    """Can M embed primitively in an even unimodular lattice of the given
    signature with orthogonal complement K?

    M and K are Lattices or (signature, symbol) pairs."""
    t_plus, t_minus = ambient_signature
    sm, qm = _sig_and_q(M)
    sk, qk = _sig_and_q(K)
    if (sm[0] + sk[0], sm[1] + sk[1]) != (t_plus, t_minus):
        return False
    if (t_plus - t_minus) % 8 != 0:
        return False
    return fqf_equivalent(qk, fqf_negate(qm), budget=budget)


def unique_in_genus(signature, q, detail=False):
    """Uniqueness criterion for an even lattice with the given invariants.

    Returns True when the sufficient conditions hold.  When detail=True,
    returns (bool, reason) where reason is "holds" or names the failing
    hypothesis; a False result never proves non-uniqueness.
    """
    if isinstance(q, FiniteQuadraticForm):
        q = fqf_to_symbol(q)
    t_plus, t_minus = signature
    rank = t_plus + t_minus

    def done(ok, reason):
        return (ok, reason) if detail else ok

    if t_plus < 1 or t_minus < 1 or rank < 3:
        return done(False, "signature hypothesis fails")
    by_p = {}
    for a in q.atoms:
        by_p.setdefault(a[1], []).append(a)
    for p, atoms in sorted(by_p.items()):
        length = sum(2 if a[0] in ("u", "v") else 1 for a in atoms)
        if rank >= length + 2:
            continue
        if p != 2:
            scales = [a[2] for a in atoms]
            if any(scales.count(k) >= 2 for k in set(scales)):
                continue
            return done(False, "no split at p=%d" % p)
        state = tuple(sorted((a[0], a[2], a[3]) for a in atoms))
        split = False
        for s in _two_adic_class(state):
            if any(tag in ("u", "v") for tag, _, _ in s):
                split = True
                break
            ks = [k for _, k, _ in s]
            if any(k + 1 in ks for k in ks):
                split = True
                break
        if split:
            continue
        return done(False, "no split at p=2")
    return done(True, "holds")
