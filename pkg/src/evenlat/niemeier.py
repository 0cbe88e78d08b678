"""The 23 rooted Niemeier lattices and the coinvariant marking pipeline.

Each lattice is built as an even unimodular overlattice of its (negated)
root lattice, glued along an isotropic code in the discriminant group of
the root lattice.  Glue data is stored statically (generator words; the
Golay codes for 24A_1 and 12A_2 come from their cyclic generator
polynomials) and everything is re-verified during construction: code
size, isotropy, absence of new roots, determinant, evenness.
"""

from fractions import Fraction
from functools import lru_cache
from math import floor, isqrt
import itertools

from .exact_linalg import IntMatrix, smith_normal_form, rational_inverse
from .lattice import (Lattice, Sublattice, saturate, orthogonal_complement,
                      overlattice, discriminant_form)
from .rootsys import RootSystemType, root_system, vectors_of_norm
from .fqf_genus import genus_symbol, fqf_equivalent, fqf_negate, fqf_to_symbol


ROOT_TYPES = {
    1: (("D", 24),),
    2: (("D", 16), ("E", 8)),
    3: (("E", 8),) * 3,
    4: (("A", 24),),
    5: (("D", 12),) * 2,
    6: (("A", 17), ("E", 7)),
    7: (("D", 10), ("E", 7), ("E", 7)),
    8: (("A", 15), ("D", 9)),
    9: (("D", 8),) * 3,
    10: (("A", 12),) * 2,
    11: (("A", 11), ("D", 7), ("E", 6)),
    12: (("E", 6),) * 4,
    13: (("A", 9), ("A", 9), ("D", 6)),
    14: (("D", 6),) * 4,
    15: (("A", 8),) * 3,
    16: (("A", 7), ("A", 7), ("D", 5), ("D", 5)),
    17: (("A", 6),) * 4,
    18: (("A", 5),) * 4 + (("D", 4),),
    19: (("D", 4),) * 6,
    20: (("A", 4),) * 6,
    21: (("A", 3),) * 8,
    22: (("A", 2),) * 12,
    23: (("A", 1),) * 24,
}


def cartan_matrix(fam, n):
    """ADE Cartan matrix; chain 0..k with the extra node at the fork."""
    if fam == "A":
        edges = [(i, i + 1) for i in range(n - 1)]
    elif fam == "D":
        edges = [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    elif fam == "E":
        edges = [(i, i + 1) for i in range(n - 2)] + [(2, n - 1)]
    else:
        raise ValueError("unknown family %r" % fam)
    g = [[0] * n for _ in range(n)]
    for i in range(n):
        g[i][i] = 2
    for i, j in edges:
        g[i][j] = g[j][i] = -1
    return IntMatrix(g)


def coset_min_norm(G, v, cap=None):
    """Minimum of (x+v)^T G (x+v) over integer x; G positive definite.

    With cap set, returns the exact minimum when it is < cap and some
    value >= cap otherwise (the search is pruned at the cap).
    """
    from .rootsys import _cholesky_q
    n = G.rows
    v = [Fraction(x) for x in v]
    d, u = _cholesky_q(G)
    start_best = sum(v[i] * G[i, j] * v[j] for i in range(n) for j in range(n))
    if cap is not None and cap < start_best:
        start_best = Fraction(cap)
    best = [start_best]
    y = [Fraction(0)] * n

    def descend(i, acc):
        if acc >= best[0]:
            return
        if i < 0:
            best[0] = acc
            return
        shift = v[i] + sum(u[i][k] * y[k] for k in range(i + 1, n))
        start = floor(-shift)
        xi = start
        while d[i] * (xi + shift) ** 2 + acc < best[0]:
            y[i] = xi + v[i]
            descend(i - 1, acc + d[i] * (xi + shift) ** 2)
            xi -= 1
        xi = start + 1
        while d[i] * (xi + shift) ** 2 + acc < best[0]:
            y[i] = xi + v[i]
            descend(i - 1, acc + d[i] * (xi + shift) ** 2)
            xi += 1
        y[i] = Fraction(0)

    descend(n - 1, Fraction(0))
    return best[0]


class _Component:
    """One ADE root-lattice factor with its discriminant class table."""

    __slots__ = ("fam", "n", "cartan", "moduli", "classes")

    def __init__(self, fam, n):
        self.fam = fam
        self.n = n
        C = cartan_matrix(fam, n)
        self.cartan = C
        inv = rational_inverse(C)
        weights = [tuple(inv[r][k] for r in range(n)) for k in range(n)]

        def frac_class(v):
            return tuple(Fraction(x) % 1 for x in v)

        if fam == "A":
            self.moduli = (n + 1,)
            gens = [weights[0]]
        elif fam == "E" and n == 8:
            self.moduli = ()
            gens = []
        elif fam == "E" and n == 7:
            self.moduli = (2,)
            gens = [next(w for w in weights
                         if any(x.denominator != 1 for x in w))]
        elif fam == "E" and n == 6:
            self.moduli = (3,)
            gens = [weights[0]]
        elif fam == "D" and n % 2 == 0:
            self.moduli = (2, 2)
            gens = [weights[n - 2], weights[n - 1]]
        else:  # D, n odd
            self.moduli = (4,)
            gens = [weights[n - 2]]
        size = 1
        for m in self.moduli:
            size *= m
        if size != C.det():
            raise AssertionError("discriminant group size mismatch")
        self.classes = {}
        for label in itertools.product(*[range(m) for m in self.moduli]):
            vec = [Fraction(0)] * n
            for c, g in zip(label, gens):
                vec = [a + c * b for a, b in zip(vec, g)]
            vec = tuple(vec)
            norm = sum(vec[i] * C[i, j] * vec[j]
                       for i in range(n) for j in range(n))
            # capped at 9/4: only "does the coset reach norm <= 2" matters,
            # and the cap keeps the branch-and-bound tree small for D_24
            mu = (coset_min_norm(C, vec, cap=Fraction(9, 4))
                  if any(label) else Fraction(0))
            self.classes[label] = {
                "vector": vec,
                "q": norm % 2,
                "min_norm": mu,
                "frac": frac_class(vec),
            }
        # the labels must name distinct cosets
        fracs = {c["frac"] for c in self.classes.values()}
        if len(fracs) != size:
            raise AssertionError("glue class labels collide")


@lru_cache(maxsize=None)
def _component(fam, n):
    return _Component(fam, n)


# ---------------------------------------------------------------------------
# Golay codes from cyclic generator polynomials
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def golay_binary():
    """Extended binary Golay code as 4096 length-24 bit tuples.

    Cyclic [23,12] code generated by
    x^11 + x^10 + x^6 + x^5 + x^4 + x^2 + 1, extended by a parity bit.
    """
    g = [1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 1, 1]  # coefficients c_0..c_11
    rows = []
    for i in range(12):
        row = [0] * 23
        for k, c in enumerate(g):
            row[(i + k) % 23] ^= c
        rows.append(row)
    words = set()
    for mask in range(4096):
        w = [0] * 23
        for i in range(12):
            if mask >> i & 1:
                w = [a ^ b for a, b in zip(w, rows[i])]
        words.add(tuple(w) + (sum(w) % 2,))
    words = sorted(words)
    if len(words) != 4096:
        raise AssertionError("binary Golay span has wrong size")
    weights = sorted({sum(w) for w in words if any(w)})
    if min(weights) != 8 or any(w % 4 for w in weights):
        raise AssertionError("binary Golay weight distribution is wrong")
    return tuple(words)


@lru_cache(maxsize=None)
def golay_ternary():
    """Extended ternary Golay code as 729 length-12 tuples over {0,1,2}.

    Cyclic [11,6] code generated by x^5 + x^4 + 2x^3 + x^2 + 2, extended
    by the digit that makes the word self-orthogonal.
    """
    g = [2, 0, 1, 2, 1, 1]  # coefficients c_0..c_5
    rows = []
    for i in range(6):
        row = [0] * 11
        for k, c in enumerate(g):
            row[(i + k) % 11] = (row[(i + k) % 11] + c) % 3
        rows.append(row)
    for sign in (1, 2):
        ext = [tuple(r) + ((sign * sum(r)) % 3,) for r in rows]
        if all(sum(a * b for a, b in zip(r, s)) % 3 == 0
               for r in ext for s in ext):
            rows = ext
            break
    else:
        raise AssertionError("no self-dual extension of the ternary code")
    words = set()
    for coeffs in itertools.product(range(3), repeat=6):
        w = [0] * 12
        for c, r in zip(coeffs, rows):
            w = [(a + c * b) % 3 for a, b in zip(w, r)]
        words.add(tuple(w))
    words = sorted(words)
    if len(words) != 729:
        raise AssertionError("ternary Golay span has wrong size")
    wmin = min(sum(1 for x in w if x) for w in words if any(w))
    if wmin != 6:
        raise AssertionError("ternary Golay minimum weight is wrong")
    return tuple(words)


# ---------------------------------------------------------------------------
# glue codes
# ---------------------------------------------------------------------------

# Generator words for the glue codes of the non-Golay cases, found once by
# _search_glue and frozen here; build_niemeier re-verifies every word.
GLUE_GENERATORS = {
    1: ((0, 1),),
    2: ((0, 1),),
    3: (),
    4: ((5,),),
    5: ((0, 1, 0, 1), (1, 0, 1, 1)),
    6: ((3, 1),),
    7: ((0, 1, 0, 1), (1, 0, 1, 0)),
    8: ((2, 1),),
    9: ((0, 0, 0, 1, 0, 1), (0, 1, 0, 0, 0, 1), (1, 0, 1, 0, 1, 0)),
    10: ((1, 5),),
    11: ((1, 1, 1),),
    12: ((0, 1, 1, 1), (1, 0, 1, 2)),
    13: ((0, 5, 0, 1), (1, 2, 1, 0)),
    14: ((0, 0, 0, 1, 0, 1, 1, 1), (0, 0, 1, 0, 1, 1, 0, 1),
         (0, 1, 0, 0, 1, 0, 1, 1), (1, 0, 0, 0, 1, 1, 1, 0)),
    15: ((0, 3, 3), (1, 1, 5)),
    16: ((0, 2, 1, 1), (1, 1, 2, 3)),
    17: ((0, 1, 2, 3), (1, 0, 3, 5)),
    18: ((0, 0, 3, 3, 0, 1), (0, 1, 1, 2, 1, 0), (1, 0, 1, 4, 1, 1)),
    19: ((0, 0, 0, 0, 0, 1, 0, 1, 0, 1, 0, 1),
         (0, 0, 0, 0, 1, 0, 1, 0, 1, 0, 1, 0),
         (0, 0, 0, 1, 0, 0, 0, 1, 1, 0, 1, 1),
         (0, 0, 1, 0, 0, 0, 1, 0, 1, 1, 0, 1),
         (0, 1, 0, 0, 0, 0, 0, 1, 1, 1, 1, 0),
         (1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 1, 1)),
    20: ((0, 0, 1, 1, 2, 2), (0, 1, 0, 2, 1, 3), (1, 0, 0, 2, 3, 1)),
    21: ((0, 0, 0, 0, 2, 2, 2, 2), (0, 0, 0, 2, 1, 1, 1, 1),
         (0, 0, 1, 1, 0, 1, 2, 3), (0, 1, 0, 1, 0, 2, 3, 1),
         (1, 0, 0, 1, 0, 3, 1, 2)),
}


def _glue_tables(j):
    """Per-coordinate (moduli, q, min_norm, vector) tables for lattice j."""
    comps = [_component(fam, n) for fam, n in ROOT_TYPES[j]]
    moduli = []
    for c in comps:
        moduli.extend(c.moduli)
    return comps, tuple(moduli)


def _word_stats(comps, word):
    """(q mod 2, min coset norm) of a glue word."""
    q = Fraction(0)
    mu = Fraction(0)
    pos = 0
    for c in comps:
        k = len(c.moduli)
        label = word[pos:pos + k]
        pos += k
        cl = c.classes[label]
        q += cl["q"]
        mu += cl["min_norm"]
    return q % 2, mu


def _word_vector(comps, word):
    vec = []
    pos = 0
    for c in comps:
        k = len(c.moduli)
        label = word[pos:pos + k]
        pos += k
        vec.extend(c.classes[label]["vector"])
    return vec


def _span_words(gens, moduli):
    zero = tuple(0 for _ in moduli)
    words = {zero}
    frontier = [zero]
    while frontier:
        new = []
        for w in frontier:
            for g in gens:
                s = tuple((a + b) % m for a, b, m in zip(w, g, moduli))
                if s not in words:
                    words.add(s)
                    new.append(s)
        frontier = new
    return words


def _search_glue(j):
    """Find glue-code generators for lattice j by backtracking.

    Candidates are the isotropic classes whose cosets contain no vectors
    of norm 2; the search closes the span and keeps every word inside the
    candidate set.
    """
    comps, moduli = _glue_tables(j)
    total = 1
    for m in moduli:
        total *= m
    target = isqrt(total)
    if target * target != total:
        raise AssertionError("glue group size is not a perfect square")
    good = set()
    for word in itertools.product(*[range(m) for m in moduli]):
        if not any(word):
            continue
        q, mu = _word_stats(comps, word)
        if q == 0 and mu > 2:
            good.add(word)
    cand = sorted(good)
    zero = tuple(0 for _ in moduli)

    def extend(words, gens, start):
        if len(words) == target:
            return gens
        for i in range(start, len(cand)):
            x = cand[i]
            if x in words:
                continue
            new = set(words)
            frontier = [x]
            ok = True
            while frontier and ok:
                nxt = []
                for w in frontier:
                    if w in new:
                        continue
                    if w != zero and w not in good:
                        ok = False
                        break
                    new.add(w)
                    for c in list(new):
                        s = tuple((a + b) % m
                                  for a, b, m in zip(w, c, moduli))
                        if s not in new:
                            nxt.append(s)
                frontier = nxt
            if not ok or len(new) > target:
                continue
            found = extend(new, gens + [x], i + 1)
            if found is not None:
                return found
        return None

    gens = extend({zero}, [], 0)
    if gens is None:
        raise AssertionError("no glue code found for j=%d" % j)
    return tuple(gens)


def glue_words(j):
    """The full glue code of lattice j as a set of words."""
    comps, moduli = _glue_tables(j)
    if j == 23:
        return comps, moduli, set(golay_binary())
    if j == 22:
        return comps, moduli, set(golay_ternary())
    gens = GLUE_GENERATORS[j]
    return comps, moduli, _span_words(gens, moduli)


class NiemeierLattice:
    """A Niemeier lattice with its distinguished simple-root basis."""

    __slots__ = ("j", "lattice", "roots", "component_of", "root_type")

    def __init__(self, j, lattice, roots, component_of, root_type):
        self.j = j
        self.lattice = lattice
        self.roots = roots            # 24 simple roots, coordinates in N
        self.component_of = component_of  # root index -> component index
        self.root_type = root_type


@lru_cache(maxsize=None)
def build_niemeier(j):
    """Even unimodular rank-24 lattice N_j with root basis P(N_j)."""
    if j == 24:
        raise ValueError("the rootless lattice (j=24) is out of scope")
    if j not in ROOT_TYPES:
        raise ValueError("j must be in 1..23")
    comps, moduli, words = glue_words(j)
    total = 1
    for m in moduli:
        total *= m
    if len(words) * len(words) != total:
        raise AssertionError("glue code has the wrong size")
    for w in words:
        if not any(w):
            continue
        q, mu = _word_stats(comps, w)
        if q != 0:
            raise AssertionError("glue word is not isotropic")
        if mu <= 2:
            raise AssertionError("glue word introduces new roots")
    # negated root lattice: simple roots have square -2
    n = 24
    gram = [[0] * n for _ in range(n)]
    pos = 0
    component_of = []
    for ci, c in enumerate(comps):
        k = c.cartan.rows
        for i in range(k):
            component_of.append(ci)
            for t in range(k):
                gram[pos + i][pos + t] = -c.cartan[i, t]
        pos += k
    L = Lattice(gram)
    # generators of the code suffice for the overlattice span
    gens = _code_basis(words, moduli)
    glue_vecs = [_word_vector(comps, g) for g in gens]
    N, basis = overlattice(L, glue_vecs)
    if abs(N.det()) != 1 or not N.is_even or N.rank != 24:
        raise AssertionError("glued lattice is not even unimodular")
    binv = _rational_matrix_inverse(basis)
    roots = []
    for i in range(n):
        col = [binv[r][i] for r in range(n)]
        if any(x.denominator != 1 for x in col):
            raise AssertionError("root basis is not integral in N")
        roots.append(tuple(x.numerator for x in col))
    rt = RootSystemType(ROOT_TYPES[j])
    return NiemeierLattice(j, N, tuple(roots), tuple(component_of), rt)


def _rational_matrix_inverse(basis):
    """Invert a square matrix of Fractions by clearing denominators."""
    n = len(basis)
    den = 1
    for row in basis:
        for x in row:
            x = Fraction(x)
            den = den * x.denominator // _gcd(den, x.denominator)
    M = IntMatrix([[int(Fraction(x) * den) for x in row] for row in basis])
    inv = rational_inverse(M)
    return [[x * den for x in row] for row in inv]


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _code_basis(words, moduli):
    """Small generating set of a code given as the full word set."""
    gens = []
    span = {tuple(0 for _ in moduli)}
    for w in sorted(words):
        if w in span:
            continue
        gens.append(w)
        span = _span_words(gens, moduli)
        if len(span) == len(words):
            break
    return gens


def verify_niemeier(L):
    """Diagnostic report for a candidate Niemeier lattice."""
    report = {
        "rank": L.rank,
        "rank_ok": L.rank == 24,
        "even": L.is_even,
        "det": L.det(),
        "unimodular": abs(L.det()) == 1,
    }
    try:
        t, _ = root_system(L)
        report["root_count"] = t.root_count()
        report["root_type"] = str(t)
    except ValueError:
        report["root_count"] = None
        report["root_type"] = None
    report["ok"] = bool(report["rank_ok"] and report["even"]
                        and report["unimodular"])
    return report


# ---------------------------------------------------------------------------
# marking pipeline
# ---------------------------------------------------------------------------


def _check_orbits(N, orbits):
    seen = set()
    for orbit in orbits:
        for i in orbit:
            if not 0 <= i < 24:
                raise ValueError("root index %r out of range" % (i,))
            if i in seen:
                raise ValueError("orbits overlap at index %d" % i)
            seen.add(i)
        kinds = {ROOT_TYPES[N.j][N.component_of[i]] for i in orbit}
        if len(kinds) != 1:
            raise ValueError("orbit mixes roots of different component types")
    if len(seen) != 24:
        raise ValueError("orbits must partition all 24 simple roots")


def coinvariant_lattice(N, orbits):
    """Orthogonal complement of the span of orbit sums of simple roots."""
    _check_orbits(N, orbits)
    cols = []
    for orbit in orbits:
        s = [0] * 24
        for i in orbit:
            s = [a + b for a, b in zip(s, N.roots[i])]
        cols.append(s)
    fixed = Sublattice(N.lattice, IntMatrix(list(zip(*cols))))
    return orthogonal_complement(fixed)


class MarkingResult:
    __slots__ = ("coinvariant", "coinvariant_genus", "S", "S_genus",
                 "complement", "complement_genus", "complement_roots",
                 "minus4_count", "coinvariant_rootfree")

    def as_dict(self):
        from .fqf_genus import render_genus
        return {
            "coinvariant_rank": self.coinvariant.rank,
            "coinvariant_genus": render_genus(self.coinvariant_genus),
            "coinvariant_rootfree": self.coinvariant_rootfree,
            "S_rank": self.S.rank,
            "S_genus": render_genus(self.S_genus),
            "complement_rank": self.complement.rank,
            "complement_roots": str(self.complement_roots),
            "minus4_count": self.minus4_count,
        }


def marking_pipeline(N, orbits, alpha):
    """Full marking run: coinvariant lattice, S = [coinvariant, alpha]_pr,
    orthogonal complement, its root system and (-4)-vector count."""
    if not 0 <= alpha < 24:
        raise ValueError("alpha index out of range")
    coinv = coinvariant_lattice(N, orbits)
    res = MarkingResult()
    res.coinvariant = coinv
    coinv_lat = coinv.as_lattice()
    res.coinvariant_genus = genus_symbol(coinv_lat)
    res.coinvariant_rootfree = (coinv.rank == 0 or
                                not vectors_of_norm(coinv_lat, -2))
    scols = [[coinv.basis[r, j] for r in range(24)]
             for j in range(coinv.rank)]
    scols.append(list(N.roots[alpha]))
    S = saturate(Sublattice(N.lattice, IntMatrix(list(zip(*scols)))))
    res.S = S
    S_lat = S.as_lattice()
    res.S_genus = genus_symbol(S_lat)
    if res.coinvariant_rootfree and S.rank != coinv.rank + 1:
        raise AssertionError("rank of S must exceed the coinvariant rank "
                             "by one when the coinvariant part is rootfree")
    K = orthogonal_complement(S)
    res.complement = K
    K_lat = K.as_lattice()
    res.complement_genus = genus_symbol(K_lat)
    t, _ = root_system(K_lat)
    res.complement_roots = t
    res.minus4_count = len(vectors_of_norm(K_lat, -4))
    if not fqf_equivalent(res.complement_genus.qsymbol(),
                          fqf_negate(res.S_genus.qsymbol())):
        raise AssertionError("complement discriminant form is not the "
                             "negative of the one of S")
    return res


# ---------------------------------------------------------------------------
# code automorphisms of the 24A_1 lattice
# ---------------------------------------------------------------------------


def golay_octads():
    return tuple(frozenset(i for i, x in enumerate(w) if x)
                 for w in golay_binary() if sum(w) == 8)


def golay_involutions(fixed_octad=None, limit=None):
    """Involutions of the 24 coordinates preserving the binary Golay code
    with cycle type 1^8 2^8; the fixed set is an octad.

    Returns a list of permutations (tuples of images), found by pairing
    the 16 non-fixed points and pruning on octad images.
    """
    octads = golay_octads()
    octad_set = set(octads)
    if fixed_octad is None:
        fixed_octad = min(octads, key=sorted)
    F = frozenset(fixed_octad)
    if F not in octad_set:
        raise ValueError("the fixed set must be an octad")
    T = sorted(set(range(24)) - F)
    out = []
    pairing = {}

    def check_point(b):
        # verify every fully-mapped octad through b
        for o in octads:
            if o == F:
                continue
            outside = o - F
            if b in outside and all(p in pairing for p in outside):
                img = frozenset(pairing[p] for p in outside) | (o & F)
                if img not in octad_set:
                    return False
        return True

    def backtrack(unpaired):
        if limit is not None and len(out) >= limit:
            return
        if not unpaired:
            perm = list(range(24))
            for a, b in pairing.items():
                perm[a] = b
            out.append(tuple(perm))
            return
        a = unpaired[0]
        for b in unpaired[1:]:
            pairing[a] = b
            pairing[b] = a
            if check_point(a) and check_point(b):
                rest = [p for p in unpaired if p not in (a, b)]
                backtrack(rest)
            del pairing[a]
            del pairing[b]
            if limit is not None and len(out) >= limit:
                return

    backtrack(T)
    return out
