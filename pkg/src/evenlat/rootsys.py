"""Short vectors in definite lattices and ADE root system identification."""

from fractions import Fraction
from math import factorial, floor

from .exact_linalg import IntMatrix


class RootSystemType:
    """Multiset of ADE components, e.g. 7A_1 or A_2+D_5."""

    __slots__ = ("components",)

    def __init__(self, components=()):
        comps = []
        for fam, n in components:
            if fam == "A" and n >= 1:
                pass
            elif fam == "D" and n >= 4:
                pass
            elif fam == "E" and n in (6, 7, 8):
                pass
            else:
                raise ValueError("bad component %s_%d" % (fam, n))
            comps.append((fam, n))
        self.components = tuple(sorted(comps))

    @property
    def rank(self):
        return sum(n for _, n in self.components)

    def root_count(self):
        total = 0
        for fam, n in self.components:
            if fam == "A":
                total += n * (n + 1)
            elif fam == "D":
                total += 2 * n * (n - 1)
            else:
                total += {6: 72, 7: 126, 8: 240}[n]
        return total

    def __eq__(self, other):
        return (isinstance(other, RootSystemType)
                and self.components == other.components)

    def __hash__(self):
        return hash(self.components)

    def __repr__(self):
        return "RootSystemType(%s)" % (str(self),)

    def __str__(self):
        if not self.components:
            return "0"
        counts = {}
        for c in self.components:
            counts[c] = counts.get(c, 0) + 1
        out = []
        for (fam, n), m in sorted(counts.items()):
            name = "%s_%d" % (fam, n)
            out.append(name if m == 1 else "%d%s" % (m, name))
        return "+".join(out)


def parse_type(text):
    """Parse strings like '7A_1', 'A_2+D_5', '2E_8+D_16', '0'."""
    text = text.strip()
    if text in ("0", ""):
        return RootSystemType(())
    comps = []
    for piece in text.split("+"):
        piece = piece.strip()
        i = 0
        while i < len(piece) and piece[i].isdigit():
            i += 1
        mult = int(piece[:i]) if i else 1
        fam = piece[i]
        n = int(piece[i + 1:].lstrip("_"))
        comps.extend([(fam, n)] * mult)
    return RootSystemType(comps)


def weyl_order(t):
    """Order of the Weyl group of an ADE type."""
    total = 1
    for fam, n in t.components:
        if fam == "A":
            total *= factorial(n + 1)
        elif fam == "D":
            total *= 2 ** (n - 1) * factorial(n)
        else:
            total *= {6: 51840, 7: 2903040, 8: 696729600}[n]
    return total


def _cholesky_q(G):
    """Write x^T G x = sum_i d_i (x_i + sum_{j>i} u_ij x_j)^2 for positive
    definite G; returns (d, u) over Fractions."""
    n = G.rows
    a = G.to_fractions()
    d = [Fraction(0)] * n
    u = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        d[i] = a[i][i]
        if d[i] <= 0:
            raise ValueError("matrix is not positive definite")
        for j in range(i + 1, n):
            u[i][j] = a[i][j] / d[i]
        for r in range(i + 1, n):
            for s in range(i + 1, n):
                a[r][s] -= a[r][i] * a[i][s] / d[i]
    return d, u


def vectors_of_norm(L, n):
    """All lattice vectors of the given norm in a definite lattice.

    Complete, duplicate-free, includes both signs, sorted lexicographically.
    """
    t_plus, t_minus = L.signature()
    if t_plus and t_minus:
        raise ValueError("vectors_of_norm requires a definite lattice")
    if L.rank == 0:
        return []
    G = L.gram
    target = n
    if t_minus:
        G = -G
        target = -n
    if target < 0:
        return []
    if target == 0:
        return []
    d, u = _cholesky_q(G)
    rank = L.rank
    out = []
    x = [0] * rank

    def descend(i, remaining):
        # q = sum_{j<=i} d_j (x_j + sum_{k>j} u_jk x_k)^2, filled from the top
        if i < 0:
            if remaining == 0:
                out.append(tuple(x))
            return
        shift = sum(u[i][k] * x[k] for k in range(i + 1, rank))
        # d_i (x_i + shift)^2 <= remaining; walk outwards from the center
        bound = Fraction(remaining) / d[i]
        start = floor(-shift)
        xi = start
        while (xi + shift) ** 2 <= bound:
            x[i] = xi
            descend(i - 1, remaining - d[i] * (xi + shift) ** 2)
            xi -= 1
        xi = start + 1
        while (xi + shift) ** 2 <= bound:
            x[i] = xi
            descend(i - 1, remaining - d[i] * (xi + shift) ** 2)
            xi += 1
        x[i] = 0

    descend(rank - 1, Fraction(target))
    return sorted(out)


def _classify_component(nodes, adj):
    """Classify one connected simply laced Dynkin component."""
    n = len(nodes)
    deg = {v: len(adj[v]) for v in nodes}
    branch = [v for v in nodes if deg[v] >= 3]
    if not branch:
        if any(deg[v] > 2 for v in nodes) or sum(deg.values()) != 2 * (n - 1):
            raise ValueError("not a Dynkin tree")
        return ("A", n)
    if len(branch) != 1 or deg[branch[0]] != 3:
        raise ValueError("not an ADE diagram")
    b = branch[0]
    arms = []
    for start in adj[b]:
        length = 1
        prev, cur = b, start
        while True:
            nxt = [w for w in adj[cur] if w != prev]
            if not nxt:
                break
            if len(nxt) > 1:
                raise ValueError("not an ADE diagram")
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    arms.sort()
    if arms[0] == 1 and arms[1] == 1:
        return ("D", n)
    if arms == [1, 2, 2]:
        return ("E", 6)
    if arms == [1, 2, 3]:
        return ("E", 7)
    if arms == [1, 2, 4]:
        return ("E", 8)
    raise ValueError("not an ADE diagram")


def root_system(L):
    """Root system of a definite lattice (roots of norm -2 or +2).

    Returns (RootSystemType, simple_roots) with simple roots as coordinate
    tuples in the basis of L.
    """
    t_plus, t_minus = L.signature()
    norm = -2 if t_minus else 2
    roots = vectors_of_norm(L, norm)
    if not roots:
        return RootSystemType(()), []
    # a linear functional that cannot vanish on any root: digits in base B
    B = 2 * max(abs(c) for r in roots for c in r) + 1
    weights = [B ** i for i in range(L.rank)]

    def f(v):
        return sum(w * c for w, c in zip(weights, v))

    pos = [r for r in roots if f(r) > 0]
    pos_set = set(pos)
    simple = []
    for r in pos:
        decomposable = any(tuple(a - b for a, b in zip(r, s)) in pos_set
                           for s in pos if s != r)
        if not decomposable:
            simple.append(r)
    G = L.gram

    def pair(v, w):
        return sum(v[i] * G[i, j] * w[j]
                   for i in range(L.rank) for j in range(L.rank))

    nodes = list(range(len(simple)))
    adj = {i: [] for i in nodes}
    for i in nodes:
        for j in nodes:
            if i < j and pair(simple[i], simple[j]) != 0:
                adj[i].append(j)
                adj[j].append(i)
    seen = set()
    comps = []
    for v in nodes:
        if v in seen:
            continue
        stack = [v]
        comp = []
        seen.add(v)
        while stack:
            w = stack.pop()
            comp.append(w)
            for z in adj[w]:
                if z not in seen:
                    seen.add(z)
                    stack.append(z)
        comps.append(comp)
    t = RootSystemType([_classify_component(c, adj) for c in comps])
    if t.root_count() != len(roots):
        raise AssertionError("root count mismatch for the classified type")
    if t.rank != len(simple):
        raise AssertionError("simple root count mismatch")
    return t, simple
