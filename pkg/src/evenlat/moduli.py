"""Isometry groups of definite lattices, orthogonal groups of finite
quadratic forms, the natural map between them, and moduli-component counts."""

from fractions import Fraction

from .exact_linalg import IntMatrix, smith_normal_form
from .lattice import FiniteQuadraticForm, _discriminant_generators
from .rootsys import root_system, vectors_of_norm, weyl_order as _weyl_order


class BudgetExceeded(RuntimeError):
    pass


class IsometryGroup:
    """Full orthogonal group of a definite lattice, as explicit matrices."""

    __slots__ = ("lattice", "elements", "order", "proper_order",
                 "weyl_order", "root_type")

    def __init__(self, lattice, elements, weyl_order, root_type):
        self.lattice = lattice
        self.elements = elements
        self.order = len(elements)
        self.proper_order = sum(1 for g in elements if g.det() == 1)
        self.weyl_order = weyl_order
        self.root_type = root_type

    @property
    def generators(self):
        return self.elements


def isometry_group(L, rank_bound=8, budget=10 ** 5):
    """All isometries of a definite lattice by image backtracking."""
    t_plus, t_minus = L.signature()
    if t_plus and t_minus:
        raise ValueError("isometry_group requires a definite lattice")
    if L.rank > rank_bound:
        raise BudgetExceeded("rank %d exceeds bound %d" % (L.rank, rank_bound))
    n = L.rank
    G = L.gram
    cand = {}
    for i in range(n):
        norm = G[i, i]
        if norm not in cand:
            cand[norm] = vectors_of_norm(L, norm)

    def pair(v, w):
        return sum(v[a] * G[a, b] * w[b] for a in range(n) for b in range(n))

    pairings = {}

    def cached_pair(v, w):
        key = (v, w)
        if key not in pairings:
            pairings[key] = pair(v, w)
        return pairings[key]

    images = [None] * n
    found = []

    def backtrack(i):
        if i == n:
            M = IntMatrix(list(zip(*images)))
            if abs(M.det()) == 1:
                found.append(M)
                if len(found) > budget:
                    raise BudgetExceeded("more than %d isometries" % budget)
            return
        for v in cand[G[i, i]]:
            ok = True
            for j in range(i):
                if cached_pair(images[j], v) != G[j, i]:
                    ok = False
                    break
            if ok:
                images[i] = v
                backtrack(i + 1)
        images[i] = None

    backtrack(0)
    for M in found:
        if M.transpose() * G * M != G:
            raise AssertionError("isometry check failed")
    rt, simple = root_system(L)
    w = _weyl_order(rt)
    grp = IsometryGroup(L, found, w, rt)
    if grp.order <= 200:
        _check_closure(grp)
    if grp.order <= 1000 and rt.components:
        if len(weyl_subgroup(L)) != w:
            raise AssertionError("explicit Weyl generation disagrees with "
                                 "the standard order formula")
    return grp


def _check_closure(grp):
    elems = set(grp.elements)
    for a in grp.elements:
        for b in grp.elements:
            if a * b not in elems:
                raise AssertionError("isometry set is not closed")


def weyl_subgroup(L):
    """Explicit reflection subgroup generated by the norm +-2 roots."""
    n = L.rank
    G = L.gram
    norm = 2 if L.signature()[0] else -2
    roots = vectors_of_norm(L, norm)
    refls = []
    for r in roots:
        cols = []
        for i in range(n):
            e = tuple(int(i == k) for k in range(n))
            ip = sum(e[a] * G[a, b] * r[b] for a in range(n) for b in range(n))
            cols.append([e[k] - 2 * ip * r[k] // norm for k in range(n)])
        refls.append(IntMatrix(list(zip(*cols))))
    ident = IntMatrix.identity(n)
    group = {ident}
    frontier = [ident]
    while frontier:
        new = []
        for g in frontier:
            for s in refls:
                h = s * g
                if h not in group:
                    group.add(h)
                    new.append(h)
        frontier = new
    return group


class FqfGroupReport:
    """O(q) of a finite quadratic form; elements are generator-image tuples."""

    __slots__ = ("form", "elements", "order")

    def __init__(self, form, elements):
        self.form = form
        self.elements = elements
        self.order = len(elements)


def _fqf_order_of(F, x):
    o = 1
    for c, d in zip(x, F.orders):
        c %= d
        if c:
            part = d // _gcd(c, d)
            o = o * part // _gcd(o, part)
    return o


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _apply(F, images, x):
    """Image of element x under the map sending generator i to images[i]."""
    n = F.ngens
    out = [0] * n
    for i in range(n):
        if x[i]:
            for k in range(n):
                out[k] = (out[k] + x[i] * images[i][k]) % F.orders[k]
    return tuple(out)


def oq_group(F, budget=10 ** 4):
    """All automorphisms of the group preserving q (hence b)."""
    if F.ngens == 0:
        return FqfGroupReport(F, [tuple()])
    if F.order > budget:
        raise BudgetExceeded("group order %d exceeds budget %d"
                             % (F.order, budget))
    elems = F.elements()
    qv = {e: F.q(e) for e in elems}
    gens = [tuple(int(i == j) for j in range(F.ngens))
            for i in range(F.ngens)]
    cand = []
    for i, g in enumerate(gens):
        cand.append([e for e in elems
                     if qv[e] == qv[g] and _fqf_order_of(F, e) == F.orders[i]])
    n = F.ngens
    images = [None] * n
    found = []

    def surjective():
        reached = {tuple([0] * n)}
        frontier = [tuple([0] * n)]
        while frontier:
            new = []
            for e in frontier:
                for img in images:
                    s = tuple((a + b) % d
                              for a, b, d in zip(e, img, F.orders))
                    if s not in reached:
                        reached.add(s)
                        new.append(s)
            frontier = new
        return len(reached) == F.order

    def backtrack(i):
        if i == n:
            if surjective():
                found.append(tuple(images))
            return
        g = gens[i]
        for e in cand[i]:
            ok = True
            for j in range(i):
                if F.b(g, gens[j]) != F.b(e, images[j]):
                    ok = False
                    break
            if ok:
                images[i] = e
                backtrack(i + 1)
        images[i] = None

    backtrack(0)
    # full value-preservation check on small groups
    if F.order <= 1024:
        for phi in found:
            for e in elems:
                if qv[_apply(F, phi, e)] != qv[e]:
                    raise AssertionError("O(q) element does not preserve q")
    return FqfGroupReport(F, found)


def compose(F, f, g):
    """(f after g) as generator images."""
    return tuple(_apply(F, f, img) for img in g)


def invert(F, f):
    """Inverse automorphism by searching the cyclic closure."""
    ident = tuple(tuple(int(i == j) for j in range(F.ngens))
                  for i in range(F.ngens))
    cur = f
    prev = ident
    while cur != ident:
        prev = cur
        cur = compose(F, f, cur)
    return prev


def oq_images(L, subgroup="full", rank_bound=8, budget=10 ** 5):
    """Induced maps on the discriminant group from O(L) or O+(L).

    Returns (form, set of automorphisms as generator-image tuples).
    """
    from .lattice import discriminant_form
    grp = isometry_group(L, rank_bound=rank_bound, budget=budget)
    F = discriminant_form(L)
    orders, gens = _discriminant_generators(L)
    snf = smith_normal_form(L.gram)
    n = L.rank
    live = [i for i in range(n) if snf.diagonal()[i] > 1]

    def coeffs(w):
        # class coordinates of a dual vector w (rational, L coordinates)
        f = [sum(L.gram[r, s] * w[s] for s in range(n)) for r in range(n)]
        c = []
        for i in live:
            val = sum(snf.U[i, r] * f[r] for r in range(n))
            if val % 1 != 0:
                raise AssertionError("dual vector does not pair integrally")
            c.append(int(val) % snf.diagonal()[i])
        return tuple(c)

    images = set()
    for M in grp.elements:
        if subgroup == "proper" and M.det() != 1:
            continue
        phi = []
        for v in gens:
            w = [sum(Fraction(M[r, s]) * v[s] for s in range(n))
                 for r in range(n)]
            phi.append(coeffs(w))
        images.add(tuple(phi))
    return F, images


def image_in_oq(L, subgroup="full", rank_bound=8, budget=10 ** 5):
    """Order of the image of O(L) (or O+(L)) in O(q_L)."""
    _, images = oq_images(L, subgroup, rank_bound, budget)
    return len(images)


def strong_component_count(T, budget=10 ** 4):
    """M_s = |O(q_T)| * |W+(T)| / |O+(T)| for a definite rank-3 lattice."""
    if T.rank != 3:
        raise ValueError("strong_component_count expects rank 3")
    from .lattice import discriminant_form
    grp = isometry_group(T)
    F = discriminant_form(T)
    oq = oq_group(F, budget=budget)
    weyl = weyl_subgroup(T)
    w_plus = sum(1 for g in weyl if g.det() == 1)
    num = oq.order * w_plus
    if num % grp.proper_order:
        raise AssertionError("M_s is not integral")
    return num // grp.proper_order


def subgroup_closure(F, gens):
    ident = tuple(tuple(int(i == j) for j in range(F.ngens))
                  for i in range(F.ngens))
    group = {ident}
    frontier = [ident]
    gens = list(gens)
    while frontier:
        new = []
        for g in frontier:
            for s in gens:
                h = compose(F, s, g)
                if h not in group:
                    group.add(h)
                    new.append(h)
        frontier = new
    return group


def double_coset_count(F, gens_a, gens_b, budget=10 ** 4):
    """Number of double cosets A\\O(q)/B for subgroups given by generators."""
    oq = oq_group(F, budget=budget)
    A = subgroup_closure(F, gens_a)
    B = subgroup_closure(F, gens_b)
    remaining = set(oq.elements)
    count = 0
    while remaining:
        g = remaining.pop()
        count += 1
        frontier = [g]
        seen = {g}
        while frontier:
            new = []
            for x in frontier:
                for a in A:
                    y = compose(F, a, x)
                    if y in remaining:
                        remaining.discard(y)
                        seen.add(y)
                        new.append(y)
                for b in B:
                    y = compose(F, x, b)
                    if y in remaining:
                        remaining.discard(y)
                        seen.add(y)
                        new.append(y)
            frontier = new
    return count
