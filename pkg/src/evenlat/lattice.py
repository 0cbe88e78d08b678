"""Lattices given by Gram matrices, and their sublattice calculus.

A lattice here is a free Z-module with a nondegenerate integral symmetric
bilinear form.  The discriminant machinery (quotient group, quadratic form
on it) only applies to even lattices.
"""

from fractions import Fraction

from .exact_linalg import (IntMatrix, smith_normal_form, inertia,
                           integer_kernel, rational_inverse)


class DegenerateError(ValueError):
    """Gram matrix is singular."""


class OddLatticeError(ValueError):
    """Operation requires an even lattice."""


class Lattice:
    """Even or odd nondegenerate lattice with a distinguished basis."""

    __slots__ = ("gram", "labels", "_even", "_det")

    def __init__(self, gram, labels=None):
        if not isinstance(gram, IntMatrix):
            gram = IntMatrix(gram)
        if not gram.is_symmetric():
            raise ValueError("Gram matrix must be symmetric")
        det = gram.det()
        if gram.rows > 0 and det == 0:
            raise DegenerateError("Gram matrix is degenerate")
        object.__setattr__(self, "gram", gram)
        object.__setattr__(self, "labels",
                           tuple(labels) if labels is not None else None)
        object.__setattr__(self, "_even",
                           all(gram[i, i] % 2 == 0 for i in range(gram.rows)))
        object.__setattr__(self, "_det", det)

    def __setattr__(self, name, value):
        raise AttributeError("Lattice is immutable")

    @property
    def rank(self):
        return self.gram.rows

    @property
    def is_even(self):
        return self._even

    def det(self):
        return self._det

    def signature(self):
        t_plus, t_minus, _ = inertia(self.gram)
        return (t_plus, t_minus)

    def is_definite(self):
        t_plus, t_minus = self.signature()
        return t_plus == 0 or t_minus == 0

    def __eq__(self, other):
        return isinstance(other, Lattice) and self.gram == other.gram

    def __repr__(self):
        return "Lattice(%r)" % (list(map(list, self.gram.data)),)


class Sublattice:
    """Sublattice of an ambient lattice, basis columns in ambient coordinates."""

    __slots__ = ("ambient", "basis")

    def __init__(self, ambient, basis):
        if not isinstance(basis, IntMatrix):
            basis = IntMatrix(basis)
        if basis.rows != ambient.rank:
            raise ValueError("basis rows must match ambient rank")
        snf = smith_normal_form(basis)
        if any(x == 0 for x in snf.diagonal()) or basis.cols > basis.rows:
            raise ValueError("basis must have full column rank")
        self.ambient = ambient
        self.basis = basis

    @property
    def rank(self):
        return self.basis.cols

    def gram(self):
        return self.basis.transpose() * self.ambient.gram * self.basis

    def as_lattice(self):
        return Lattice(self.gram())


class FiniteQuadraticForm:
    """Finite abelian group with a quadratic form q (Q/2Z) and bilinear b (Q/Z).

    orders: invariant factors d_1 | d_2 | ... | d_n, each > 1.
    values stored as Fractions reduced into [0, 2) and [0, 1).
    """

    __slots__ = ("orders", "q_diag", "b_mat")

    def __init__(self, orders, q_diag, b_mat):
        orders = tuple(int(d) for d in orders)
        n = len(orders)
        for i in range(n - 1):
            if orders[i + 1] % orders[i] != 0:
                raise ValueError("orders must form a divisibility chain")
        if any(d <= 1 for d in orders):
            raise ValueError("orders must be > 1")
        q_diag = tuple(Fraction(x) % 2 for x in q_diag)
        b_mat = tuple(tuple(Fraction(x) % 1 for x in row) for row in b_mat)
        if len(q_diag) != n or len(b_mat) != n:
            raise ValueError("value tables must match the generator count")
        for i in range(n):
            if (q_diag[i] * orders[i] * orders[i]) % 2 != 0:
                raise ValueError("q value not defined on the quotient")
            for j in range(n):
                if b_mat[i][j] != b_mat[j][i]:
                    raise ValueError("b must be symmetric")
                if (b_mat[i][j] * orders[min(i, j)]) % 1 != 0:
                    raise ValueError("b value not defined on the quotient")
            if (b_mat[i][i] - q_diag[i]) % 1 != 0:
                raise ValueError("b(g,g) inconsistent with q(g)")
        self.orders = orders
        self.q_diag = q_diag
        self.b_mat = b_mat

    @property
    def order(self):
        n = 1
        for d in self.orders:
            n *= d
        return n

    @property
    def ngens(self):
        return len(self.orders)

    def elements(self):
        """All group elements as coefficient tuples on the generators."""
        elems = [()]
        for d in self.orders:
            elems = [e + (c,) for e in elems for c in range(d)]
        return elems

    def q(self, x):
        """q of an element given by generator coefficients, in [0, 2)."""
        total = Fraction(0)
        n = self.ngens
        for i in range(n):
            total += x[i] * x[i] * self.q_diag[i]
            for j in range(i + 1, n):
                total += 2 * x[i] * x[j] * self.b_mat[i][j]
        return total % 2

    def b(self, x, y):
        """b of two elements, in [0, 1)."""
        total = Fraction(0)
        n = self.ngens
        for i in range(n):
            for j in range(n):
                if i == j:
                    bij = self.q_diag[i] % 1
                else:
                    bij = self.b_mat[i][j]
                total += x[i] * y[j] * bij
        return total % 1

    def __eq__(self, other):
        return (isinstance(other, FiniteQuadraticForm)
                and self.orders == other.orders
                and self.q_diag == other.q_diag
                and self.b_mat == other.b_mat)

    def __repr__(self):
        return "FiniteQuadraticForm(orders=%r)" % (self.orders,)


TRIVIAL_FQF = None  # set below


class _TrivialFqf(FiniteQuadraticForm):
    def __init__(self):
        self.orders = ()
        self.q_diag = ()
        self.b_mat = ()


TRIVIAL_FQF = _TrivialFqf()


def direct_sum(L1, L2):
    n1, n2 = L1.rank, L2.rank
    rows = []
    for i in range(n1):
        rows.append(list(L1.gram.row(i)) + [0] * n2)
    for i in range(n2):
        rows.append([0] * n1 + list(L2.gram.row(i)))
    labels = None
    if L1.labels is not None and L2.labels is not None:
        labels = L1.labels + L2.labels
    return Lattice(rows, labels)


def rescale(L, lam):
    if lam == 0:
        raise ValueError("scale factor must be nonzero")
    return Lattice(L.gram * int(lam), L.labels)


def discriminant_group(L):
    """Invariant factors (> 1) of the discriminant group, ascending."""
    snf = smith_normal_form(L.gram)
    return tuple(d for d in snf.diagonal() if d > 1)


def _discriminant_generators(L):
    """Generators of dual/lattice quotient as rational vectors in L coordinates.

    Returns (orders, gens) where gens[i] is a vector of Fractions giving a
    dual vector whose class has order orders[i]; orders ascending so the
    largest invariant factor comes last.
    """
    snf = smith_normal_form(L.gram)
    d = snf.diagonal()
    ginv = rational_inverse(L.gram)
    orders = []
    gens = []
    uinv = rational_inverse(snf.U)
    n = L.rank
    for i in range(n):
        if d[i] > 1:
            # class generator in dual-functional coordinates: column i of U^-1
            w = [uinv[r][i] for r in range(n)]
            # convert functional to a rational vector via gram^-1
            vec = [sum(ginv[r][s] * w[s] for s in range(n)) for r in range(n)]
            orders.append(d[i])
            gens.append(vec)
    return tuple(orders), gens


def _pairing(L, v, w):
    g = L.gram
    n = L.rank
    return sum(v[i] * g[i, j] * w[j] for i in range(n) for j in range(n))


def discriminant_form(L):
    """Discriminant quadratic form of an even lattice."""
    if not L.is_even:
        raise OddLatticeError("discriminant form requires an even lattice")
    orders, gens = _discriminant_generators(L)
    if not orders:
        return TRIVIAL_FQF
    q_diag = [_pairing(L, v, v) % 2 for v in gens]
    n = len(gens)
    b_mat = [[_pairing(L, gens[i], gens[j]) % 1 for j in range(n)]
             for i in range(n)]
    return FiniteQuadraticForm(orders, q_diag, b_mat)


def discriminant_bilinear_form(L):
    """Bilinear discriminant form; also valid for odd lattices."""
    orders, gens = _discriminant_generators(L)
    n = len(gens)
    b_mat = [[_pairing(L, gens[i], gens[j]) % 1 for j in range(n)]
             for i in range(n)]
    return orders, b_mat


def saturate(sub):
    """Primitive closure [sub]_pr inside the ambient lattice."""
    B = sub.basis
    snf = smith_normal_form(B)
    # B = U^-1 D V^-1; the Q-span is generated over Z, primitively, by the
    # first r columns of U^-1.
    r = sub.rank
    uinv = rational_inverse(snf.U)
    cols = []
    for j in range(r):
        col = [uinv[i][j] for i in range(B.rows)]
        if any(x.denominator != 1 for x in col):
            raise AssertionError("unimodular inverse must be integral")
        cols.append([x.numerator for x in col])
    return Sublattice(sub.ambient, IntMatrix(list(zip(*cols))))


def orthogonal_complement(sub):
    """Primitive sublattice orthogonal to sub inside the ambient lattice."""
    M = sub.basis.transpose() * sub.ambient.gram
    K = integer_kernel(M)
    return Sublattice(sub.ambient, K)


def overlattice(L, glue):
    """Even overlattice generated by L and lifts of glue classes.

    glue: sequence of rational vectors (Fractions, in L coordinates) whose
    classes are isotropic for q_L and pairwise orthogonal for b_L.
    Returns (lattice, basis) where basis columns give the new basis in the
    old coordinates, as a matrix of Fractions.
    """
    if not L.is_even:
        raise OddLatticeError("overlattice construction requires an even lattice")
    n = L.rank
    glue = [[Fraction(x) for x in v] for v in glue]
    for v in glue:
        if _pairing(L, v, v) % 2 != 0:
            raise ValueError("glue class is not isotropic")
        for i in range(n):
            e = [Fraction(int(i == k)) for k in range(n)]
            if _pairing(L, v, e) % 1 != 0:
                raise ValueError("glue vector does not pair integrally with L")
    for i in range(len(glue)):
        for j in range(i + 1, len(glue)):
            if _pairing(L, glue[i], glue[j]) % 1 != 0:
                raise ValueError("glue classes are not orthogonal")
    denom = 1
    for v in glue:
        for x in v:
            denom = denom * x.denominator // _gcd(denom, x.denominator)
    cols = []
    for i in range(n):
        cols.append([denom * int(i == k) for k in range(n)])
    for v in glue:
        cols.append([int(x * denom) for x in v])
    M = IntMatrix(list(zip(*cols)))
    # column span of M over Z = denom * (new lattice); extract a basis
    snf = smith_normal_form(M)
    uinv = rational_inverse(snf.U)
    d = snf.diagonal()
    basis_cols = []
    for j in range(n):
        col = [uinv[i][j] * d[j] / denom for i in range(n)]
        basis_cols.append(col)
    gram = [[_pairing(L, basis_cols[i], basis_cols[j]) for j in range(n)]
            for i in range(n)]
    for row in gram:
        for x in row:
            if x.denominator != 1:
                raise ValueError("glue does not produce an integral lattice")
    basis = tuple(tuple(basis_cols[i][r] for i in range(n)) for r in range(n))
    return Lattice([[int(x) for x in row] for row in gram]), basis


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a
