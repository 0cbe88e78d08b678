"""Exact integer and rational matrix kernel.

Everything here works with arbitrary-precision integers or Fractions.
No floating point is used anywhere in this package.
"""

from fractions import Fraction


class IntMatrix:
    """Immutable integer matrix, stored as a tuple of row tuples."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data):
        data = tuple(tuple(int(x) for x in row) for row in data)
        if data:
            ncols = len(data[0])
            for row in data:
                if len(row) != ncols:
                    raise ValueError("ragged rows")
        else:
            ncols = 0
        object.__setattr__(self, "data", data)
        object.__setattr__(self, "rows", len(data))
        object.__setattr__(self, "cols", ncols)

    def __setattr__(self, name, value):
        raise AttributeError("IntMatrix is immutable")

    @classmethod
    def identity(cls, n):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, m, n):
        return cls([[0] * n for _ in range(m)])

    @classmethod
    def diagonal(cls, entries):
        entries = list(entries)
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)]
                    for i in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def __eq__(self, other):
        return isinstance(other, IntMatrix) and self.data == other.data

    def __hash__(self):
        return hash(self.data)

    def __repr__(self):
        return "IntMatrix(%r)" % (list(map(list, self.data)),)

    def row(self, i):
        return self.data[i]

    def column(self, j):
        return tuple(row[j] for row in self.data)

    def transpose(self):
        return IntMatrix(zip(*self.data)) if self.data else IntMatrix([])

    def __add__(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch")
        return IntMatrix([[a + b for a, b in zip(ra, rb)]
                          for ra, rb in zip(self.data, other.data)])

    def __neg__(self):
        return IntMatrix([[-a for a in row] for row in self.data])

    def __mul__(self, other):
        if isinstance(other, int):
            return IntMatrix([[a * other for a in row] for row in self.data])
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        cols = list(zip(*other.data))
        return IntMatrix([[sum(a * b for a, b in zip(row, col)) for col in cols]
                          for row in self.data])

    __rmul__ = __mul__

    def is_symmetric(self):
        return self.rows == self.cols and self.data == self.transpose().data

    def det(self):
        """Determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        a = [list(row) for row in self.data]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k] != 0:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
                a[i][k] = 0
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def to_fractions(self):
        return [[Fraction(x) for x in row] for row in self.data]


class SnfResult:
    """Smith normal form U*M*V = D with unimodular U, V."""

    __slots__ = ("U", "D", "V")

    def __init__(self, U, D, V):
        self.U = U
        self.D = D
        self.V = V

    def diagonal(self):
        d = []
        for i in range(min(self.D.rows, self.D.cols)):
            d.append(self.D[i, i])
        return tuple(d)


def smith_normal_form(M):
    """Smith normal form of an integer matrix.

    Returns SnfResult(U, D, V) with U*M*V = D, D diagonal with
    nonnegative entries d_1 | d_2 | ... , and |det U| = |det V| = 1.
    Pivots are chosen with minimal absolute value to limit growth.
    """
    m, n = M.rows, M.cols
    a = [list(row) for row in M.data]
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    v = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(i, j, c):
        # row i += c * row j
        a[i] = [x + c * y for x, y in zip(a[i], a[j])]
        u[i] = [x + c * y for x, y in zip(u[i], u[j])]

    def add_col(i, j, c):
        # col i += c * col j
        for row in a:
            row[i] += c * row[j]
        for row in v:
            row[i] += c * row[j]

    t = 0
    while t < m and t < n:
        # find nonzero pivot of minimal absolute value
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if a[i][j] != 0 and (best is None or
                                     abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            # clear column t
            dirty = False
            for i in range(t + 1, m):
                if a[i][t] != 0:
                    q = a[i][t] // a[t][t]
                    add_row(i, t, -q)
                    if a[i][t] != 0:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, n):
                if a[t][j] != 0:
                    q = a[t][j] // a[t][t]
                    add_col(j, t, -q)
                    if a[t][j] != 0:
                        swap_cols(t, j)
                        dirty = True
            if dirty:
                continue
            # pivot must divide every remaining entry
            culprit = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if a[i][j] % a[t][t] != 0:
                        culprit = i
                        break
                if culprit is not None:
                    break
            if culprit is None:
                break
            add_row(t, culprit, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1

    return SnfResult(IntMatrix(u), IntMatrix(a), IntMatrix(v))


def inertia(G):
    """Signature (t_plus, t_minus, t_zero) of a symmetric integer matrix.

    Computed by exact rational congruence diagonalization.
    """
    if not G.is_symmetric():
        raise ValueError("inertia requires a symmetric matrix")
    n = G.rows
    a = G.to_fractions()
    plus = minus = zero = 0
    live = list(range(n))
    while live:
        # prefer a nonzero diagonal pivot
        piv = None
        for i in live:
            if a[i][i] != 0:
                piv = i
                break
        if piv is None:
            # all diagonal entries zero: look for off-diagonal entry
            off = None
            for i in live:
                for j in live:
                    if j > i and a[i][j] != 0:
                        off = (i, j)
                        break
                if off:
                    break
            if off is None:
                zero += len(live)
                break
            i, j = off
            # make the diagonal nonzero: row/col i += row/col j
            for k in range(n):
                a[i][k] += a[j][k]
            for k in range(n):
                a[k][i] += a[k][j]
            piv = i
        d = a[piv][piv]
        if d > 0:
            plus += 1
        else:
            minus += 1
        live.remove(piv)
        for i in live:
            if a[i][piv] != 0:
                c = a[i][piv] / d
                for k in range(n):
                    a[i][k] -= c * a[piv][k]
                for k in range(n):
                    a[k][i] -= c * a[k][piv]
    return (plus, minus, zero)


def integer_kernel(M):
    """Saturated basis of {x integer vector : M x = 0}, as matrix columns."""
    snf = smith_normal_form(M)
    d = snf.diagonal()
    rank = sum(1 for x in d if x != 0)
    cols = []
    for j in range(rank, M.cols):
        cols.append(snf.V.column(j))
    if not cols:
        return IntMatrix([[] for _ in range(M.cols)])
    return IntMatrix(list(zip(*cols)))


def rational_inverse(M):
    """Exact inverse of a nonsingular matrix, as rows of Fractions."""
    if M.rows != M.cols:
        raise ValueError("inverse of non-square matrix")
    n = M.rows
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(M.data)]
    for k in range(n):
        piv = None
        for i in range(k, n):
            if a[i][k] != 0:
                piv = i
                break
        if piv is None:
            raise ValueError("singular matrix")
        a[k], a[piv] = a[piv], a[k]
        d = a[k][k]
        a[k] = [x / d for x in a[k]]
        for i in range(n):
            if i != k and a[i][k] != 0:
                c = a[i][k]
                a[i] = [x - c * y for x, y in zip(a[i], a[k])]
    return [row[n:] for row in a]


def solve_rational(M, b):
    """Solve M x = b exactly; M square nonsingular, b a sequence."""
    inv = rational_inverse(M)
    return [sum(r * Fraction(x) for r, x in zip(row, b)) for row in inv]
