"""Integer/rational matrix kernel: frozen oracles plus property tests."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from evenlat.exact_linalg import (IntMatrix, smith_normal_form, inertia,
                                  integer_kernel, rational_inverse,
                                  solve_rational)


def _rand_matrix(rng, m, n, bound=9):
    return IntMatrix([[rng.randint(-bound, bound) for _ in range(n)]
                      for _ in range(m)])


small_dims = st.integers(min_value=1, max_value=5)
entries = st.integers(min_value=-9, max_value=9)


def matrix_strategy(m, n):
    return st.lists(st.lists(entries, min_size=n, max_size=n),
                    min_size=m, max_size=m).map(IntMatrix)


class TestIntMatrix:
    def test_identity_multiplication(self):
        M = IntMatrix([[1, 2], [3, 4]])
        assert IntMatrix.identity(2) * M == M
        assert M * IntMatrix.identity(2) == M

    def test_immutable(self):
        M = IntMatrix([[1]])
        with pytest.raises(AttributeError):
            M.rows = 2

    def test_ragged_rejected(self):
        with pytest.raises(ValueError):
            IntMatrix([[1, 2], [3]])

    def test_det_known(self):
        # 2x2 and 3x3 determinants computed by hand
        assert IntMatrix([[1, 2], [3, 4]]).det() == -2
        assert IntMatrix([[2, 1, 0], [1, 2, 1], [0, 1, 2]]).det() == 4
        assert IntMatrix.identity(4).det() == 1
        assert IntMatrix([[0, 1], [1, 0]]).det() == -1

    def test_det_singular(self):
        assert IntMatrix([[1, 2], [2, 4]]).det() == 0

    def test_transpose(self):
        M = IntMatrix([[1, 2, 3], [4, 5, 6]])
        assert M.transpose() == IntMatrix([[1, 4], [2, 5], [3, 6]])

    def test_det_multiplicative_random(self):
        rng = random.Random(1)
        for _ in range(50):
            A = _rand_matrix(rng, 4, 4)
            B = _rand_matrix(rng, 4, 4)
            assert (A * B).det() == A.det() * B.det()


class TestSmithNormalForm:
    def _check_contract(self, M):
        snf = smith_normal_form(M)
        assert snf.U * M * snf.V == snf.D
        assert abs(snf.U.det()) == 1
        assert abs(snf.V.det()) == 1
        d = snf.diagonal()
        # diagonal, nonnegative, divisibility chain
        for i in range(snf.D.rows):
            for j in range(snf.D.cols):
                if i != j:
                    assert snf.D[i, j] == 0
        assert all(x >= 0 for x in d)
        nonzero = [x for x in d if x]
        for a, b in zip(nonzero, nonzero[1:]):
            assert b % a == 0
        # zeros only at the tail
        if 0 in d:
            assert all(x == 0 for x in d[d.index(0):])

    def test_known_diagonal(self):
        # hand-computed invariant factors
        M = IntMatrix([[2, 4, 4], [-6, 6, 12], [10, 4, 16]])
        assert smith_normal_form(M).diagonal() == (2, 2, 156)

    def test_known_a2(self):
        assert smith_normal_form(IntMatrix([[2, -1], [-1, 2]])).diagonal() \
            == (1, 3)

    def test_rectangular(self):
        self._check_contract(IntMatrix([[1, 2, 3], [4, 5, 6]]))
        self._check_contract(IntMatrix([[1], [2], [3]]))

    def test_zero_matrix(self):
        snf = smith_normal_form(IntMatrix.zero(2, 3))
        assert snf.diagonal() == (0, 0)

    def test_random_contract(self):
        rng = random.Random(2)
        for _ in range(100):
            m = rng.randint(1, 5)
            n = rng.randint(1, 5)
            self._check_contract(_rand_matrix(rng, m, n))

    @settings(max_examples=60, deadline=None)
    @given(st.integers(1, 4).flatmap(
        lambda m: st.integers(1, 4).flatmap(lambda n: matrix_strategy(m, n))))
    def test_property_contract(self, M):
        self._check_contract(M)


class TestInertia:
    def test_known(self):
        assert inertia(IntMatrix.diagonal([2, -2, 0])) == (1, 1, 1)
        assert inertia(IntMatrix([[0, 1], [1, 0]])) == (1, 1, 0)
        assert inertia(IntMatrix([[2, -1], [-1, 2]])) == (2, 0, 0)

    def test_requires_symmetric(self):
        with pytest.raises(ValueError):
            inertia(IntMatrix([[0, 1], [2, 0]]))

    def test_congruence_invariance(self):
        # inertia(G) == inertia(B^T G B) for invertible B
        rng = random.Random(3)
        for _ in range(60):
            n = rng.randint(1, 4)
            A = _rand_matrix(rng, n, n)
            G = A + A.transpose()
            while True:
                B = _rand_matrix(rng, n, n, 3)
                if B.det() != 0:
                    break
            assert inertia(G) == inertia(B.transpose() * G * B)

    def test_sums_to_rank(self):
        rng = random.Random(4)
        for _ in range(40):
            n = rng.randint(1, 5)
            A = _rand_matrix(rng, n, n)
            G = A + A.transpose()
            assert sum(inertia(G)) == n


class TestKernelAndInverse:
    def test_integer_kernel_annihilates(self):
        rng = random.Random(5)
        for _ in range(60):
            m = rng.randint(1, 4)
            n = rng.randint(1, 5)
            M = _rand_matrix(rng, m, n)
            K = integer_kernel(M)
            if K.cols:
                assert M * K == IntMatrix.zero(m, K.cols)
            snf = smith_normal_form(M)
            rank = sum(1 for x in snf.diagonal() if x)
            assert K.cols == n - rank
            if K.cols:
                # saturated: elementary divisors of the kernel basis are 1
                assert set(smith_normal_form(K).diagonal()) == {1}

    def test_kernel_known(self):
        K = integer_kernel(IntMatrix([[1, 2, 3]]))
        assert K.cols == 2
        assert IntMatrix([[1, 2, 3]]) * K == IntMatrix.zero(1, 2)

    def test_rational_inverse(self):
        M = IntMatrix([[2, 1], [7, 4]])
        inv = rational_inverse(M)
        assert inv == [[Fraction(4), Fraction(-1)],
                       [Fraction(-7), Fraction(2)]]

    def test_rational_inverse_random(self):
        rng = random.Random(6)
        done = 0
        while done < 40:
            n = rng.randint(1, 4)
            M = _rand_matrix(rng, n, n)
            if M.det() == 0:
                continue
            inv = rational_inverse(M)
            prod = [[sum(Fraction(M[i, k]) * inv[k][j] for k in range(n))
                     for j in range(n)] for i in range(n)]
            assert prod == [[Fraction(int(i == j)) for j in range(n)]
                            for i in range(n)]
            done += 1

    def test_rational_inverse_singular(self):
        with pytest.raises(ValueError):
            rational_inverse(IntMatrix([[1, 2], [2, 4]]))

    def test_solve_rational(self):
        M = IntMatrix([[2, 1], [1, 1]])
        x = solve_rational(M, [5, 3])
        assert x == [Fraction(2), Fraction(1)]
