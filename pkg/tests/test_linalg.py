import random
from fractions import Fraction

import pytest

from heckehiggs.linalg import (
    char_poly,
    generalized_eigenspace,
    kernel_basis,
    mat_eq,
    mat_is_zero,
    mat_mul,
    nilpotency_test,
    solve_right,
)
from heckehiggs.numfield import NumberField
from heckehiggs.factor import factor_rationals
from heckehiggs.poly import BiPoly, UniPoly, parse_bipoly

X = UniPoly.variable()
F = Fraction


def cofactor_char_poly(mat):
    """Oracle: det(tI - M) by Laplace expansion over bivariate polynomials."""
    n = len(mat)
    rows = [
        [
            BiPoly.t() - BiPoly.from_unipoly(mat[i][j])
            if i == j
            else -BiPoly.from_unipoly(mat[i][j])
            for j in range(n)
        ]
        for i in range(n)
    ]

    def det(m):
        if len(m) == 1:
            return m[0][0]
        total = BiPoly.zero()
        for j in range(len(m)):
            if m[0][j].is_zero():
                continue
            minor = [row[:j] + row[j + 1 :] for row in m[1:]]
            term = m[0][j] * det(minor)
            total = total + term if j % 2 == 0 else total - term
        return total

    return det(rows)


def random_unipoly_matrix(rng, n, max_deg):
    return tuple(
        tuple(
            UniPoly([F(rng.randint(-3, 3)) for _ in range(rng.randint(0, max_deg) + 1)])
            for _ in range(n)
        )
        for _ in range(n)
    )


class TestCharPoly:
    def test_weighted_swap(self):
        mat = ((UniPoly.zero(), UniPoly.one()), (X, UniPoly.zero()))
        assert char_poly(mat) == parse_bipoly("t^2 - x")

    def test_zero_matrix(self):
        z = UniPoly.zero()
        assert char_poly(((z, z, z),) * 3) == parse_bipoly("t^3")

    def test_diagonal(self):
        mat = ((X, UniPoly.zero()), (UniPoly.zero(), X + 1))
        assert char_poly(mat) == parse_bipoly("t - x") * parse_bipoly("t - x - 1")

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_matches_cofactor_oracle(self, n):
        rng = random.Random(10 + n)
        for _ in range(5):
            mat = random_unipoly_matrix(rng, n, 2)
            assert char_poly(mat) == cofactor_char_poly(mat)

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_cayley_hamilton(self, n):
        rng = random.Random(20 + n)
        mat = random_unipoly_matrix(rng, n, 2)
        cp = char_poly(mat)
        bimat = tuple(tuple(BiPoly.from_unipoly(e) for e in row) for row in mat)
        zero = BiPoly.zero()
        acc = tuple(tuple(zero for _ in range(n)) for _ in range(n))
        ident = tuple(
            tuple(BiPoly.one() if i == j else zero for j in range(n)) for i in range(n)
        )
        # Horner in the matrix argument
        for k in range(cp.t_degree, -1, -1):
            acc = mat_mul(acc, bimat)
            c = BiPoly.from_unipoly(cp.tcoeff(k))
            acc = tuple(
                tuple(acc[i][j] + (c if i == j else zero) for j in range(n))
                for i in range(n)
            )
        assert mat_is_zero(acc)

    def test_principal_minor_identity(self):
        # coefficient of t^(r-k) is (-1)^k * sum of principal k x k minors
        rng = random.Random(3)
        for n in (2, 3, 4):
            mat = random_unipoly_matrix(rng, n, 1)
            cp = char_poly(mat)
            from itertools import combinations

            for k in range(1, n + 1):
                total = UniPoly.zero()
                for subset in combinations(range(n), k):
                    sub = [[mat[i][j] for j in subset] for i in subset]
                    total = total + _poly_det(sub)
                expected = total if k % 2 == 0 else -total
                assert cp.tcoeff(n - k) == expected


def _poly_det(m):
    if len(m) == 1:
        return m[0][0]
    total = UniPoly.zero()
    for j in range(len(m)):
        minor = [row[:j] + row[j + 1 :] for row in m[1:]]
        term = m[0][j] * _poly_det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


class TestGeneralizedEigenspace:
    def test_nilpotent_full_space(self):
        mat = ((F(0), F(1)), (F(0), F(0)))
        assert len(generalized_eigenspace(mat, F(0))) == 2

    def test_diagonal(self):
        mat = ((F(1), F(0)), (F(0), F(2)))
        basis = generalized_eigenspace(mat, F(1))
        assert basis == [(F(1), F(0))]

    def test_swap_matrix(self):
        mat = ((F(0), F(1)), (F(1), F(0)))
        basis = generalized_eigenspace(mat, F(1))
        assert len(basis) == 1
        v = basis[0]
        assert v[0] == v[1] != 0

    def test_not_an_eigenvalue(self):
        mat = ((F(1), F(0)), (F(0), F(1)))
        assert generalized_eigenspace(mat, F(5)) == []

    def test_dimensions_sum_to_rank(self):
        rng = random.Random(11)
        for n in (2, 3):
            for _ in range(8):
                mat = tuple(
                    tuple(F(rng.randint(-2, 2)) for _ in range(n)) for _ in range(n)
                )
                poly_mat = tuple(tuple(UniPoly.constant(e) for e in row) for row in mat)
                cp = char_poly(poly_mat)
                spec = UniPoly(tuple(c.coeff(0) for c in cp.tcoeffs))
                _, factors = factor_rationals(spec)
                total = 0
                for minimal, mult in factors:
                    field = NumberField(minimal, trusted=True)
                    basis = generalized_eigenspace(mat, field.generator())
                    total += len(basis) * minimal.degree
                assert total == n


class TestNilpotency:
    def test_upper_triangular(self):
        assert nilpotency_test(((F(0), F(1)), (F(0), F(0))))

    def test_identity(self):
        assert not nilpotency_test(((F(1), F(0)), (F(0), F(1))))

    def test_rank_one_square_zero(self):
        assert nilpotency_test(((F(1), F(-1)), (F(1), F(-1))))


class TestSolvers:
    def test_kernel_of_rank_one(self):
        mat = ((F(1), F(2), F(3)),)
        basis = kernel_basis(mat, F(1))
        assert len(basis) == 2
        for v in basis:
            assert sum(c * x for c, x in zip(mat[0], v)) == 0

    def test_solve_right_consistency(self):
        a = ((F(1), F(1)), (F(0), F(1)))
        b = ((F(3),), (F(2),))
        x = solve_right(a, b, F(1))
        assert mat_eq(mat_mul(a, x), b)

    def test_solve_right_inconsistent(self):
        a = ((F(0), F(1)), (F(0), F(0)))
        b = ((F(0),), (F(1),))
        assert solve_right(a, b, F(1)) is None
