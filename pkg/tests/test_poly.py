from fractions import Fraction

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from heckehiggs.errors import ParseError
from heckehiggs.poly import (
    BiPoly,
    RationalFunction,
    UniPoly,
    bipoly_gcd_t,
    format_bipoly,
    format_unipoly,
    parse_bipoly,
    parse_unipoly,
)

X = UniPoly.variable()


def sylvester_det_oracle(p, q):
    """Independent resultant oracle: Laplace expansion of the Sylvester
    matrix (works for Fraction and UniPoly entries)."""
    pc = list(p.coeffs)
    qc = list(q.coeffs)
    if not pc or not qc:
        return None
    m, n = len(pc) - 1, len(qc) - 1
    size = m + n
    if size == 0:
        return Fraction(1)
    zero = Fraction(0) if isinstance(pc[0], Fraction) else UniPoly.zero()
    rows = []
    for k in range(n):
        row = [zero] * size
        for j, c in enumerate(reversed(pc)):
            row[k + j] = c
        rows.append(row)
    for k in range(m):
        row = [zero] * size
        for j, c in enumerate(reversed(qc)):
            row[k + j] = c
        rows.append(row)

    def det(mat):
        if len(mat) == 1:
            return mat[0][0]
        total = None
        for j in range(len(mat)):
            entry = mat[0][j]
            if entry == 0:
                continue
            minor = [row[:j] + row[j + 1 :] for row in mat[1:]]
            term = entry * det(minor)
            if j % 2 == 1:
                term = -term
            total = term if total is None else total + term
        if total is None:
            return zero
        return total

    return det(rows)


rationals = st.fractions(
    min_value=-4, max_value=4, max_denominator=3
)


def unipolys(max_degree=4):
    return st.lists(rationals, min_size=0, max_size=max_degree + 1).map(UniPoly)


class TestUniPolyArithmetic:
    def test_divrem_worked_example(self):
        q, r = divmod(X**3, X - 2)
        assert q == X**2 + 2 * X + 4
        assert r == UniPoly.constant(8)
        assert q * (X - 2) + r == X**3

    def test_gcd_common_factor(self):
        assert (X**2 - 1).gcd(X - 1) == X - 1

    def test_gcd_is_monic(self):
        g = (2 * X**2 - 2).gcd(4 * X - 4)
        assert g.leading() == 1

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            divmod(X, UniPoly.zero())

    @given(unipolys(), unipolys())
    def test_divmod_remultiplies(self, p, q):
        if q.is_zero():
            return
        quo, rem = divmod(p, q)
        assert quo * q + rem == p
        assert rem.degree < q.degree or rem.is_zero()

    @given(unipolys(3), unipolys(3), unipolys(3))
    def test_distributivity(self, p, q, r):
        assert (p + q) * r == p * r + q * r

    @given(unipolys(3), unipolys(3))
    def test_gcd_divides_both(self, p, q):
        g = p.gcd(q)
        if g.is_zero():
            assert p.is_zero() and q.is_zero()
            return
        assert (p % g).is_zero()
        assert (q % g).is_zero()

    def test_xgcd_bezout(self):
        g, u, v = (X**2 - 1).xgcd(X**2 - 2 * X + 1)
        assert u * (X**2 - 1) + v * (X**2 - 2 * X + 1) == g
        assert g == X - 1

    def test_evaluate(self):
        p = X**2 + Fraction(1, 2)
        assert p.evaluate(Fraction(2)) == Fraction(9, 2)

    def test_compose_and_shift(self):
        p = X**2
        assert p.shift(1) == X**2 + 2 * X + 1
        assert p.compose(X + 1).evaluate(Fraction(0)) == 1

    def test_interpolate(self):
        pts = [(Fraction(0), Fraction(1)), (Fraction(1), Fraction(2)), (Fraction(2), Fraction(5))]
        f = UniPoly.interpolate(pts)
        for x0, y0 in pts:
            assert f.evaluate(x0) == y0


class TestSquarefree:
    def test_constructed_square(self):
        assert ((X - 1) * (X - 1)).squarefree_part() == X - 1

    def test_already_squarefree(self):
        assert (X**2 - 1).squarefree_part() == X**2 - 1

    def test_with_derivative_gcd(self):
        # x^3 - x^2 = x^2 (x - 1); the squarefree part is x(x-1)
        assert (X**3 - X**2).squarefree_part() == X**2 - X

    def test_zero_rejected(self):
        with pytest.raises(ZeroDivisionError):
            UniPoly.zero().squarefree_part()

    @given(unipolys(3))
    def test_squarefree_properties(self, p):
        if p.is_zero() or p.degree < 1:
            return
        s = p.squarefree_part()
        assert (p % s).is_zero()
        assert s.gcd(s.derivative()).degree <= 0


class TestResultant:
    def test_res_t_of_tsquared_minus_x(self):
        chi = parse_bipoly("t^2 - x")
        assert chi.resultant_t(BiPoly.t()) == -X

    def test_res_unit_second_argument(self):
        p = parse_bipoly("t^3 - x*t + 1")
        assert p.resultant_t(BiPoly.one()) == UniPoly.one()

    def test_res_two_lines(self):
        r = parse_bipoly("t - x").resultant_t(parse_bipoly("t - x - 1"))
        assert r == UniPoly.constant(-1)

    @given(unipolys(3), unipolys(3))
    @settings(max_examples=40)
    def test_matches_sylvester_oracle(self, p, q):
        oracle = sylvester_det_oracle(p, q)
        if oracle is None:
            return
        assert p.resultant(q) == oracle

    def test_bivariate_matches_oracle(self):
        chi = parse_bipoly("t^2 - x")
        dchi = chi.derivative_t()
        # treat t-coefficient lists as polynomials over Q[x]
        class Wrap:
            def __init__(self, b):
                self.coeffs = b.tcoeffs

        assert chi.resultant_t(dchi) == sylvester_det_oracle(Wrap(chi), Wrap(dchi))

    def test_common_root_gives_zero(self):
        assert (X**2 - 1).resultant(X - 1) == 0


class TestSqrt:
    @given(unipolys(2))
    def test_square_roundtrip(self, p):
        sq = p * p
        r = sq.sqrt()
        assert r is not None
        assert r * r == sq

    def test_non_squares(self):
        assert (X**2 + 1).sqrt() is None
        assert (X**3).sqrt() is None
        assert (2 * X**2).sqrt() is None


class TestBiPoly:
    def test_substitution_at_t(self):
        assert parse_bipoly("t^2 - x").at_t(0) == -X

    def test_specialize_x(self):
        spec = parse_bipoly("t^2 - x").at_x(Fraction(4))
        assert spec == UniPoly((-4, 0, 1))

    def test_divmod_t_requires_unit_lead(self):
        with pytest.raises(ValueError):
            parse_bipoly("t^2").divmod_t(parse_bipoly("x*t - 1"))

    def test_divmod_t_remultiplies(self):
        p = parse_bipoly("t^4 - x*t^2 + 3")
        d = parse_bipoly("t^2 - x")
        q, r = p.divmod_t(d)
        assert q * d + r == p
        assert r.t_degree < d.t_degree

    def test_gcd_t(self):
        g = bipoly_gcd_t(parse_bipoly("t^2 - x^2"), parse_bipoly("t^2 - 2*x*t + x^2"))
        assert g == parse_bipoly("t - x")


class TestRationalFunction:
    def test_reduction(self):
        rf = RationalFunction(X**2 - 1, X - 1)
        assert rf == RationalFunction(X + 1)
        assert rf.is_polynomial()

    def test_arithmetic(self):
        one_over_x = RationalFunction(UniPoly.one(), X)
        assert one_over_x + one_over_x == RationalFunction(UniPoly.constant(2), X)
        assert one_over_x * RationalFunction(X) == RationalFunction.one()

    def test_zero_denominator(self):
        with pytest.raises(ZeroDivisionError):
            RationalFunction(X, UniPoly.zero())

    def test_evaluate_pole(self):
        with pytest.raises(ZeroDivisionError):
            RationalFunction(UniPoly.one(), X).evaluate(0)


class TestGrammar:
    @pytest.mark.parametrize(
        "text",
        ["t^2 - x", "t^2 - 3/2*x*t + 1", "0", "-x", "2*x*t", "x^3 + 1/7", "t", "t + x"],
    )
    def test_roundtrip(self, text):
        assert format_bipoly(parse_bipoly(text)) == text

    def test_whitespace_insensitive(self):
        assert parse_bipoly("t^2-x") == parse_bipoly(" t^2  -  x ")

    @pytest.mark.parametrize("bad", ["t^^2", "", "t^", "1//2", "x+*3", "y", "x**2", "^2"])
    def test_malformed(self, bad):
        with pytest.raises(ParseError):
            parse_bipoly(bad)

    def test_unipoly_rejects_t(self):
        with pytest.raises(ParseError):
            parse_unipoly("t + 1")

    @given(unipolys(4))
    def test_format_parse_identity(self, p):
        assert parse_unipoly(format_unipoly(p)) == p
