"""Spectral construction: characteristic data, the spectral curve, fiberwise
eigen-analysis, the correspondence in both directions, and the stability
certificate.

The first component of a pair determines characteristic coefficients
s_i (sections of O(i*a)) and the plane curve

    chi(x, t)  =  t^r - s_1 t^(r-1) + ... + (-1)^r s_r  =  0

inside the total space of O(a).  When chi is integral (squarefree and
irreducible over Q(x)) the pair is equivalent to rank-1 data on the curve:
the multiplier psi expressing the second component as a function-field
polynomial in the first.  The backward direction realizes the structure
module: basis 1, t, ..., t^(r-1), companion matrix, multiplication by psi.

Sign convention: with the kernel-of-evaluation presentation used here the
marked-point eigenvalue is +lambda_i * y.  The opposite convention (reading
the marked scalars with a minus sign) differs only by flipping lambda, so
every fiberwise check takes a sign in {+1, -1}, default +1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    CommutationError,
    DegreeBoundError,
    EigenvalueConditionError,
    NonIntegralError,
    NotInCommutantError,
    UnsupportedRankError,
    ValidationError,
)
from .factor import (
    factor_rationals,
    geometric_factor_warning,
    irreducible_over_function_field,
    squarefree_over_function_field,
)
from .hecke import HeckeData, HeckePoint, require_valid
from .higgs import HiggsPair, TwistedHiggsField, check_commutation, ensure_consistent, reconstruct
from .linalg import (
    char_poly,
    generalized_eigenspace,
    lift_matrix,
    mat_eq,
    mat_mul,
    nilpotency_test,
    solve_right,
)
from .numfield import NumberField, NumberFieldElement
from .poly import (
    BiPoly,
    RationalFunction,
    UniPoly,
    format_bipoly,
    format_unipoly,
)
from .projline import (
    LineBundle,
    Section,
    SplitBundle,
    TwistedEndo,
    endo_scalar,
    evaluate_endo,
    require_valid_endo,
    validate_twisted_endo,
)


@dataclass(frozen=True)
class CharData:
    """Characteristic coefficients s_1..s_r; s_i is a section of O(i*a)."""

    a: int
    sections: tuple

    @property
    def rank(self) -> int:
        return len(self.sections)


@dataclass(frozen=True)
class SpectralCurve:
    """chi(x, t) monic of t-degree r, with t^(r-i) coefficient (-1)^i s_i."""

    chi: BiPoly
    a: int
    r: int

    def __post_init__(self):
        if self.chi.t_degree != self.r or not self.chi.is_monic_in_t():
            raise ValidationError("curve polynomial must be monic in t of degree r")
        for i in range(1, self.r + 1):
            if self.chi.tcoeff(self.r - i).degree > i * self.a:
                raise ValidationError(
                    f"t^{self.r - i} coefficient exceeds its x-degree bound {i * self.a}"
                )


@dataclass(frozen=True)
class SpectralFiberPoint:
    """One conjugate class of points of the curve above a rational base point."""

    base_x: Fraction
    field: NumberField
    y: NumberFieldElement
    multiplicity: int


@dataclass(frozen=True)
class SpectralData:
    """Rank-1 datum on the curve: the multiplier psi (t-degree < r) with a
    cleared polynomial denominator, plus the second twist degree."""

    curve: SpectralCurve
    psi: BiPoly
    psi_denominator: UniPoly
    b: int

    def __post_init__(self):
        if self.psi.t_degree >= self.curve.r:
            raise ValidationError("multiplier must have t-degree < r")
        if self.psi_denominator.is_zero():
            raise ValidationError("zero multiplier denominator")


def char_coefficients(endo: TwistedEndo) -> CharData:
    """s_i = (-1)^i times the t^(r-i) coefficient of det(tI - M); equals the
    trace of the i-th exterior power."""
    require_valid_endo(endo, "twisted endomorphism")
    cp = char_poly(endo.entries)
    r = endo.rank
    a = endo.twist
    sections = []
    for i in range(1, r + 1):
        s = cp.tcoeff(r - i)
        if i % 2 == 1:
            s = -s
        sections.append(Section(LineBundle(i * a), s))
    return CharData(a, tuple(sections))


def build_spectral_curve(data: CharData) -> SpectralCurve:
    """t^r - s_1 t^(r-1) + ... + (-1)^r s_r."""
    r = data.rank
    tcoeffs = [UniPoly.zero()] * (r + 1)
    tcoeffs[r] = UniPoly.one()
    for i, section in enumerate(data.sections, start=1):
        tcoeffs[r - i] = section.poly if i % 2 == 0 else -section.poly
    return SpectralCurve(BiPoly(tuple(tcoeffs)), data.a, r)


def curve_of(endo: TwistedEndo) -> SpectralCurve:
    return build_spectral_curve(char_coefficients(endo))


def is_integral(curve: SpectralCurve):
    """Reduced and irreducible over Q(x), with a certificate.

    Irreducibility is certified over the rational function field; a
    best-effort warning flags curves that factor over a constant quadratic
    extension (geometric reducibility) without affecting the verdict.
    """
    chi = curve.chi
    certificate = {}
    squarefree = squarefree_over_function_field(chi)
    certificate["squarefree"] = squarefree
    if not squarefree:
        from .poly import bipoly_gcd_t

        rep = bipoly_gcd_t(chi, chi.derivative_t())
        certificate["irreducible"] = False
        certificate["factor"] = format_bipoly(rep)
        certificate["reason"] = "repeated factor"
        return False, certificate
    verdict, witness = irreducible_over_function_field(chi)
    certificate["irreducible"] = verdict
    if verdict:
        certificate["witness"] = witness
        warning = geometric_factor_warning(chi)
        if warning:
            certificate["geometric_warning"] = warning
    else:
        certificate["factor"] = witness.get("factor")
        certificate["reason"] = "reducible over Q(x)"
    return verdict, certificate


def fiber_points(curve: SpectralCurve, x0) -> list:
    """Points of the curve above x = x0, one per conjugate class.

    The specialization chi(x0, t) is factored over Q; each irreducible
    factor contributes one point whose residue field it generates, with the
    factorization exponent as multiplicity.  Multiplicities weighted by the
    residue degrees sum to r.
    """
    x0 = Fraction(x0)
    spec = curve.chi.at_x(x0)
    _, factors = factor_rationals(spec)
    points = []
    total = 0
    for minimal, mult in factors:
        field = NumberField(minimal, trusted=True)
        points.append(
            SpectralFiberPoint(x0, field, field.generator(), mult)
        )
        total += mult * minimal.degree
    if total != curve.r:
        raise ValidationError("fiber multiplicities do not sum to the rank")
    return points


def _eigenspace_and_restriction(first_fiber, second_fiber, point: SpectralFiberPoint):
    """Eigenspace basis (as columns) of the first fiber map at the point, and
    the matrix of the second fiber map restricted to it (None if the space is
    not invariant)."""
    basis = generalized_eigenspace(first_fiber, point.y)
    if not basis:
        return None, None
    cols = tuple(tuple(vec[i] for vec in basis) for i in range(len(basis[0])))
    lifted = lift_matrix(second_fiber, point.field)
    image = mat_mul(lifted, cols)
    restricted = solve_right(cols, image, point.field.one())
    return cols, restricted


def eigenspace_invariance(pair: HiggsPair, x0) -> bool:
    """Fiberwise consequence of commutation at a base point: every
    generalized eigenspace of the first component's fiber map is preserved by
    the second's, and the restricted maps commute."""
    x0 = Fraction(x0)
    curve = curve_of(pair.first)
    first_fiber = evaluate_endo(pair.first, x0)
    second_fiber = evaluate_endo(pair.second, x0)
    for point in fiber_points(curve, x0):
        cols, restricted_second = _eigenspace_and_restriction(
            first_fiber, second_fiber, point
        )
        if restricted_second is None:
            return False
        lifted_first = lift_matrix(first_fiber, point.field)
        image = mat_mul(lifted_first, cols)
        restricted_first = solve_right(cols, image, point.field.one())
        if restricted_first is None:
            return False
        if not mat_eq(
            mat_mul(restricted_first, restricted_second),
            mat_mul(restricted_second, restricted_first),
        ):
            return False
    return True


@dataclass(frozen=True)
class EigenvalueVerdict:
    x: Fraction
    minimal: str
    multiplicity: int
    ok: bool
    note: str = ""


def eigenvalue_condition(pair: HiggsPair, data: HeckeData, sign: int = 1):
    """At each marked point and each fiber point y above it, the second
    component restricted to the generalized eigenspace of y has the single
    generalized eigenvalue sign * lambda_i * y (checked as nilpotency after
    subtracting the scalar).  Returns (verdict, per-point reports)."""
    if sign not in (1, -1):
        raise ValidationError("sign must be +1 or -1")
    ensure_consistent(pair, data)
    curve = curve_of(pair.first)
    reports = []
    all_ok = True
    for hp in data.points:
        first_fiber = evaluate_endo(pair.first, hp.x)
        second_fiber = evaluate_endo(pair.second, hp.x)
        for point in fiber_points(curve, hp.x):
            cols, restricted = _eigenspace_and_restriction(
                first_fiber, second_fiber, point
            )
            if restricted is None:
                all_ok = False
                reports.append(
                    EigenvalueVerdict(
                        hp.x,
                        format_unipoly(point.field.minimal, "t"),
                        point.multiplicity,
                        False,
                        "eigenspace not invariant",
                    )
                )
                continue
            target = point.field.element(sign * hp.scale) * point.y
            n = len(restricted)
            shifted = tuple(
                tuple(
                    restricted[r][c] - (target if r == c else point.field.zero())
                    for c in range(n)
                )
                for r in range(n)
            )
            ok = nilpotency_test(shifted)
            all_ok = all_ok and ok
            reports.append(
                EigenvalueVerdict(
                    hp.x,
                    format_unipoly(point.field.minimal, "t"),
                    point.multiplicity,
                    ok,
                )
            )
    return all_ok, reports


def commutant_coordinates(pair: HiggsPair):
    """Express the second component as a function-field polynomial in the
    first: the unique psi = sum_k p_k(x)/q(x) t^k, t-degree < r, with
    second = sum_k (p_k/q)(x) first^k.  Returns (psi, q) with q monic.

    Requires commutation and an integral spectral curve (which makes the
    powers of the first component a function-field basis of its commutant).
    """
    if not check_commutation(pair):
        raise CommutationError("components do not commute")
    curve = curve_of(pair.first)
    integral, certificate = is_integral(curve)
    if not integral:
        raise NonIntegralError("spectral curve is not integral", certificate)
    r = pair.rank
    powers = []
    current = endo_scalar(pair.bundle, UniPoly.one(), 0)
    for k in range(r):
        if k > 0:
            current = pair.first * current
        powers.append(current)
    rows = []
    rhs = []
    for i in range(r):
        for j in range(r):
            rows.append(
                tuple(
                    RationalFunction(powers[k].entries[i][j]) for k in range(r)
                )
            )
            rhs.append((RationalFunction(pair.second.entries[i][j]),))
    solution = solve_right(tuple(rows), tuple(rhs), RationalFunction.one())
    if solution is None:
        raise NotInCommutantError(
            "second component is not a polynomial in the first"
        )
    coords = [solution[k][0] for k in range(r)]
    den = UniPoly.one()
    for c in coords:
        den = den * c.den.exact_div(den.gcd(c.den))
    numerators = [c.num * den.exact_div(c.den) for c in coords]
    psi = BiPoly(tuple(numerators))
    # exact re-substitution check
    for i in range(r):
        for j in range(r):
            acc = UniPoly.zero()
            for k in range(r):
                acc = acc + numerators[k] * powers[k].entries[i][j]
            if acc != den * pair.second.entries[i][j]:
                raise NotInCommutantError("re-substitution check failed")
    return psi, den


def _verify_multiplier_eigenvalues(
    curve: SpectralCurve,
    psi: BiPoly,
    den: UniPoly,
    data: HeckeData,
    sign: int,
):
    """psi(x_i, y)/den(x_i) = sign * lambda_i * y at every fiber point above
    every marked point; collects witnesses of failure."""
    witnesses = []
    for hp in data.points:
        dval = den.evaluate(hp.x)
        if dval == 0:
            witnesses.append(
                {"x": str(hp.x), "minimal": "", "note": "multiplier has a pole"}
            )
            continue
        for point in fiber_points(curve, hp.x):
            val = psi.evaluate(hp.x, point.y) / point.field.element(dval)
            target = point.field.element(sign * hp.scale) * point.y
            if val != target:
                witnesses.append(
                    {
                        "x": str(hp.x),
                        "minimal": format_unipoly(point.field.minimal, "t"),
                        "note": "eigenvalue mismatch",
                    }
                )
    return witnesses


def forward_correspondence(field: TwistedHiggsField, sign: int = 1) -> SpectralData:
    """From a certified twisted field to its rank-1 spectral datum.

    The curve must be integral; the multiplier is re-verified to hit
    sign * lambda_i * y at every fiber point above the marked points.
    """
    pair = field.pair
    data = field.hecke
    ensure_consistent(pair, data)
    curve = curve_of(pair.first)
    integral, certificate = is_integral(curve)
    if not integral:
        raise NonIntegralError("spectral curve is not integral", certificate)
    psi, den = commutant_coordinates(pair)
    witnesses = _verify_multiplier_eigenvalues(curve, psi, den, data, sign)
    if witnesses:
        raise EigenvalueConditionError(
            "multiplier misses the marked-point eigenvalues", witnesses
        )
    return SpectralData(curve, psi, den, data.b)


def multiplication_matrix(curve: SpectralCurve, psi: BiPoly, twist: int) -> TwistedEndo:
    """Matrix of multiplication by psi on the structure module in the basis
    1, t, ..., t^(r-1), as a twisted endomorphism of O(0)(+)O(-a)(+)...

    The j-th column holds the coefficients of psi * t^j reduced mod chi.
    """
    r = curve.r
    bundle = SplitBundle([-(k * curve.a) for k in range(r)])
    columns = []
    power = BiPoly.one()
    for j in range(r):
        prod = psi * power
        _, rem = prod.divmod_t(curve.chi)
        columns.append([rem.tcoeff(i) for i in range(r)])
        power = power * BiPoly.t()
    entries = tuple(
        tuple(columns[j][i] for j in range(r)) for i in range(r)
    )
    return TwistedEndo(bundle, twist, entries)


def backward_correspondence(
    spectral: SpectralData, data: HeckeData, sign: int = 1
) -> TwistedHiggsField:
    """From rank-1 data on an integral curve to a certified twisted field.

    The structure-module model is used: the bundle has twists
    (0, -a, ..., -(r-1)a), the first component is the companion matrix of
    chi, the second is multiplication by psi.  psi must be a genuine
    polynomial (denominator 1) hitting sign * lambda_i * y at every fiber
    point above the marked points; with sign = -1 the scalars are flipped
    before reconstruction so the output is certified under the flipped
    presentation.
    """
    if sign not in (1, -1):
        raise ValidationError("sign must be +1 or -1")
    require_valid(data)
    curve = spectral.curve
    if curve.a != data.a:
        raise ValidationError(
            f"curve twist {curve.a} does not match presentation degree {data.a}"
        )
    if spectral.b != data.b:
        raise ValidationError(
            f"multiplier twist {spectral.b} does not match presentation degree {data.b}"
        )
    integral, certificate = is_integral(curve)
    if not integral:
        raise NonIntegralError("spectral curve is not integral", certificate)
    if spectral.psi_denominator != UniPoly.one():
        raise ValidationError(
            "structure-module model needs a polynomial multiplier (denominator 1)"
        )
    witnesses = _verify_multiplier_eigenvalues(
        curve, spectral.psi, spectral.psi_denominator, data, sign
    )
    if witnesses:
        raise EigenvalueConditionError(
            "multiplier misses the marked-point eigenvalues", witnesses
        )
    # over a non-reduced fiber the pointwise check is weaker than the fiber
    # equation itself; since the multiplier has t-degree < r, that equation
    # says psi(x_i, t) is literally sign*lambda_i*t
    higher = []
    for hp in data.points:
        spec_psi = spectral.psi.at_x(hp.x)
        target = UniPoly((0, sign * hp.scale))
        if spec_psi != target:
            higher.append(
                {
                    "x": str(hp.x),
                    "minimal": "",
                    "note": "fiber equation fails beyond the reduced points",
                }
            )
    if higher:
        raise EigenvalueConditionError(
            "multiplier misses the marked-point fiber equation", higher
        )
    first = multiplication_matrix(curve, BiPoly.t(), data.a)
    second = multiplication_matrix(curve, spectral.psi, data.b)
    violations = validate_twisted_endo(second)
    if violations:
        detail = "; ".join(v.describe() for v in violations)
        raise DegreeBoundError(
            f"multiplier violates the twist-{data.b} degree bounds: {detail}"
        )
    if sign == 1:
        target = data
    else:
        target = HeckeData(
            data.a,
            data.b,
            [HeckePoint(p.x, -p.scale) for p in data.points],
        )
    pair = HiggsPair(first.source, first, second)
    return reconstruct(pair, target)


def certify_stability(field: TwistedHiggsField):
    """'Stable' with an integrality certificate when the spectral curve of
    the first component is integral; 'Unknown' otherwise (a non-integral
    curve does not imply instability)."""
    curve = curve_of(field.pair.first)
    integral, certificate = is_integral(curve)
    if integral:
        return "Stable", certificate
    return "Unknown", certificate


@dataclass(frozen=True)
class InvariantLine:
    """A line subbundle invariant under the first component (rank 2)."""

    eigenvalue: UniPoly
    vector: tuple  # pair of UniPoly, not both zero, primitive
    second_invariant: bool


def invariant_line_search(pair: HiggsPair):
    """Rank-2 search for a first-component-invariant line subbundle.

    Returns an InvariantLine exactly when the characteristic polynomial is
    reducible over Q(x) (equivalently its discriminant is a polynomial
    square), reporting whether the line is also second-invariant; returns
    None for an irreducible curve.
    """
    if pair.rank != 2:
        raise UnsupportedRankError("invariant line search is rank-2 only")
    s = char_coefficients(pair.first)
    s1 = s.sections[0].poly
    s2 = s.sections[1].poly
    disc = s1 * s1 - 4 * s2
    root = disc.sqrt()
    if root is None:
        return None
    mu = (s1 + root) / 2
    m = pair.first.entries
    candidates = [
        (m[0][1], mu - m[0][0]),
        (mu - m[1][1], m[1][0]),
    ]
    vector = None
    for v in candidates:
        if not (v[0].is_zero() and v[1].is_zero()):
            vector = v
            break
    if vector is None:
        vector = (UniPoly.one(), UniPoly.zero())  # scalar matrix: any line
    else:
        g = vector[0].gcd(vector[1])
        if g.degree > 0:
            vector = (vector[0].exact_div(g), vector[1].exact_div(g))
    checks = (
        m[0][0] * vector[0] + m[0][1] * vector[1] - mu * vector[0],
        m[1][0] * vector[0] + m[1][1] * vector[1] - mu * vector[1],
    )
    if not (checks[0].is_zero() and checks[1].is_zero()):
        raise ValidationError("eigenline verification failed (internal error)")
    w = (
        pair.second.entries[0][0] * vector[0] + pair.second.entries[0][1] * vector[1],
        pair.second.entries[1][0] * vector[0] + pair.second.entries[1][1] * vector[1],
    )
    cross = w[0] * vector[1] - w[1] * vector[0]
    return InvariantLine(mu, vector, cross.is_zero())
