"""Higgs fields twisted by a Hecke-presented rank-2 bundle.

Such a field is stored as the constrained pair of its two line-bundle-twisted
components, one of twist a and one of twist b.  A pair underlies a genuine
twisted field exactly when the two components commute and, at every marked
point x_i, the second component's fiber map equals lambda_i times the
first's.  ``reconstruct`` certifies both conditions and produces the
validated field; ``decompose`` projects back to the pair.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    CommutationError,
    FiberConditionError,
    InfeasibleBudgetError,
    ValidationError,
)
from .hecke import HeckeData, require_valid
from .poly import UniPoly
from .projline import (
    SplitBundle,
    TwistedEndo,
    endo_scalar,
    evaluate_endo,
    require_valid_endo,
)


class HiggsPair:
    """A twist-a endomorphism and a twist-b endomorphism of the same bundle."""

    __slots__ = ("bundle", "first", "second")

    def __init__(self, bundle: SplitBundle, first: TwistedEndo, second: TwistedEndo):
        if first.source != bundle or second.source != bundle:
            raise ValidationError("components must live on the given bundle")
        require_valid_endo(first, "first component")
        require_valid_endo(second, "second component")
        object.__setattr__(self, "bundle", bundle)
        object.__setattr__(self, "first", first)
        object.__setattr__(self, "second", second)

    def __setattr__(self, name, value):
        raise AttributeError("HiggsPair is immutable")

    @property
    def rank(self) -> int:
        return self.bundle.rank

    def __eq__(self, other):
        if isinstance(other, HiggsPair):
            return (
                self.bundle == other.bundle
                and self.first == other.first
                and self.second == other.second
            )
        return NotImplemented

    def __hash__(self):
        return hash(("HiggsPair", self.bundle.twists, self.first, self.second))

    def __repr__(self):
        return f"HiggsPair(E={list(self.bundle.twists)}, a={self.first.twist}, b={self.second.twist})"


def commutator(pair: HiggsPair) -> TwistedEndo:
    """First*second - second*first, a twist-(a+b) endomorphism."""
    return pair.first * pair.second - pair.second * pair.first


def check_commutation(pair: HiggsPair) -> bool:
    return commutator(pair).is_zero()


@dataclass(frozen=True)
class FiberVerdict:
    x: Fraction
    ok: bool
    residual: tuple  # second(x) - lambda * first(x)


def check_fiber_condition(pair: HiggsPair, data: HeckeData):
    """Exact fiber equation second(x_i) = lambda_i * first(x_i) at every
    marked point.  Returns (all_ok, per-point verdicts)."""
    _check_consistency(pair, data)
    verdicts = []
    all_ok = True
    for p in data.points:
        lhs = evaluate_endo(pair.second, p.x)
        rhs = evaluate_endo(pair.first, p.x)
        residual = tuple(
            tuple(l - p.scale * r for l, r in zip(rl, rr))
            for rl, rr in zip(lhs, rhs)
        )
        ok = all(v == 0 for row in residual for v in row)
        all_ok = all_ok and ok
        verdicts.append(FiberVerdict(p.x, ok, residual))
    return all_ok, verdicts


def ensure_consistent(pair: HiggsPair, data: HeckeData):
    """Twists of the pair must match the presentation degrees."""
    require_valid(data)
    if pair.first.twist != data.a:
        raise ValidationError(
            f"first component has twist {pair.first.twist}, presentation needs {data.a}"
        )
    if pair.second.twist != data.b:
        raise ValidationError(
            f"second component has twist {pair.second.twist}, presentation needs {data.b}"
        )


_check_consistency = ensure_consistent


class TwistedHiggsField:
    """A certified Higgs field twisted by the presented rank-2 bundle.

    Only ``reconstruct`` builds these; the certificate records which checks
    passed.  By exactness of the defining sequence the field is the unique
    preimage of its pair, so equality of fields is equality of pairs.
    """

    __slots__ = ("hecke", "pair", "certificate")

    def __init__(self, hecke: HeckeData, pair: HiggsPair, certificate: dict):
        object.__setattr__(self, "hecke", hecke)
        object.__setattr__(self, "pair", pair)
        object.__setattr__(self, "certificate", certificate)

    def __setattr__(self, name, value):
        raise AttributeError("TwistedHiggsField is immutable")

    def __eq__(self, other):
        if isinstance(other, TwistedHiggsField):
            return self.hecke == other.hecke and self.pair == other.pair
        return NotImplemented

    def __hash__(self):
        return hash(("TwistedHiggsField", self.hecke, self.pair))

    def __repr__(self):
        return f"TwistedHiggsField({self.hecke!r}, {self.pair!r})"


def reconstruct(pair: HiggsPair, data: HeckeData) -> TwistedHiggsField:
    """Certify a pair as a twisted Higgs field.

    Raises CommutationError when the components do not commute, and
    FiberConditionError (with the failing points) when a marked-point fiber
    equation fails.  On success the returned field is the unique one whose
    components are the given pair.
    """
    _check_consistency(pair, data)
    if not check_commutation(pair):
        raise CommutationError("components do not commute")
    ok, verdicts = check_fiber_condition(pair, data)
    if not ok:
        failing = [v.x for v in verdicts if not v.ok]
        raise FiberConditionError(
            "fiber equation fails at " + ", ".join(str(x) for x in failing),
            points=failing,
        )
    certificate = {
        "commutation": True,
        "fiber": [{"x": str(v.x), "ok": True} for v in verdicts],
        "unique": True,
    }
    return TwistedHiggsField(data, pair, certificate)


def decompose(field: TwistedHiggsField):
    """The two line-bundle-twisted components; left inverse of reconstruct."""
    return field.pair.first, field.pair.second


def perturb_second_at_point(field: TwistedHiggsField, index: int, delta=1):
    """A pair differing from the field's only in the second component's value
    at marked point `index` (used to probe rejection).  Needs the diagonal
    degree budget to accommodate a bump vanishing at the other points."""
    data = field.hecke
    xs = data.marked_xs()
    if not 0 <= index < len(xs):
        raise IndexError("marked point index out of range")
    bump = UniPoly.constant(delta)
    for j, xj in enumerate(xs):
        if j != index:
            bump = bump * UniPoly((-xj, 1))
    if bump.degree > data.b:
        raise InfeasibleBudgetError(
            f"bump degree {bump.degree} exceeds the twist budget {data.b}"
        )
    bumped = field.pair.second + endo_scalar(field.pair.bundle, bump, data.b)
    return HiggsPair(field.pair.bundle, field.pair.first, bumped)


def _random_poly(rng: random.Random, degree: int) -> UniPoly:
    if degree < 0:
        return UniPoly.zero()
    return UniPoly([Fraction(rng.randint(-4, 4)) for _ in range(degree + 1)])


def random_valid_instance(
    data: HeckeData,
    bundle: SplitBundle,
    degree_budget: int,
    rng_seed: int,
) -> TwistedHiggsField:
    """Draw a random certified instance on the given bundle.

    The first component is a random twisted endomorphism with entry degrees
    capped by `degree_budget`; the second is alpha*I + beta*first where beta
    interpolates the marked scalars and alpha vanishes at the marked points,
    which makes both conditions hold by construction.  Raises
    InfeasibleBudgetError when the interpolation degrees cannot fit the
    second component's bounds for some admissible draw.
    """
    require_valid(data)
    a, b = data.a, data.b
    xs = data.marked_xs()
    ell = len(xs)
    rng = random.Random(rng_seed)

    if ell:
        beta = UniPoly.interpolate(
            [(x, data.scalar(i)) for i, x in enumerate(xs)]
        )
        room = b - a - max(beta.degree, 0)
        if room >= ell:
            extra = _random_poly(rng, room - ell)
            vanishing = UniPoly.one()
            for x in xs:
                vanishing = vanishing * UniPoly((-x, 1))
            beta = beta + vanishing * extra
    else:
        beta = _random_poly(rng, max(b - a, 0)) if b >= a else UniPoly.zero()

    twists = bundle.twists
    r = bundle.rank
    beta_deg = max(beta.degree, 0) if not beta.is_zero() else 0
    for i in range(r):
        for j in range(r):
            cap = min(twists[i] - twists[j] + a, degree_budget)
            if cap < 0:
                continue
            if not beta.is_zero() and beta_deg + cap > twists[i] - twists[j] + b:
                raise InfeasibleBudgetError(
                    f"entry ({i + 1},{j + 1}): budget {cap} plus interpolation "
                    f"degree {beta_deg} exceeds bound {twists[i] - twists[j] + b}"
                )

    entries = []
    for i in range(r):
        row = []
        for j in range(r):
            cap = min(twists[i] - twists[j] + a, degree_budget)
            row.append(_random_poly(rng, cap))
        entries.append(tuple(row))
    first = TwistedEndo(bundle, a, tuple(entries))

    if ell and b - ell >= 0:
        vanishing = UniPoly.one()
        for x in xs:
            vanishing = vanishing * UniPoly((-x, 1))
        alpha = vanishing * _random_poly(rng, b - ell)
    elif ell:
        alpha = UniPoly.zero()
    else:
        alpha = _random_poly(rng, b)

    scaled = tuple(tuple(beta * e for e in row) for row in first.entries)
    second = TwistedEndo(bundle, b, scaled) + endo_scalar(bundle, alpha, b)
    pair = HiggsPair(bundle, first, second)
    return reconstruct(pair, data)

