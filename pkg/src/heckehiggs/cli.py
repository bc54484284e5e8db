"""Command-line surface.

Every command reads UTF-8 JSON, writes a single JSON report to stdout and a
short human-readable summary to stderr.  Exit codes: 0 all checks pass,
1 mathematical failure (the report still carries certificates and a
reproducing instance), 2 malformed input.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from fractions import Fraction

from . import __version__
from .errors import (
    CommutationError,
    DegreeBoundError,
    EigenvalueConditionError,
    FiberConditionError,
    InfeasibleBudgetError,
    NonIntegralError,
    NotInCommutantError,
    ParseError,
    RetryExhaustedError,
    UnsupportedRankError,
    ValidationError,
)
from .hecke import HeckeData, make_presentation, splitting_type, validate
from .higgs import (
    HiggsPair,
    check_commutation,
    check_fiber_condition,
    decompose,
    random_valid_instance,
    reconstruct,
)
from .linalg import char_poly
from .poly import UniPoly, format_bipoly, format_unipoly
from .projline import SplitBundle, TwistedEndo, validate_twisted_endo
from .serialize import (
    hecke_to_json,
    instance_from_json,
    instance_parts_from_json,
    instance_to_json,
    spectral_data_from_json,
    spectral_data_to_json,
)
from .spectral import (
    backward_correspondence,
    build_spectral_curve,
    certify_stability,
    char_coefficients,
    eigenspace_invariance,
    eigenvalue_condition,
    fiber_points,
    forward_correspondence,
    invariant_line_search,
    is_integral,
)

_MATH_ERRORS = (
    CommutationError,
    FiberConditionError,
    NonIntegralError,
    EigenvalueConditionError,
    DegreeBoundError,
    NotInCommutantError,
    RetryExhaustedError,
    InfeasibleBudgetError,
    UnsupportedRankError,
)

_SAMPLE_POINTS = [Fraction(0), Fraction(1), Fraction(-1), Fraction(2), Fraction(-2)]


def _load_document(path: str) -> dict:
    if path == "-":
        text = sys.stdin.read()
    else:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError("document root must be a JSON object")
    return doc


def _fiber_table(curve, data: HeckeData) -> dict:
    table = {}
    for p in data.points:
        rows = []
        for point in fiber_points(curve, p.x):
            rows.append(
                {
                    "minimal": format_unipoly(point.field.minimal, "t"),
                    "multiplicity": point.multiplicity,
                    "degree": point.field.degree,
                }
            )
        table[str(p.x)] = rows
    return table


def cmd_check(doc: dict, sign: int):
    hecke, bundle, first, second, _ = instance_parts_from_json(doc)
    verdicts = {}
    details = {}
    problems = validate(hecke)
    verdicts["hecke_valid"] = not problems
    if problems:
        details["hecke"] = problems
    v1 = validate_twisted_endo(first)
    v2 = validate_twisted_endo(second)
    verdicts["theta_bounds"] = not v1
    verdicts["theta_prime_bounds"] = not v2
    if v1 or v2:
        details["bounds"] = [v.describe() for v in v1 + v2]
    structural = all(verdicts.values())
    if structural:
        pair = HiggsPair(bundle, first, second)
        verdicts["commutation"] = check_commutation(pair)
        fiber_ok, fiber_verdicts = check_fiber_condition(pair, hecke)
        verdicts["fiber"] = fiber_ok
        details["fiber"] = [
            {"x": str(v.x), "ok": v.ok} for v in fiber_verdicts
        ]
        eig_ok, eig_reports = eigenvalue_condition(pair, hecke, sign)
        verdicts["eigenvalue"] = eig_ok
        details["eigenvalue"] = [
            {"x": str(r.x), "minimal": r.minimal, "ok": r.ok, "note": r.note}
            for r in eig_reports
        ]
        samples = [x for x in _SAMPLE_POINTS]
        verdicts["eigenspace_invariance"] = all(
            eigenspace_invariance(pair, x) for x in samples
        )
        details["invariance_samples"] = [str(x) for x in samples]
    ok = all(verdicts.values())
    report = {
        "command": "check",
        "version": __version__,
        "sign": sign,
        "verdicts": verdicts,
        "details": details,
    }
    if not ok:
        report["instance"] = doc
    return report, 0 if ok else 1


def cmd_reconstruct(doc: dict, sign: int):
    hecke, pair, _ = instance_from_json(doc)
    report = {"command": "reconstruct", "version": __version__, "sign": sign}
    try:
        field = reconstruct(pair, hecke)
    except CommutationError as exc:
        report["error"] = {"kind": "commutation", "message": str(exc)}
        report["instance"] = doc
        return report, 1
    except FiberConditionError as exc:
        report["error"] = {
            "kind": "fiber",
            "message": str(exc),
            "points": [str(x) for x in exc.points],
        }
        report["instance"] = doc
        return report, 1
    report["certificate"] = field.certificate
    return report, 0


def cmd_spectral(doc: dict, sign: int):
    hecke, pair, _ = instance_from_json(doc)
    report = {"command": "spectral", "version": __version__, "sign": sign}
    data = char_coefficients(pair.first)
    report["char_coefficients"] = [format_unipoly(s.poly) for s in data.sections]
    curve = build_spectral_curve(data)
    report["curve"] = {"chi": format_bipoly(curve.chi), "a": curve.a, "r": curve.r}
    integral, certificate = is_integral(curve)
    report["integral"] = integral
    report["certificate"] = certificate
    report["fibers"] = _fiber_table(curve, hecke)
    if not integral:
        report["instance"] = doc
        return report, 1
    try:
        field = reconstruct(pair, hecke)
        spectral = forward_correspondence(field, sign)
    except _MATH_ERRORS as exc:
        report["error"] = {"kind": type(exc).__name__, "message": str(exc)}
        if isinstance(exc, EigenvalueConditionError):
            report["error"]["witnesses"] = list(exc.witnesses)
        report["instance"] = doc
        return report, 1
    report["spectral"] = spectral_data_to_json(spectral)
    verdict, stability_cert = certify_stability(field)
    report["stability"] = verdict
    return report, 0


def cmd_build(doc: dict, sign: int):
    from .serialize import hecke_from_json

    hecke = hecke_from_json(doc["hecke"]) if "hecke" in doc else None
    if hecke is None:
        raise ParseError("build needs a 'hecke' section")
    if "spectral" not in doc:
        raise ParseError("build needs a 'spectral' section")
    spectral = spectral_data_from_json(doc["spectral"])
    report = {"command": "build", "version": __version__, "sign": sign}
    try:
        field = backward_correspondence(spectral, hecke, sign)
    except _MATH_ERRORS as exc:
        report["error"] = {"kind": type(exc).__name__, "message": str(exc)}
        if isinstance(exc, EigenvalueConditionError):
            report["error"]["witnesses"] = list(exc.witnesses)
        report["instance"] = doc
        return report, 1
    report["instance"] = instance_to_json(field.hecke, field.pair, spectral)
    report["certificate"] = field.certificate
    return report, 0


def cmd_hecke_make(c: int, d: int, length: int, pool, seed: int):
    report = {"command": "hecke-make", "version": __version__, "seed": seed}
    try:
        data = make_presentation(c, d, length, pool, seed)
    except RetryExhaustedError as exc:
        report["error"] = {"kind": "retry-exhausted", "message": str(exc)}
        return report, 1
    report["hecke"] = hecke_to_json(data)
    report["splitting"] = list(splitting_type(data).as_tuple())
    return report, 0


# -- selftest ---------------------------------------------------------------


def _random_hecke(rng: random.Random):
    length = rng.choice([0, 1, 1, 2])
    a = rng.randint(1, 2)
    b = rng.randint(max(a, length, 1), 3)
    xs = rng.sample([Fraction(v) for v in range(-3, 4)], length)
    points = []
    for x in xs:
        lam = Fraction(0)
        while lam == 0:
            lam = Fraction(rng.randint(-4, 4), rng.randint(1, 2))
        points.append((x, lam))
    from .hecke import HeckePoint

    return HeckeData(a, b, [HeckePoint(x, lam) for x, lam in points])


def _random_bundle(rng: random.Random, length: int) -> SplitBundle:
    r = rng.choice([2, 2, 3])
    if length > 1 or rng.random() < 0.7:
        return SplitBundle([0] * r)
    top = rng.randint(0, 1)
    twists = sorted([top] + [rng.randint(-1, top) for _ in range(r - 1)], reverse=True)
    return SplitBundle(twists)


def _generate_instance(rng: random.Random):
    for _ in range(60):
        data = _random_hecke(rng)
        bundle = _random_bundle(rng, data.length)
        beta_deg = max(data.length - 1, 0)
        budget = min(data.a, data.b - beta_deg)
        if budget < 0:
            continue
        try:
            field = random_valid_instance(
                data, bundle, budget, rng.randint(0, 10**9)
            )
        except (InfeasibleBudgetError, ValidationError):
            continue
        return field
    raise RetryExhaustedError("could not generate a selftest instance")


def _constant_conjugate(endo: TwistedEndo, g, g_inv) -> TwistedEndo:
    rows = []
    r = endo.rank
    for i in range(r):
        row = []
        for j in range(r):
            acc = UniPoly.zero()
            for k in range(r):
                for l in range(r):
                    acc = acc + endo.entries[k][l] * (g[i][k] * g_inv[l][j])
            row.append(acc)
        rows.append(tuple(row))
    return TwistedEndo(endo.source, endo.twist, tuple(rows))


def _random_invertible(rng: random.Random, r: int):
    from .linalg import mat_identity, solve_right
    from .poly import _det_fraction

    while True:
        g = tuple(
            tuple(Fraction(rng.randint(-2, 2)) for _ in range(r)) for _ in range(r)
        )
        if _det_fraction(g) != 0:
            inv = solve_right(g, mat_identity(r, Fraction(1)), Fraction(1))
            return g, inv


def _selftest_single(field, rng: random.Random, sign: int):
    """Run every asserted invariant on one certified instance; returns a
    failure description or None."""
    data = field.hecke
    pair = field.pair

    t1, t2 = decompose(field)
    rebuilt = reconstruct(HiggsPair(pair.bundle, t1, t2), data)
    if rebuilt != field:
        return "decompose/reconstruct round trip changed the field"

    ok, _ = check_fiber_condition(pair, data)
    if not ok:
        return "certified instance fails the fiber condition"

    eig_ok, _ = eigenvalue_condition(pair, data, sign)
    if not eig_ok:
        return f"eigenvalue condition fails with sign {sign:+d}"

    chart = build_spectral_curve(char_coefficients(pair.first))
    if chart.chi != char_poly(pair.first.entries):
        return "spectral display disagrees with the characteristic polynomial"

    for _ in range(10):
        x0 = Fraction(rng.randint(-6, 6), rng.randint(1, 2))
        if not eigenspace_invariance(pair, x0):
            return f"eigenspace invariance fails at x = {x0}"

    for _ in range(3):
        x0 = Fraction(rng.randint(-5, 5))
        total = Fraction(0)
        for point in fiber_points(chart, x0):
            total += point.multiplicity * point.y.trace()
        s1 = char_coefficients(pair.first).sections[0].poly
        if total != s1.evaluate(x0):
            return f"fiber trace identity fails at x = {x0}"

    scale = Fraction(rng.randint(1, 3), rng.randint(1, 2))
    scaled_pair = HiggsPair(pair.bundle, pair.first.scale(scale), pair.second.scale(scale))
    ok, _ = check_fiber_condition(scaled_pair, data)
    if not ok:
        return "fiber condition is not preserved under scalar multiples"

    if len(set(pair.bundle.twists)) == 1:
        g, g_inv = _random_invertible(rng, pair.rank)
        conj = HiggsPair(
            pair.bundle,
            _constant_conjugate(pair.first, g, g_inv),
            _constant_conjugate(pair.second, g, g_inv),
        )
        ok, _ = check_fiber_condition(conj, data)
        if not ok:
            return "fiber condition is not conjugation invariant"
        if char_coefficients(conj.first).sections != char_coefficients(pair.first).sections:
            return "characteristic coefficients are not conjugation invariant"

    if pair.rank == 2:
        verdict, _ = certify_stability(field)
        line = invariant_line_search(pair)
        if verdict == "Stable" and line is not None:
            return "stable instance admits an invariant line"
        integral, _ = is_integral(chart)
        if not integral and line is None:
            return "non-integral rank-2 curve without an invariant line"

    integral, _ = is_integral(chart)
    if integral:
        spectral = forward_correspondence(field, sign)
        if spectral.psi_denominator == UniPoly.one():
            try:
                back = backward_correspondence(spectral, data, sign)
            except DegreeBoundError:
                back = None
            if back is not None:
                again = forward_correspondence(back, sign)
                if (
                    again.curve.chi != spectral.curve.chi
                    or again.psi != spectral.psi
                    or again.psi_denominator != spectral.psi_denominator
                ):
                    return "spectral round trip changed the rank-1 data"
                back2 = backward_correspondence(again, data, sign)
                if back2 != back:
                    return "companion-model round trip changed the field"
    return None


def cmd_selftest(seed: int, count: int, sign: int):
    rng = random.Random(seed)
    report = {
        "command": "selftest",
        "version": __version__,
        "seed": seed,
        "sign": sign,
        "count": count,
    }
    passed = 0
    previous = None
    for index in range(count):
        field = _generate_instance(rng)
        failure = _selftest_single(field, rng, sign)
        if failure is None and previous is not None and field != previous:
            if decompose(field) == decompose(previous) and field.hecke == previous.hecke:
                failure = "distinct fields share a decomposition"
        if failure is not None:
            report["passed"] = passed
            report["failure"] = {"index": index, "reason": failure}
            report["instance"] = instance_to_json(field.hecke, field.pair)
            return report, 1
        previous = field
        passed += 1
    report["passed"] = passed
    return report, 0


# -- entry point ------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="heckehiggs",
        description="exact checks and spectral correspondence for twisted Higgs pairs",
    )
    parser.add_argument("--sign", type=int, choices=[1, -1], default=1,
                        help="marked-point eigenvalue convention (default +1)")
    parser.add_argument("--seed", type=int, default=0, help="seed for randomized commands")
    parser.add_argument("--no-timing", action="store_true",
                        help="omit the timing field for byte-reproducible reports")
    sub = parser.add_subparsers(dest="command", required=True)

    for name in ("check", "reconstruct", "spectral"):
        p = sub.add_parser(name)
        p.add_argument("document", help="instance document path, or - for stdin")

    p = sub.add_parser("build")
    p.add_argument("document", help="document with 'hecke' and 'spectral' sections")

    p = sub.add_parser("hecke-make")
    p.add_argument("c", type=int)
    p.add_argument("d", type=int)
    p.add_argument("length", type=int)
    p.add_argument("--pool", default="0,1,2,3,4,5,6,7,8,9,10,11,12,13,14,15",
                   help="comma-separated rational candidates for marked points")

    p = sub.add_parser("selftest")
    p.add_argument("--count", type=int, default=50)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    start = time.monotonic()
    try:
        if args.command == "check":
            report, code = cmd_check(_load_document(args.document), args.sign)
        elif args.command == "reconstruct":
            report, code = cmd_reconstruct(_load_document(args.document), args.sign)
        elif args.command == "spectral":
            report, code = cmd_spectral(_load_document(args.document), args.sign)
        elif args.command == "build":
            report, code = cmd_build(_load_document(args.document), args.sign)
        elif args.command == "hecke-make":
            from .poly import parse_fraction

            pool = [parse_fraction(v) for v in args.pool.split(",") if v.strip()]
            report, code = cmd_hecke_make(args.c, args.d, args.length, pool, args.seed)
        elif args.command == "selftest":
            report, code = cmd_selftest(args.seed, args.count, args.sign)
        else:  # pragma: no cover
            raise ParseError(f"unknown command {args.command!r}")
    except (ParseError, ValidationError, OSError) as exc:
        report = {
            "command": args.command,
            "version": __version__,
            "error": {"kind": "input", "message": str(exc)},
        }
        print(json.dumps(report, indent=2))
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except _MATH_ERRORS as exc:
        report = {
            "command": args.command,
            "version": __version__,
            "error": {"kind": type(exc).__name__, "message": str(exc)},
        }
        print(json.dumps(report, indent=2))
        print(f"failure: {exc}", file=sys.stderr)
        return 1
    if not args.no_timing:
        report["timing_ms"] = round((time.monotonic() - start) * 1000, 3)
    print(json.dumps(report, indent=2))
    summary = "ok" if code == 0 else "FAILED"
    print(f"{args.command}: {summary}", file=sys.stderr)
    return code


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
