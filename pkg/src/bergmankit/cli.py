"""Command-line interface: one binary exposing all verifications and scans.

Exit codes: 0 = success / verification passed, 1 = verification failure
(counterexample or failed criterion printed), 2 = usage or I/O error.  A JSON
config file can mirror any flag (same names, dashes as underscores); explicit
flags win.  Reports are reproducible given the recorded seed; the default
seed comes from BERGMANKIT_SEED when set.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from fractions import Fraction
from typing import List, Optional, Sequence

import numpy as np

from .acceptance import DEFAULT_SEED, run_selftest
from .commutators import (
    COMMUTATOR_CONVENTION,
    WitnessFamily,
    commutator_apply,
    divergence_scan,
    verify_tangent_commutes,
)
from .fields import RealLinearVectorField, WirtingerDz, WirtingerDzbar
from .filtration import OperatorOnD, filtration_report
from .kernels import (
    BallSpace,
    basis_partial_sum,
    kernel_eval,
    parse_space,
    reproduce_polynomial,
    rkhs_inequality_suite,
    verify_peetre,
)
from .matrixcalc import Contour, default_contour, holomorphic_calculus, spectrum
from .polynomials import MixedPolynomial
from .rationals import GaussianRational, format_rational
from .sampling import random_ball_point

PROG = "bergmankit"


class UsageError(Exception):
    """Bad input from the user; maps to exit code 2."""


# ---------------------------------------------------------------------------
# I/O helpers
# ---------------------------------------------------------------------------


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _write_text(text: str, path: Optional[str]) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
        return
    try:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc}") from exc


def _load_json(path: str):
    text = _read_text(path)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"invalid JSON in {path}: {exc}") from exc


def _load_polynomial(path: str) -> MixedPolynomial:
    data = _load_json(path)
    try:
        return MixedPolynomial.from_json_dict(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"invalid polynomial JSON: {exc}") from exc


def _parse_rational_matrix(data) -> List[List[Fraction]]:
    try:
        matrix = [[Fraction(str(v)) for v in row] for row in data]
    except (TypeError, ValueError) as exc:
        raise UsageError(f"invalid rational matrix: {exc}") from exc
    return matrix


def _load_real_field(path: str) -> RealLinearVectorField:
    try:
        return RealLinearVectorField(_parse_rational_matrix(_load_json(path)))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _parse_complex_entry(v) -> complex:
    if isinstance(v, (int, float)):
        return complex(v)
    if isinstance(v, (list, tuple)) and len(v) == 2:
        return complex(float(v[0]), float(v[1]))
    if isinstance(v, str):
        return complex(float(Fraction(v)))
    raise UsageError(f"cannot parse matrix entry {v!r} (use number or [re, im])")


def _load_complex_matrix(path: str) -> np.ndarray:
    data = _load_json(path)
    try:
        return np.array([[_parse_complex_entry(v) for v in row] for row in data], dtype=complex)
    except (TypeError, UsageError) as exc:
        raise UsageError(f"invalid matrix file {path}: {exc}") from exc


def _parse_point(data, exact: bool) -> tuple:
    """Parse a JSON point: list of entries, each number, [re, im], or "p/q"."""
    if isinstance(data, (int, float, str)):
        data = [data]
    out = []
    for v in data:
        if isinstance(v, str):
            out.append(GaussianRational(Fraction(v)))
        elif isinstance(v, (int, float)):
            out.append(GaussianRational(Fraction(str(v))) if exact else complex(v))
        elif isinstance(v, (list, tuple)) and len(v) == 2:
            if exact:
                out.append(GaussianRational(Fraction(str(v[0])), Fraction(str(v[1]))))
            else:
                out.append(complex(float(v[0]), float(v[1])))
        else:
            raise UsageError(f"cannot parse point component {v!r}")
    return tuple(out)


def _dump_json(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True)


def _complex_pair(value: complex) -> list:
    return [value.real, value.imag]


def _matrix_pairs(matrix: np.ndarray) -> list:
    return [[_complex_pair(complex(v)) for v in row] for row in matrix]


# ---------------------------------------------------------------------------
# Subcommand handlers (each returns the exit code)
# ---------------------------------------------------------------------------


def _cmd_project(args) -> int:
    poly = _load_polynomial(args.input)
    from .projection import project

    result = project(poly)
    _write_text(result.to_json(), args.output)
    return 0


def _parse_field_spec(spec: str, n: Optional[int]):
    if spec.startswith("dz:") or spec.startswith("dzbar:"):
        kind, _, idx = spec.partition(":")
        try:
            i = int(idx)
        except ValueError as exc:
            raise UsageError(f"bad field spec {spec!r}") from exc
        if n is None:
            raise UsageError("--n is required with dz:/dzbar: field specs")
        return WirtingerDz(i, n) if kind == "dz" else WirtingerDzbar(i, n)
    field = _load_real_field(spec)
    return field.complexify()


def _cmd_commutator(args) -> int:
    poly = _load_polynomial(args.input)
    field_obj = _parse_field_spec(args.field, poly.dimension)
    result = commutator_apply(field_obj, poly)
    payload = {
        "convention": COMMUTATOR_CONVENTION,
        "field": args.field,
        "result": result.to_json_dict(),
        "result_is_zero": result.is_zero(),
        "provenance": "exact",
    }
    _write_text(_dump_json(payload), args.output)
    return 0


def _cmd_ratio_scan(args) -> int:
    family = WitnessFamily(
        dimension=args.n,
        coordinate=args.coordinate,
        p_slope=args.p_slope,
        p_offset=args.p_offset,
        q_slope=args.q_slope,
        q_offset=args.q_offset,
    )
    thresholds = [float(t) for t in args.thresholds.split(",")] if args.thresholds else []
    try:
        scan = divergence_scan(family, args.kind, args.m_max, thresholds)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    lines = [
        f"# {PROG} ratio-scan kind={args.kind} n={args.n} coordinate={args.coordinate} "
        f"p={args.p_slope}m+{args.p_offset} q={args.q_slope}m+{args.q_offset}",
        f"# convention: {COMMUTATOR_CONVENTION}",
        f"# slope_upper_half={scan.slope!r} (float fit; ratios are exact)",
    ]
    for threshold, first_m in scan.thresholds:
        lines.append(f"# threshold={threshold:g} first_m_exceeding={first_m}")
    lines.append("# provenance: ratio_sq_num/ratio_sq_den exact; ratio_sq_float float")
    lines.append("m,ratio_sq_num,ratio_sq_den,ratio_sq_float")
    for point in scan.points:
        lines.append(
            f"{point.m},{point.ratio_sq.numerator},{point.ratio_sq.denominator},"
            f"{float(point.ratio_sq)!r}"
        )
    _write_text("\n".join(lines), args.output)
    if args.plot:
        from .plotting import plot_ratio_scan

        plot_ratio_scan(scan, args.plot)
    return 0


def _cmd_verify_tangent(args) -> int:
    field = _load_real_field(args.matrix)
    if not field.is_tangent():
        raise UsageError(
            "matrix is not antisymmetric: tangency is a precondition "
            f"(defect {format_rational(field.antisymmetry_defect())})"
        )
    report = verify_tangent_commutes(field, args.degree)
    payload = report.to_json_dict()
    payload["complex_linear"] = field.is_complex_linear()
    _write_text(_dump_json(payload), args.output)
    return 0 if report.passed else 1


def _cmd_tangency(args) -> int:
    field = _load_real_field(args.matrix)
    payload = {
        "tangent": field.is_tangent(),
        "antisymmetry_defect": format_rational(field.antisymmetry_defect()),
        "complex_linear": field.is_complex_linear(),
        "provenance": "exact",
    }
    _write_text(_dump_json(payload), args.output)
    return 0


def _cmd_psi_filtration(args) -> int:
    generators: List[OperatorOnD] = []
    if args.fields:
        for matrix in _load_json(args.fields):
            field = RealLinearVectorField(_parse_rational_matrix(matrix))
            if field.dimension != args.n:
                raise UsageError(
                    f"field matrix is {2 * field.dimension}x{2 * field.dimension}, "
                    f"expected {2 * args.n}x{2 * args.n} for n={args.n}"
                )
            generators.append(OperatorOnD.from_field(field.complexify()))
    if args.wirtinger:
        for spec in args.wirtinger.split(","):
            generators.append(OperatorOnD.from_field(_parse_field_spec(spec.strip(), args.n)))
    if not generators:
        raise UsageError("no generators: provide --fields and/or --wirtinger")
    try:
        degrees = [int(d) for d in args.degrees.split(",")]
    except ValueError as exc:
        raise UsageError(f"bad --degrees list: {exc}") from exc
    report = filtration_report(OperatorOnD.projection(args.n), generators, args.k_max, degrees)
    payload = report.to_json_dict()
    payload["config"] = {
        "n": args.n,
        "k_max": args.k_max,
        "degrees": degrees,
        "fields": args.fields,
        "wirtinger": args.wirtinger,
    }
    _write_text(_dump_json(payload), args.output)
    if args.plot:
        from .plotting import plot_filtration_report

        plot_filtration_report(report, args.plot)
    return 0


def _make_scalar_function(spec: str):
    if spec == "one":
        return (lambda z: 1.0), [1.0]
    if spec == "exp":
        return np.exp, None
    if spec == "id":
        return (lambda z: z), [0.0, 1.0]
    if spec.startswith("poly:"):
        try:
            coeffs = [complex(float(Fraction(c))) for c in spec[len("poly:") :].split(",")]
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"bad polynomial coefficients in {spec!r}") from exc

        def poly(z, cs=tuple(coeffs)):
            acc = 0.0 + 0.0j
            for c in reversed(cs):
                acc = acc * z + c
            return acc

        return poly, coeffs
    raise UsageError(f"unknown function {spec!r} (use one|exp|id|poly:c0,c1,...)")


def _taylor_reference(a: np.ndarray, spec: str, coeffs) -> Optional[np.ndarray]:
    """Partial-sum reference for entire functions, for the diagnostics block."""
    if spec == "exp":
        total = np.eye(a.shape[0], dtype=complex)
        term = np.eye(a.shape[0], dtype=complex)
        for k in range(1, 60):
            term = term @ a / k
            total = total + term
        return total
    if coeffs is not None:
        total = np.zeros_like(a)
        power = np.eye(a.shape[0], dtype=complex)
        for c in coeffs:
            total = total + c * power
            power = power @ a
        return total
    return None


def _cmd_calculus(args) -> int:
    a = _load_complex_matrix(args.matrix)
    func, coeffs = _make_scalar_function(args.function)
    if args.radius is not None:
        center = complex(*[float(x) for x in args.center.split(",")]) if args.center else 0j
        contour = Contour(center=center, radius=args.radius, nodes=args.nodes)
    else:
        contour = default_contour(a, nodes=args.nodes, radius_factor=args.radius_factor)
    result = holomorphic_calculus(a, func, contour=contour)
    reference = _taylor_reference(a, args.function, coeffs)
    diagnostics = {
        "spectrum": [_complex_pair(lam) for lam in spectrum(a)],
        "contour": {
            "center": _complex_pair(complex(contour.center)),
            "radius": contour.radius,
            "nodes": contour.nodes,
        },
        "provenance": "float(trapezoid quadrature)",
    }
    if reference is not None:
        diagnostics["series_comparison_error"] = float(np.max(np.abs(result - reference)))
    payload = {"function": args.function, "result": _matrix_pairs(result), "diagnostics": diagnostics}
    _write_text(_dump_json(payload), args.output)
    return 0


def _cmd_kernel_check(args) -> int:
    try:
        space = parse_space(args.space)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(str(exc)) from exc

    if args.mode == "eval":
        z = _parse_point(json.loads(args.z), exact=False)
        w = _parse_point(json.loads(args.w), exact=False)
        value = kernel_eval(space, z, w)
        payload = {
            "space": args.space,
            "z": [_complex_pair(v) for v in z],
            "w": [_complex_pair(v) for v in w],
            "kernel": _complex_pair(value),
            "provenance": "float(closed form)",
        }
        _write_text(_dump_json(payload), args.output)
        return 0

    if args.mode == "series":
        z = _parse_point(json.loads(args.z), exact=False)
        w = _parse_point(json.loads(args.w), exact=False)
        closed = kernel_eval(space, z, w)
        lines = [
            f"# {PROG} kernel-check series space={args.space} closed_form={closed!r}",
            "# provenance: float(closed-form basis norms and powers)",
            "K,partial_re,partial_im,abs_error",
        ]
        degrees, errors = [], []
        for K in range(args.kmax + 1):
            partial = basis_partial_sum(space, z, w, K)
            err = abs(partial - closed)
            degrees.append(K)
            errors.append(err)
            lines.append(f"{K},{partial.real!r},{partial.imag!r},{err!r}")
        _write_text("\n".join(lines), args.output)
        if args.plot:
            from .plotting import plot_series_convergence

            plot_series_convergence(degrees, errors, args.plot, title=f"{args.space} series error")
        return 0

    if args.mode == "reproduce":
        if not isinstance(space, BallSpace):
            raise UsageError("reproduce mode needs a ball space")
        poly = _load_polynomial(args.poly)
        z = _parse_point(json.loads(args.z), exact=True)
        try:
            pairing = reproduce_polynomial(space, poly, z)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        direct = poly.evaluate(z)
        payload = {
            "space": args.space,
            "pairing": pairing.to_json_pair(),
            "direct_evaluation": direct.to_json_pair(),
            "equal": pairing == direct,
            "provenance": "exact",
        }
        _write_text(_dump_json(payload), args.output)
        return 0 if pairing == direct else 1

    if args.mode == "suite":
        if not isinstance(space, BallSpace):
            raise UsageError("suite mode needs a ball space")
        import random as _random

        rng = _random.Random(args.seed)
        points = [random_ball_point(rng, space.n) for _ in range(args.points)]
        report = rkhs_inequality_suite(space, points, seed=args.seed)
        _write_text(_dump_json(report.to_json_dict()), args.output)
        return 0 if report.passed() else 1

    if args.mode == "peetre":
        import random as _random

        rng = _random.Random(args.seed)
        worst = math.inf
        all_ok = True
        for _ in range(args.samples):
            dim = rng.randint(1, 4)
            w = [rng.uniform(-10, 10) for _ in range(dim)]
            mu = [rng.uniform(-10, 10) for _ in range(dim)]
            l = rng.uniform(-6, 6)
            ok, slack = verify_peetre(w, mu, l)
            worst = min(worst, slack)
            all_ok = all_ok and ok
        payload = {
            "samples": args.samples,
            "seed": args.seed,
            "passed": all_ok,
            "min_slack_ratio": worst,
            "provenance": "float",
        }
        _write_text(_dump_json(payload), args.output)
        return 0 if all_ok else 1

    raise UsageError(f"unknown kernel-check mode {args.mode!r}")


def _cmd_selftest(args) -> int:
    ids = None
    if args.criteria:
        try:
            ids = [int(c) for c in args.criteria.split(",")]
        except ValueError as exc:
            raise UsageError(f"bad --criteria list: {exc}") from exc
    results, report = run_selftest(args.seed, ids)
    for result in results:
        print(result.console_line(), file=sys.stderr)
    _write_text(report, args.output)
    return 0 if all(r.passed for r in results) else 1


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def _default_seed() -> int:
    env = os.environ.get("BERGMANKIT_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            pass
    return DEFAULT_SEED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=PROG,
        description="Bergman projection, commutator scans, filtration semi-norms, "
        "matrix functional calculus, and reproducing-kernel checks.",
    )
    parser.add_argument("--config", help="JSON file whose keys mirror flags (flags win)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("project", help="Bergman projection of a polynomial JSON")
    p.add_argument("--input", default="-", help="polynomial JSON file or - for stdin")
    p.add_argument("--output", default=None)
    p.set_defaults(handler=_cmd_project)

    p = sub.add_parser("commutator", help="apply [X, P] to a polynomial")
    p.add_argument("--field", required=True, help="dz:i, dzbar:i, or rational matrix file")
    p.add_argument("--input", default="-")
    p.add_argument("--output", default=None)
    p.set_defaults(handler=_cmd_commutator)

    p = sub.add_parser("ratio-scan", help="norm-ratio divergence scan (CSV)")
    p.add_argument("--kind", choices=("dz", "dzbar"), required=True)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--coordinate", type=int, default=1)
    p.add_argument("--m-max", type=int, default=100)
    p.add_argument("--p-slope", type=int, default=2)
    p.add_argument("--p-offset", type=int, default=0)
    p.add_argument("--q-slope", type=int, default=1)
    p.add_argument("--q-offset", type=int, default=0)
    p.add_argument("--thresholds", default="", help="comma-separated, e.g. 1e3,1e6")
    p.add_argument("--output", default=None)
    p.add_argument("--plot", default=None, help="write a log-log figure (PNG/PDF)")
    p.set_defaults(handler=_cmd_ratio_scan)

    p = sub.add_parser("verify-tangent", help="exact-zero check of [X, P] for a tangent field")
    p.add_argument("--matrix", required=True, help="rational 2n x 2n matrix JSON file")
    p.add_argument("--degree", type=int, default=6)
    p.add_argument("--output", default=None)
    p.set_defaults(handler=_cmd_verify_tangent)

    p = sub.add_parser("tangency", help="antisymmetry test with exact defect")
    p.add_argument("--matrix", required=True)
    p.add_argument("--output", default=None)
    p.set_defaults(handler=_cmd_tangency)

    p = sub.add_parser("psi-filtration", help="iterated-commutator semi-norm report")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--k-max", type=int, default=2)
    p.add_argument("--degrees", default="4,6,8,10")
    p.add_argument("--fields", default=None, help="JSON file: list of rational matrices")
    p.add_argument("--wirtinger", default=None, help="comma list like dz:1,dzbar:2")
    p.add_argument("--output", default=None)
    p.add_argument("--plot", default=None)
    p.set_defaults(handler=_cmd_psi_filtration)

    p = sub.add_parser("calculus", help="holomorphic functional calculus on a matrix")
    p.add_argument("--matrix", required=True, help="JSON matrix (numbers or [re, im] pairs)")
    p.add_argument("--function", default="one", help="one|exp|id|poly:c0,c1,...")
    p.add_argument("--nodes", type=int, default=256)
    p.add_argument("--radius-factor", type=float, default=1.5)
    p.add_argument("--radius", type=float, default=None, help="explicit contour radius")
    p.add_argument("--center", default=None, help="contour center as re,im")
    p.add_argument("--output", default=None)
    p.set_defaults(handler=_cmd_calculus)

    p = sub.add_parser("kernel-check", help="reproducing-kernel evaluations and suites")
    p.add_argument("--space", required=True, help="ball:n | disk:a | fock:t")
    p.add_argument("--mode", choices=("eval", "series", "reproduce", "suite", "peetre"), required=True)
    p.add_argument("--z", default=None, help="point JSON (e.g. '[0.3, 0.2]' or '[\"1/3\"]')")
    p.add_argument("--w", default=None)
    p.add_argument("--kmax", type=int, default=60)
    p.add_argument("--poly", default="-", help="polynomial JSON for reproduce mode")
    p.add_argument("--points", type=int, default=32)
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--output", default=None)
    p.add_argument("--plot", default=None)
    p.set_defaults(handler=_cmd_kernel_check)

    p = sub.add_parser("selftest", help="run the acceptance battery")
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--criteria", default=None, help="comma list, default all (1-11)")
    p.add_argument("--output", default=None, help="canonical report destination (default stdout)")
    p.set_defaults(handler=_cmd_selftest)

    return parser


def _apply_config(parser: argparse.ArgumentParser, argv: Sequence[str]) -> Sequence[str]:
    """Pull --config out of argv and install its values as subparser defaults."""
    probe = argparse.ArgumentParser(add_help=False)
    probe.add_argument("--config")
    known, _ = probe.parse_known_args(argv)
    if not known.config:
        return argv
    config = _load_json(known.config)
    if not isinstance(config, dict):
        raise UsageError("config file must contain a JSON object")
    # install on every subparser that knows the key; a configured value also
    # satisfies required flags
    for action in parser._subparsers._group_actions:  # noqa: SLF001 - argparse has no public hook
        for subparser in action.choices.values():
            for sub_action in subparser._actions:
                if sub_action.dest in config and sub_action.required:
                    sub_action.required = False
            known_dests = {a.dest for a in subparser._actions}
            subparser.set_defaults(**{k: v for k, v in config.items() if k in known_dests})
    return [a for a in argv if a != f"--config={known.config}" and a != known.config and a != "--config"]


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        argv = _apply_config(parser, argv)
        args = parser.parse_args(argv)
        return args.handler(args)
    except UsageError as exc:
        print(f"{PROG}: error: {exc}", file=sys.stderr)
        return 2
    except BrokenPipeError:
        return 0


if __name__ == "__main__":
    sys.exit(main())
