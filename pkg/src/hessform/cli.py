"""Command-line entry point: ``hessform <group> <action> ...``.

Every command builds a :class:`~hessform.verify.RunReport`. By default it is
printed as a table; ``--json`` prints it as JSON (or writes it to a path).
Exit status is 0 when all reported checks pass, 1 when one fails, and 2 on
usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import covariants as cov
from . import cones
from . import curvature as curv
from . import tangent as tg
from .poly import Form, FormSyntaxError, infer_arity, parse_form
from .sampling import default_seed
from .verify import CheckResult, RunReport, available_selections, replay, result, run_verify_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# argument parsing helpers


def _read_text(arg: str) -> str:
    if arg.startswith("@"):
        try:
            return Path(arg[1:]).read_text().strip()
        except OSError as exc:
            raise UsageError(f"cannot read {arg[1:]}: {exc.strerror}") from exc
    return arg


def _form(arg: str, arity: int | None = None, minimum: int | None = None) -> Form:
    text = _read_text(arg)
    if arity is None:
        arity = infer_arity(text)
        if minimum is not None:
            arity = max(arity, minimum)
    return parse_form(text, arity)


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"not a rational number: {text!r}") from exc


def _vector(text: str) -> tuple[Fraction, ...]:
    return tuple(_rational(t) for t in text.split(","))


def _plane(text: str) -> curv.PlaneSpec:
    parts = text.split(";")
    if len(parts) != 2:
        raise UsageError("a plane is written 'u1,u2,...;v1,v2,...'")
    return curv.PlaneSpec(_vector(parts[0]), _vector(parts[1]))


def _box(text: str) -> tuple[Fraction, Fraction]:
    lo, hi = _vector(text) if "," in text else (None, None)
    if lo is None or lo >= hi:
        raise UsageError("--box must be 'lo,hi' with lo < hi")
    return lo, hi


def _need_point(args, f: Form) -> tuple[Fraction, ...]:
    if not args.point:
        raise UsageError("--point is required")
    p = _vector(args.point)
    if len(p) != f.arity:
        raise UsageError(f"--point has {len(p)} coordinates, the form has arity {f.arity}")
    return p


def _value(name: str, v) -> CheckResult:
    if isinstance(v, Form):
        return CheckResult(name, "pass", str(v), None)
    if isinstance(v, float):
        return CheckResult(name, "pass", None, v)
    return result(name, True, v)


# ---------------------------------------------------------------------------
# command implementations; each returns (inputs, results)


def cmd_covariant(args):
    ternary = args.action in ("aronhold", "clebsch")
    f = _form(args.form, args.arity, 3 if ternary else None)
    inputs = {"form": str(f), "arity": f.arity}
    if args.action == "hessian":
        return inputs, [_value("hessian", cov.hessian_det(f))]
    if args.action == "aronhold":
        v = cov.aronhold_invariant(f)
        return inputs, [_value("aronhold", v)]
    return inputs, [_value("clebsch", cov.clebsch_covariant(f))]


def cmd_curvature(args):
    f = _form(args.form, args.arity)
    inputs = {"form": str(f), "arity": f.arity}
    if args.action == "flat-check":
        seed = default_seed() if args.seed is None else args.seed
        inputs.update(seed=seed, count=args.count)
        pts = [_vector(args.point)] if args.point else None
        verdict = curv.flatness_certificate(f, args.count, seed=seed, points=pts)
        detail = verdict.note
        return inputs, [CheckResult("flat", "pass", str(verdict.flat).lower(), None, detail)]
    p = _need_point(args, f)
    inputs["point"] = [str(c) for c in p]
    if args.action == "tensor":
        t = curv.curvature_tensor_at(f, p)
        n = f.arity
        out = []
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(n):
                    for l in range(k + 1, n):
                        if (i, j) <= (k, l) and t[i, j, k, l] != 0:
                            out.append(_value(f"R[{i}{j}{k}{l}]", t[i, j, k, l]))
        if not out:
            out.append(CheckResult("R", "pass", "0", 0.0, "tensor vanishes"))
        return inputs, out
    if args.action == "sectional":
        if not args.plane:
            raise UsageError("--plane is required for sectional")
        inputs["plane"] = args.plane
        return inputs, [_value("K_U", curv.sectional_curvature(f, p, _plane(args.plane)))]
    if args.action == "on-m":
        plane = _plane(args.plane) if args.plane else None
        if plane:
            inputs["plane"] = args.plane
        k = curv.sectional_curvature_on_M(f, p, plane)
        out = [_value("K_M", k)]
        if f.arity == 3 and f.degree >= 3 and plane is None:
            k_formula = curv.theorem_curv_value(f, p)
            out.append(result("K_M-covariant-formula", k == k_formula, k_formula))
        return inputs, out
    inputs["h"] = args.h
    dev = curv.fd_curvature_oracle(f, p, h=args.h)
    return inputs, [CheckResult("fd-relative-deviation", "pass" if dev < args.tolerance else "fail", None, dev)]


def cmd_cone(args):
    f = _form(args.form, args.arity)
    seed = default_seed() if args.seed is None else args.seed
    inputs = {"form": str(f), "arity": f.arity}
    if args.action == "classify":
        p = _need_point(args, f)
        c = cones.classify_point(f, p)
        inputs["point"] = [str(x) for x in p]
        return inputs, [
            _value("f", c.f_value),
            CheckResult("signature", "pass", ",".join(map(str, c.hessian_signature)), None),
            CheckResult("positive-cone", "pass", str(c.in_positive_cone).lower(), None),
            CheckResult("index-cone", "pass", str(c.in_index_cone).lower(), None),
        ]
    box = _box(args.box)
    inputs.update(seed=seed, count=args.count, box=[str(b) for b in box], which=args.which)
    sample = cones.sample_cone(f, args.which, args.count, seed=seed, box=box)
    if args.action == "sample":
        out = [CheckResult("accepted", "pass", str(len(sample.points)), sample.acceptance_rate)]
        out += [CheckResult(f"point[{k}]", "pass", ",".join(map(str, p)), None) for k, p in enumerate(sample.points)]
        return inputs, out
    if args.action == "compare":
        cmp = cones.cone_comparison(f, sample.points)
        return inputs, [
            result("index-equals-positive", cmp.equal, len(cmp.discrepancies), f"{cmp.checked} positive-cone samples"),
            *(CheckResult(f"discrepancy[{k}]", "fail", ",".join(map(str, p)), None) for k, p in enumerate(cmp.discrepancies[:20])),
        ]
    mode = args.mode or ("K_M" if f.arity == 3 else "full-tensor")
    inputs["mode"] = mode
    table = cones.curvature_scan(f, sample.points, mode)
    if args.csv:
        Path(args.csv).write_text(table.to_csv())
        inputs["csv"] = args.csv
    out = [CheckResult("rows", "pass", str(len(table.rows)), None, f"{len(table.skipped)} skipped")]
    if table.rows:
        out += [_value("K_M-min", table.k_min), _value("K_M-max", table.k_max)]
    out += [CheckResult(f"sign-{k}", "pass", str(v), None) for k, v in table.sign_counts().items()]
    return inputs, out


def cmd_tangent(args):
    inputs: dict = {}
    if args.action == "spectrum":
        if args.degree is None:
            raise UsageError("--degree is required for spectrum")
        table = tg.monomial_spectrum(args.degree)
        inputs["degree"] = args.degree
        out = [_value(f"lambda({i},{j})", v) for (i, j), v in table.eigenvalues.items()]
        out += [_value(f"Delta({j})", v) for j, v in table.discriminants.items()]
        out.append(result("zero-set", table.zero_set_matches, detail=str(sorted(table.zero_set))))
        out.append(result("Delta-negative-j>=3", table.discriminant_negative))
        return inputs, out
    if not args.forms:
        raise UsageError("alpha is required")
    alpha = _form(args.forms[0], 2)
    inputs["alpha"] = str(alpha)
    second = args.forms[1] if len(args.forms) > 1 else None
    if args.action == "t-op":
        if second is None:
            raise UsageError("t-op needs alpha and h")
        h = _form(second, 2)
        inputs["h"] = str(h)
        return inputs, [_value("T", tg.t_operator(alpha, h))]
    if args.action == "variation":
        if second is None:
            raise UsageError("variation needs alpha and g")
        g = _form(second, 3)
        inputs["g"] = str(g)
        v = tg.first_variation_clebsch(alpha, g, strict=False)
        return inputs, [_value("variation", v.variation), result("routes-agree", v.routes_agree, detail=str(v.closed_form))]
    if args.action == "kernel":
        r = args.degree if args.degree is not None else alpha.degree
        inputs["degree"] = r
        kb = tg.kernel_of_t(alpha, r)
        out = [CheckResult("dimension", "pass", str(kb.dimension), None)]
        out += [_value(f"basis[{k}]", h) for k, h in enumerate(kb.basis)]
        return inputs, out
    if args.action == "zariski":
        rep = tg.zariski_tangent_compare(alpha, verify_routes=True)
        return inputs, [
            CheckResult("explicit-span", "pass", str(rep.explicit_rank), None, f"{len(rep.spanning_forms)} listed forms"),
            CheckResult("kernel", "pass", str(rep.kernel_dimension), None, f"strata {rep.strata}"),
            CheckResult("degenerate", "pass", str(rep.degenerate).lower(), None),
            result("equal", rep.equal),
        ]
    if args.b is None:
        raise UsageError("--b is required for closure")
    b = _rational(args.b)
    inputs["b"] = str(b)
    if args.degree is not None:
        inputs["degree"] = args.degree
    rep = tg.closure_limit_expand(alpha, b, d=args.degree)
    out = [_value(f"c^{k}", c) for k, c in enumerate(rep.coefficients)]
    out.append(result("no-negative-powers", rep.negative_powers_cancel))
    out.append(result("c^0-term", rep.constant_term_ok, detail=str(rep.expected_constant_term)))
    return inputs, out


# ---------------------------------------------------------------------------
# output


def _print_table(report: RunReport, stream) -> None:
    print(f"# {report.command}  {json.dumps(report.inputs)}", file=stream)
    width = max((len(r.name) for r in report.results), default=4)
    for r in report.results:
        fields = [r.name.ljust(width), r.status.upper().ljust(4)]
        if r.exact is not None:
            fields.append(r.exact)
        if r.float is not None:
            fields.append(f"({r.float:.10g})")
        if r.detail:
            fields.append(f"- {r.detail}")
        print("  ".join(fields), file=stream)
    print(f"# {'PASS' if report.passed else 'FAIL'} in {report.elapsed_ms:.0f} ms", file=stream)


def _emit(report: RunReport, json_target: str | None) -> None:
    if json_target is None:
        _print_table(report, sys.stdout)
    elif json_target == "-":
        print(report.to_json())
    else:
        Path(json_target).write_text(report.to_json() + "\n")
        _print_table(report, sys.stdout)


def cmd_verify(args) -> RunReport:
    if args.replay:
        try:
            old = RunReport.from_dict(json.loads(Path(args.replay).read_text()))
        except (OSError, ValueError, KeyError, TypeError) as exc:
            raise UsageError(f"cannot load report {args.replay}: {exc}") from exc
        fresh, diffs = replay(old)
        fresh.command = "verify --replay"
        fresh.results.append(result("replay-identical", not diffs, len(diffs), ", ".join(diffs)))
        return fresh
    try:
        return run_verify_suite(args.section, args.seed)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from exc


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--arity", type=int, help="number of variables (default: inferred from the form)")
    common.add_argument("--json", nargs="?", const="-", metavar="PATH", help="emit the JSON report (to PATH, or stdout)")

    parser = argparse.ArgumentParser(prog="hessform", description="Exact Hessian-metric curvature and Clebsch covariants.")
    sub = parser.add_subparsers(dest="group", required=True)

    p = sub.add_parser("covariant", parents=[common], help="Hessian determinant, Aronhold invariant, Clebsch covariant")
    p.add_argument("action", choices=["hessian", "aronhold", "clebsch"])
    p.add_argument("form", help="expression or @file")

    p = sub.add_parser("curvature", parents=[common], help="curvature of the scaled Hessian metric")
    p.add_argument("action", choices=["tensor", "sectional", "on-m", "flat-check", "fd-oracle"])
    p.add_argument("form")
    p.add_argument("--point", help="comma-separated rationals")
    p.add_argument("--plane", help="two vectors 'u;v'")
    p.add_argument("--seed", type=int)
    p.add_argument("--count", type=int, default=10, help="sample points for flat-check")
    p.add_argument("--h", type=float, default=1e-4, help="finite-difference step")
    p.add_argument("--tolerance", type=float, default=1e-5, help="fd-oracle pass threshold")

    p = sub.add_parser("cone", parents=[common], help="positive and index cones")
    p.add_argument("action", choices=["classify", "sample", "scan", "compare"])
    p.add_argument("form")
    p.add_argument("--point")
    p.add_argument("--seed", type=int)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--box", default="-3,3")
    p.add_argument("--which", choices=["index", "positive"], default=None)
    p.add_argument("--mode", choices=["K_M", "full-tensor"])
    p.add_argument("--csv", metavar="PATH", help="write the scan table as CSV")

    p = sub.add_parser("tangent", parents=[common], help="first variation of S and the operator T")
    p.add_argument("action", choices=["t-op", "variation", "kernel", "spectrum", "zariski", "closure"])
    p.add_argument("forms", nargs="*", help="alpha, then h (t-op) or g (variation)")
    p.add_argument("--degree", type=int, help="degree r for kernel, d for spectrum/closure")
    p.add_argument("--b", help="rational parameter for closure")

    p = sub.add_parser("verify", help="run the reproduction checks")
    p.add_argument("--section", default="all", help=f"one of: {', '.join(available_selections())}")
    p.add_argument("--seed", type=int)
    p.add_argument("--json", nargs="?", const="-", metavar="PATH")
    p.add_argument("--replay", metavar="PATH", help="re-run a saved report and compare")
    return parser


_COMMANDS = {"covariant": cmd_covariant, "curvature": cmd_curvature, "cone": cmd_cone, "tangent": cmd_tangent}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "which", "unset") is None:
        args.which = "positive" if args.action == "compare" else "index"
    start = time.perf_counter()
    try:
        if args.group == "verify":
            report = cmd_verify(args)
        else:
            inputs, results = _COMMANDS[args.group](args)
            command = " ".join([args.group, args.action])
            report = RunReport(command, inputs, results, round((time.perf_counter() - start) * 1000, 1))
    except FormSyntaxError as exc:
        print(f"hessform: parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UsageError as exc:
        print(f"hessform: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, ArithmeticError) as exc:
        print(f"hessform: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit(report, args.json)
    return EXIT_OK if report.passed else EXIT_FAIL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
