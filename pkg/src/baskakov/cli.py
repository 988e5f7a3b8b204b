"""Command-line surface: evaluation, reports, studies, and a self test.

Every subcommand writes CSV to --out (default stdout).  Lines starting
with '#' carry metadata: the flags that produced the file and the
package version, never timestamps, so identical invocations give
byte-identical output.  Floats print as shortest round-trip decimals,
exact rationals as p/q.

Exit codes: 0 success, 1 validation error, 2 numerical non-convergence,
3 self-test failure.
"""

from __future__ import annotations

import argparse
import math
import re
import sys
from fractions import Fraction

import numpy as np

from . import analysis, closed_forms
from .basis import basis_row, eval_basis
from .errors import BaskakovError, DomainError, NonConvergenceError, ParseError
from .exact import (PowerSumQuery, central_moment, exact_moment,
                    moment_kernel, power_sum)
from .kinds import (FUNCTIONS, Baskakov, BaskakovDurrmeyer, Mod1, Mod2,
                    RationalFn, SequenceSpec, SplitA, SplitB)
from .operators import apply, empirical_positivity
from .quad import QuadConfig, durrmeyer_coefficient

VERSION = "0.1.0"

_RATFN_RE = re.compile(r"^ratfn:(-?\d+),(-?\d+)/(-?\d+),(-?\d+)$")
_FRAC_RE = re.compile(r"^(-?\d+)(?:/(-?\d+))?$")


def parse_sequence(expr: str) -> RationalFn:
    """Parse `INT`, `INT/INT`, or `ratfn:p0,p1/q0,q1` into a sequence."""
    text = expr.strip()
    m = _RATFN_RE.match(text)
    if m:
        p0, p1, q0, q1 = (int(g) for g in m.groups())
        if q0 == 0 and q1 == 0:
            raise ParseError(f"zero denominator in sequence {expr!r}")
        return RationalFn(Fraction(p0), Fraction(p1), Fraction(q0),
                          Fraction(q1))
    m = _FRAC_RE.match(text)
    if m:
        den = int(m.group(2)) if m.group(2) is not None else 1
        if den == 0:
            raise ParseError(f"zero denominator in sequence {expr!r}")
        return RationalFn.constant(Fraction(int(m.group(1)), den))
    raise ParseError(f"cannot parse sequence expression {expr!r}")


def _parse_rat(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"cannot parse rational {text!r}") from exc


def _parse_interval(text: str):
    parts = text.split(":")
    if len(parts) != 2:
        raise ParseError(f"interval must be a:b, got {text!r}")
    return _parse_rat(parts[0]), _parse_rat(parts[1])


def _parse_n_list(text: str) -> list:
    ns = []
    for part in text.split(","):
        if not part.strip().lstrip("-").isdigit():
            raise ParseError(f"bad n-list entry {part!r}")
        ns.append(int(part))
    if not ns or any(n < 1 for n in ns):
        raise ParseError(f"n-list entries must be positive, got {text!r}")
    return ns


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return repr(float(v))


def _write(args, lines) -> None:
    text = "\n".join(lines) + "\n"
    out = getattr(args, "out", None)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _meta(pairs) -> list:
    return [f"# {key}={val}" for key, val in pairs]


def _sequence_spec(args, required: bool, strict: bool = True):
    given = args.a0 is not None or args.a1 is not None
    if not required:
        if given:
            raise ParseError("--a0/--a1 apply to the mod1 operator only")
        return None
    if args.a0 is None or args.a1 is None:
        raise ParseError("mod1 requires both --a0 and --a1")
    return SequenceSpec(parse_sequence(args.a0), parse_sequence(args.a1),
                        require_normalized=strict)


def _operator(args):
    if args.op == "mod1":
        return Mod1(_sequence_spec(args, required=True))
    _sequence_spec(args, required=False)
    return {"baskakov": Baskakov(), "durrmeyer": BaskakovDurrmeyer(),
            "mod2": Mod2()}[args.op]


def _sequence_meta(kind) -> list:
    if isinstance(kind, Mod1):
        return [("a0", kind.spec.a0.as_text()), ("a1", kind.spec.a1.as_text())]
    return []


# ---------------------------------------------------------------------------
# Subcommands

def _cmd_eval(args) -> int:
    kind = _operator(args)
    f = FUNCTIONS[args.f]
    meta = [("version", VERSION), ("command", "eval"), ("op", args.op)]
    meta += _sequence_meta(kind)
    meta += [("f", f.id), ("n", str(args.n))]
    if args.x is not None:
        if args.x_min is not None or args.x_max is not None:
            raise ParseError("--x conflicts with --x-min/--x-max")
        xf = _parse_rat(args.x)
        xs = [float(xf)]
        meta.append(("x", _fmt(xf)))
    else:
        if args.x_min is None or args.x_max is None:
            raise ParseError("eval needs --x or both --x-min and --x-max")
        if args.x_min < 0 or args.x_max < args.x_min or args.points < 1:
            raise ParseError("grid must satisfy 0 <= x-min <= x-max, "
                             "points >= 1")
        xs = [float(v) for v in np.linspace(args.x_min, args.x_max,
                                            args.points)]
        meta += [("x_min", _fmt(args.x_min)), ("x_max", _fmt(args.x_max)),
                 ("points", str(args.points))]
    meta.append(("tol", _fmt(args.tol)))
    lines = _meta(meta) + ["x,value"]
    for x in xs:
        lines.append(f"{_fmt(x)},{_fmt(apply(kind, args.n, f, x, args.tol))}")
    _write(args, lines)
    return 0


def _moment_rows(args, central: bool):
    if args.op == "mod1":
        spec = _sequence_spec(args, required=True)
        limit = 4
        max_degree = args.max_degree if args.max_degree is not None else limit
        if not 0 <= max_degree <= limit:
            raise ParseError(f"--max-degree must be in 0..{limit} for mod1")
        if central:
            orders = [o for o in (1, 2, 4) if o <= max_degree]
            rows = closed_forms.compare_mod1_centrals(spec, args.n, _parse_rat(
                args.x), orders)
        else:
            rows = closed_forms.compare_mod1_moments(spec, args.n, _parse_rat(
                args.x), range(max_degree + 1))
        return rows, _sequence_meta(Mod1(spec)), max_degree
    spec = _sequence_spec(args, required=False)
    limit = 6
    max_degree = args.max_degree if args.max_degree is not None else limit
    if not 0 <= max_degree <= limit:
        raise ParseError(f"--max-degree must be in 0..{limit} for mod2")
    xf = _parse_rat(args.x)
    if central:
        rows = closed_forms.compare_mod2_centrals(args.n, xf,
                                                  range(1, max_degree + 1))
    else:
        rows = closed_forms.compare_mod2_moments(args.n, xf,
                                                 range(max_degree + 1))
    return rows, [], max_degree


def _cmd_moments(args) -> int:
    central = args.central
    if args.op not in ("mod1", "mod2"):
        raise ParseError("moment reports exist for mod1 and mod2 only")
    command = "central-moments" if central else "moments"
    rows, seq_meta, max_degree = _moment_rows(args, central)
    meta = [("version", VERSION), ("command", command), ("op", args.op)]
    meta += seq_meta
    meta += [("n", str(args.n)), ("x", _fmt(_parse_rat(args.x))),
             ("max_degree", str(max_degree))]
    if central and args.op == "mod2" and max_degree >= 6:
        meta.append(("note", "order-6 denominator factor read as (n-5)"))
    if central and args.op == "mod1":
        meta.append(("note", "order 3 has no stated closed form; omitted"))
    lines = _meta(meta) + ["j,paper_value,oracle_value,match"]
    for row in rows:
        lines.append(f"{row.degree},{_fmt(row.paper_value)},"
                     f"{_fmt(row.oracle_value)},{_fmt(row.match)}")
    _write(args, lines)
    return 0


def _cmd_converge(args) -> int:
    kind = _operator(args)
    f = FUNCTIONS[args.f]
    ns = _parse_n_list(args.n_list)
    a, b = _parse_interval(args.interval)
    report = analysis.convergence_report(kind, f, ns, (float(a), float(b)),
                                         args.points, args.tol)
    meta = [("version", VERSION), ("command", "converge"), ("op", args.op)]
    meta += _sequence_meta(kind)
    meta += [("f", f.id), ("interval", f"{_fmt(a)}:{_fmt(b)}"),
             ("points", str(args.points)),
             ("n_list", ",".join(str(n) for n in report.n_list)),
             ("tol", _fmt(args.tol))]
    lines = _meta(meta) + ["n,sup_error"]
    for n, err in zip(report.n_list, report.sup_errors):
        lines.append(f"{n},{_fmt(err)}")
    lines.append(f"# slope={_fmt(report.slope)}")
    lines.append(f"# r2={_fmt(report.r_squared)}")
    _write(args, lines)
    return 0


def _cmd_voronovskaja(args) -> int:
    if args.op not in ("mod1", "mod2"):
        raise ParseError("voronovskaja studies exist for mod1 and mod2 only")
    kind = _operator(args)
    order = args.order if args.order is not None else (
        1 if args.op == "mod1" else 2)
    f = FUNCTIONS[args.f]
    xf = _parse_rat(args.x)
    ns = _parse_n_list(args.n_list)
    report = analysis.voronovskaja_residuals(order, kind, f, float(xf), ns,
                                             args.tol)
    meta = [("version", VERSION), ("command", "voronovskaja"),
            ("op", args.op)]
    meta += _sequence_meta(kind)
    meta += [("f", f.id), ("x", _fmt(xf)), ("order", str(order)),
             ("n_list", ",".join(str(n) for n in report.n_list)),
             ("tol", _fmt(args.tol))]
    lines = _meta(meta) + ["n,scaled_residual,limit,abs_gap"]
    for n, resid, gap in zip(report.n_list, report.scaled_residuals,
                             report.abs_gaps):
        lines.append(f"{n},{_fmt(resid)},{_fmt(report.limit_value)},"
                     f"{_fmt(gap)}")
    _write(args, lines)
    return 0


def _cmd_positivity(args) -> int:
    a, b = _parse_interval(args.interval)
    step = _parse_rat(args.step)
    if a < 0 or b < a or step <= 0:
        raise ParseError("positivity grid must satisfy 0 <= a <= b, step > 0")
    if args.k_max < 0:
        raise ParseError("--k-max must be nonnegative")
    grid = []
    x = a
    while x <= b:
        grid.append(x)
        x += step
    xs = [float(v) for v in grid]
    if args.a0 is not None or args.a1 is not None:
        specs = [_sequence_spec(args, required=True, strict=False)]
    else:
        specs = [closed_forms.CASE_EXEMPLARS[i] for i in range(1, 8)]
    meta = [("version", VERSION), ("command", "positivity"),
            ("n", str(args.n)), ("interval", f"{_fmt(a)}:{_fmt(b)}"),
            ("step", _fmt(step)), ("k_max", str(args.k_max))]
    if args.a0 is not None:
        meta += [("a0", specs[0].a0.as_text()), ("a1", specs[0].a1.as_text())]
    lines = _meta(meta) + ["case,min_weight,argmin_k,argmin_x"]
    for spec in specs:
        case = closed_forms.classify_case(spec, args.n).value
        min_w, (k, x_at) = empirical_positivity(spec, args.n, xs, args.k_max)
        x_frac = grid[xs.index(x_at)]
        lines.append(f"{case},{_fmt(min_w)},{k},{_fmt(x_frac)}")
    _write(args, lines)
    return 0


# ---------------------------------------------------------------------------
# Self test

def _c_basis_normalization():
    for n, x in ((5, 0.5), (12, 1.0), (30, 2.0)):
        total = math.fsum(basis_row(n, x, 1e-13).values)
        if abs(total - 1.0) > 1e-11:
            return f"row sums to {total!r} at n={n}, x={x}"
    return None


def _c_two_term_collapse():
    for n in (4, 9):
        for x in (0.5, 2.0):
            for k in (0, 1, 2, 7, 19):
                lhs = (1.0 + x) * eval_basis(n + 1, k, x)
                if k >= 1:
                    lhs -= x * eval_basis(n + 1, k - 1, x)
                ref = eval_basis(n, k, x)
                if abs(lhs - ref) > 1e-12 * ref:
                    return f"off at n={n}, k={k}, x={x}"
    return None


def _c_three_term_collapse():
    for n in (4, 9):
        for x in (0.5, 2.0):
            for k in (0, 1, 2, 7, 19):
                lhs = (1.0 + x) ** 2 * eval_basis(n + 2, k, x)
                if k >= 1:
                    lhs -= 2.0 * x * (1.0 + x) * eval_basis(n + 2, k - 1, x)
                if k >= 2:
                    lhs += x * x * eval_basis(n + 2, k - 2, x)
                ref = eval_basis(n, k, x)
                if abs(lhs - ref) > 1e-12 * ref:
                    return f"off at n={n}, k={k}, x={x}"
    return None


def _c_quad_kernel():
    cfg = QuadConfig()
    for k in (0, 3, 10):
        for j in range(5):
            res = durrmeyer_coefficient(10, k, FUNCTIONS[f"t{j}"], cfg)
            ref = float(moment_kernel(10, k, j))
            if not res.converged or abs(res.value - ref) > 1e-10 * max(
                    1.0, ref):
                return f"k={k}, j={j}: got {res.value!r}, want {ref!r}"
    return None


def _c_power_sums():
    for n, x in ((9, Fraction(1, 2)), (6, Fraction(2))):
        row = basis_row(n + 1, float(x), 1e-16).values
        for r in (0, 1):
            for s in (1, 2, 3, 4):
                want = float(power_sum(PowerSumQuery(m=n + 1, r=r, s=s, x=x)))
                got = math.fsum(p * float((k + r) ** s)
                                for k, p in enumerate(row))
                if abs(got - want) > 1e-10 * max(1.0, abs(want)):
                    return f"(r={r}, s={s}) off at n={n}: {got!r} vs {want!r}"
    return None


def _c_normalization_gating():
    try:
        SequenceSpec.of(1, 2)
    except DomainError:
        pass
    else:
        return "unnormalized sequence pair was accepted"
    for case in (1, 4):
        spec = closed_forms.CASE_EXEMPLARS[case]
        if exact_moment(Mod1(spec), 12, Fraction(1, 2), 0) != 1:
            return f"mass not reproduced for exemplar {case}"
    return None


def _c_mod1_hard_moments():
    for case in range(1, 7):
        spec = closed_forms.CASE_EXEMPLARS[case]
        for n in (8, 20):
            for x in (Fraction(1, 2), Fraction(2)):
                for row in closed_forms.compare_mod1_moments(spec, n, x,
                                                             range(3)):
                    if not row.match:
                        return (f"degree {row.degree} off for case {case}, "
                                f"n={n}, x={x}")
    return None


def _c_mod2_hard_moments():
    for n in (8, 20):
        for x in (Fraction(1, 2), Fraction(2)):
            for row in closed_forms.compare_mod2_moments(n, x, range(3)):
                if not row.match:
                    return f"degree {row.degree} off at n={n}, x={x}"
            if central_moment(Mod2(), n, x, 1) != 0:
                return f"first central moment nonzero at n={n}, x={x}"
    return None


def _c_decomposition():
    spec = closed_forms.CASE_EXEMPLARS[1]
    for f_id in ("exp_neg", "t1"):
        f = FUNCTIONS[f_id]
        for x in (0.5, 1.5):
            total = (apply(Mod1(spec), 20, f, x)
                     + apply(SplitA(spec), 20, f, x)
                     + apply(SplitB(spec), 20, f, x))
            if abs(total) > 1e-10:
                return f"|V+A+B| = {abs(total):.3e} for {f_id} at x={x}"
    return None


def _c_classification():
    for case, spec in closed_forms.CASE_EXEMPLARS.items():
        got = closed_forms.classify_case(spec, 10)
        if got.value != f"Case{case}":
            return f"exemplar {case} classified as {got.value}"
    loose = SequenceSpec.of(1, 2, require_normalized=False)
    if (closed_forms.classify_case(loose, 10)
            is not closed_forms.PositivityCase.VIOLATES):
        return "constraint violation not flagged"
    return None


def _c_monomials_vs_oracle():
    kinds = (BaskakovDurrmeyer(), Mod1(closed_forms.CASE_EXEMPLARS[1]), Mod2())
    for kind in kinds:
        for j in range(3):
            got = apply(kind, 10, FUNCTIONS[f"t{j}"], 0.5)
            want = float(exact_moment(kind, 10, Fraction(1, 2), j))
            if abs(got - want) > 1e-9 * max(1.0, abs(want)):
                return f"{kind.name} on t^{j}: {got!r} vs {want!r}"
    return None


def _c_classical_moments():
    for n in (5, 40):
        for x in (0.5, 2.0):
            if abs(apply(Baskakov(), n, FUNCTIONS["t0"], x) - 1.0) > 1e-12:
                return f"mass off at n={n}, x={x}"
            if abs(apply(Baskakov(), n, FUNCTIONS["t1"], x) - x) > 1e-12 * x:
                return f"t moment off at n={n}, x={x}"
            want = x * x + x * (1.0 + x) / n
            got = apply(Baskakov(), n, FUNCTIONS["t2"], x)
            if abs(got - want) > 1e-12 * want:
                return f"t^2 moment off at n={n}, x={x}"
    return None


_CHECKS = (
    ("basis normalization", _c_basis_normalization),
    ("two-term basis collapse", _c_two_term_collapse),
    ("three-term basis collapse", _c_three_term_collapse),
    ("quadrature vs exact kernel", _c_quad_kernel),
    ("power-sum closed forms", _c_power_sums),
    ("normalization gating", _c_normalization_gating),
    ("first-modification hard moments", _c_mod1_hard_moments),
    ("second-modification hard moments", _c_mod2_hard_moments),
    ("decomposition identity", _c_decomposition),
    ("case classification", _c_classification),
    ("monomial evaluation vs oracle", _c_monomials_vs_oracle),
    ("classical operator moments", _c_classical_moments),
)


def _cmd_selftest(args) -> int:
    failures = []
    for name, check in _CHECKS:
        try:
            detail = check()
        except Exception as exc:  # a crash is a failure, not an abort
            detail = f"raised {type(exc).__name__}: {exc}"
        if detail is not None:
            failures.append((name, detail))
    if failures:
        for name, detail in failures:
            print(f"FAIL {name}: {detail}", file=sys.stderr)
        print(f"FAIL {len(failures)} of {len(_CHECKS)} checks")
        return 3
    print(f"PASS {len(_CHECKS)} checks")
    return 0


# ---------------------------------------------------------------------------
# Argument parsing

class _Parser(argparse.ArgumentParser):
    """argparse that raises instead of exiting, so main owns exit codes."""

    def error(self, message):
        raise ParseError(message)


def _add_operator_flags(p, ops=("baskakov", "durrmeyer", "mod1", "mod2")):
    p.add_argument("--op", required=True, choices=ops)
    p.add_argument("--a0", help="a0 sequence (mod1): INT, INT/INT, or "
                               "ratfn:p0,p1/q0,q1")
    p.add_argument("--a1", help="a1 sequence (mod1)")


def _build_parser() -> _Parser:
    parser = _Parser(prog="baskakov",
                     description="Baskakov-type operator toolkit")
    sub = parser.add_subparsers(dest="command", required=True,
                                parser_class=_Parser)

    p = sub.add_parser("eval", help="evaluate an operator on a grid")
    _add_operator_flags(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--f", required=True, choices=sorted(FUNCTIONS))
    p.add_argument("--x")
    p.add_argument("--x-min", type=float, dest="x_min")
    p.add_argument("--x-max", type=float, dest="x_max")
    p.add_argument("--points", type=int, default=41)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--out")
    p.set_defaults(handler=_cmd_eval)

    for name, central in (("moments", False), ("central-moments", True)):
        p = sub.add_parser(name, help="formula-vs-oracle moment report")
        _add_operator_flags(p, ops=("mod1", "mod2"))
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--x", required=True)
        p.add_argument("--max-degree", type=int, dest="max_degree")
        p.add_argument("--out")
        p.set_defaults(handler=_cmd_moments, central=central)

    p = sub.add_parser("converge", help="sup-error decay and fitted order")
    _add_operator_flags(p)
    p.add_argument("--f", required=True, choices=sorted(FUNCTIONS))
    p.add_argument("--n-list", required=True, dest="n_list")
    p.add_argument("--interval", default="0:2")
    p.add_argument("--points", type=int, default=41)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--out")
    p.set_defaults(handler=_cmd_converge)

    p = sub.add_parser("voronovskaja", help="scaled residuals vs their limit")
    _add_operator_flags(p, ops=("mod1", "mod2"))
    p.add_argument("--f", required=True, choices=sorted(FUNCTIONS))
    p.add_argument("--x", required=True)
    p.add_argument("--n-list", required=True, dest="n_list")
    p.add_argument("--order", type=int, choices=(1, 2))
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--out")
    p.set_defaults(handler=_cmd_voronovskaja)

    p = sub.add_parser("positivity",
                       help="minimum first-order weight over a grid")
    p.add_argument("--a0")
    p.add_argument("--a1")
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--interval", default="0:2")
    p.add_argument("--step", default="1/10")
    p.add_argument("--k-max", type=int, default=120, dest="k_max")
    p.add_argument("--out")
    p.set_defaults(handler=_cmd_positivity)

    p = sub.add_parser("selftest", help="run the built-in check battery")
    p.set_defaults(handler=_cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.handler(args)
    except NonConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BaskakovError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
