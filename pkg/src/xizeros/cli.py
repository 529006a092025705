"""Command-line surface: evaluations, coefficient and zero tables, box
counts, reality certificates, truncated products, the identity verification
suite, and the static literature bounds tables.

Exit codes: 0 success, 2 argument parse error, 3 numeric failure,
4 verification suite failure.  Data goes to --out or stdout; diagnostics are
single-line JSON records on stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import List, Optional

import mpmath
from mpmath import mpc, mpf

from . import io as xio
from .kernel import plan_truncation
from .numerics import BoundedReal, NonConvergent, PrecisionContext
from .products import (
    SUITE_NAMES,
    check_identities,
    default_suite_tables,
    eval_product,
    zero_sum,
)
from .series import compute_coefficients
from .transform import AlephParam, eval_M, eval_Xi
from .zeros import (
    Box,
    PrecisionExhausted,
    ZeroOnContour,
    count_zeros_in_box,
    reality_certificate,
    scan_real_zeros,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERIC = 3
EXIT_VERIFY_FAILED = 4

# Literature bounds on the family parameter, in the de Bruijn-Newman sign
# convention t = -aleph (lower bounds on t are the historical lower-bound
# chain on the constant).
BOUNDS_ROWS = (
    ("-inf", "lower", "Newman"),
    ("-50", "lower", "Csordas-Norfolk-Varga"),
    ("-5", "lower", "te Riele"),
    ("-0.385", "lower", "Norfolk-Ruttan-Varga"),
    ("-0.0991", "lower", "Csordas-Ruttan-Varga"),
    ("-0.379e-6", "lower", "Csordas-Smith-Varga"),
    ("-5.895e-9", "lower", "Csordas-Odlyzko-Smith-Varga"),
    ("-2.63e-9", "lower", "Odlyzko"),
    ("-1.15e-11", "lower", "Saouter-Gourdon-Demichel"),
    ("0.5", "upper", "Ki-Kim-Lee"),
    ("0.22", "upper", "Polymath"),
    ("+inf", "upper", "Rodgers-Tao"),
)


def _diag(**fields):
    print(json.dumps(fields, sort_keys=True), file=sys.stderr)


def _parse_complex(s: str) -> mpc:
    parts = s.split(",")
    if len(parts) == 1:
        return mpc(mpf(parts[0]), 0)
    if len(parts) == 2:
        return mpc(mpf(parts[0]), mpf(parts[1]))
    raise argparse.ArgumentTypeError(f"expected 'real[,imag]', got {s!r}")


def _parse_range(s: str):
    parts = s.split(":")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected 'lo:hi', got {s!r}")
    return mpf(parts[0]), mpf(parts[1])


def _parse_box(s: str) -> Box:
    parts = s.split(":")
    if len(parts) != 4:
        raise argparse.ArgumentTypeError(f"expected 'relo:rehi:imlo:imhi', got {s!r}")
    return Box(*[mpf(p) for p in parts])


def _context(args) -> PrecisionContext:
    digits = args.digits
    if digits is None:
        env = os.environ.get("XIZEROS_DIGITS")
        digits = int(env) if env else 30
    if not 15 <= digits <= 200:
        raise SystemExit(EXIT_USAGE)
    return PrecisionContext(working_digits=digits + 20, target_digits=digits)


def _emit(text: str, out: Optional[str]):
    if out:
        xio.atomic_write(out, text)
        _diag(event="wrote", path=out, bytes=len(text))
    else:
        sys.stdout.write(text)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="xizeros", description=__doc__)
    sub = p.add_subparsers(dest="subcommand", required=True)

    def common(sp, aleph=True):
        if aleph:
            sp.add_argument("--aleph", type=mpf, default=mpf(0))
        sp.add_argument("--digits", type=int, default=None)
        sp.add_argument("--format", choices=("csv", "json"), default="json")
        sp.add_argument("--out", default=None)

    sp = sub.add_parser("eval", help="evaluate Xi (via --lambda) or M (via --tau)")
    common(sp)
    sp.add_argument("--lambda", dest="lam", type=_parse_complex, default=None)
    sp.add_argument("--tau", type=_parse_complex, default=None)

    sp = sub.add_parser("coeffs", help="Taylor coefficient table as CSV")
    common(sp)
    sp.add_argument("--gamma-max", type=int, default=40)

    sp = sub.add_parser("zeros", help="scan real zeros over --range")
    common(sp)
    sp.add_argument("--range", dest="range_", type=_parse_range, default=(mpf(0), mpf(60)))

    sp = sub.add_parser("box-count", help="argument-principle count over --box")
    common(sp)
    sp.add_argument("--box", type=_parse_box, required=True)

    sp = sub.add_parser("certify", help="reality certificate over a box")
    common(sp)
    sp.add_argument("--range", dest="range_", type=_parse_range, default=(mpf(0), mpf(60)))
    sp.add_argument("--box-height", type=mpf, default=mpf(2))

    sp = sub.add_parser("product", help="truncated zero product at --lambda")
    common(sp)
    sp.add_argument("--lambda", dest="lam", type=_parse_complex, required=True)
    sp.add_argument("--factors", type=int, default=50)
    sp.add_argument("--zeros-csv", default=None, help="reuse a zero table instead of scanning")

    sp = sub.add_parser("verify", help="run the identity verification suite")
    common(sp)
    sp.add_argument("--suite", default="all")

    sp = sub.add_parser("bounds", help="literature bounds tables (static)")
    common(sp, aleph=False)

    return p


def _cmd_eval(args, ctx) -> int:
    aleph = AlephParam(args.aleph)
    if (args.lam is None) == (args.tau is None):
        _diag(event="error", message="exactly one of --lambda/--tau required")
        return EXIT_USAGE
    if args.lam is not None:
        arg, kind = args.lam, "lambda"
        res = eval_Xi(aleph, args.lam if args.lam.imag != 0 else args.lam.real, ctx)
    else:
        arg, kind = args.tau, "tau"
        res = eval_M(aleph, args.tau if args.tau.imag != 0 else args.tau.real, ctx)
    d = ctx.target_digits
    doc = {
        "aleph": xio.fmt_decimal(aleph.aleph, d),
        kind: [xio.fmt_decimal(arg.real, d), xio.fmt_decimal(arg.imag, d)],
        "value": [
            xio.fmt_decimal(res.value.value.real, d),
            xio.fmt_decimal(res.value.value.imag, d),
        ],
        "error_radius": xio.fmt_decimal(res.value.error_radius, d),
        "quadrature_converged": res.quadrature_converged,
    }
    _emit(json.dumps(doc, indent=2) + "\n", args.out)
    return EXIT_OK if res.quadrature_converged else EXIT_NUMERIC


def _cmd_coeffs(args, ctx) -> int:
    table = compute_coefficients(AlephParam(args.aleph), args.gamma_max, ctx)
    _emit(xio.coeff_table_to_csv(table, ctx), args.out)
    return EXIT_OK


def _cmd_zeros(args, ctx) -> int:
    lo, hi = args.range_
    table = scan_real_zeros(AlephParam(args.aleph), lo, hi, ctx)
    if table.flagged_intervals:
        _diag(
            event="flagged_intervals",
            intervals=[[str(a), str(b)] for a, b in table.flagged_intervals],
        )
    _emit(xio.zero_table_to_csv(table, ctx), args.out)
    return EXIT_OK


def _cmd_box_count(args, ctx) -> int:
    bc = count_zeros_in_box(AlephParam(args.aleph), args.box, ctx)
    d = ctx.target_digits
    doc = {
        "aleph": xio.fmt_decimal(args.aleph, d),
        "box": [xio.fmt_decimal(v, d) for v in (bc.box.re_lo, bc.box.re_hi, bc.box.im_lo, bc.box.im_hi)],
        "count": bc.count,
        "min_modulus_on_contour": xio.fmt_decimal(bc.min_modulus_on_contour, d),
    }
    _emit(json.dumps(doc, indent=2) + "\n", args.out)
    return EXIT_OK


def _cmd_certify(args, ctx) -> int:
    lo, hi = args.range_
    if lo != 0:
        _diag(event="error", message="certify range must start at 0")
        return EXIT_USAGE
    rep = reality_certificate(AlephParam(args.aleph), hi, args.box_height, ctx)
    d = ctx.target_digits
    doc = {
        "aleph": xio.fmt_decimal(args.aleph, d),
        "aleph_literature_t": xio.fmt_decimal(-args.aleph, d),
        "re_hi": xio.fmt_decimal(rep.re_hi, d),
        "height": xio.fmt_decimal(rep.height, d),
        "n_real": rep.n_real,
        "n_box": rep.n_box,
        "verdict": rep.verdict,
        "consistent": rep.consistent,
        "real_zeros": [xio.fmt_decimal(z.location, d) for z in rep.real_zeros.real_zeros],
        "non_real_zeros": [
            {
                "location": [
                    xio.fmt_decimal(z.location.real, d),
                    xio.fmt_decimal(z.location.imag, d),
                ],
                "multiplicity": z.multiplicity,
                "residual": xio.fmt_decimal(z.residual, d),
            }
            for z in rep.non_real
        ],
        "notes": rep.notes,
    }
    _emit(json.dumps(doc, indent=2) + "\n", args.out)
    return EXIT_OK


def _cmd_product(args, ctx) -> int:
    aleph = AlephParam(args.aleph)
    if args.zeros_csv:
        table = xio.import_table(args.zeros_csv, ctx)
    else:
        table, _coeffs = default_suite_tables(aleph, ctx, L=args.factors, gamma_max=0)
    m0 = eval_M(aleph, 0, ctx).value.real
    lam = args.lam if args.lam.imag != 0 else args.lam.real
    res, trunc = eval_product(BoundedReal(m0.value, m0.error_radius), table, args.factors, lam, ctx)
    d = ctx.target_digits
    doc = {
        "aleph": xio.fmt_decimal(aleph.aleph, d),
        "lambda": [xio.fmt_decimal(args.lam.real, d), xio.fmt_decimal(args.lam.imag, d)],
        "factors": trunc.L,
        "value": [
            xio.fmt_decimal(res.value.value.real, d),
            xio.fmt_decimal(res.value.value.imag, d),
        ],
        "error_radius": xio.fmt_decimal(res.value.error_radius, d),
        "tail_estimate": xio.fmt_decimal(trunc.tail_estimate, d),
    }
    _emit(json.dumps(doc, indent=2) + "\n", args.out)
    return EXIT_OK


def _cmd_verify(args, ctx) -> int:
    aleph = AlephParam(args.aleph)
    suite = list(SUITE_NAMES) if args.suite == "all" else args.suite.split(",")
    reports = check_identities(aleph, suite, ctx)
    if args.format == "json":
        text = xio.reports_to_json(aleph, reports, ctx)
    else:
        d = ctx.target_digits
        lines = ["name,residual,tolerance,pass,notes"]
        for r in reports:
            lines.append(
                f"{r.name},{xio.fmt_decimal(r.residual, d)},{xio.fmt_decimal(r.tolerance, d)},"
                f"{str(r.passed).lower()},{r.notes.replace(',', ';')}"
            )
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_VERIFY_FAILED


def _cmd_bounds(args, _ctx) -> int:
    if args.format == "json":
        text = (
            json.dumps(
                [
                    {"bound": b, "direction": d, "attribution": a}
                    for b, d, a in BOUNDS_ROWS
                ],
                indent=2,
            )
            + "\n"
        )
    else:
        lines = ["bound,direction,attribution"]
        lines += [f"{b},{d},{a}" for b, d, a in BOUNDS_ROWS]
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return EXIT_OK


_DISPATCH = {
    "eval": _cmd_eval,
    "coeffs": _cmd_coeffs,
    "zeros": _cmd_zeros,
    "box-count": _cmd_box_count,
    "certify": _cmd_certify,
    "product": _cmd_product,
    "verify": _cmd_verify,
    "bounds": _cmd_bounds,
}


def run(argv: List[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        ctx = _context(args) if args.subcommand != "bounds" else None
    except SystemExit:
        _diag(event="error", message="--digits must be in [15, 200]")
        return EXIT_USAGE
    _diag(event="run", subcommand=args.subcommand)
    try:
        return _DISPATCH[args.subcommand](args, ctx)
    except ValueError as exc:
        _diag(event="error", message=str(exc))
        return EXIT_USAGE
    except (NonConvergent, PrecisionExhausted, ZeroOnContour) as exc:
        _diag(event="numeric_failure", type=type(exc).__name__, message=str(exc))
        return EXIT_NUMERIC
    except (xio.SchemaMismatch, xio.ParseError) as exc:
        _diag(event="io_failure", type=type(exc).__name__, message=str(exc))
        return EXIT_NUMERIC


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
