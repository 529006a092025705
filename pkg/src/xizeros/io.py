"""Decimal-string serialization: zero tables and coefficient tables as CSV,
identity reports as JSON.  All numbers cross this boundary as decimal
strings at target precision, never binary floats; writes are atomic.
"""

from __future__ import annotations

import json
import os
import tempfile
from typing import List, Sequence

import mpmath
from mpmath import mpc, mpf

from .numerics import BoundedReal, PrecisionContext
from .products import IdentityReport
from .series import CoefficientTable
from .transform import AlephParam
from .zeros import ComplexZero, RealZero, ZeroTable


class SchemaMismatch(Exception):
    pass


class ParseError(Exception):
    def __init__(self, message, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


ZERO_TABLE_HEADER = "aleph,index,re,im,bracket_lo,bracket_hi,certified_digits,residual"
COEFF_TABLE_HEADER = "aleph,gamma,alpha,error_radius"


def fmt_decimal(x, digits: int) -> str:
    """Fixed-point decimal string; exponent notation only below 1e-99."""
    with mpmath.mp.workdps(digits + 10):
        x = mpf(x)
        if x == 0:
            return "0"
        return mpmath.nstr(
            x, digits, min_fixed=-99, max_fixed=digits + 10, strip_zeros=True
        )


def parse_decimal(s: str, digits: int) -> mpf:
    with mpmath.mp.workdps(digits + 10):
        return mpf(s)


def atomic_write(path: str, text: str) -> None:
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-xizeros-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# ---------------------------------------------------------------------------
# zero tables

def zero_table_to_csv(table: ZeroTable, ctx: PrecisionContext) -> str:
    d = ctx.target_digits
    lines = [ZERO_TABLE_HEADER]
    aleph_s = fmt_decimal(table.aleph.aleph, d)
    for z in table.real_zeros:
        lines.append(
            ",".join(
                [
                    aleph_s,
                    str(z.index),
                    fmt_decimal(z.location, d),
                    "0",
                    fmt_decimal(z.bracket[0], d),
                    fmt_decimal(z.bracket[1], d),
                    str(z.certified_digits),
                    "",
                ]
            )
        )
    next_index = len(table.real_zeros) + 1
    for k, z in enumerate(table.complex_zeros):
        lines.append(
            ",".join(
                [
                    aleph_s,
                    str(next_index + k),
                    fmt_decimal(z.location.real, d),
                    fmt_decimal(z.location.imag, d),
                    "",
                    "",
                    "",
                    fmt_decimal(z.residual, d),
                ]
            )
        )
    return "\n".join(lines) + "\n"


def zero_table_from_csv(text: str, ctx: PrecisionContext) -> ZeroTable:
    lines = text.splitlines()
    if not lines or lines[0].strip() != ZERO_TABLE_HEADER:
        raise SchemaMismatch(f"expected header {ZERO_TABLE_HEADER!r}")
    d = ctx.target_digits
    aleph = None
    real_zeros: List[RealZero] = []
    complex_zeros: List[ComplexZero] = []
    for ln, raw in enumerate(lines[1:], start=2):
        if not raw.strip():
            continue
        parts = raw.split(",")
        if len(parts) != 8:
            raise ParseError(f"expected 8 columns, got {len(parts)}", ln)
        try:
            row_aleph = parse_decimal(parts[0], d)
        except Exception as exc:
            raise ParseError(f"bad aleph {parts[0]!r}: {exc}", ln)
        if aleph is None:
            aleph = AlephParam(row_aleph)
        elif aleph.aleph != row_aleph:
            raise SchemaMismatch(f"aleph mismatch at line {ln}")
        try:
            if parts[4]:  # bracketed rows are real zeros
                real_zeros.append(
                    RealZero(
                        aleph=aleph,
                        index=int(parts[1]),
                        location=parse_decimal(parts[2], d),
                        bracket=(parse_decimal(parts[4], d), parse_decimal(parts[5], d)),
                        certified_digits=int(parts[6]),
                    )
                )
            else:
                complex_zeros.append(
                    ComplexZero(
                        aleph=aleph,
                        location=mpc(parse_decimal(parts[2], d), parse_decimal(parts[3], d)),
                        residual=parse_decimal(parts[7], d) if parts[7] else mpf(0),
                    )
                )
        except (ValueError, TypeError) as exc:
            raise ParseError(str(exc), ln)
    if aleph is None:
        raise SchemaMismatch("empty table")
    return ZeroTable(
        aleph=aleph,
        real_zeros=tuple(real_zeros),
        complex_zeros=tuple(complex_zeros),
        provenance="imported",
    )


# ---------------------------------------------------------------------------
# coefficient tables

def coeff_table_to_csv(table: CoefficientTable, ctx: PrecisionContext) -> str:
    d = ctx.target_digits
    lines = [COEFF_TABLE_HEADER]
    aleph_s = fmt_decimal(table.aleph.aleph, d)
    for g, alpha in table.entries:
        lines.append(
            ",".join(
                [aleph_s, str(g), fmt_decimal(alpha.value, d), fmt_decimal(alpha.error_radius, d)]
            )
        )
    return "\n".join(lines) + "\n"


def coeff_table_from_csv(text: str, ctx: PrecisionContext) -> CoefficientTable:
    lines = text.splitlines()
    if not lines or lines[0].strip() != COEFF_TABLE_HEADER:
        raise SchemaMismatch(f"expected header {COEFF_TABLE_HEADER!r}")
    d = ctx.target_digits
    aleph = None
    entries = []
    for ln, raw in enumerate(lines[1:], start=2):
        if not raw.strip():
            continue
        parts = raw.split(",")
        if len(parts) != 4:
            raise ParseError(f"expected 4 columns, got {len(parts)}", ln)
        try:
            row_aleph = parse_decimal(parts[0], d)
            g = int(parts[1])
            alpha = BoundedReal(parse_decimal(parts[2], d), parse_decimal(parts[3], d))
        except Exception as exc:
            raise ParseError(str(exc), ln)
        if aleph is None:
            aleph = AlephParam(row_aleph)
        elif aleph.aleph != row_aleph:
            raise SchemaMismatch(f"aleph mismatch at line {ln}")
        entries.append((g, alpha))
    if aleph is None:
        raise SchemaMismatch("empty table")
    return CoefficientTable(aleph=aleph, entries=tuple(entries))


def export_table(table, path: str, ctx: PrecisionContext) -> None:
    if isinstance(table, ZeroTable):
        atomic_write(path, zero_table_to_csv(table, ctx))
    elif isinstance(table, CoefficientTable):
        atomic_write(path, coeff_table_to_csv(table, ctx))
    else:
        raise TypeError(f"cannot export {type(table).__name__}")


def import_table(path: str, ctx: PrecisionContext):
    with open(path) as fh:
        text = fh.read()
    first = text.splitlines()[0].strip() if text.strip() else ""
    if first == ZERO_TABLE_HEADER:
        return zero_table_from_csv(text, ctx)
    if first == COEFF_TABLE_HEADER:
        return coeff_table_from_csv(text, ctx)
    raise SchemaMismatch(f"unrecognized header {first!r}")


# ---------------------------------------------------------------------------
# identity reports

def _fmt_complex_pair(value: mpc, digits: int):
    return [fmt_decimal(value.real, digits), fmt_decimal(value.imag, digits)]


def reports_to_json(aleph: AlephParam, reports: Sequence[IdentityReport], ctx: PrecisionContext) -> str:
    d = ctx.target_digits
    doc = {
        "aleph": fmt_decimal(aleph.aleph, d),
        "checks": [
            {
                "name": r.name,
                "lhs": _fmt_complex_pair(r.lhs.value, d),
                "rhs": _fmt_complex_pair(r.rhs.value, d),
                "residual": fmt_decimal(r.residual, d),
                "tolerance": fmt_decimal(r.tolerance, d),
                "pass": r.passed,
                "notes": r.notes,
            }
            for r in reports
        ],
    }
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"
