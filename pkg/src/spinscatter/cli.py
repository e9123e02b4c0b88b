"""Command-line interface.

Subcommands: ``scatter``, ``sweep``, ``partial-wave``, ``tables``, ``check``.
Data goes to stdout, diagnostics to stderr.  Exit codes: 0 success, 1 usage
error, 2 data or validation error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .checks import run_checks
from .entanglement import EntanglementReport, closed_form_entanglement, entanglement_entropy
from .errors import ChannelError, InputError, RangeError, SpinScatterError, TableFormatError
from .partial_wave import (
    PartialWaveLabels,
    apply_central_smatrix,
    channel_phases,
    couple_orbital_spin,
    load_phase_table,
)
from .spin_smatrix import SpinPhasePair, apply_spin_smatrix
from .spin_states import (
    COUPLED_LABELS,
    PRODUCT_LABELS,
    SingleSpinState,
    in_state_from_angle,
    magic_basis,
    to_coupled,
)
from .su2 import cgc_matrix, format_half

EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 1, 2
SIG_DIGITS = 12


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# --- value parsing and formatting ------------------------------------------

_PI_EXPR = re.compile(r"^\s*([+-]?)\s*(\d*\.?\d*)\s*\*?\s*pi\s*(?:/\s*(\d*\.?\d+))?\s*$")


def parse_angle(text: str) -> float:
    """Parse a float or a simple multiple of pi (``pi/2``, ``-3pi/4``, ``0.5*pi``)."""
    try:
        return float(text)
    except ValueError:
        pass
    m = _PI_EXPR.match(text.lower())
    if not m:
        raise argparse.ArgumentTypeError(f"not an angle: {text!r}")
    sign, coef, den = m.groups()
    val = (float(coef) if coef else 1.0) * math.pi / (float(den) if den else 1.0)
    return -val if sign == "-" else val


def _count(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    return n


def make_formatter(precision: str):
    if precision == "full":
        return repr
    digits = int(precision)
    return lambda v: format(v, f".{digits}g")


@dataclass
class SweepSpec:
    theta_range: tuple[float, float, int] = (0.0, math.pi, 33)
    delta_range: tuple[float, float, int] = (0.0, math.pi, 33)
    output_format: str = "csv"

    def __post_init__(self):
        for name in ("theta_range", "delta_range"):
            start, end, count = getattr(self, name)
            if count < 2:
                raise UsageError(f"{name}: count must be >= 2, got {count}")
            if not start < end:
                raise UsageError(f"{name}: start must be < end, got {start} >= {end}")
            if not (math.isfinite(start) and math.isfinite(end)):
                raise UsageError(f"{name}: bounds must be finite")
        if self.output_format not in ("csv", "json"):
            raise UsageError(f"unknown format {self.output_format!r}")

    def grid(self):
        thetas = np.linspace(*self.theta_range)
        deltas = np.linspace(*self.delta_range)
        return thetas, deltas


def sweep_rows(spec: SweepSpec) -> list[tuple[float, float, float]]:
    """Rows ``(theta, delta_diff, E)``, theta-major."""
    thetas, deltas = spec.grid()
    return [(float(t), float(d), closed_form_entanglement(float(t), float(d), 0.0))
            for t in thetas for d in deltas]


def emit_table(columns, rows, fmt, output_format, out) -> None:
    if output_format == "json":
        payload = {"columns": list(columns),
                   "rows": [[float(fmt(v)) if isinstance(v, float) else v for v in row] for row in rows]}
        json.dump(payload, out)
        out.write("\n")
    else:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(columns)
        for row in rows:
            w.writerow([fmt(v) if isinstance(v, float) else v for v in row])


# --- scatter ---------------------------------------------------------------

@dataclass
class RunReport:
    theta: float
    delta0: float
    delta1: float
    out_product: np.ndarray
    out_coupled: np.ndarray
    entanglement: EntanglementReport
    closed_form: float
    residual: float = field(init=False)

    def __post_init__(self):
        self.residual = abs(self.closed_form - self.entanglement.entropy_bits)

    def as_dict(self, fmt) -> dict:
        num = lambda v: float(fmt(float(v)))  # noqa: E731
        amps = lambda labels, arr: {k: [num(z.real), num(z.imag)] for k, z in zip(labels, arr)}  # noqa: E731
        ent = self.entanglement
        return {
            "inputs": {"theta": num(self.theta), "delta0": num(self.delta0), "delta1": num(self.delta1)},
            "out_product": amps(PRODUCT_LABELS, self.out_product),
            "out_coupled": amps(COUPLED_LABELS, self.out_coupled),
            "entanglement": {
                "schmidt": [num(v) for v in ent.schmidt],
                "eigenvalues": [num(v) for v in ent.eigenvalues],
                "entropy_bits": num(ent.entropy_bits),
            },
            "closed_form": num(self.closed_form),
            "residual": num(self.residual),
        }

    def csv_rows(self, fmt) -> list[list[str]]:
        rows = [["theta", fmt(self.theta), ""], ["delta0", fmt(self.delta0), ""],
                ["delta1", fmt(self.delta1), ""]]
        for lab, z in zip(PRODUCT_LABELS, self.out_product):
            rows.append([f"out_product[{lab}]", fmt(float(z.real)), fmt(float(z.imag))])
        for lab, z in zip(COUPLED_LABELS, self.out_coupled):
            rows.append([f"out_coupled[{lab}]", fmt(float(z.real)), fmt(float(z.imag))])
        ent = self.entanglement
        rows += [["schmidt_plus", fmt(ent.schmidt[0]), ""], ["schmidt_minus", fmt(ent.schmidt[1]), ""],
                 ["entropy_bits", fmt(ent.entropy_bits), ""], ["closed_form", fmt(self.closed_form), ""],
                 ["residual", fmt(self.residual), ""]]
        return rows


def scatter_report(theta: float, delta0: float, delta1: float) -> RunReport:
    state = in_state_from_angle(theta)
    out = apply_spin_smatrix(state, SpinPhasePair(delta0, delta1))
    return RunReport(theta, delta0, delta1, out.amplitudes, to_coupled(out).amplitudes,
                     entanglement_entropy(out), closed_form_entanglement(theta, delta0, delta1))


def cmd_scatter(args, out) -> int:
    conv = math.radians if args.degrees else float
    try:
        report = scatter_report(conv(args.theta), conv(args.delta0), conv(args.delta1))
    except InputError as exc:
        raise UsageError(str(exc)) from exc
    fmt = make_formatter(args.precision)
    if args.format == "json":
        json.dump(report.as_dict(fmt), out, indent=2)
        out.write("\n")
    else:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["field", "real", "imag"])
        w.writerows(report.csv_rows(fmt))
    if report.residual >= 1e-10:
        print(f"closed-form residual {report.residual:.3e} exceeds 1e-10", file=sys.stderr)
        return EXIT_DATA
    return EXIT_OK


# --- sweep -----------------------------------------------------------------

def cmd_sweep(args, out) -> int:
    conv = math.radians if args.degrees else float
    t0, t1, tn = args.theta_range
    d0, d1, dn = args.delta_range
    spec = SweepSpec((conv(t0), conv(t1), int(tn)), (conv(d0), conv(d1), int(dn)), args.format)
    emit_table(("theta", "delta_diff", "entanglement"), sweep_rows(spec),
               make_formatter(args.precision), spec.output_format, out)
    return EXIT_OK


# --- partial wave ----------------------------------------------------------

def partial_wave_rows(table, l: int, theta: float, q_start: float, q_end: float, q_count: int):
    if q_count < 1:
        raise UsageError(f"--q-count must be >= 1, got {q_count}")
    if q_count > 1 and not q_start < q_end:
        raise UsageError("--q-start must be < --q-end")
    if l < 0:
        raise UsageError(f"--l must be non-negative, got {l}")
    try:
        in_state_from_angle(theta)
    except InputError as exc:
        raise UsageError(str(exc)) from exc
    a = SingleSpinState([1.0, 0.0])
    b = SingleSpinState([math.cos(theta), math.sin(theta)])
    rows = []
    for q in np.linspace(q_start, q_end, q_count):
        q = float(q)
        d0, d1 = channel_phases(table, l, q)
        fiber = apply_central_smatrix(a, b, PartialWaveLabels(q=q, l=l, m=0), table)
        rows.append((q, d0, d1, entanglement_entropy(fiber.spin).entropy_bits))
    return rows


def cmd_partial_wave(args, out) -> int:
    conv = math.radians if args.degrees else float
    table = load_phase_table(args.table)
    try:
        rows = partial_wave_rows(table, args.l, conv(args.theta), args.q_start, args.q_end, args.q_count)
    except (RangeError, ChannelError) as exc:
        raise type(exc)(f"{args.table}: {exc}") from exc
    emit_table(("q", "delta_l0", "delta_l1", "entanglement"), rows,
               make_formatter(args.precision), args.format, out)
    return EXIT_OK


# --- tables ----------------------------------------------------------------

def _label_pair(tj, tm):
    return f"|{format_half(tj)},{format_half(tm)}>"


def cmd_tables(args, out) -> int:
    fmt = make_formatter(args.precision)
    w = csv.writer(out, lineterminator="\n")
    what, rest = args.what, args.args
    try:
        if what == "cgc":
            if len(rest) != 2:
                raise UsageError("usage: tables cgc J1 J2")
            mat, rows, cols = cgc_matrix(rest[0], rest[1])
            w.writerow(["<j,m|m1,m2>"] + [_label_pair(a, b) for a, b in cols])
            for (tj, tm), row in zip(rows, mat):
                w.writerow([_label_pair(tj, tm)] + [fmt(float(v)) for v in row])
        elif what == "magic":
            if rest:
                raise UsageError("usage: tables magic")
            w.writerow(["ket", *(f"{lab}_re" for lab in PRODUCT_LABELS),
                        *(f"{lab}_im" for lab in PRODUCT_LABELS), "entanglement"])
            for name, ket in magic_basis().items():
                amps = ket.amplitudes
                w.writerow([name, *(fmt(float(z.real)) for z in amps), *(fmt(float(z.imag)) for z in amps),
                            fmt(entanglement_entropy(ket).entropy_bits)])
        elif what == "coupling":
            if len(rest) != 2:
                raise UsageError("usage: tables coupling L S")
            ct = couple_orbital_spin(rest[0], rest[1])
            w.writerow(["<j,j3|m,chi>"] + [_label_pair(a, b) for a, b in ct.cols])
            for (tj, tj3), row in zip(ct.rows, ct.matrix):
                w.writerow([_label_pair(tj, tj3)] + [fmt(float(v)) for v in row])
        else:
            raise UsageError(f"unknown table {what!r}; choose cgc, magic or coupling")
    except InputError as exc:
        raise UsageError(str(exc)) from exc
    return EXIT_OK


# --- check -----------------------------------------------------------------

def cmd_check(args, out) -> int:
    results = run_checks(seed=args.seed)
    for r in results:
        print(r.line(), file=out)
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed", file=out)
    return EXIT_DATA if failed else EXIT_OK


# --- entry point -----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--degrees", action="store_true", help="angles are given in degrees")
    common.add_argument("--precision", default=str(SIG_DIGITS),
                        help="significant digits for output, or 'full' for round-trip floats")

    p = _Parser(prog="spinscatter", description="Spin entanglement generated by elastic scattering.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sc = sub.add_parser("scatter", parents=[common], help="single scattering event")
    sc.add_argument("--theta", type=parse_angle, required=True)
    sc.add_argument("--delta0", type=parse_angle, required=True)
    sc.add_argument("--delta1", type=parse_angle, default=0.0)
    sc.set_defaults(func=cmd_scatter)

    sw = sub.add_parser("sweep", parents=[common], help="entanglement map over (theta, delta0-delta1)")
    sw.add_argument("--theta-range", nargs=3, metavar=("START", "END", "COUNT"),
                    type=str, default=["0", "pi", "33"])
    sw.add_argument("--delta-range", nargs=3, metavar=("START", "END", "COUNT"),
                    type=str, default=["0", "pi", "33"])
    sw.set_defaults(func=cmd_sweep)

    pw = sub.add_parser("partial-wave", parents=[common], help="entanglement vs q in one partial wave")
    pw.add_argument("--table", required=True, help="phase-shift CSV with header l,s,q,delta")
    pw.add_argument("--l", type=_count, required=True)
    pw.add_argument("--theta", type=parse_angle, required=True)
    pw.add_argument("--q-start", type=float, required=True)
    pw.add_argument("--q-end", type=float, required=True)
    pw.add_argument("--q-count", type=_count, required=True)
    pw.set_defaults(func=cmd_partial_wave)

    tb = sub.add_parser("tables", parents=[common], help="reference tables: cgc J1 J2 | magic | coupling L S")
    tb.add_argument("what")
    tb.add_argument("args", nargs="*")
    tb.set_defaults(func=cmd_tables)

    ck = sub.add_parser("check", help="run the invariant self-check suite")
    ck.add_argument("--seed", type=int, default=20061)
    ck.set_defaults(func=cmd_check)
    return p


def _parse_ranges(args) -> None:
    for name in ("theta_range", "delta_range"):
        vals = getattr(args, name, None)
        if vals is None:
            continue
        try:
            start, end = parse_angle(vals[0]), parse_angle(vals[1])
            count = _count(vals[2])
        except argparse.ArgumentTypeError as exc:
            raise UsageError(f"--{name.replace('_', '-')}: {exc}") from exc
        setattr(args, name, (start, end, count))


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    if getattr(args, "precision", "full") != "full":
        try:
            if int(args.precision) < 1:
                raise ValueError
        except ValueError:
            print("spinscatter: error: --precision must be a positive integer or 'full'", file=sys.stderr)
            return EXIT_USAGE
    try:
        _parse_ranges(args)
        return args.func(args, out)
    except UsageError as exc:
        print(f"spinscatter {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (TableFormatError, RangeError, ChannelError, SpinScatterError) as exc:
        print(f"spinscatter {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_DATA


def run(argv=None) -> tuple[int, str]:
    """Invoke :func:`main` and capture stdout (test helper)."""
    buf = io.StringIO()
    code = main(argv, out=buf)
    return code, buf.getvalue()


if __name__ == "__main__":
    sys.exit(main())
