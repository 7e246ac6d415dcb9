"""Command-line interface.

Exit codes: 0 success, 2 usage error, 3 numeric/domain error, 4 I/O error.
CSV and matrix files write floats with ``repr`` so they round-trip exactly;
``key=value`` reports use 12 significant digits.
"""
import argparse
from dataclasses import dataclass, field
import math
import os
import sys

import numpy as np

from . import ergodic as erg
from . import rate_deterministic as det
from .channel import realize_channel
from .matrix_core import as_complex_mat
from .montecarlo import compare, mc_ergodic_exponential, mc_ergodic_zf

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_IO = 0, 2, 3, 4

FIG2_ETA = 1.0
FIG_STEP = 0.1


class UsageError(Exception):
    pass


class MatrixFormatError(ValueError):
    def __init__(self, path, line, msg):
        super().__init__(f"{path}:{line}: {msg}")
        self.line = line


@dataclass
class CurveSeries:
    """Columns of values sampled on a shared, strictly increasing SNR grid."""
    rho: list
    columns: dict = field(default_factory=dict)

    def add(self, label, fn):
        self.columns[label] = [fn(r) for r in self.rho]

    def write_csv(self, stream):
        stream.write(",".join(["rho_db", *self.columns]) + "\n")
        for i, r in enumerate(self.rho):
            stream.write(",".join(repr(float(v)) for v in
                                  [r, *(col[i] for col in self.columns.values())]) + "\n")


def snr_grid(rho_min, rho_max, step):
    if not step > 0:
        raise UsageError("--step must be > 0")
    if not rho_min < rho_max:
        raise UsageError("--rho-min must be < --rho-max")
    count = int(math.floor((rho_max - rho_min) / step + 1e-9)) + 1
    # Rounding keeps grid points such as 0 dB exact.
    return [round(rho_min + k * step, 10) for k in range(count)]


def load_matrix(path):
    """Read a matrix file: ``N`` on line 1, then ``N`` rows of ``2N`` floats
    (real and imaginary parts interleaved, row-major)."""
    with open(path, encoding="ascii") as fh:
        lines = [ln for ln in fh.read().splitlines()]
    if not lines:
        raise MatrixFormatError(path, 1, "empty file")
    try:
        n = int(lines[0].strip())
    except ValueError:
        raise MatrixFormatError(path, 1, f"bad dimension line {lines[0]!r}") from None
    if n < 1:
        raise MatrixFormatError(path, 1, f"dimension must be >= 1, got {n}")
    rows = [ln for ln in enumerate(lines[1:], start=2) if ln[1].strip()]
    if len(rows) != n:
        raise MatrixFormatError(path, len(lines) + 1, f"expected {n} rows, found {len(rows)}")
    m = np.empty((n, n), dtype=np.complex128)
    for r, (lineno, text) in enumerate(rows):
        tokens = text.split()
        if len(tokens) != 2 * n:
            raise MatrixFormatError(path, lineno, f"row {r + 1} has {len(tokens)} values, expected {2 * n}")
        try:
            vals = [float(t) for t in tokens]
        except ValueError as exc:
            raise MatrixFormatError(path, lineno, str(exc)) from None
        m[r] = np.array(vals[0::2]) + 1j * np.array(vals[1::2])
    return as_complex_mat(m)


def save_matrix(m, path):
    m = as_complex_mat(m)
    with open(path, "w", encoding="ascii") as fh:
        fh.write(f"{m.shape[0]}\n")
        for row in m:
            fh.write(" ".join(f"{z.real!r} {z.imag!r}" for z in row.tolist()) + "\n")


def _fmt(v):
    if isinstance(v, str):
        return v
    if isinstance(v, (int, np.integer)):
        return str(v)
    return format(float(v), ".12g")


def _report(out, **items):
    for k, v in items.items():
        out.write(f"{k}={_fmt(v)}\n")


def _write(series, path, out=None):
    if path in (None, "-"):
        series.write_csv(sys.stdout if out is None else out)
        return
    with open(path, "w", encoding="ascii", newline="") as fh:
        series.write_csv(fh)


def _unit(bits):
    return (lambda v: v / math.log(2.0)) if bits else (lambda v: v)


def cmd_bend(args, out):
    if args.matrix is not None:
        ch = realize_channel(load_matrix(args.matrix))
        eta = ch.eta
        if args.n is not None and args.n != ch.n:
            raise UsageError(f"--n {args.n} disagrees with matrix dimension {ch.n}")
        n = ch.n
    else:
        eta, n = args.eta, 1 if args.n is None else args.n
    res = det.bend_point_analytic(eta, n)
    numeric = det.bend_point_numeric(lambda r: det.rate_derivative(r, eta, n, 2),
                                     det.default_bracket(eta))
    conv = _unit(args.bits)
    _report(out, eta=eta, n=n, rho_bend=res.rho_bend, rho_int=res.rho_int,
            rate_at_bend=conv(res.rate_at_bend), r2_max=res.r2_max,
            rho_bend_numeric=numeric)


def cmd_curve(args, out):
    grid = snr_grid(args.rho_min, args.rho_max, args.step)
    conv = _unit(args.bits)
    series = CurveSeries(grid)
    n = args.n
    if args.mode == "deterministic":
        if args.eta is None:
            raise UsageError("--mode deterministic needs --eta")
        series.add(f"rate_n{n}", lambda r: conv(det.sum_rate(r, args.eta, n)))
    elif args.mode == "ergodic":
        series.add(f"rate_n{n}", lambda r: conv(erg.ergodic_rate(r, n)))
    elif args.eta is not None:
        series.add(f"asymptote_n{n}", lambda r: conv(det.high_snr_asymptote(r, args.eta, n)))
    else:
        series.add(f"asymptote_n{n}", lambda r: conv(erg.ergodic_asymptote(r, n)))
    _write(series, args.out, out)


def cmd_deriv(args, out):
    grid = snr_grid(args.rho_min, args.rho_max, args.step)
    series = CurveSeries(grid)
    series.add(f"d{args.order}_rate_n{args.n}",
               lambda r: det.rate_derivative(r, args.eta, args.n, args.order))
    _write(series, args.out, out)


def cmd_ergodic_bend(args, out):
    bend = erg.ergodic_bend_numeric(args.n)
    rho_int = erg.ergodic_intercept(args.n)
    _report(out, n=args.n, rho_bend=bend, rho_int=rho_int, gap=rho_int - bend,
            rate_at_bend=erg.ergodic_rate(bend, args.n),
            rate_at_int=erg.rate_at_ergodic_intercept(args.n))


def cmd_mc(args, out):
    run = mc_ergodic_exponential if args.model == "exponential" else mc_ergodic_zf
    est = run(args.rho, args.n, args.samples, args.seed, workers=args.workers)
    analytic = erg.ergodic_rate(args.rho, args.n)
    cmp = compare(est, analytic)
    _report(out, model=args.model, n=args.n, rho=args.rho, samples=est.samples,
            seed=est.seed, mean=est.mean, stderr=est.stderr, resampled=est.resampled,
            analytic=analytic, abs_diff=cmp.abs_diff, z_score=cmp.z_score)
    out.write(f"mean_exact={est.mean!r}\n")


def _write_markers(path, rows):
    with open(path, "w", encoding="ascii", newline="") as fh:
        fh.write("n,rho_db,rate_nats\n")
        for n, rho, rate in rows:
            fh.write(f"{n},{float(rho)!r},{float(rate)!r}\n")


def emit_figure_data(which, out_dir, n_list=(1, 2, 4)):
    """Write the data behind one figure into ``out_dir``; returns the paths.

    * 2: second derivative of the deterministic rate, eta = 1, rho in [-30, 30];
    * 3: ergodic rates for n = 1, 2 and their intercept markers;
    * 4: ergodic rates and asymptotes for ``n_list``, intercept markers and
      numeric bend markers.
    """
    os.makedirs(out_dir, exist_ok=True)
    paths = []
    if which == 2:
        series = CurveSeries(snr_grid(-30.0, 30.0, FIG_STEP))
        series.add("r2_eta1", lambda r: det.rate_derivative(r, FIG2_ETA, 1, 2))
        paths.append(os.path.join(out_dir, "fig2.csv"))
        _write(series, paths[-1])
        return paths

    ns = (1, 2) if which == 3 else tuple(n_list)
    series = CurveSeries(snr_grid(-10.0, 30.0, FIG_STEP))
    for n in ns:
        series.add(f"rate_n{n}", lambda r, n=n: erg.ergodic_rate(r, n))
        if which == 4:
            series.add(f"asymptote_n{n}", lambda r, n=n: erg.ergodic_asymptote(r, n))
    name = f"fig{which}"
    paths.append(os.path.join(out_dir, f"{name}.csv"))
    _write(series, paths[-1])
    markers = []
    for n in ns:
        rho_int = erg.ergodic_intercept(n)
        markers.append((n, rho_int, erg.ergodic_rate(rho_int, n)))
    paths.append(os.path.join(out_dir, f"{name}_markers.csv"))
    _write_markers(paths[-1], markers)
    if which == 4:
        bends = []
        for n in ns:
            rho_b = erg.ergodic_bend_numeric(n)
            bends.append((n, rho_b, erg.ergodic_rate(rho_b, n)))
        paths.append(os.path.join(out_dir, f"{name}_bend_markers.csv"))
        _write_markers(paths[-1], bends)
    return paths


def cmd_figures(args, out):
    for p in emit_figure_data(args.which, args.out, args.n_list):
        out.write(p + "\n")


def _positive_int(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def _samples(text):
    v = int(text)
    if v < 2:
        raise argparse.ArgumentTypeError(f"must be >= 2, got {v}")
    return v


def _int_list(text):
    try:
        vals = [_positive_int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad integer list {text!r}") from None
    if not vals:
        raise argparse.ArgumentTypeError("empty list")
    return vals


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def build_parser():
    p = _Parser(prog="zfbend", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    b = sub.add_parser("bend", help="bend point of a deterministic channel")
    src = b.add_mutually_exclusive_group(required=True)
    src.add_argument("--eta", type=float)
    src.add_argument("--matrix", help="channel matrix file")
    b.add_argument("--n", type=_positive_int, default=None)
    b.add_argument("--bits", action="store_true")
    b.set_defaults(func=cmd_bend)

    def grid_args(q):
        q.add_argument("--rho-min", type=float, required=True)
        q.add_argument("--rho-max", type=float, required=True)
        q.add_argument("--step", type=float, required=True)
        q.add_argument("--out")

    c = sub.add_parser("curve", help="rate or asymptote curve as CSV")
    c.add_argument("--mode", choices=["deterministic", "ergodic", "asymptote"], required=True)
    c.add_argument("--eta", type=float)
    c.add_argument("--n", type=_positive_int, required=True)
    c.add_argument("--bits", action="store_true")
    grid_args(c)
    c.set_defaults(func=cmd_curve)

    d = sub.add_parser("deriv", help="closed-form rate derivative as CSV")
    d.add_argument("--order", type=int, choices=[1, 2, 3], required=True)
    d.add_argument("--eta", type=float, required=True)
    d.add_argument("--n", type=_positive_int, required=True)
    grid_args(d)
    d.set_defaults(func=cmd_deriv)

    e = sub.add_parser("ergodic-bend", help="numeric ergodic bend point")
    e.add_argument("--n", type=_positive_int, required=True)
    e.set_defaults(func=cmd_ergodic_bend)

    m = sub.add_parser("mc", help="Monte Carlo ergodic rate")
    m.add_argument("--model", choices=["exponential", "rayleigh-zf"], required=True)
    m.add_argument("--n", type=_positive_int, required=True)
    m.add_argument("--rho", type=float, required=True)
    m.add_argument("--samples", type=_samples, required=True)
    m.add_argument("--seed", type=int, required=True)
    m.add_argument("--workers", type=_positive_int, default=1)
    m.set_defaults(func=cmd_mc)

    f = sub.add_parser("figures", help="write figure data files")
    f.add_argument("--which", type=int, choices=[2, 3, 4], required=True)
    f.add_argument("--out", required=True)
    f.add_argument("--n-list", type=_int_list, default=[1, 2, 4])
    f.set_defaults(func=cmd_figures)
    return p


def run(argv, out=None):
    out = sys.stdout if out is None else out
    try:
        args = build_parser().parse_args(argv)
        args.func(args, out)
    except UsageError as exc:
        print(f"zfbend: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"zfbend: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ValueError, ArithmeticError) as exc:
        print(f"zfbend: error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    return EXIT_OK


def main(argv=None):
    return run(sys.argv[1:] if argv is None else argv)
