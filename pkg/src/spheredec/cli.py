"""Command-line front end: run an SNR sweep and emit CSV or JSON records.

Example::

    spheredec --n 2 --mod 16qam --detector sd-conv --detector sd-new \
              --snr 0:2:20 --trials 20000 --seed 42 --out results.csv

CSV columns: snr_db, detector, n, mod, ber, ser, mean_flops,
mean_preproc_flops, mean_nodes, trials, bit_errors, seed.  Floats are
printed with 10 significant digits; fixed (seed, config) pairs produce
byte-identical files.  ``LATTICE_SD_THREADS`` caps parallel trial workers.
"""

import argparse
import json
import sys
from dataclasses import dataclass

from .detectors import ML_CANDIDATE_GUARD
from .modem import make_constellation
from .sim import DETECTOR_NAMES, SimConfig, run_sweep

_MOD_FLAGS = {"16qam": 16, "64qam": 64}

_CSV_FIELDS = ("snr_db", "detector", "n", "mod", "ber", "ser", "mean_flops",
               "mean_preproc_flops", "mean_nodes", "trials", "bit_errors", "seed")

_INT_FIELDS = {"n", "mod", "trials", "bit_errors", "seed"}


@dataclass(frozen=True)
class CliArgs:
    config: SimConfig
    out_path: str
    format: str
    verbosity: int


def _parse_snr(text):
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError("expected start:step:stop")
    start, step, stop = (float(p) for p in parts)
    if step <= 0:
        raise ValueError("step must be positive")
    if stop < start:
        raise ValueError("stop must not precede start")
    return start, step, stop


def parse_args(argv):
    parser = argparse.ArgumentParser(
        prog="spheredec",
        description="Monte Carlo BER/complexity sweeps for MIMO ML detectors",
    )
    parser.add_argument("--n", type=int, choices=(2, 4, 6), default=2,
                        help="number of antennas on each side (default 2)")
    parser.add_argument("--mod", choices=sorted(_MOD_FLAGS), default="16qam",
                        help="QAM order (default 16qam)")
    parser.add_argument("--detector", action="append", choices=DETECTOR_NAMES,
                        dest="detectors", metavar="NAME",
                        help="detector to run; repeatable (default: all of "
                             f"{', '.join(DETECTOR_NAMES)})")
    parser.add_argument("--snr", default="0:2:20", metavar="START:STEP:STOP",
                        help="SNR grid in dB (default 0:2:20)")
    parser.add_argument("--trials", type=int, default=20000,
                        help="Monte Carlo trials per SNR point (default 20000)")
    parser.add_argument("--seed", type=int, default=42,
                        help="base RNG seed (default 42)")
    parser.add_argument("--radius-dim", choices=("n", "2n"), default="2n",
                        help="dimension used in the initial radius "
                             "d^2 = 2*sigma^2*dim (default 2n)")
    parser.add_argument("--out", default="-", metavar="PATH",
                        help="output path, '-' for stdout (default)")
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    parser.add_argument("-v", "--verbose", action="count", default=0,
                        dest="verbosity")
    ns = parser.parse_args(argv)

    try:
        start, step, stop = _parse_snr(ns.snr)
    except ValueError as exc:
        parser.error(f"invalid --snr {ns.snr!r}: {exc}")

    detectors = tuple(ns.detectors) if ns.detectors else DETECTOR_NAMES
    order = _MOD_FLAGS[ns.mod]
    if "ml" in detectors:
        c = make_constellation(order)
        space = c.mu ** (2 * ns.n)
        if space > ML_CANDIDATE_GUARD:
            parser.error(
                f"detector 'ml' needs {c.mu}^{2 * ns.n} = {space} candidates, "
                f"above the {ML_CANDIDATE_GUARD} guard; drop --detector ml "
                "or reduce --n/--mod"
            )
    if ns.trials < 1:
        parser.error("--trials must be at least 1")

    cfg = SimConfig(
        n_antennas=ns.n,
        mod_order=order,
        detectors=detectors,
        snr_start_db=start,
        snr_stop_db=stop,
        snr_step_db=step,
        trials_per_point=ns.trials,
        seed=ns.seed,
        radius_dimension=ns.radius_dim,
    )
    return CliArgs(config=cfg, out_path=ns.out, format=ns.format,
                   verbosity=ns.verbosity)


def _fmt(value):
    if isinstance(value, float):
        return format(value, ".10g")
    return str(value)


def render_csv(records):
    lines = [",".join(_CSV_FIELDS)]
    for rec in records:
        lines.append(",".join(_fmt(getattr(rec, f)) for f in _CSV_FIELDS))
    return "\n".join(lines) + "\n"


def render_json(records):
    rows = []
    for rec in records:
        row = {}
        for f in _CSV_FIELDS:
            v = getattr(rec, f)
            row[f] = float(_fmt(v)) if isinstance(v, float) else v
        rows.append(row)
    return json.dumps(rows, indent=2) + "\n"


def emit_results(records, fmt, out_path):
    """Write records as CSV or JSON to a path ('-' for stdout)."""
    if not records:
        raise ValueError("no records to emit")
    text = render_csv(records) if fmt == "csv" else render_json(records)
    if out_path == "-":
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="ascii", newline="") as fh:
            fh.write(text)


def main(argv=None):
    args = parse_args(argv)
    cfg = args.config
    if args.verbosity:
        pts = cfg.snr_points()
        print(f"sweep: {cfg.n_antennas}x{cfg.n_antennas} {cfg.mod_order}-QAM, "
              f"{len(pts)} SNR points x {cfg.trials_per_point} trials, "
              f"detectors {', '.join(cfg.detectors)}", file=sys.stderr)
    records = run_sweep(cfg)
    try:
        emit_results(records, args.format, args.out_path)
    except OSError as exc:
        print(f"spheredec: cannot write {args.out_path!r}: {exc}", file=sys.stderr)
        return 1
    if args.verbosity:
        print(f"wrote {len(records)} records to {args.out_path}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
