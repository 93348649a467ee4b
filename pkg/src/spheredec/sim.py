"""Monte Carlo link-level harness: SNR sweeps of BER/SER and counted cost.

Per trial: draw bits, Gray-map them onto rail levels, push the complex
symbol vector through an i.i.d. Rayleigh flat-fading channel with AWGN,
build the lattice problem each detector needs, detect, and score bit and
symbol errors against the ground truth.

SNR convention (the constellation is unnormalized): SNR = N * E_s / sigma^2,
i.e. average received signal energy per receive antenna over total complex
noise energy per receive antenna.  Curves under a different convention are
a horizontal shift of these.

Reproducibility: every trial uses its own counter-based Philox stream keyed
by (seed, snr_index, trial_index), so results are byte-identical across
reruns, independent of which detectors run, and identical under parallel
and sequential execution.
"""

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .detectors import KBestSchedule, ml_exhaustive, recompute_weight, sd_conventional, sd_proposed
from .lattice import RadiusPolicy, Representation, build_problem, to_pair_order
from .linalg import DegenerateChannelError
from .modem import bits_to_symbols, make_constellation, rails_to_complex, symbols_to_bits

DETECTOR_NAMES = ("ml", "sd-conv", "sd-new")

_DETECTOR_REPRESENTATION = {
    "ml": Representation.STACKED,
    "sd-conv": Representation.STACKED,
    "sd-new": Representation.INTERLEAVED,
}

# Redraw cap for numerically rank-deficient channel draws (measure zero).
_MAX_REDRAWS = 100


@dataclass(frozen=True)
class SimConfig:
    """One sweep: N x N system, modulation, detectors, SNR grid, trials."""

    n_antennas: int = 2
    mod_order: int = 16
    detectors: tuple = DETECTOR_NAMES
    snr_start_db: float = 0.0
    snr_stop_db: float = 20.0
    snr_step_db: float = 2.0
    trials_per_point: int = 20000
    seed: int = 42
    radius_dimension: str = "2n"
    radius_growth: float = 2.0
    radius_max_restarts: int = 20

    def __post_init__(self):
        if self.snr_step_db <= 0:
            raise ValueError("snr_step_db must be positive")
        if self.trials_per_point < 1:
            raise ValueError("trials_per_point must be at least 1")
        if not self.detectors:
            raise ValueError("at least one detector is required")
        for name in self.detectors:
            if name not in DETECTOR_NAMES:
                raise ValueError(f"unknown detector {name!r}")

    def snr_points(self):
        pts = []
        s = self.snr_start_db
        while s <= self.snr_stop_db + 1e-9:
            pts.append(round(s, 9))
            s += self.snr_step_db
        return tuple(pts)


@dataclass(frozen=True)
class ChannelInstance:
    """Ground truth for one channel use: y = h @ s + v exactly as drawn."""

    h: np.ndarray
    s: np.ndarray
    v: np.ndarray
    sigma_sq: float
    y: np.ndarray
    bits: np.ndarray = field(repr=False, default=None)
    x_pair: np.ndarray = field(repr=False, default=None)


@dataclass(frozen=True)
class TrialResult:
    detector: str
    x_hat: np.ndarray
    weight: float
    bit_errors: int
    symbol_errors: int
    flops: int
    preproc_flops: int
    nodes: int
    restarts: int


@dataclass(frozen=True)
class SweepRecord:
    """Aggregate for one (SNR point, detector) cell of a sweep."""

    snr_db: float
    detector: str
    n: int
    mod: int
    ber: float
    ser: float
    mean_flops: float
    mean_preproc_flops: float
    mean_nodes: float
    trials: int
    bit_errors: int
    seed: int


def trial_rng(seed, snr_index, trial_index):
    """Independent Philox stream for one (seed, SNR point, trial) cell."""
    bg = np.random.Philox(key=seed, counter=[0, 0, snr_index, trial_index])
    return np.random.Generator(bg)


def draw_channel(rng, n):
    """N x N channel with i.i.d. unit-variance circular complex Gaussian
    entries (variance 0.5 per real dimension)."""
    if n < 1:
        raise ValueError("n must be at least 1")
    scale = np.sqrt(0.5)
    return scale * rng.standard_normal((n, n)) + 1j * scale * rng.standard_normal((n, n))


def sigma_for_snr(snr_db, c, n):
    """Total complex noise variance for a per-receive-antenna SNR in dB."""
    return n * c.avg_symbol_energy / 10.0 ** (snr_db / 10.0)


def draw_instance(rng, cfg, sigma_sq):
    """Draw bits, symbols, channel, and noise for one trial (in that order)."""
    c = make_constellation(cfg.mod_order)
    n = cfg.n_antennas
    bits = rng.integers(0, 2, size=2 * n * c.bits_per_rail)
    x_pair = bits_to_symbols(bits, c, n)
    s = rails_to_complex(x_pair)
    h = draw_channel(rng, n)
    v = np.sqrt(sigma_sq / 2.0) * (rng.standard_normal(n) + 1j * rng.standard_normal(n))
    y = h @ s + v
    return ChannelInstance(h=h, s=s, v=v, sigma_sq=sigma_sq, y=y,
                           bits=bits, x_pair=x_pair)


def _policy_for(cfg, sigma_sq):
    return RadiusPolicy.for_noise(
        sigma_sq, cfg.n_antennas,
        dimension=cfg.radius_dimension,
        growth=cfg.radius_growth,
        max_restarts=cfg.radius_max_restarts,
    )


def _detect(inst, cfg, detector, counter=None):
    c = make_constellation(cfg.mod_order)
    rep = _DETECTOR_REPRESENTATION[detector]
    policy = _policy_for(cfg, inst.sigma_sq)
    problem = build_problem(inst.h, inst.y, inst.sigma_sq, rep, policy)
    if detector == "ml":
        result = ml_exhaustive(problem, c, counter)
    elif detector == "sd-conv":
        result = sd_conventional(problem, c, policy, counter)
    else:
        result = sd_proposed(problem, c, policy, KBestSchedule.default(), counter)
    assert abs(recompute_weight(problem, result.x_hat) - result.weight) <= \
        1e-6 * (1.0 + result.weight)
    return problem, result


def run_trial(rng, cfg, detector, snr_db):
    """One end-to-end trial for one detector.

    The channel instance is a pure function of the rng stream, so calling
    this once per detector with identically derived streams presents every
    detector with the same trial.  Rank-deficient draws are redrawn (the
    stream simply continues), capped at 100 per trial.
    """
    c = make_constellation(cfg.mod_order)
    sigma_sq = sigma_for_snr(snr_db, c, cfg.n_antennas)
    for _ in range(_MAX_REDRAWS):
        inst = draw_instance(rng, cfg, sigma_sq)
        try:
            problem, result = _detect(inst, cfg, detector)
        except DegenerateChannelError:
            continue
        break
    else:
        raise RuntimeError("exceeded the degenerate-channel redraw cap")

    x_hat_pair = to_pair_order(result.x_hat, problem.representation)
    bits_hat = symbols_to_bits(x_hat_pair, c)
    bit_errors = int(np.sum(bits_hat != inst.bits))
    true_pair = inst.x_pair
    symbol_errors = int(np.sum(
        (x_hat_pair[0::2] != true_pair[0::2]) | (x_hat_pair[1::2] != true_pair[1::2])
    ))
    return TrialResult(
        detector=detector,
        x_hat=result.x_hat,
        weight=result.weight,
        bit_errors=bit_errors,
        symbol_errors=symbol_errors,
        flops=result.flops,
        preproc_flops=problem.preproc_flops,
        nodes=result.nodes_visited,
        restarts=result.restarts,
    )


def _trial_block(cfg, snr_index, snr_db, lo, hi):
    """Integer aggregates over trials [lo, hi) for every detector."""
    sums = {name: [0, 0, 0, 0, 0, 0] for name in cfg.detectors}
    for t in range(lo, hi):
        for name in cfg.detectors:
            rng = trial_rng(cfg.seed, snr_index, t)
            rec = run_trial(rng, cfg, name, snr_db)
            agg = sums[name]
            agg[0] += rec.bit_errors
            agg[1] += rec.symbol_errors
            agg[2] += rec.flops
            agg[3] += rec.preproc_flops
            agg[4] += rec.nodes
            agg[5] += rec.restarts
    return sums


def run_sweep(cfg, workers=None):
    """Run the full sweep and aggregate one SweepRecord per (SNR, detector).

    ``workers`` > 1 splits each SNR point's trials across processes; the
    derived per-trial streams and integer partial sums make the parallel
    result identical to the sequential one.  Defaults to the
    ``LATTICE_SD_THREADS`` environment variable, else 1.
    """
    if workers is None:
        workers = int(os.environ.get("LATTICE_SD_THREADS", "1"))
    workers = max(1, workers)
    c = make_constellation(cfg.mod_order)
    bits_per_trial = 2 * cfg.n_antennas * c.bits_per_rail
    trials = cfg.trials_per_point

    records = []
    for i, snr_db in enumerate(cfg.snr_points()):
        if workers == 1 or trials < 2 * workers:
            sums = _trial_block(cfg, i, snr_db, 0, trials)
        else:
            bounds = np.linspace(0, trials, workers + 1).astype(int)
            jobs = [(cfg, i, snr_db, int(lo), int(hi))
                    for lo, hi in zip(bounds[:-1], bounds[1:])]
            with ProcessPoolExecutor(max_workers=workers) as pool:
                parts = list(pool.map(_trial_block_star, jobs))
            sums = {name: [0] * 6 for name in cfg.detectors}
            for part in parts:
                for name, agg in part.items():
                    for k in range(6):
                        sums[name][k] += agg[k]

        for name in cfg.detectors:
            bit_err, sym_err, flops, preproc, nodes, _ = sums[name]
            records.append(SweepRecord(
                snr_db=snr_db,
                detector=name,
                n=cfg.n_antennas,
                mod=cfg.mod_order,
                ber=bit_err / (trials * bits_per_trial),
                ser=sym_err / (trials * cfg.n_antennas),
                mean_flops=flops / trials,
                mean_preproc_flops=preproc / trials,
                mean_nodes=nodes / trials,
                trials=trials,
                bit_errors=bit_err,
                seed=cfg.seed,
            ))
    return records


def _trial_block_star(args):
    return _trial_block(*args)


def binomial_ci(errors, total, z=1.96):
    """Wilson score interval for an error ratio (95% by default)."""
    if total <= 0:
        raise ValueError("total must be positive")
    p = errors / total
    denom = 1.0 + z * z / total
    center = (p + z * z / (2 * total)) / denom
    half = z * np.sqrt(p * (1 - p) / total + z * z / (4 * total * total)) / denom
    return max(0.0, center - half), min(1.0, center + half)
