"""Shared fixtures: the heavy SNR sweeps used by several acceptance tests."""

import os

import pytest

from spheredec.sim import SimConfig, run_sweep

WORKERS = max(1, min(4, os.cpu_count() or 1))


def _sweep(n, mod, start, stop, step, trials, seed):
    cfg = SimConfig(
        n_antennas=n,
        mod_order=mod,
        detectors=("sd-conv", "sd-new"),
        snr_start_db=start,
        snr_stop_db=stop,
        snr_step_db=step,
        trials_per_point=trials,
        seed=seed,
    )
    return cfg, run_sweep(cfg, workers=WORKERS)


@pytest.fixture(scope="session")
def sweep_2x2_16():
    """2x2 16-QAM, SNR 0..20 dB, 2e4 trials/point (BER agreement sweep)."""
    return _sweep(2, 16, 0.0, 20.0, 2.0, 20000, seed=42)


@pytest.fixture(scope="session")
def sweep_2x2_16_high():
    """2x2 16-QAM around its BER 1e-3 operating point."""
    return _sweep(2, 16, 20.0, 28.0, 2.0, 10000, seed=43)


@pytest.fixture(scope="session")
def sweep_4x4_16():
    """4x4 16-QAM bracketing BER 1e-3 for both detectors."""
    return _sweep(4, 16, 17.0, 23.0, 1.0, 20000, seed=44)


@pytest.fixture(scope="session")
def sweep_6x6_16():
    """6x6 16-QAM bracketing BER 1e-3 for both detectors."""
    return _sweep(6, 16, 17.0, 22.0, 1.0, 20000, seed=45)
