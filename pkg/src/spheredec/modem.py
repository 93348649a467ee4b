"""Square-QAM constellations, per-rail Gray mapping, and the rail quantizer.

A square constellation is described entirely by its one-dimensional rail
alphabet (e.g. [-3, -1, 1, 3] for 16-QAM): the complex symbol set is the
Cartesian product of the rail with itself.  Levels are kept as unnormalized
odd integers so lattice arithmetic stays integer-exact; energy normalization
is handled by the SNR definition in :mod:`spheredec.sim`.

Bit mapping is binary-reflected Gray code per rail, applied independently to
the in-phase and quadrature components.  Rail vectors produced and consumed
here use *pair order*: [Re s_1, Im s_1, Re s_2, Im s_2, ...].
"""

import math
from dataclasses import dataclass

import numpy as np

_RAILS = {
    16: (-3, -1, 1, 3),
    64: (-7, -5, -3, -1, 1, 3, 5, 7),
}


@dataclass(frozen=True)
class Constellation:
    """One square-QAM constellation.

    ``rail`` is the ascending one-dimensional alphabet, ``mu`` its size,
    ``bits_per_rail`` = log2(mu), and ``avg_symbol_energy`` the mean |s|^2
    over the full complex constellation (= 2 * mean(rail^2)).
    """

    order: int
    rail: tuple[int, ...]
    mu: int
    bits_per_rail: int
    avg_symbol_energy: float


def make_constellation(order):
    """Build the 16-QAM or 64-QAM constellation."""
    if order not in _RAILS:
        raise ValueError(f"unsupported QAM order {order!r}; choose 16 or 64")
    rail = _RAILS[order]
    mu = len(rail)
    energy = 2.0 * sum(v * v for v in rail) / mu
    return Constellation(
        order=order,
        rail=rail,
        mu=mu,
        bits_per_rail=mu.bit_length() - 1,
        avg_symbol_energy=energy,
    )


def _gray_decode(g):
    # inverse of i -> i ^ (i >> 1)
    i = g
    shift = 1
    while (g >> shift) > 0:
        i ^= g >> shift
        shift += 1
    return i


def bits_to_symbols(bits, c, n_antennas):
    """Map a bit vector onto 2N rail levels in pair order.

    Consecutive groups of ``bits_per_rail`` bits (MSB first) are read as a
    Gray codeword and mapped to the rail level at the decoded index, filling
    [Re s_1, Im s_1, ..., Re s_N, Im s_N] in order.
    """
    bits = np.asarray(bits, dtype=int)
    expected = 2 * n_antennas * c.bits_per_rail
    if bits.ndim != 1 or len(bits) != expected:
        raise ValueError(f"expected {expected} bits, got {bits.shape}")
    out = np.empty(2 * n_antennas, dtype=int)
    bpr = c.bits_per_rail
    for i in range(2 * n_antennas):
        g = 0
        for b in bits[i * bpr:(i + 1) * bpr]:
            g = (g << 1) | int(b)
        out[i] = c.rail[_gray_decode(g)]
    return out


def symbols_to_bits(symbols, c):
    """Exact inverse of :func:`bits_to_symbols`."""
    symbols = np.asarray(symbols, dtype=int)
    bpr = c.bits_per_rail
    out = np.empty(len(symbols) * bpr, dtype=int)
    for i, level in enumerate(symbols):
        try:
            idx = c.rail.index(level)
        except ValueError:
            raise ValueError(f"{level} is not a rail level of {c.order}-QAM") from None
        g = idx ^ (idx >> 1)
        for j in range(bpr):
            out[i * bpr + j] = (g >> (bpr - 1 - j)) & 1
    return out


def quantize_rail(v, c):
    """Nearest rail level to a real value.

    Values beyond the extreme levels clamp to that extreme.  An exact
    midpoint between two levels rounds toward the level of smaller
    magnitude; the dead-center midpoint 0.0 (equal magnitudes) rounds to
    the negative level.  Midpoints occur with probability zero under
    continuous noise, the rule exists only for reproducibility.
    """
    if not math.isfinite(v):
        raise ValueError(f"cannot quantize non-finite value {v!r}")
    rail = c.rail
    if v <= rail[0]:
        return rail[0]
    if v >= rail[-1]:
        return rail[-1]
    i = int((v - rail[0]) // 2)
    lo, hi = rail[i], rail[i + 1]
    mid = lo + 1
    if v < mid:
        return lo
    if v > mid:
        return hi
    return lo if abs(lo) <= abs(hi) else hi


def rails_to_complex(x):
    """Pair-ordered rail vector -> complex symbol vector of length N."""
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or len(x) % 2:
        raise ValueError(f"expected an even-length rail vector, got {x.shape}")
    return x[0::2] + 1j * x[1::2]


def complex_to_rails(s):
    """Complex symbol vector -> pair-ordered rail vector of length 2N."""
    s = np.asarray(s, dtype=complex)
    out = np.empty(2 * len(s))
    out[0::2] = s.real
    out[1::2] = s.imag
    return out
