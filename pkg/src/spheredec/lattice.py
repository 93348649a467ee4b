"""Real-valued lattice representations of the complex MIMO channel.

Two equivalent 2N-dimensional real formulations of y = H s + v are
supported:

* ``STACKED``   -- the block form [[Re H, -Im H], [Im H, Re H]] with the
  real parts of all symbols stacked above all imaginary parts.
* ``INTERLEAVED`` -- rows and columns are reordered so each transmit symbol
  contributes an adjacent (Re, Im) column pair and each receive sample an
  adjacent (Re, Im) row pair.  Adjacent columns of a pair are exactly
  orthogonal with equal norm, which puts exact zeros at r[k, k+1] (even
  0-based k) after Gram-Schmidt QR; the reduced-complexity detector relies
  on those zeros to decode each symbol's real and imaginary rails
  independently.

Levels follow the 1-indexed convention l = 2N, ..., 1 used throughout the
tree-search code: level l corresponds to row/column l-1 of R.
"""

import enum
from dataclasses import dataclass

import numpy as np

from .linalg import apply_qt, gram_schmidt_qr, preprocessing_flops


class Representation(enum.Enum):
    STACKED = "stacked"
    INTERLEAVED = "interleaved"


@dataclass(frozen=True)
class RadiusPolicy:
    """Initial squared sphere radius plus the empty-sphere restart rule.

    ``initial_sq`` should normally come from :meth:`for_noise`, which uses
    d^2 = 2 * sigma^2 * dim with dim the real search dimension 2N (the
    ``dimension="n"`` variant uses the complex dimension N instead; the
    restart rule makes detection correct under either choice).  When a
    search pass finds no lattice point inside the sphere the radius is
    multiplied by ``growth`` and the pass rerun, at most ``max_restarts``
    times, after which an unconstrained (infinite-radius) pass runs.
    """

    initial_sq: float
    growth: float = 2.0
    max_restarts: int = 20

    def __post_init__(self):
        if not self.initial_sq > 0:
            raise ValueError("initial_sq must be positive")
        if not self.growth > 1:
            raise ValueError("growth must exceed 1")
        if self.max_restarts < 1:
            raise ValueError("max_restarts must be at least 1")

    @classmethod
    def for_noise(cls, sigma_sq, n, dimension="2n", growth=2.0, max_restarts=20):
        if dimension not in ("n", "2n"):
            raise ValueError(f"dimension must be 'n' or '2n', got {dimension!r}")
        dim = 2 * n if dimension == "2n" else n
        return cls(initial_sq=2.0 * sigma_sq * dim,
                   growth=growth, max_restarts=max_restarts)


@dataclass(frozen=True)
class LatticeProblem:
    """QR-reduced detection problem min ||y_hat - R x||^2 over the rail set.

    ``r`` is 2N x 2N upper triangular with positive diagonal, ``y_hat`` the
    rotated receive vector, and ``radius_sq`` the initial squared sphere
    radius.  For the interleaved representation r[k, k+1] == 0.0 exactly for
    even 0-based k.  ``preproc_flops`` records the QR + rotation cost.
    """

    r: np.ndarray
    y_hat: np.ndarray
    radius_sq: float
    representation: Representation
    n: int
    preproc_flops: int = 0


def stack_real(h):
    """Complex N x N channel -> stacked 2N x 2N real form."""
    h = _square_complex(h)
    return np.block([[h.real, -h.imag], [h.imag, h.real]])


def interleave(h):
    """Complex N x N channel -> interleaved 2N x 2N real form.

    Entry pattern per complex coefficient H[m, n] (0-based):
    out[2m, 2n] = Re, out[2m, 2n+1] = -Im, out[2m+1, 2n] = Im,
    out[2m+1, 2n+1] = Re.
    """
    h = _square_complex(h)
    n = h.shape[0]
    out = np.empty((2 * n, 2 * n))
    out[0::2, 0::2] = h.real
    out[0::2, 1::2] = -h.imag
    out[1::2, 0::2] = h.imag
    out[1::2, 1::2] = h.real
    return out


def reorder_received(y, representation):
    """Complex receive vector -> real vector in the representation's order."""
    y = np.asarray(y, dtype=complex)
    if y.ndim != 1:
        raise ValueError(f"expected a vector, got shape {y.shape}")
    if representation is Representation.STACKED:
        return np.concatenate([y.real, y.imag])
    out = np.empty(2 * len(y))
    out[0::2] = y.real
    out[1::2] = y.imag
    return out


def symbol_order(n, representation):
    """Index permutation taking a pair-ordered rail vector into the
    representation's symbol order: x_rep = x_pair[symbol_order(n, rep)]."""
    if representation is Representation.INTERLEAVED:
        return np.arange(2 * n)
    return np.concatenate([np.arange(0, 2 * n, 2), np.arange(1, 2 * n, 2)])


def to_representation_order(x_pair, representation):
    x_pair = np.asarray(x_pair)
    return x_pair[symbol_order(len(x_pair) // 2, representation)]


def to_pair_order(x_rep, representation):
    x_rep = np.asarray(x_rep)
    n = len(x_rep) // 2
    out = np.empty_like(x_rep)
    out[symbol_order(n, representation)] = x_rep
    return out


def build_problem(h, y, sigma_sq, representation, policy=None):
    """Assemble the QR-reduced problem for one channel use.

    Applies the chosen real decomposition, Gram-Schmidt QR (with structural
    zero forcing for the interleaved form), and the q^T rotation of the
    reordered receive vector.  ``policy`` defaults to the 2N-dimension noise
    radius.  Propagates :class:`~spheredec.linalg.DegenerateChannelError`
    for rank-deficient draws so the caller can redraw the channel.
    """
    h = _square_complex(h)
    if sigma_sq <= 0:
        raise ValueError("sigma_sq must be positive")
    n = h.shape[0]
    if len(np.asarray(y)) != n:
        raise ValueError("received vector length does not match the channel")
    if policy is None:
        policy = RadiusPolicy.for_noise(sigma_sq, n)
    interleaved = representation is Representation.INTERLEAVED
    h_real = interleave(h) if interleaved else stack_real(h)
    factors = gram_schmidt_qr(h_real, pair_zeros=interleaved)
    y_hat = apply_qt(factors.q, reorder_received(y, representation))
    return LatticeProblem(
        r=factors.r,
        y_hat=y_hat,
        radius_sq=policy.initial_sq,
        representation=representation,
        n=n,
        preproc_flops=preprocessing_flops(2 * n),
    )


def _square_complex(h):
    h = np.asarray(h, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValueError(f"expected a square channel matrix, got {h.shape}")
    return h
