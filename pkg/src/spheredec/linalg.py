"""Dense matrix helpers and classical Gram-Schmidt QR.

All routines operate on plain float64 / complex128 numpy arrays.  The QR
factorization is written out as the classical (project-onto-the-original-
column) Gram-Schmidt procedure instead of calling LAPACK: the interleaved
lattice construction relies on the exact zero pattern that Gram-Schmidt
produces in R for pair-structured matrices, and recording the pre-forcing
magnitude of those entries doubles as a numerical health check.

Problem sizes here are tiny (at most 12 x 12), so conditioning of classical
vs. modified Gram-Schmidt is not a concern.
"""

from dataclasses import dataclass

import numpy as np

# Columns whose residual norm falls at or below this are treated as a rank
# deficiency; continuous channel draws make this a measure-zero event.
RANK_TOL = 1e-12

# Structural zeros of a pair-structured matrix must already be this small
# before they are snapped to exact 0.0.
PAIR_ZERO_TOL = 1e-9


class DegenerateChannelError(Exception):
    """Input matrix is numerically rank deficient; caller should redraw."""


@dataclass(frozen=True)
class QrFactors:
    """Factorization h = q @ r with orthonormal q and upper-triangular r.

    The diagonal of ``r`` is strictly positive, which makes the
    factorization unique.  ``zero_structure_max`` is the largest
    ``|r[k, k+1]|`` over even 0-based ``k`` observed *before* those entries
    were forced to exact zero; it is ``None`` when the input was not
    declared pair-structured.
    """

    q: np.ndarray
    r: np.ndarray
    zero_structure_max: float | None = None


def mat_mul(a, b):
    """Matrix product a @ b with an explicit shape check."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.ndim != 2 or b.ndim != 2:
        raise ValueError("mat_mul expects 2-D operands")
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"shape mismatch: {a.shape} @ {b.shape}")
    return a @ b


def gram_schmidt_qr(h, pair_zeros=False):
    """Classical Gram-Schmidt QR of a square real matrix.

    Each column is projected onto the already-orthonormalized columns
    e_1..e_{k-1}; the projection coefficients fill column k of R and the
    normalized residual becomes e_k.  The diagonal of R holds the residual
    norms and is therefore positive.

    Parameters
    ----------
    h : (m, m) array of floats with linearly independent columns.
    pair_zeros : when True the input is declared pair-structured (columns
        2j and 2j+1 orthogonal with equal norm, 0-based).  The entries
        r[k, k+1] for even k are then asserted to be below ``PAIR_ZERO_TOL``
        and forced to exact 0.0, with the pre-forcing maximum reported in
        ``QrFactors.zero_structure_max``.

    Raises
    ------
    DegenerateChannelError : a column residual norm fell below ``RANK_TOL``.
    ValueError : non-square input, or the declared pair structure does not
        hold numerically.
    """
    h = np.asarray(h, dtype=float)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {h.shape}")
    m = h.shape[0]
    q = np.empty((m, m))
    r = np.zeros((m, m))
    for k in range(m):
        u = h[:, k].copy()
        if k:
            coeff = q[:, :k].T @ h[:, k]
            r[:k, k] = coeff
            u -= q[:, :k] @ coeff
        norm = float(np.sqrt(u @ u))
        if norm <= RANK_TOL:
            raise DegenerateChannelError(f"column {k} is numerically dependent")
        r[k, k] = norm
        q[:, k] = u / norm

    zmax = None
    if pair_zeros:
        if m % 2:
            raise ValueError("pair-structured matrices must have even size")
        zmax = float(max(abs(r[k, k + 1]) for k in range(0, m, 2)))
        if zmax >= PAIR_ZERO_TOL:
            raise ValueError(
                f"pair zero structure violated: max |r[k,k+1]| = {zmax:.3e}"
            )
        for k in range(0, m, 2):
            r[k, k + 1] = 0.0
    return QrFactors(q=q, r=r, zero_structure_max=zmax)


def apply_qt(q, y):
    """Rotate a received vector by the transpose of the orthonormal q."""
    q = np.asarray(q, dtype=float)
    y = np.asarray(y, dtype=float)
    if y.ndim != 1 or q.ndim != 2 or q.shape[0] != len(y):
        raise ValueError(f"shape mismatch: {q.shape} vs vector of {y.shape}")
    return q.T @ y


def preprocessing_flops(m):
    """Real add/mul/div count of one Gram-Schmidt QR plus the q^T y rotation.

    Counts the operations of the classical procedure above at size m x m:
    per column k, the k inner products (m mults + m-1 adds each), the
    residual update (k*m mults + k*m adds), the norm (m mults + m-1 adds;
    the square root itself is not an add/mul/div), and the normalization
    (m divisions).  The rotation costs m*m mults + m*(m-1) adds.
    """
    total = 0
    for k in range(m):
        total += k * (2 * m - 1)  # projection coefficients
        total += 2 * k * m        # residual update
        total += 2 * m - 1        # squared norm
        total += m                # normalization divides
    total += m * m + m * (m - 1)  # rotation
    return total
