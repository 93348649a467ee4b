"""The three detectors: exhaustive ML, depth-first sphere decoder, and the
reduced-complexity decoder for the interleaved lattice representation.

All detectors minimize ||y_hat - R x||^2 over rail-valued vectors x and
return the minimizer together with deterministic operation tallies.  The
counting conventions (one FLOP per executed real add/sub/mul/div in the
detection phase, comparisons and quantizations tallied separately, QR
excluded) are described in :mod:`spheredec.counters`.

Search conventions shared by the tree detectors:

* levels run l = 2N, ..., 1 (top to bottom); candidate rail values are
  enumerated in natural ascending order;
* a partial weight is pruned as soon as it reaches the squared radius
  (survive iff w < d^2);
* an empty sphere triggers the radius-growth restarts of the
  :class:`~spheredec.lattice.RadiusPolicy`, ending in one unconstrained
  pass, so a result is always produced;
* ties in weight are broken lexicographically in detection order
  (x_{2N}, x_{2N-1}, ..., x_1), which makes outputs bit-reproducible;
* the reported weight is always recomputed canonically from the returned
  x via :func:`recompute_weight`, so detectors that agree on x agree on
  the weight bit-for-bit.
"""

import math
from dataclasses import dataclass

import numpy as np

from .counters import OpCounter
from .lattice import LatticeProblem, RadiusPolicy, Representation
from .modem import Constellation, quantize_rail

# Exhaustive enumeration refuses search spaces larger than this.
ML_CANDIDATE_GUARD = 10**8

_ML_CHUNK = 1 << 16

# Relative agreement required between a search's accumulated weight and the
# canonical recomputation of the same leaf.
_WEIGHT_CONSISTENCY = 1e-6


@dataclass(frozen=True)
class DetectionResult:
    """Outcome of one detection call.

    ``x_hat`` holds 2N rail levels in the problem representation's symbol
    order; ``weight`` is the canonical ||y_hat - R x_hat||^2; ``restarts``
    counts radius-growth reruns (the final unconstrained fallback pass
    included).
    """

    x_hat: np.ndarray
    weight: float
    nodes_visited: int
    flops: int
    restarts: int


class KBestSchedule:
    """Survivor caps for the middle tree layers of the reduced decoder.

    Keyed by (N, constellation order).  For an N-antenna system with a cap
    list of length L, symbols s_{N-1} down to s_{N-L} are enumerated with
    the per-layer caps applied (best-weight survivors kept, ties broken
    lexicographically) and the remaining low symbols are estimated by rail
    quantization.  N <= 2 has no middle layers and needs no entry.
    """

    def __init__(self, table):
        for (n, order), caps in table.items():
            if not caps or any(c < 1 for c in caps):
                raise ValueError(f"caps for ({n}, {order}) must all be >= 1")
            if len(caps) > n - 2:
                raise ValueError(
                    f"cap list for ({n}, {order}) is longer than the {n - 2} "
                    "middle symbol layers"
                )
        self._table = {key: tuple(caps) for key, caps in table.items()}

    @classmethod
    def default(cls):
        """Caps used for the 4x4 and 6x6 complexity studies.

        4x4 keeps the best 8 survivors at each of the two middle symbol
        layers for either modulation; 6x6 keeps 16/8/4 (16-QAM) or 32/32/16
        (64-QAM) at its three middle symbol layers.
        """
        return cls({
            (4, 16): (8, 8),
            (4, 64): (8, 8),
            (6, 16): (16, 8, 4),
            (6, 64): (32, 32, 16),
        })

    def caps_for(self, n, order):
        if n <= 2:
            return ()
        try:
            return self._table[(n, order)]
        except KeyError:
            raise ValueError(
                f"no middle-layer schedule defined for N={n}, {order}-QAM"
            ) from None


def recompute_weight(p: LatticeProblem, x) -> float:
    """Canonical objective value ||y_hat - R x||^2 for a symbol vector."""
    x = np.asarray(x, dtype=float)
    res = p.y_hat - p.r @ x
    return float(res @ res)


def _check_weight(accumulated, canonical):
    assert abs(accumulated - canonical) <= _WEIGHT_CONSISTENCY * (1.0 + canonical), (
        f"accumulated weight {accumulated!r} disagrees with canonical "
        f"{canonical!r}"
    )


def ml_exhaustive(p: LatticeProblem, c: Constellation, counter: OpCounter | None = None):
    """Globally minimal weight by exhaustive enumeration of the rail set.

    Candidates are scanned in lexicographic detection order
    (x_{2N} slowest), keeping the first strict minimum, which matches the
    tie behaviour of the tree searches.  The FLOP tally is the cost of
    evaluating every candidate's weight row by row, the node tally the
    number of candidates.  Rejects search spaces above ``ML_CANDIDATE_GUARD``.
    """
    if counter is None:
        counter = OpCounter()
    m = 2 * p.n
    total = c.mu ** m
    if total > ML_CANDIDATE_GUARD:
        raise ValueError(
            f"exhaustive search over {c.mu}^{m} = {total} candidates exceeds "
            f"the {ML_CANDIDATE_GUARD} guard"
        )
    rail = np.asarray(c.rail, dtype=float)
    rt = p.r.T.copy()
    y_hat = p.y_hat
    shape = (c.mu,) * m

    best_w = math.inf
    best_idx = -1
    for lo in range(0, total, _ML_CHUNK):
        hi = min(lo + _ML_CHUNK, total)
        digits = np.unravel_index(np.arange(lo, hi), shape)
        # axis 0 varies slowest and holds the top level 2N = symbol index m-1
        x_chunk = np.empty((hi - lo, m))
        for j in range(m):
            x_chunk[:, j] = rail[digits[m - 1 - j]]
        res = y_hat[None, :] - x_chunk @ rt
        w = np.einsum("ij,ij->i", res, res)
        k = int(np.argmin(w))
        if w[k] < best_w:
            best_w = float(w[k])
            best_idx = lo + k

    digits = np.unravel_index(best_idx, shape)
    x_hat = np.array([c.rail[digits[m - 1 - j]] for j in range(m)], dtype=int)

    per_cand = m * (m + 1) // 2 + m  # sum of (terms + 1) over all rows
    counter.mults += total * per_cand
    counter.adds += total * per_cand
    counter.comparisons += total
    counter.nodes += total
    weight = recompute_weight(p, x_hat)
    _check_weight(best_w, weight)
    return DetectionResult(
        x_hat=x_hat,
        weight=weight,
        nodes_visited=total,
        flops=total * 2 * per_cand,
        restarts=0,
    )


def sd_conventional(p: LatticeProblem, c: Constellation,
                    policy: RadiusPolicy | None = None,
                    counter: OpCounter | None = None):
    """Depth-first sphere decoder on the stacked representation.

    Classic depth-first tree search: starting at level 2N, each node's
    weight adds |y_hat_l - sum_{k=l..2N} r_{l,k} x_k|^2 to its parent's,
    branches at or above the squared radius are pruned, and every accepted
    leaf shrinks the squared radius to its weight.  The per-node metric is
    evaluated in full (the interference sum is recomputed at every node),
    which is what the FLOP tally measures.  Returns the same weight as
    :func:`ml_exhaustive` on every input.
    """
    if p.representation is not Representation.STACKED:
        raise ValueError("sd_conventional requires the stacked representation")
    if counter is None:
        counter = OpCounter()
    if policy is None:
        policy = RadiusPolicy(initial_sq=p.radius_sq)

    m = 2 * p.n
    rows = [[float(v) for v in p.r[i]] for i in range(m)]
    yh = [float(v) for v in p.y_hat]
    rail = c.rail
    xv = [0.0] * m
    nodes_at = [0] * m  # node visits per level index, for the flop tally

    best_x = None
    restarts = 0
    for attempt in range(policy.max_restarts + 2):
        if attempt > policy.max_restarts:
            d2 = math.inf
        else:
            d2 = policy.initial_sq * policy.growth ** attempt
        restarts = attempt

        best_w = math.inf
        best_x = None

        def dfs(j, w_prefix):
            nonlocal d2, best_w, best_x
            row = rows[j]
            yj = yh[j]
            cnt = 0
            for omega in rail:
                s = row[j] * omega
                for k in range(j + 1, m):
                    s += row[k] * xv[k]
                d = yj - s
                w = w_prefix + d * d
                cnt += 1
                assert w >= w_prefix  # partial metrics never decrease
                if w < d2:
                    xv[j] = omega
                    if j:
                        dfs(j - 1, w)
                    else:
                        d2 = w
                        best_w = w
                        best_x = xv.copy()
            nodes_at[j] += cnt

        dfs(m - 1, 0.0)
        if best_x is not None:
            break

    visited = sum(nodes_at)
    add_total = sum(cnt * (m - j + 1) for j, cnt in enumerate(nodes_at))
    counter.nodes += visited
    counter.comparisons += visited  # one radius test per node
    counter.adds += add_total
    counter.mults += add_total

    x_hat = np.array([int(v) for v in best_x], dtype=int)
    weight = recompute_weight(p, x_hat)
    _check_weight(best_w, weight)
    return DetectionResult(
        x_hat=x_hat,
        weight=weight,
        nodes_visited=visited,
        flops=2 * add_total,
        restarts=restarts,
    )


def sd_proposed(p: LatticeProblem, c: Constellation,
                policy: RadiusPolicy | None = None,
                schedule: KBestSchedule | None = None,
                counter: OpCounter | None = None):
    """Reduced-complexity decoder for the interleaved representation.

    Relies on the exact zeros r[l-1, l] (even l) of the interleaved R, which
    decouple the real and imaginary rails of each symbol:

    1. The two top levels are scanned independently with one-dimensional
       metrics; every (x_{2N}, x_{2N-1}) pair whose summed weight respects
       the radius survives.
    2. For N >= 3, each middle symbol is expanded into its mu^2 rail pairs
       (two decoupled one-dimensional metrics per prefix), pruned by the
       cumulative radius test, and capped with the schedule's best-k rule.
    3. The remaining low symbols are estimated per surviving prefix by rail
       quantization of the interference-cancelled values, accumulating the
       exact leaf weight; leaves inside the sphere compete and the lowest
       weight wins.

    For N <= 2 the quantization step is exact, so the returned weight equals
    :func:`ml_exhaustive`'s on every input.  Empty survivor sets trigger the
    radius policy's restarts, ending in an unconstrained pass.
    """
    if p.representation is not Representation.INTERLEAVED:
        raise ValueError("sd_proposed requires the interleaved representation")
    if counter is None:
        counter = OpCounter()
    if policy is None:
        policy = RadiusPolicy(initial_sq=p.radius_sq)
    if schedule is None:
        schedule = KBestSchedule.default()
    caps = schedule.caps_for(p.n, c.order)

    n = p.n
    m = 2 * n
    rows = [[float(v) for v in p.r[i]] for i in range(m)]
    yh = [float(v) for v in p.y_hat]
    rail = c.rail
    mu = c.mu

    adds = mults = divs = cmps = nodes = 0
    best = None
    restarts = 0

    for attempt in range(policy.max_restarts + 2):
        if attempt > policy.max_restarts:
            d2 = math.inf
        else:
            d2 = policy.initial_sq * policy.growth ** attempt
        restarts = attempt

        # Step 1: the two top levels are independent (r[m-2, m-1] == 0).
        top = []
        for j in (m - 1, m - 2):
            yj = yh[j]
            rjj = rows[j][j]
            kept = []
            for omega in rail:
                d = yj - rjj * omega
                t = d * d
                nodes += 1
                mults += 2
                adds += 1
                cmps += 1
                if t < d2:
                    kept.append((t, omega))
            top.append(kept)

        survivors = []
        for t1, w1 in top[0]:
            for t2, w2 in top[1]:
                w = t1 + t2
                adds += 1
                cmps += 1
                if w < d2:
                    survivors.append((w, (w1, w2)))
        if not survivors:
            continue

        # Middle symbol layers (N >= 3): enumerate mu^2 rail pairs per
        # surviving prefix, keep the best-k per layer.
        empty = False
        for layer, cap in enumerate(caps):
            sym = n - 1 - layer        # symbol index, 1-based
            j_im, j_re = 2 * sym - 1, 2 * sym - 2
            nxt = []
            for w_pre, prefix in survivors:
                e_im, a, ml = _interference(rows[j_im], prefix, j_im, m)
                adds += a
                mults += ml
                e_re, a, ml = _interference(rows[j_re], prefix, j_im, m)
                adds += a
                mults += ml
                c_im = yh[j_im] - e_im
                c_re = yh[j_re] - e_re
                adds += 2
                r_im = rows[j_im][j_im]
                r_re = rows[j_re][j_re]
                part_im = []  # w_pre + 1-D imag-rail term, hoisted out of the pair loop
                t_re = []
                for omega in rail:
                    d = c_im - r_im * omega
                    part_im.append((w_pre + d * d, omega))
                    d = c_re - r_re * omega
                    t_re.append((d * d, omega))
                nodes += 2 * mu
                mults += 4 * mu
                adds += 3 * mu
                for si, wi in part_im:
                    for tr, wr in t_re:
                        w = si + tr
                        adds += 1
                        cmps += 1
                        assert w >= w_pre
                        if w < d2:
                            nxt.append((w, prefix + (wi, wr)))
            if not nxt:
                empty = True
                break
            nxt.sort()
            survivors = nxt[:cap]
        if empty:
            continue

        # Step 2: quantize the remaining low symbols per surviving prefix.
        leaves = []
        for w, prefix in survivors:
            values = list(prefix)
            for sym in range(n - 1 - len(caps), 0, -1):
                j_im, j_re = 2 * sym - 1, 2 * sym - 2
                for j in (j_im, j_re):
                    row = rows[j]
                    # the structural zero r[j_re, j_im] keeps both sums
                    # starting at the same column
                    e = row[j_im + 1] * values[m - 2 - j_im]
                    for k in range(j_im + 2, m):
                        e += row[k] * values[m - 1 - k]
                    terms = m - 1 - j_im
                    mults += terms
                    adds += terms - 1
                    cv = yh[j] - e
                    adds += 1
                    rjj = row[j]
                    x_q = quantize_rail(cv / rjj, c)
                    divs += 1
                    cmps += 1
                    d = cv - rjj * x_q
                    t = d * d
                    w_new = w + t
                    mults += 2
                    adds += 2
                    nodes += 1
                    assert w_new >= w
                    w = w_new
                    values.append(x_q)
            cmps += 1
            if w < d2:
                leaves.append((w, tuple(values)))
        if leaves:
            best = min(leaves)
            break

    counter.adds += adds
    counter.mults += mults
    counter.divs += divs
    counter.comparisons += cmps
    counter.nodes += nodes

    w_acc, values = best
    # detection-order tuple -> symbol index order
    x_hat = np.array([int(values[m - 1 - j]) for j in range(m)], dtype=int)
    weight = recompute_weight(p, x_hat)
    _check_weight(w_acc, weight)
    return DetectionResult(
        x_hat=x_hat,
        weight=weight,
        nodes_visited=nodes,
        flops=adds + mults + divs,
        restarts=restarts,
    )


def _interference(row, prefix, j_top, m):
    """Sum of r[row, k] * x_k over the assigned columns k > j_top.

    ``prefix`` holds the assigned values in detection order (x at column
    m-1 first).  Returns (sum, adds, mults) with the executed-op tally.
    """
    e = row[j_top + 1] * prefix[m - 2 - j_top]
    for k in range(j_top + 2, m):
        e += row[k] * prefix[m - 1 - k]
    terms = m - 1 - j_top
    return e, terms - 1, terms
