"""Deterministic operation accounting for the detectors.

One FLOP is one real addition/subtraction, multiplication, or division
executed during the detection phase.  Comparisons (radius tests, the rail
quantizer, best-leaf updates) are tallied separately and excluded from
``flops()``.  QR preprocessing is not routed through these counters; it is
reported in the separate ``preproc_flops`` field of the lattice problem so
the two cost brackets can be merged or kept split downstream.

Counters are always injected into a detection call and never shared between
concurrent calls, so identical (seed, config) pairs reproduce identical
tallies on any platform.
"""


class OpCounter:
    """Mutable add/mult/div/comparison/node tallies for one detection call."""

    __slots__ = ("adds", "mults", "divs", "comparisons", "nodes")

    def __init__(self, adds=0, mults=0, divs=0, comparisons=0, nodes=0):
        self.adds = adds
        self.mults = mults
        self.divs = divs
        self.comparisons = comparisons
        self.nodes = nodes

    def flops(self):
        """Total counted FLOPs: adds + mults + divs (comparisons excluded)."""
        return self.adds + self.mults + self.divs

    def __repr__(self):
        return (f"OpCounter(adds={self.adds}, mults={self.mults}, "
                f"divs={self.divs}, comparisons={self.comparisons}, "
                f"nodes={self.nodes})")

    def __eq__(self, other):
        if not isinstance(other, OpCounter):
            return NotImplemented
        return (self.adds, self.mults, self.divs, self.comparisons, self.nodes) == \
               (other.adds, other.mults, other.divs, other.comparisons, other.nodes)


def counted_add(counter, a, b):
    """a + b, tallying one addition."""
    counter.adds += 1
    return a + b


def counted_mul(counter, a, b):
    """a * b, tallying one multiplication."""
    counter.mults += 1
    return a * b


def counted_div(counter, a, b):
    """a / b, tallying one division; zero divisors raise ZeroDivisionError."""
    if b == 0:
        raise ZeroDivisionError("counted_div by zero")
    counter.divs += 1
    return a / b


def snapshot(counter):
    """Detached copy of the counter's current tallies."""
    return OpCounter(
        adds=counter.adds,
        mults=counter.mults,
        divs=counter.divs,
        comparisons=counter.comparisons,
        nodes=counter.nodes,
    )
