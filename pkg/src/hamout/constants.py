"""Threshold formulas shared across the package.

Every logarithm below is natural (base e).  The asymptotic expressions the
thresholds come from are base-free, so a convention has to be picked once;
it is picked here and nowhere else, and the acceptance thresholds in the
test-suite are computed through these functions so that changing the
convention would change everything consistently.
"""

import math


def reserved_count(n: int) -> int:
    """Number of vertices whose third out-arc is withheld: ceil(n / sqrt(log n))."""
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    return math.ceil(n / math.sqrt(math.log(n)))


def max_degree_cutoff(n: int) -> float:
    """2 log n / log log n -- degrees at or above this are flagged as atypical."""
    return 2.0 * math.log(n) / math.log(math.log(n))


def small_component_cap(n: int) -> float:
    """log n / 3.9 -- components up to this size are 'small' for excess counting."""
    return math.log(n) / 3.9


def component_budget(n: int) -> float:
    """6 n / log n -- target component count for the starting 2-matching."""
    return 6.0 * n / math.log(n)


def reserve_budget(n: int) -> float:
    """12 n / log n -- nominal cap on withheld arcs consumed by the pipeline."""
    return 12.0 * n / math.log(n)


def branching_rate(n: int) -> float:
    """tau = 3 - 1/sqrt(log n), mean out-degree of the withheld digraph."""
    return 3.0 - 1.0 / math.sqrt(math.log(n))


def probe_depth(n: int) -> int:
    """ceil(10 log_tau log n) -- BFS depth used by reachability diagnostics."""
    return math.ceil(10.0 * math.log(math.log(n)) / math.log(branching_rate(n)))


def reach_in_cutoff(n: int) -> float:
    """(1000 log log n) log^10 n -- in-reach cutoff (far above n at desk scale)."""
    return 1000.0 * math.log(math.log(n)) * math.log(n) ** 10


def reach_out_cutoff(n: int, k: int) -> float:
    """log^10 n / (log log n)^2 * (k/n) -- out-reach-into-reserve cutoff."""
    return math.log(n) ** 10 / math.log(math.log(n)) ** 2 * (k / n)


def reach_in_hard_cap(n: int) -> float:
    """log^20 n -- single-vertex in-reach hard cap."""
    return math.log(n) ** 20
