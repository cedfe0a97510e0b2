"""Certified numeric bounds for the analytic side of the construction.

Two functions get certified over continuous regions by gridding into
axis-aligned cells and bounding every multiplicative factor separately in
log space.  Each factor is either an entropy-style ratio

    bin_ratio(a, b) = a^a / (b^b (a-b)^(a-b)),

whose log is increasing in a and unimodal in b (peak at b = a/2), so its
exact maximum over an (a, b) box is one evaluation; or a power u^t whose
log t*log(u) is bilinear in (t, log u), so its box maximum is a corner
product.  Both quantities have affine (or min-of-affine) arguments in the
cell coordinates, giving tight interval ranges straight from the cell
corners.  Summing per-factor maxima over-estimates the true cell maximum,
which is exactly the direction a certificate needs, and a fixed slack
margin of 1e-9 per cell absorbs double-rounding.

Conventions 0^0 = 1 and 0*log 0 = 0 apply throughout (scipy's xlogy).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import xlogy

ROUNDING_MARGIN = 1e-9

X_LO, X_HI = 0.015, 0.415  # first coordinate range of the 3-d region
INDEPENDENCE_CAP = 0.415   # cap entering s = min(1 - x - y, cap)


def bin_ratio(a: float, b: float) -> float:
    """a^a / (b^b (a-b)^(a-b)), evaluated in log space; needs 0 <= b <= a."""
    return math.exp(log_bin_ratio(a, b))


def log_bin_ratio(a, b):
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if np.any(b < 0) or np.any(b > a):
        raise ValueError("need 0 <= b <= a")
    return xlogy(a, a) - xlogy(b, b) - xlogy(a - b, a - b)


def _log_bin_box_max(a_hi, b_lo, b_hi):
    """Exact max of log bin_ratio over a in [*, a_hi], b in [b_lo, b_hi].

    Increasing in a; unimodal in b with the peak at a_hi/2.  Callers must
    ensure b_lo <= a_hi (a nonempty feasible box); b_hi is clipped to a_hi.
    """
    b_star = np.clip(0.5 * a_hi, b_lo, np.minimum(b_hi, a_hi))
    return log_bin_ratio(a_hi, b_star)


def _power_log_max(t_lo, t_hi, u_lo, u_hi):
    """Max of t*log(u) over the box; corners of a bilinear function.

    u_lo may be 0 (log -> -inf); with t >= 0 the corner products then pin to
    -inf or, at t = 0, to 0 by the 0*log 0 convention.
    """
    with np.errstate(divide="ignore", invalid="ignore"):
        l_lo = np.log(u_lo)
        l_hi = np.log(u_hi)
        cands = [t_lo * l_lo, t_lo * l_hi, t_hi * l_lo, t_hi * l_hi]
        cands = [np.where(np.isnan(c), 0.0, c) for c in cands]  # 0 * inf
    return np.maximum.reduce(cands)


def g_value(x: float, y: float, z: float) -> float:
    """First-moment cell weight as a function of the scaled set sizes."""
    s = min(1.0 - x - y, INDEPENDENCE_CAP)
    alpha = 1.0 + s - 3.0 * x - y - z
    beta = 2.0 - s - 2.0 * y + z
    if not (X_LO <= x <= X_HI and 0.0 <= y <= 1.0 - 2.0 * x and 0.0 <= z <= 3.0 * y):
        raise ValueError(f"({x},{y},{z}) outside the certified region")
    if alpha < 0:
        raise ValueError(f"alpha={alpha} < 0: no admissible arc count here")
    log_g = (
        log_bin_ratio(1.0, x)
        + log_bin_ratio(1.0 - x, y)
        + log_bin_ratio(3.0 * (1.0 - x - y), alpha)
        + log_bin_ratio(3.0 * y, z)
        + float(xlogy(beta, x))
        + float(xlogy(alpha, 1.0 - x))
        + float(xlogy(z, 1.0 - x - y))
        + float(xlogy(3.0 * y - z, x + y))
    )
    return math.exp(float(log_g))


@dataclass
class CertReport:
    global_upper_bound: float
    argmax_cell: tuple
    cells_checked: int
    step: float
    method: str
    bound: float
    passed: bool

    def as_dict(self) -> dict:
        return {
            "global_upper_bound": self.global_upper_bound,
            "argmax_cell": list(self.argmax_cell),
            "cells_checked": self.cells_checked,
            "step": self.step,
            "method": self.method,
            "bound": self.bound,
            "passed": self.passed,
        }


# Cells whose one-shot bound exceeds this get interior refinement, down to a
# fixed floor side.  Both are constants (not tied to the requested bound) so
# that halving the step can never increase the reported global bound: box
# intervals nest, hence per-factor corner bounds only shrink under splitting,
# and refined cells bottom out on the identical floor grid either way.
REFINE_TRIGGER = 0.99
FLOOR_SIDE = 6.25e-4


def _g_box_log_bounds(x1, x2, y1, y2, z1, z2):
    """Per-factor corner upper bound of log g over boxes (-inf = infeasible).

    Boxes are intersected with the feasible region { y <= 1-2x, z <= 3y,
    alpha >= 0 } by interval clipping, which only widens the bound.
    """
    y2 = np.minimum(y2, 1.0 - 2.0 * x1)
    feas = y1 <= y2
    y2 = np.maximum(y2, y1)  # keep arithmetic finite on dead boxes
    z2 = np.minimum(z2, 3.0 * y2)
    feas &= z1 <= z2

    s_lo = np.minimum(1.0 - x2 - y2, INDEPENDENCE_CAP)
    s_hi = np.minimum(1.0 - x1 - y1, INDEPENDENCE_CAP)
    a_lo = np.maximum(1.0 + s_lo - 3.0 * x2 - y2 - z2, 0.0)
    a_hi = 1.0 + s_hi - 3.0 * x1 - y1 - z1
    feas &= a_hi >= 0.0
    a_hi = np.maximum(a_hi, 0.0)
    big_a_hi = 3.0 * (1.0 - x1 - y1)

    total = _log_bin_box_max(np.ones_like(x1), x1, x2)
    total = total + _log_bin_box_max(1.0 - x1, y1, y2)
    total += _log_bin_box_max(big_a_hi, np.minimum(a_lo, big_a_hi), np.minimum(a_hi, big_a_hi))
    total += _log_bin_box_max(3.0 * y2, np.minimum(z1, 3.0 * y2), z2)
    b_lo = 2.0 - s_hi - 2.0 * y2 + z1
    b_hi = 2.0 - s_lo - 2.0 * y1 + z2
    total += _power_log_max(b_lo, b_hi, x1, x2)
    total += _power_log_max(a_lo, a_hi, 1.0 - x2, 1.0 - x1)
    total += _power_log_max(z1, z2, 1.0 - x2 - y2, 1.0 - x1 - y1)
    total += _power_log_max(np.maximum(3.0 * y1 - z2, 0.0), 3.0 * y2 - z1, x1 + y1, x2 + y2)
    return np.where(feas, total + ROUNDING_MARGIN, -np.inf)


def _split_boxes(boxes):
    """Halve each box along every axis: 8 children per parent."""
    x1, x2, y1, y2, z1, z2, cx, cy, cz = boxes
    xm = 0.5 * (x1 + x2)
    ym = 0.5 * (y1 + y2)
    zm = 0.5 * (z1 + z2)
    parts = []
    for xa, xb in ((x1, xm), (xm, x2)):
        for ya, yb in ((y1, ym), (ym, y2)):
            for za, zb in ((z1, zm), (zm, z2)):
                parts.append((xa, xb, ya, yb, za, zb, cx, cy, cz))
    return tuple(np.concatenate([p[i] for p in parts]) for i in range(9))


def certify_g(step: float = 0.005, bound: float = 0.995) -> CertReport:
    """Grid certificate that the 3-variable weight stays at or below ``bound``.

    One pass of per-factor corner bounds over side-``step`` cells; any cell
    left above REFINE_TRIGGER is re-bounded by recursive halving down to
    FLOOR_SIDE, and its reported bound is the max over its sub-boxes.
    """
    if not 0 < step <= 0.005:
        raise ValueError("step must be in (0, 0.005]")
    tau = math.log(REFINE_TRIGGER)
    n_x = int(math.ceil((X_HI - X_LO) / step - 1e-12))
    best = -np.inf
    best_cell = (X_LO, 0.0, 0.0)
    cells = 0
    pending: list[tuple] = []
    for i in range(n_x):
        x1s = X_LO + i * step
        x2s = min(x1s + step, X_HI)
        y_top = 1.0 - 2.0 * x1s
        n_y = int(math.ceil(y_top / step - 1e-12))
        if n_y <= 0:
            continue
        yv = np.arange(n_y) * step
        n_z = int(math.ceil(3.0 * y_top / step - 1e-12))
        zv = np.arange(n_z) * step
        Y1, Z1 = (a.ravel() for a in np.meshgrid(yv, zv, indexing="ij"))
        x1 = np.full_like(Y1, x1s)
        x2 = np.full_like(Y1, x2s)
        vals = _g_box_log_bounds(x1, x2, Y1, Y1 + step, Z1, Z1 + step)
        alive = np.isfinite(vals)
        cells += int(alive.sum())
        hot = vals > tau
        done = alive & ~hot
        if done.any():
            j = int(np.argmax(np.where(done, vals, -np.inf)))
            if vals[j] > best:
                best = float(vals[j])
                best_cell = (x1s, float(Y1[j]), float(Z1[j]))
        if hot.any():
            idx = np.nonzero(hot)[0]
            pending.append(
                (
                    x1[idx],
                    x2[idx],
                    Y1[idx],
                    Y1[idx] + step,
                    Z1[idx],
                    Z1[idx] + step,
                    x1[idx],
                    Y1[idx],
                    Z1[idx],
                )
            )
    if pending:
        boxes = tuple(np.concatenate([p[i] for p in pending]) for i in range(9))
        while boxes[0].size:
            if float(boxes[1][0] - boxes[0][0]) <= FLOOR_SIDE * (1 + 1e-9):
                # at the floor: whatever remains is final
                vals = _g_box_log_bounds(*boxes[:6])
                j = int(np.argmax(vals))
                if vals[j] > best:
                    best = float(vals[j])
                    best_cell = (float(boxes[6][j]), float(boxes[7][j]), float(boxes[8][j]))
                break
            boxes = _split_boxes(boxes)
            vals = _g_box_log_bounds(*boxes[:6])
            alive = np.isfinite(vals)
            hot = vals > tau
            done = alive & ~hot
            if done.any():
                j = int(np.argmax(np.where(done, vals, -np.inf)))
                if vals[j] > best:
                    best = float(vals[j])
                    best_cell = (float(boxes[6][j]), float(boxes[7][j]), float(boxes[8][j]))
            keep = np.nonzero(hot)[0]
            boxes = tuple(b[keep] for b in boxes)
    gmax = float(np.exp(best))
    return CertReport(
        global_upper_bound=gmax,
        argmax_cell=best_cell,
        cells_checked=cells,
        step=step,
        method="corner-eval+interval",
        bound=bound,
        passed=gmax <= bound,
    )


def f_value(x: float) -> float:
    """Independent-set weight: must stay below one past the cap point."""
    if not X_HI <= x < 1.0:
        raise ValueError(f"x={x} outside [{X_HI}, 1)")
    return math.exp(float(_log_f(np.asarray(x))))


def _log_f(x):
    one = 1.0 - x
    inner = 1.0 - one**3 * np.exp(-3.0 * x / one)
    return 3.0 * xlogy(x, one) + xlogy(one, inner) - xlogy(x, x) - xlogy(one, one)


def certify_f(step: float = 1e-4, lo: float = X_HI, hi: float = 1.0 - 1e-6) -> CertReport:
    """Grid certificate that the independent-set weight stays below one."""
    if not (X_HI <= lo < hi < 1.0):
        raise ValueError("need 0.415 <= lo < hi < 1")
    if step <= 0:
        raise ValueError("step must be positive")
    n_c = int(math.ceil((hi - lo) / step - 1e-12))
    x1 = lo + np.arange(n_c) * step
    x2 = np.minimum(x1 + step, hi)
    # 3x log(1-x): t >= 0, u decreasing in x
    t = _power_log_max(3.0 * x1, 3.0 * x2, 1.0 - x2, 1.0 - x1)
    # (1-x) log(inner): inner increasing in x and < 1
    inner_lo = 1.0 - (1.0 - x1) ** 3 * np.exp(-3.0 * x1 / (1.0 - x1))
    inner_hi = 1.0 - (1.0 - x2) ** 3 * np.exp(-3.0 * x2 / (1.0 - x2))
    t += _power_log_max(1.0 - x2, 1.0 - x1, inner_lo, inner_hi)
    # -x log x = x log(1/x)
    t += _power_log_max(x1, x2, 1.0 / x2, 1.0 / x1)
    # -(1-x) log(1-x)
    t += _power_log_max(1.0 - x2, 1.0 - x1, 1.0 / (1.0 - x1), 1.0 / (1.0 - x2))
    t += ROUNDING_MARGIN
    k = int(np.argmax(t))
    fmax = float(np.exp(t[k]))
    return CertReport(
        global_upper_bound=fmax,
        argmax_cell=(float(x1[k]),),
        cells_checked=n_c,
        step=step,
        method="corner-eval+interval",
        bound=1.0,
        passed=fmax < 1.0,
    )


def check_superadditivity(alpha: float, beta: float, x: float, y: float) -> bool:
    """(alpha/x)^x (beta/y)^y <= ((alpha+beta)/(x+y))^(x+y) for positive inputs."""
    gaps = superadditivity_gaps(
        np.asarray([alpha]), np.asarray([beta]), np.asarray([x]), np.asarray([y])
    )
    return bool(gaps[0] >= -1e-12)


def superadditivity_gaps(alpha, beta, x, y):
    """Vector of rhs - lhs in log space, normalized by max(1, |rhs|)."""
    alpha, beta, x, y = (np.asarray(v, dtype=float) for v in (alpha, beta, x, y))
    if np.any(alpha <= 0) or np.any(beta <= 0) or np.any(x <= 0) or np.any(y <= 0):
        raise ValueError("all arguments must be positive")
    lhs = x * np.log(alpha / x) + y * np.log(beta / y)
    rhs = (x + y) * np.log((alpha + beta) / (x + y))
    return (rhs - lhs) / np.maximum(1.0, np.abs(rhs))
