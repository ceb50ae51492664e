"""
Distribution analytics over measure values: alpha sweeps, histograms with
cumulative percentages and exponential-decay fitting of ranked values.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np
from scipy import optimize, stats

from centrality import Direction, cdc_values
from clustering import clcc_values
from errors import DegenerateFitError, HistogramRangeError, InsufficientDataError, MsnValidationError
from network import MultiLayerNetwork, require_alpha
from neighbourhoods import Variant, neighbourhood_sizes
from util.parallel import parallel_map

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SweepRow:
    alpha: int
    mn_nonempty: int
    cdc_nonzero: int
    clcc_nonzero: int


@dataclass(frozen=True)
class Histogram:
    bin_upper_edges: List[float]
    counts: List[int]
    cumulative_percent: List[float]

    def rows(self):
        return list(zip(self.bin_upper_edges, self.counts, self.cumulative_percent))


@dataclass(frozen=True)
class FitResult:
    """Parameters of y = A * exp(x / t) over descending-rank positions x."""

    A: float
    t: float
    correlation_rate: float
    n_points: int
    excluded: int = 0
    method: str = "loglinear"

    def predict(self, ranks):
        return self.A * np.exp(np.asarray(ranks, dtype=np.float64) / self.t)


def _sweep_row(net: MultiLayerNetwork, alpha: int, variant) -> SweepRow:
    logger.debug("Sweeping alpha=%d", alpha)
    mn_nonempty = int(np.count_nonzero(neighbourhood_sizes(net, alpha, variant)))
    if net.m >= 2:
        cdc_nonzero = int(np.count_nonzero(cdc_values(net, alpha, Direction.BOTH, variant) > 0))
    else:
        cdc_nonzero = 0
    clcc_nonzero = int(np.count_nonzero(clcc_values(net, alpha, variant) > 0))
    return SweepRow(alpha, mn_nonempty, cdc_nonzero, clcc_nonzero)


def alpha_sweep(net: MultiLayerNetwork, max_alpha: int, variant=Variant.ANY, workers: Optional[int] = None) -> List[SweepRow]:
    """Per-alpha counts of nodes with |MN| > 0, CDC > 0 and CLCC > 0."""
    max_alpha = require_alpha(max_alpha)
    return parallel_map(lambda alpha: _sweep_row(net, alpha, variant), range(1, max_alpha + 1), workers)


def default_histogram_edges() -> List[float]:
    """0.00000, 0.00002, ..., 0.00030 followed by 1.00000."""
    steps = np.round(np.arange(16) * 0.00002, 5)
    return [float(edge) for edge in steps] + [1.0]


def histogram(values: Sequence[float], bin_upper_edges: Optional[Sequence[float]] = None) -> Histogram:
    """
    Right-closed histogram: the first bin holds v <= e0, bin i holds
    e(i-1) < v <= e(i).
    """
    edges = np.asarray(default_histogram_edges() if bin_upper_edges is None else bin_upper_edges, dtype=np.float64)
    if edges.size == 0 or np.any(np.diff(edges) <= 0):
        raise MsnValidationError("histogram edges must be non-empty and strictly increasing")

    data = np.asarray(values, dtype=np.float64)
    if np.any(~np.isfinite(data)):
        bad = data[~np.isfinite(data)][0]
        raise HistogramRangeError(float(bad), float(edges[-1]))
    above = data[data > edges[-1]]
    if above.size:
        raise HistogramRangeError(float(above[0]), float(edges[-1]))

    counts = np.bincount(np.searchsorted(edges, data, side="left"), minlength=edges.size)
    if data.size:
        cumulative = 100.0 * np.cumsum(counts) / data.size
    else:
        cumulative = np.zeros(edges.size)

    return Histogram(edges.tolist(), [int(c) for c in counts], cumulative.tolist())


def _decay(x, amplitude, t):
    return amplitude * np.exp(x / t)


def fit_exp_decay(values: Sequence[float], method: str = "loglinear") -> FitResult:
    """
    Fit y = A * exp(x / t) to the values sorted in descending order, x being
    the rank 0..n-1.

    `loglinear` is a least-squares line through (x, ln y). `nonlinear`
    refines that estimate with scipy's curve_fit on the original scale.
    Non-positive values cannot be log-transformed and are dropped first.
    """
    if method not in ("loglinear", "nonlinear"):
        raise MsnValidationError(f"unknown fit method {method!r}")

    data = np.asarray(values, dtype=np.float64)
    positive = data[data > 0]
    excluded = int(data.size - positive.size)
    if excluded:
        logger.warning("Excluded %d non-positive values before fitting", excluded)
    if positive.size < 2:
        raise InsufficientDataError(f"need at least 2 positive values to fit, got {positive.size}")

    observed = np.sort(positive)[::-1]
    if np.all(observed == observed[0]):
        raise DegenerateFitError("all values are identical, decay constant is undefined")

    ranks = np.arange(observed.size, dtype=np.float64)
    regression = stats.linregress(ranks, np.log(observed))
    if regression.slope == 0:
        raise DegenerateFitError("fitted slope is 0, decay constant is undefined")
    amplitude = float(np.exp(regression.intercept))
    t = float(1.0 / regression.slope)

    if method == "nonlinear":
        try:
            params, _ = optimize.curve_fit(_decay, ranks, observed, p0=(amplitude, t), maxfev=10000)
        except (RuntimeError, ValueError) as err:
            raise DegenerateFitError(f"non-linear fit did not converge: {err}") from None
        amplitude, t = float(params[0]), float(params[1])

    fitted = _decay(ranks, amplitude, t)
    correlation, _ = stats.pearsonr(observed, fitted)
    result = FitResult(amplitude, t, float(correlation), int(observed.size), excluded, method)
    logger.info("Fitted A=%g t=%g CR=%g over %d points", result.A, result.t, result.correlation_rate, result.n_points)
    return result
