"""
Degree centralities for one-layered and multi-layered networks.

Regular DC / IDC / ODC count first-level neighbours of a single layer.
CDC sums edge weights between x and its multi-layered neighbourhood over all
layers, normalised by (m - 1)|L|. MDC versions 1-3 sum x's weighted degree
over every layer and differ only in the denominator:

    version 1: (m - 1) |L|
    version 2: (m - 1) |MN(x, 1)|
    version 3: (m - 1) sum_l |N(x, l)|
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional

import numpy as np

from errors import ContractViolationError, DegenerateNetworkError, MsnValidationError
from network import MultiLayerNetwork, layer_view, require_alpha
from neighbourhoods import Variant, layer_count_matrix, membership_matrix, multi_layered_neighbourhood

logger = logging.getLogger(__name__)


class Direction(str, Enum):
    BOTH = "both"
    IN = "in"
    OUT = "out"


class Measure(str, Enum):
    DC = "DC"
    IDC = "IDC"
    ODC = "ODC"
    CDC = "CDC"
    CDC_IN = "CDCIn"
    CDC_OUT = "CDCOut"
    MDC1 = "MDC1"
    MDC1_IN = "MDC1In"
    MDC1_OUT = "MDC1Out"
    MDC2 = "MDC2"
    MDC2_IN = "MDC2In"
    MDC2_OUT = "MDC2Out"
    MDC3 = "MDC3"
    MDC3_IN = "MDC3In"
    MDC3_OUT = "MDC3Out"

    @property
    def direction(self) -> Direction:
        if self.value.endswith("In") or self is Measure.IDC:
            return Direction.IN
        if self.value.endswith("Out") or self is Measure.ODC:
            return Direction.OUT
        return Direction.BOTH

    @property
    def family(self) -> str:
        if self in (Measure.DC, Measure.IDC, Measure.ODC):
            return "DC"
        if self.value.startswith("CDC"):
            return "CDC"
        return self.value[:4]

    @property
    def needs_alpha(self) -> bool:
        return self.family == "CDC"


@dataclass(frozen=True)
class CentralityResult:
    node: str
    measure: Measure
    value: float
    alpha: Optional[int] = None


def _require_population(net: MultiLayerNetwork):
    if net.m < 2:
        raise DegenerateNetworkError(f"degree centrality needs at least 2 nodes, network has {net.m}")


def _single_layer(net_layer: MultiLayerNetwork) -> str:
    if len(net_layer.layers) != 1:
        raise ContractViolationError(
            f"regular degree centrality expects a single-layer network, got {len(net_layer.layers)} layers"
        )
    return net_layer.layers[0]


def _combine(in_part, out_part, direction: Direction):
    direction = Direction(direction)
    if direction is Direction.IN:
        return in_part
    if direction is Direction.OUT:
        return out_part
    return in_part + out_part


def degree_centrality(net_layer: MultiLayerNetwork, x: str, direction=Direction.BOTH, weighted: bool = False) -> float:
    """DC, IDC or ODC of x on a one-layered network."""
    _require_population(net_layer)
    _single_layer(net_layer)
    i = net_layer.node_index(x)
    return float(degree_centrality_values(net_layer, direction, weighted)[i])


def degree_centrality_values(net_layer: MultiLayerNetwork, direction=Direction.BOTH, weighted: bool = False) -> np.ndarray:
    _require_population(net_layer)
    layer = _single_layer(net_layer)
    direction = Direction(direction)

    if weighted:
        weights = net_layer.weights(layer)
        out_part = np.asarray(weights.sum(axis=1)).ravel()
        in_part = np.asarray(weights.sum(axis=0)).ravel()
        numerator = _combine(in_part, out_part, direction)
    else:
        adjacency = net_layer.adjacency(layer)
        if direction is Direction.OUT:
            numerator = np.diff(adjacency.indptr)
        elif direction is Direction.IN:
            numerator = np.diff(adjacency.T.tocsr().indptr)
        else:
            numerator = np.diff((adjacency + adjacency.T).tocsr().indptr)

    return numerator / (net_layer.m - 1)


def cdc(net: MultiLayerNetwork, x: str, alpha: int, direction=Direction.BOTH, variant=Variant.ANY) -> float:
    """Cross-layer degree centrality of x towards MN(x, alpha)."""
    alpha = require_alpha(alpha)
    _require_population(net)
    members = multi_layered_neighbourhood(net, x, alpha, variant)
    if not members:
        return 0.0

    out_part = 0.0
    in_part = 0.0
    for layer in net.layers:
        for y in members:
            out_part += net.weight(x, y, layer)
            in_part += net.weight(y, x, layer)

    return _combine(in_part, out_part, direction) / ((net.m - 1) * len(net.layers))


def cdc_values(net: MultiLayerNetwork, alpha: int, direction=Direction.BOTH, variant=Variant.ANY) -> np.ndarray:
    _require_population(net)
    members = membership_matrix(net, alpha, variant)
    out_part = np.asarray(net.total_weights().multiply(members).sum(axis=1)).ravel()
    in_part = np.asarray(net.total_weights_transposed().multiply(members).sum(axis=1)).ravel()
    denominator = (net.m - 1) * max(len(net.layers), 1)
    return _combine(in_part, out_part, direction) / denominator


def _weighted_degrees(net: MultiLayerNetwork):
    weights = net.total_weights()
    out_part = np.asarray(weights.sum(axis=1)).ravel()
    in_part = np.asarray(weights.sum(axis=0)).ravel()
    return in_part, out_part


def _mdc_denominators(net: MultiLayerNetwork, version: int) -> np.ndarray:
    any_counts = layer_count_matrix(net, Variant.ANY)
    if version == 1:
        per_node = np.full(net.m, float(len(net.layers)))
    elif version == 2:
        per_node = np.diff(any_counts.indptr).astype(np.float64)
    elif version == 3:
        per_node = np.asarray(any_counts.sum(axis=1), dtype=np.float64).ravel()
    else:
        raise MsnValidationError(f"unknown MDC version {version!r}, expected 1, 2 or 3")
    isolated = np.diff(any_counts.indptr) == 0
    per_node[isolated] = 0.0
    return per_node * (net.m - 1)


def mdc_values(net: MultiLayerNetwork, version: int, direction=Direction.BOTH) -> np.ndarray:
    _require_population(net)
    denominator = _mdc_denominators(net, version)
    in_part, out_part = _weighted_degrees(net)
    numerator = _combine(in_part, out_part, direction)
    return np.divide(numerator, denominator, out=np.zeros(net.m), where=denominator > 0)


def mdc(net: MultiLayerNetwork, version: int, x: str, direction=Direction.BOTH) -> float:
    """Multi-layered degree centrality, version 1, 2 or 3."""
    _require_population(net)
    i = net.node_index(x)
    return float(mdc_values(net, version, direction)[i])


def compute_measure(net: MultiLayerNetwork, measure, alpha: Optional[int] = None, layer: Optional[str] = None,
                    variant=Variant.ANY, weighted: bool = False) -> List[CentralityResult]:
    """Evaluate one centrality measure for every node, sorted by node."""
    measure = Measure(measure)
    family = measure.family
    direction = measure.direction

    if family == "DC":
        if layer is not None:
            net = layer_view(net, layer)
        values = degree_centrality_values(net, direction, weighted)
    elif family == "CDC":
        if alpha is None:
            raise MsnValidationError(f"{measure.value} requires alpha")
        alpha = require_alpha(alpha)
        values = cdc_values(net, alpha, direction, variant)
    else:
        values = mdc_values(net, int(family[-1]), direction)

    result_alpha = alpha if measure.needs_alpha else None
    return [
        CentralityResult(node, measure, float(value), result_alpha)
        for node, value in zip(net.nodes, values)
    ]
