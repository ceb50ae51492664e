"""
Cross-layer clustering coefficient.

CLCC(x, alpha) averages, over layers and over the members y of x's
multi-layered neighbourhood S, the weighted in- and out-degree of y inside S:

    sum_l sum_{y in S} (in(y, S, l) + out(y, S, l)) / (2 |S| |L|)
"""

import logging
from dataclasses import dataclass
from typing import Dict, Iterable

import numpy as np

from network import MultiLayerNetwork, require_alpha
from neighbourhoods import Variant, membership_matrix, multi_layered_neighbourhood

logger = logging.getLogger(__name__)

BATCH_SIZE = 2048


@dataclass(frozen=True)
class ClccResult:
    node: str
    alpha: int
    value: float
    neighbourhood_size: int


def weighted_in_within(net: MultiLayerNetwork, y: str, members: Iterable[str], layer: str) -> float:
    """Sum of w(z, y, l) over z in `members`."""
    net.require_layer(layer)
    return float(sum(net.weight(z, y, layer) for z in members))


def weighted_out_within(net: MultiLayerNetwork, y: str, members: Iterable[str], layer: str) -> float:
    """Sum of w(y, z, l) over z in `members`."""
    net.require_layer(layer)
    return float(sum(net.weight(y, z, layer) for z in members))


def clcc(net: MultiLayerNetwork, x: str, alpha: int, variant=Variant.ANY) -> ClccResult:
    alpha = require_alpha(alpha)
    members = multi_layered_neighbourhood(net, x, alpha, variant)
    if not members:
        return ClccResult(x, alpha, 0.0, 0)

    total = 0.0
    for layer in net.layers:
        for y in members:
            total += weighted_in_within(net, y, members, layer) + weighted_out_within(net, y, members, layer)

    value = total / (2 * len(members) * len(net.layers))
    return ClccResult(x, alpha, value, len(members))


def mccen(net: MultiLayerNetwork, x: str) -> ClccResult:
    """Clustering in the extended neighbourhood, CLCC(x, 1)."""
    return clcc(net, x, 1)


def mccrn(net: MultiLayerNetwork, x: str) -> ClccResult:
    """Clustering in the reduced neighbourhood, CLCC(x, |L|)."""
    return clcc(net, x, max(len(net.layers), 1))


def clcc_values(net: MultiLayerNetwork, alpha: int, variant=Variant.ANY, batch_size: int = BATCH_SIZE) -> np.ndarray:
    """
    CLCC for every node at once, in node order.

    With B the membership matrix and W the layer-summed weights, the edge
    weight inside row x's neighbourhood is the row sum of (B W) * B. Rows are
    processed in batches to bound the size of the product.
    """
    members = membership_matrix(net, alpha, variant)
    sizes = np.diff(members.indptr)
    weights = net.total_weights()
    inside = np.zeros(net.m, dtype=np.float64)

    for start in range(0, net.m, batch_size):
        stop = min(start + batch_size, net.m)
        block = members[start:stop]
        inside[start:stop] = np.asarray((block @ weights).multiply(block).sum(axis=1)).ravel()

    denominator = sizes * max(len(net.layers), 1)
    return np.divide(inside, denominator, out=np.zeros(net.m), where=denominator > 0)


def clcc_all(net: MultiLayerNetwork, alpha: int, variant=Variant.ANY) -> Dict[str, float]:
    values = clcc_values(net, alpha, variant)
    return dict(zip(net.nodes, values.tolist()))
