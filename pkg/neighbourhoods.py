"""
Per-layer and multi-layered neighbourhoods.

Every multi-layered variant reduces to a layer-count matrix C where C[x, y]
is the number of layers satisfying the variant's edge condition between x
and y; MN(x, alpha) is then the set of columns of row x with C[x, y] >= alpha.
Weights play no role here.
"""

import logging
from collections.abc import Set
from enum import Enum
from typing import Iterable

import numpy as np
from scipy.sparse import csr_matrix

from network import MultiLayerNetwork, require_alpha

logger = logging.getLogger(__name__)


class Variant(str, Enum):
    IN = "in"
    OUT = "out"
    IN_OUT_ANY = "inoutany"
    IN_OUT = "inout"
    ANY = "any"


class NodeSet(Set):
    """Duplicate-free node identifiers in lexicographic order."""

    __slots__ = ("_members",)

    def __init__(self, members: Iterable[str] = ()):
        self._members = tuple(sorted(set(members)))

    @property
    def members(self):
        return self._members

    def __contains__(self, node):
        return node in self._members

    def __iter__(self):
        return iter(self._members)

    def __len__(self):
        return len(self._members)

    def __repr__(self):
        return f"NodeSet({list(self._members)!r})"

    __hash__ = Set._hash


def _sum_layers(net: MultiLayerNetwork, term) -> csr_matrix:
    total = csr_matrix((net.m, net.m), dtype=np.int32)
    for layer in net.layers:
        total = total + term(net.adjacency(layer))
    return total.tocsr()


def layer_count_matrix(net: MultiLayerNetwork, variant=Variant.ANY) -> csr_matrix:
    """C[x, y] = number of layers on which the variant's condition holds for (x, y)."""
    variant = Variant(variant)

    def build():
        if variant is Variant.OUT:
            return _sum_layers(net, lambda a: a)
        if variant is Variant.IN:
            return layer_count_matrix(net, Variant.OUT).T.tocsr()
        if variant is Variant.IN_OUT:
            return _sum_layers(net, lambda a: a.multiply(a.T))
        if variant is Variant.IN_OUT_ANY:
            out_counts = layer_count_matrix(net, Variant.OUT)
            in_counts = layer_count_matrix(net, Variant.IN)
            return out_counts.minimum(in_counts).tocsr()
        return _sum_layers(net, lambda a: (a + a.T).sign())

    return net.cached(("layer_counts", variant), build)


def membership_matrix(net: MultiLayerNetwork, alpha: int, variant=Variant.ANY) -> csr_matrix:
    """Float 0/1 matrix whose row x marks the members of MN_variant(x, alpha)."""
    alpha = require_alpha(alpha)
    members = layer_count_matrix(net, variant).copy()
    members.data = (members.data >= alpha).astype(np.float64)
    members.eliminate_zeros()
    members.sort_indices()
    return members


def _row_members(net: MultiLayerNetwork, counts: csr_matrix, x: str, alpha: int) -> NodeSet:
    i = net.node_index(x)
    start, end = counts.indptr[i], counts.indptr[i + 1]
    columns = counts.indices[start:end][counts.data[start:end] >= alpha]
    return NodeSet(net.nodes[j] for j in columns)


def neighbourhood(net: MultiLayerNetwork, x: str, layer: str) -> NodeSet:
    """N(x, l): nodes adjacent to x on layer l in either direction."""
    net.node_index(x)
    net.require_layer(layer)
    symmetric = net.cached(("symmetric", layer), lambda: (net.adjacency(layer) + net.adjacency(layer).T).tocsr())
    return _row_members(net, symmetric, x, 1)


def multi_layered_neighbourhood(net: MultiLayerNetwork, x: str, alpha: int, variant=Variant.ANY) -> NodeSet:
    alpha = require_alpha(alpha)
    return _row_members(net, layer_count_matrix(net, variant), x, alpha)


def mn_in(net: MultiLayerNetwork, x: str, alpha: int) -> NodeSet:
    """Nodes with an edge towards x on at least alpha layers."""
    return multi_layered_neighbourhood(net, x, alpha, Variant.IN)


def mn_out(net: MultiLayerNetwork, x: str, alpha: int) -> NodeSet:
    """Nodes x points to on at least alpha layers."""
    return multi_layered_neighbourhood(net, x, alpha, Variant.OUT)


def mn_in_out_any(net: MultiLayerNetwork, x: str, alpha: int) -> NodeSet:
    """Incoming on >= alpha layers and outgoing on >= alpha layers, layers may differ."""
    return multi_layered_neighbourhood(net, x, alpha, Variant.IN_OUT_ANY)


def mn_in_out(net: MultiLayerNetwork, x: str, alpha: int) -> NodeSet:
    """Reciprocated on at least alpha common layers."""
    return multi_layered_neighbourhood(net, x, alpha, Variant.IN_OUT)


def mn_any(net: MultiLayerNetwork, x: str, alpha: int) -> NodeSet:
    return multi_layered_neighbourhood(net, x, alpha, Variant.ANY)


def neighbourhood_sizes(net: MultiLayerNetwork, alpha: int, variant=Variant.ANY) -> np.ndarray:
    """|MN_variant(x, alpha)| for every node, in node order."""
    return np.diff(membership_matrix(net, alpha, variant).indptr)
