"""
Multi-layered social network model.

A network is the tuple <V, E, L>: a node set, an ordered set of layers and
directed weighted edges keyed by (source, target, layer). Networks are
immutable snapshots; every transformation returns a new one.
"""

import logging
import threading
from dataclasses import dataclass
from enum import Enum
from types import MappingProxyType
from typing import Dict, Iterable, Optional, Tuple

import numpy as np
from scipy.sparse import csr_matrix

from errors import (
    DuplicateEdgeError,
    InvalidEdgeError,
    MsnValidationError,
    NormalizationError,
    UnknownLayerError,
    UnknownNodeError,
)

logger = logging.getLogger(__name__)

EdgeKey = Tuple[str, str, str]


class DedupPolicy(str, Enum):
    SUM = "sum"
    MAX = "max"
    LAST = "last"
    ERROR = "error"


@dataclass(frozen=True)
class EdgeEvent:
    """One timestamped weighted interaction from `source` to `target` on `layer`."""

    source: str
    target: str
    layer: str
    weight: float = 1.0
    timestamp: Optional[float] = None

    def __post_init__(self):
        if self.weight is None:
            object.__setattr__(self, "weight", 1.0)
        if self.source == self.target:
            raise InvalidEdgeError(
                f"loop edge ({self.source}, {self.target}, {self.layer})", record=self
            )
        if not self.weight >= 0:
            raise InvalidEdgeError(
                f"negative weight {self.weight!r} on ({self.source}, {self.target}, {self.layer})",
                record=self,
            )


class MultiLayerNetwork:
    """
    Immutable multi-layered network.

    Nodes are kept in lexicographic order and that order doubles as the row
    index of every sparse matrix. Per-layer binary adjacency and weight
    matrices are built once here; derived matrices are memoised through
    `cached`.
    """

    def __init__(self, nodes: Iterable[str], layers: Iterable[str], edges: Dict[EdgeKey, float]):
        self._nodes = tuple(sorted(set(nodes)))
        self._layers = tuple(dict.fromkeys(layers))
        self._edges = MappingProxyType(dict(edges))
        self._node_index = {node: i for i, node in enumerate(self._nodes)}
        self._layer_index = {layer: i for i, layer in enumerate(self._layers)}
        self._validate()

        m = len(self._nodes)
        rows = {layer: [] for layer in self._layers}
        cols = {layer: [] for layer in self._layers}
        weights = {layer: [] for layer in self._layers}
        for (source, target, layer), weight in self._edges.items():
            rows[layer].append(self._node_index[source])
            cols[layer].append(self._node_index[target])
            weights[layer].append(weight)

        self._adjacency = {}
        self._weights = {}
        for layer in self._layers:
            shape = (m, m)
            index = (np.asarray(rows[layer], dtype=np.int64), np.asarray(cols[layer], dtype=np.int64))
            self._adjacency[layer] = csr_matrix(
                (np.ones(len(rows[layer]), dtype=np.int32), index), shape=shape
            )
            self._weights[layer] = csr_matrix(
                (np.asarray(weights[layer], dtype=np.float64), index), shape=shape
            )

        self._cache = {}
        self._cache_lock = threading.RLock()

    def _validate(self):
        for (source, target, layer), weight in self._edges.items():
            if source == target:
                raise InvalidEdgeError(f"loop edge ({source}, {target}, {layer})")
            if source not in self._node_index:
                raise UnknownNodeError(source)
            if target not in self._node_index:
                raise UnknownNodeError(target)
            if layer not in self._layer_index:
                raise UnknownLayerError(layer)
            if not weight >= 0:
                raise InvalidEdgeError(f"negative weight {weight!r} on ({source}, {target}, {layer})")

    @property
    def nodes(self) -> Tuple[str, ...]:
        return self._nodes

    @property
    def layers(self) -> Tuple[str, ...]:
        return self._layers

    @property
    def edges(self):
        return self._edges

    @property
    def m(self) -> int:
        return len(self._nodes)

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    def __contains__(self, node):
        return node in self._node_index

    def __eq__(self, other):
        if not isinstance(other, MultiLayerNetwork):
            return NotImplemented
        return (
            self._nodes == other._nodes
            and self._layers == other._layers
            and dict(self._edges) == dict(other._edges)
        )

    __hash__ = None

    def __repr__(self):
        return (
            f"MultiLayerNetwork(nodes={len(self._nodes)}, layers={len(self._layers)}, "
            f"edges={len(self._edges)})"
        )

    def node_index(self, node: str) -> int:
        try:
            return self._node_index[node]
        except KeyError:
            raise UnknownNodeError(node) from None

    def require_layer(self, layer: str) -> str:
        if layer not in self._layer_index:
            raise UnknownLayerError(layer)
        return layer

    def weight(self, source: str, target: str, layer: str) -> float:
        """w(x, y, l); 0 for an edge that does not exist."""
        return self._edges.get((source, target, layer), 0.0)

    def has_edge(self, source: str, target: str, layer: str) -> bool:
        return (source, target, layer) in self._edges

    def adjacency(self, layer: str) -> csr_matrix:
        """Binary adjacency of one layer; zero-weight edges are present."""
        return self._adjacency[self.require_layer(layer)]

    def weights(self, layer: str) -> csr_matrix:
        return self._weights[self.require_layer(layer)]

    def cached(self, key, factory):
        """Memoise a matrix derived from this snapshot."""
        with self._cache_lock:
            if key not in self._cache:
                self._cache[key] = factory()
            return self._cache[key]

    def total_weights(self) -> csr_matrix:
        """Sum over layers of the weight matrices."""
        def build():
            total = csr_matrix((self.m, self.m), dtype=np.float64)
            for layer in self._layers:
                total = total + self._weights[layer]
            return total.tocsr()

        return self.cached("total_weights", build)

    def total_weights_transposed(self) -> csr_matrix:
        return self.cached("total_weights_t", lambda: self.total_weights().T.tocsr())


def build_network(
    events: Iterable[EdgeEvent],
    dedup_policy="sum",
    nodes: Optional[Iterable[str]] = None,
) -> MultiLayerNetwork:
    """
    Build a network from edge events.

    Repeated (source, target, layer) triples are merged according to
    `dedup_policy`: `sum` adds weights, `max` keeps the largest, `last` keeps
    the latest in input order and `error` refuses duplicates. `nodes` adds
    members of V that have no edges.
    """
    policy = DedupPolicy(dedup_policy)
    edges: Dict[EdgeKey, float] = {}
    node_set = set(nodes or ())
    layers = {}

    for event in events:
        if event.source == event.target:
            raise InvalidEdgeError(f"loop edge ({event.source}, {event.target}, {event.layer})", record=event)
        key = (event.source, event.target, event.layer)
        weight = 1.0 if event.weight is None else float(event.weight)
        if key in edges:
            if policy is DedupPolicy.ERROR:
                raise DuplicateEdgeError(*key)
            if policy is DedupPolicy.SUM:
                edges[key] += weight
            elif policy is DedupPolicy.MAX:
                edges[key] = max(edges[key], weight)
            else:
                edges[key] = weight
        else:
            edges[key] = weight
        node_set.add(event.source)
        node_set.add(event.target)
        layers.setdefault(event.layer, None)

    network = MultiLayerNetwork(node_set, layers, edges)
    logger.debug("Built %r", network)
    return network


def normalize_out_weights(net: MultiLayerNetwork) -> MultiLayerNetwork:
    """Rescale the outgoing weights of every (node, layer) pair to sum to 1."""
    sums = {}
    for (source, _, layer), weight in net.edges.items():
        sums[(source, layer)] = sums.get((source, layer), 0.0) + weight

    for (source, layer), total in sums.items():
        if total == 0:
            raise NormalizationError(source, layer)

    edges = {
        (source, target, layer): weight / sums[(source, layer)]
        for (source, target, layer), weight in net.edges.items()
    }
    return MultiLayerNetwork(net.nodes, net.layers, edges)


def layer_view(net: MultiLayerNetwork, layer: str) -> MultiLayerNetwork:
    """The one-layered network <V, E, {l}> with the full node set."""
    net.require_layer(layer)
    edges = {key: weight for key, weight in net.edges.items() if key[2] == layer}
    return MultiLayerNetwork(net.nodes, (layer,), edges)


def layer_sizes(net: MultiLayerNetwork) -> Dict[str, int]:
    """Number of relations on each layer, in layer order."""
    return {layer: int(net.adjacency(layer).nnz) for layer in net.layers}


def require_alpha(alpha) -> int:
    if isinstance(alpha, bool) or not isinstance(alpha, (int, np.integer)) or alpha < 1:
        raise MsnValidationError(f"alpha must be an integer >= 1, got {alpha!r}")
    return int(alpha)
