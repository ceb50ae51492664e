import networkx as nx
import numpy as np
import pytest

from network import EdgeEvent, build_network

TOL = 1e-12

EXAMPLE_EDGES = {
    "l1": [
        ("x", "y"), ("y", "x"), ("x", "z"), ("z", "x"), ("y", "z"), ("u", "z"),
        ("u", "v"), ("v", "u"), ("x", "u"), ("u", "x"), ("t", "z"), ("v", "t"),
    ],
    "l2": [
        ("u", "x"), ("x", "v"), ("v", "x"), ("x", "y"), ("x", "z"), ("z", "x"),
        ("y", "v"), ("v", "y"), ("u", "v"),
    ],
    "l3": [
        ("x", "u"), ("x", "v"), ("v", "x"), ("x", "y"), ("x", "z"), ("z", "x"),
        ("v", "y"), ("y", "z"), ("z", "y"), ("z", "t"), ("t", "z"), ("t", "v"),
    ],
}

# the layer-l1 relationships enumerated for the example network
L1_TUPLES = [
    ("x", "y"), ("y", "x"), ("x", "z"), ("z", "x"),
    ("y", "z"), ("u", "z"), ("u", "v"), ("v", "u"),
]


def example_events():
    return [
        EdgeEvent(source, target, layer)
        for layer, pairs in EXAMPLE_EDGES.items()
        for source, target in pairs
    ]


@pytest.fixture
def example():
    return build_network(example_events())


@pytest.fixture
def l1_events():
    return [EdgeEvent(source, target, "l1") for source, target in L1_TUPLES]


def random_events(rng, max_nodes=8, max_layers=4, weighted=True):
    """Events of one random network: up to `max_nodes` nodes, density drawn from [0.1, 0.9]."""
    m = int(rng.integers(2, max_nodes + 1))
    layer_count = int(rng.integers(1, max_layers + 1))
    density = rng.uniform(0.1, 0.9)
    nodes = [f"n{i}" for i in range(m)]
    events = []
    for k in range(layer_count):
        for a in nodes:
            for b in nodes:
                if a != b and rng.random() < density:
                    weight = float(rng.uniform(0.1, 3.0)) if weighted else 1.0
                    events.append(EdgeEvent(a, b, f"l{k + 1}", weight))
    return nodes, events


@pytest.fixture
def random_network():
    """Factory: random_network(seed) -> a random network over a full node roster."""
    def make(seed, **kwargs):
        rng = np.random.default_rng(seed)
        nodes, events = random_events(rng, **kwargs)
        return build_network(events, nodes=nodes)

    return make


def write_edges(path, rows, header=True):
    lines = ["source,target,layer,weight,timestamp"] if header else []
    lines.extend(rows)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


@pytest.fixture
def example_csv(tmp_path):
    rows = [f"{source},{target},{layer},1.0," for layer, pairs in EXAMPLE_EDGES.items() for source, target in pairs]
    return write_edges(tmp_path / "example.csv", rows)


def to_networkx(net, layer):
    """One layer as a networkx DiGraph over every node, for oracle checks."""
    net.require_layer(layer)
    graph = nx.DiGraph()
    graph.add_nodes_from(net.nodes)
    graph.add_edges_from(
        (source, target, {"weight": weight})
        for (source, target, edge_layer), weight in net.edges.items()
        if edge_layer == layer
    )
    return graph
