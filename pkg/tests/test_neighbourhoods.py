import numpy as np
import pytest

from errors import MsnValidationError, UnknownLayerError, UnknownNodeError
from network import EdgeEvent, build_network
from neighbourhoods import (
    NodeSet,
    Variant,
    mn_any,
    mn_in,
    mn_in_out,
    mn_in_out_any,
    mn_out,
    multi_layered_neighbourhood,
    neighbourhood,
    neighbourhood_sizes,
)

# per-layer neighbourhoods printed for the example network
PER_LAYER = {
    "x": ({"u", "y", "z"}, {"u", "v", "y", "z"}, {"u", "v", "y", "z"}),
    "y": ({"x", "z"}, {"v", "x"}, {"v", "x", "z"}),
    "z": ({"t", "u", "x", "y"}, {"x"}, {"t", "x", "y"}),
    "u": ({"v", "x", "z"}, {"v", "x"}, {"x"}),
    "t": ({"v", "z"}, set(), {"v", "z"}),
    "v": ({"t", "u"}, {"u", "x", "y"}, {"t", "x", "y"}),
}

MN_ANY = {
    "x": ({"u", "v", "y", "z"}, {"u", "v", "y", "z"}, {"u", "y", "z"}),
    "y": ({"v", "x", "z"}, {"v", "x", "z"}, {"x"}),
    "z": ({"t", "u", "x", "y"}, {"t", "x", "y"}, {"x"}),
    "u": ({"v", "x", "z"}, {"v", "x"}, {"x"}),
    "t": ({"v", "z"}, {"v", "z"}, set()),
    "v": ({"t", "u", "x", "y"}, {"t", "u", "x", "y"}, set()),
}


class TestExampleNetworkSets:
    @pytest.mark.parametrize("node", sorted(PER_LAYER))
    def test_per_layer_neighbourhoods(self, example, node):
        for layer, expected in zip(("l1", "l2", "l3"), PER_LAYER[node]):
            assert set(neighbourhood(example, node, layer)) == expected

    def test_mn_in(self, example):
        assert set(mn_in(example, "x", 1)) == {"u", "v", "y", "z"}
        assert set(mn_in(example, "x", 2)) == {"u", "v", "z"}
        assert set(mn_in(example, "x", 3)) == {"z"}

    def test_mn_out(self, example):
        assert set(mn_out(example, "x", 1)) == {"u", "v", "y", "z"}
        assert set(mn_out(example, "x", 2)) == {"u", "v", "y", "z"}
        assert set(mn_out(example, "x", 3)) == {"y", "z"}

    def test_mn_in_out_any(self, example):
        assert set(mn_in_out_any(example, "x", 1)) == {"u", "v", "y", "z"}
        assert set(mn_in_out_any(example, "x", 2)) == {"u", "v", "z"}
        assert set(mn_in_out_any(example, "x", 3)) == {"z"}

    def test_mn_in_out(self, example):
        assert set(mn_in_out(example, "x", 1)) == {"u", "v", "y", "z"}
        assert set(mn_in_out(example, "x", 2)) == {"v", "z"}
        assert set(mn_in_out(example, "x", 3)) == {"z"}

    @pytest.mark.parametrize("node", sorted(MN_ANY))
    def test_mn_any(self, example, node):
        for alpha, expected in enumerate(MN_ANY[node], start=1):
            assert set(mn_any(example, node, alpha)) == expected

    def test_alpha_above_layer_count_is_empty(self, example):
        assert len(mn_any(example, "x", 4)) == 0

    def test_isolated_node(self, l1_events):
        net = build_network(l1_events, nodes=["t"])
        assert len(mn_any(net, "t", 1)) == 0
        assert len(neighbourhood(net, "t", "l1")) == 0


class TestErrors:
    def test_unknown_node(self, example):
        with pytest.raises(UnknownNodeError):
            mn_any(example, "nobody", 1)
        with pytest.raises(UnknownNodeError):
            neighbourhood(example, "nobody", "l1")

    def test_unknown_layer(self, example):
        with pytest.raises(UnknownLayerError):
            neighbourhood(example, "x", "l9")

    def test_bad_alpha(self, example):
        with pytest.raises(MsnValidationError):
            mn_in(example, "x", 0)

    def test_unknown_variant(self, example):
        with pytest.raises(ValueError):
            multi_layered_neighbourhood(example, "x", 1, "sideways")


class TestNodeSet:
    def test_sorted_and_unique(self):
        nodes = NodeSet(["b", "a", "b"])
        assert nodes.members == ("a", "b")
        assert list(nodes) == ["a", "b"]
        assert len(nodes) == 2

    def test_set_semantics(self):
        assert NodeSet(["a", "b"]) == {"a", "b"}
        assert NodeSet(["a"]) <= NodeSet(["a", "b"])
        assert hash(NodeSet(["a", "b"])) == hash(NodeSet(["b", "a"]))

    def test_never_contains_x(self, example):
        for node in example.nodes:
            for variant in Variant:
                assert node not in multi_layered_neighbourhood(example, node, 1, variant)


# ----------------------------------------------------------------------
#                           PROPERTY SUITE
# ----------------------------------------------------------------------

def random_tuples(rng):
    m = int(rng.integers(1, 9))
    layer_count = int(rng.integers(1, 5))
    density = rng.uniform(0.1, 0.9)
    nodes = [f"n{i}" for i in range(m)]
    layers = [f"l{k}" for k in range(layer_count)]
    edges = {
        (a, b, l)
        for l in layers for a in nodes for b in nodes
        if a != b and rng.random() < density
    }
    return nodes, layers, edges


def oracle(nodes, layers, edges, x, alpha, variant):
    result = set()
    for y in nodes:
        if y == x:
            continue
        out_layers = {l for l in layers if (x, y, l) in edges}
        in_layers = {l for l in layers if (y, x, l) in edges}
        if variant == "in":
            ok = len(in_layers) >= alpha
        elif variant == "out":
            ok = len(out_layers) >= alpha
        elif variant == "inoutany":
            ok = len(in_layers) >= alpha and len(out_layers) >= alpha
        elif variant == "inout":
            ok = len(in_layers & out_layers) >= alpha
        else:
            ok = len(in_layers | out_layers) >= alpha
        if ok:
            result.add(y)
    return result


CORPUS_SIZE = 1000
CHUNK = 100


@pytest.mark.parametrize("chunk", range(CORPUS_SIZE // CHUNK))
def test_variants_match_brute_force(chunk):
    for seed in range(chunk * CHUNK, (chunk + 1) * CHUNK):
        rng = np.random.default_rng(seed)
        nodes, layers, edges = random_tuples(rng)
        net = build_network([EdgeEvent(a, b, l) for a, b, l in edges], nodes=nodes)

        for x in nodes:
            previous = None
            for alpha in range(1, 6):
                found = {v: set(multi_layered_neighbourhood(net, x, alpha, v)) for v in Variant}
                for variant, members in found.items():
                    assert members == oracle(nodes, layers, edges, x, alpha, variant.value), (seed, x, alpha, variant)

                assert found[Variant.IN_OUT] <= found[Variant.IN] <= found[Variant.ANY]
                assert found[Variant.IN_OUT] <= found[Variant.OUT] <= found[Variant.ANY]
                assert found[Variant.IN_OUT] <= found[Variant.IN_OUT_ANY]
                assert found[Variant.IN_OUT_ANY] == found[Variant.IN] & found[Variant.OUT]

                if previous is not None:
                    for variant in Variant:
                        assert found[variant] <= previous[variant]
                previous = found


@pytest.mark.parametrize("seed", range(30))
def test_sizes_match_sets(random_network, seed):
    net = random_network(seed)
    for variant in Variant:
        for alpha in (1, 2, 3):
            sizes = neighbourhood_sizes(net, alpha, variant)
            expected = [len(multi_layered_neighbourhood(net, x, alpha, variant)) for x in net.nodes]
            assert sizes.tolist() == expected
