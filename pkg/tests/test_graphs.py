import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import graphs
from indcx.errors import ParameterError
from indcx.graphs import (
    FamilySpec,
    Graph,
    build,
    build_atomic,
    complement,
    complete_graph,
    connected_components,
    cycle_graph,
    delete_vertices,
    disjoint_union,
    edgeless_graph,
    find_isomorphism,
    induced_subgraph,
    isomorphic,
    matching_graph,
    parse_spec,
    path_graph,
    star_graph,
    subgraph_by_indices,
    tensor_product,
)


# -- Graph type ----------------------------------------------------------

def test_graph_rejects_loops_and_asymmetry():
    with pytest.raises(ValueError):
        Graph.from_edges([0, 1], [(0, 0)])
    with pytest.raises(ValueError):
        Graph((0, 1), (0b10, 0))
    with pytest.raises(ValueError):
        Graph.from_edges([0, 0], [])


def test_unknown_label():
    with pytest.raises(KeyError):
        cycle_graph(4).index("nope")


def test_json_roundtrip_product_labels():
    g = tensor_product(cycle_graph(4), complete_graph(3))
    data = json.loads(g.dumps())
    assert data["edges"] == sorted(data["edges"])
    assert all(i < j for i, j in data["edges"])
    assert Graph.from_json(data) == g


# -- atomic ----------------------------------------------------------------

def test_complete_counts():
    g = complete_graph(4)
    assert (g.order, g.size) == (4, 6)
    assert g.labels == (1, 2, 3, 4)


def test_cycle_counts():
    g = cycle_graph(5)
    assert (g.order, g.size) == (5, 5)
    assert all(g.degree(i) == 2 for i in range(5))
    assert g.labels[0] == "u1"


def test_matching():
    g = matching_graph(2)
    assert (g.order, g.size) == (4, 2)


def test_star_and_path():
    assert star_graph(4).degree(0) == 4
    assert path_graph(5).size == 4


@pytest.mark.parametrize("text", ["C2", "K0", "P0"])
def test_atomic_out_of_range(text):
    with pytest.raises(ParameterError):
        build(text)


def test_build_atomic_rejects_aux():
    with pytest.raises(ParameterError):
        build_atomic(FamilySpec("W", (3, 3)))


# -- products and unions ---------------------------------------------------------

def test_k2_times_k3_is_c6():
    g = tensor_product(complete_graph(2), complete_graph(3))
    assert (g.order, g.size) == (6, 6)
    assert isomorphic(g, cycle_graph(6))


def test_c4_times_k2_is_two_c4():
    g = tensor_product(cycle_graph(4), complete_graph(2))
    assert isomorphic(g, disjoint_union(cycle_graph(4), cycle_graph(4)))
    assert len(connected_components(g)) == 2


def test_k1_product_edgeless():
    g = tensor_product(complete_graph(1), cycle_graph(5))
    assert g.order == 5 and g.size == 0


def test_product_labels_are_pairs():
    g = tensor_product(cycle_graph(3), complete_graph(2))
    assert set(g.labels) == {(u, i) for u in ("u1", "u2", "u3") for i in (1, 2)}


def test_disjoint_union_examples():
    assert isomorphic(disjoint_union(complete_graph(2), complete_graph(2)), matching_graph(2))
    g = disjoint_union(complete_graph(1), cycle_graph(3))
    assert (g.order, g.size) == (4, 3)
    assert isomorphic(disjoint_union(*[complete_graph(2)] * 3), matching_graph(3))


def test_induced_subgraph_examples():
    c5 = cycle_graph(5)
    rest = delete_vertices(c5, ["u1", "u2", "u5"])
    assert rest.labels == ("u3", "u4") and rest.size == 1
    assert induced_subgraph(c5, c5.labels) == c5


def test_complement_examples():
    assert complement(complete_graph(5)).size == 0
    c5 = cycle_graph(5)
    assert complement(complement(c5)) == c5
    m2c = complement(matching_graph(2))
    assert m2c.size == 4 and isomorphic(m2c, cycle_graph(4))


def test_isomorphic_examples():
    assert isomorphic(tensor_product(cycle_graph(3), complete_graph(2)), cycle_graph(6))
    assert isomorphic(tensor_product(cycle_graph(4), complete_graph(2)),
                      disjoint_union(cycle_graph(4), cycle_graph(4)))
    assert not isomorphic(complete_graph(3), path_graph(3))


def test_isomorphism_witness_is_valid():
    g = tensor_product(cycle_graph(5), complete_graph(2))
    h = cycle_graph(10)
    phi = find_isomorphism(g, h)
    assert phi is not None
    assert sorted(phi.values()) == list(range(h.order))
    for i, j in g.edge_list:
        assert h.has_edge(phi[i], phi[j])


def test_isomorphism_regular_nonisomorphic():
    # both 3-regular on 6 vertices: K_{3,3} vs the prism
    k33 = Graph.from_edges(range(6), [(i, j) for i in range(3) for j in range(3, 6)])
    prism = Graph.from_edges(range(6), [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)])
    assert not isomorphic(k33, prism)


@pytest.mark.parametrize("n", range(3, 9))
def test_cycle_times_k2_structure(n):
    g = tensor_product(cycle_graph(n), complete_graph(2))
    two = disjoint_union(cycle_graph(n), cycle_graph(n))
    assert isomorphic(g, cycle_graph(2 * n)) == (n % 2 == 1)
    assert isomorphic(g, two) == (n % 2 == 0)


@settings(max_examples=40, deadline=None, derandomize=True)
@given(graphs(max_order=5), graphs(max_order=5))
def test_tensor_commutes_and_edge_count(g, h):
    gh, hg = tensor_product(g, h), tensor_product(h, g)
    assert gh.size == 2 * g.size * h.size
    phi = find_isomorphism(gh, hg)
    assert phi is not None
    # the coordinate swap is also a witness
    swap = {(a, b): (b, a) for a, b in gh.labels}
    for i, j in gh.edge_list:
        a, b = swap[gh.labels[i]], swap[gh.labels[j]]
        assert hg.has_edge(hg.index(a), hg.index(b))


@settings(max_examples=60, deadline=None, derandomize=True)
@given(graphs())
def test_complement_involution(g):
    assert complement(complement(g)) == g
    assert g.size + complement(g).size == g.order * (g.order - 1) // 2


@settings(max_examples=30, deadline=None, derandomize=True)
@given(graphs(max_order=4), graphs(max_order=4), graphs(max_order=4))
def test_disjoint_union_associative(a, b, c):
    assert isomorphic(disjoint_union(disjoint_union(a, b), c), disjoint_union(a, disjoint_union(b, c)))


@settings(max_examples=60, deadline=None, derandomize=True)
@given(graphs(), st.data())
def test_isomorphic_under_random_relabel(g, data):
    perm = data.draw(st.permutations(range(g.order)))
    h = Graph.from_edges([f"x{p}" for p in range(g.order)],
                         [(perm[i], perm[j]) for i, j in g.edge_list])
    assert isomorphic(g, h)


def test_subgraph_by_indices_keeps_labels():
    g = cycle_graph(6)
    s = subgraph_by_indices(g, [0, 2, 4])
    assert s.labels == ("u1", "u3", "u5") and s.size == 0
    assert edgeless_graph(3).size == 0


# -- specs ---------------------------------------------------------------------------

@pytest.mark.parametrize("text,short", [
    ("cycle-x-complete:k=9,n=3", "C9xK3"),
    ("C9xK3", "C9xK3"),
    ("K2xK4xK4", "K2xK4xK4"),
    ("W(5,3)", "W(5,3)"),
    ("Hring(4,3)", "Hring(4,3)"),
    ("Q(3,3)", "Q(3,3)"),
    ("path-x-complete:k=5,n=3", "P5xK3"),
    ("C7", "C7"),
])
def test_parse_spec(text, short):
    assert str(parse_spec(text)) == short
    assert parse_spec(str(parse_spec(text))) == parse_spec(text)


@pytest.mark.parametrize("bad", ["", "X3", "C9xx", "W(5)", "cycle:k=x"])
def test_parse_spec_errors(bad):
    with pytest.raises(ParameterError):
        parse_spec(bad)


def test_unproven_range_flagged(caplog):
    with pytest.raises(ParameterError):
        build("W(1,3)")
    with pytest.raises(ParameterError):
        build("W(2,2)")
    g = build("W(2,2)", allow_unproven=True)
    assert g.order == 6
    assert "unproven" in caplog.text
    assert not parse_spec("W(2,2)").is_proven_range
    assert parse_spec("W(2,3)").is_proven_range
