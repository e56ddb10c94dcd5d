from itertools import product

import pytest
from hypothesis import given, settings

from conftest import graph, multigraphs
from ffkit import InvalidInput, PreconditionUnmet
from ffkit.harness.generators import circulant, complete, dipole
from ffkit.orientation import (
    basic_decomposition,
    demand_orientation,
    euler_walks,
    eulerian_orientation,
    extend_preorientation,
    split_demand,
)


def test_eulerian_orientation_examples():
    O = eulerian_orientation(circulant(4, [1]))
    assert list(O.out_degrees()) == [1, 1, 1, 1]
    O = eulerian_orientation(dipole(2))
    assert {O.head(0), O.head(1)} == {0, 1}
    O = eulerian_orientation(graph(1, (0, 0)))
    assert list(O.out_degrees()) == list(O.in_degrees()) == [1]


def test_eulerian_orientation_needs_even_degrees():
    with pytest.raises(PreconditionUnmet):
        eulerian_orientation(graph(2, (0, 1)))


@given(multigraphs(n_max=6, m_max=10))
def test_doubled_graph_orients_balanced(G):
    doubled = graph(G.n, *(G.edges + G.edges))
    O = eulerian_orientation(doubled)
    assert O.out_degrees() == O.in_degrees()
    walked = sorted(e for w in euler_walks(doubled) for e, _ in w)
    assert walked == list(range(doubled.m))


def test_demand_orientation_examples():
    O = demand_orientation(dipole(2), 1)
    assert sorted(O.in_degrees()) == [1, 1]
    star = graph(4, (0, 1), (0, 2), (0, 3))
    O = demand_orientation(star, (3, 0, 0, 0))
    assert O.in_degrees()[0] == 3
    with pytest.raises(PreconditionUnmet):
        demand_orientation(star, (2, 1, 1, 0))


def feasible_by_enumeration(G, l):
    for heads in product((0, 1), repeat=G.m):
        ind = [0] * G.n
        for e, h in enumerate(heads):
            ind[G.edges[e][h]] += 1
        if all(ind[v] >= l[v] for v in range(G.n)):
            return True
    return False


@settings(max_examples=50)
@given(multigraphs(n_max=5, m_max=8))
def test_demand_orientation_matches_enumeration(G):
    l = [G.degree(v) // 2 for v in range(G.n)]
    try:
        O = demand_orientation(G, l)
    except PreconditionUnmet:
        assert not feasible_by_enumeration(G, l)
    else:
        assert all(O.in_degrees()[v] >= l[v] for v in range(G.n))


def test_split_demand_ceil_at_z():
    assert split_demand(dipole(5), 1, z=0) == (2, 1)
    assert split_demand(dipole(5), 1) == (1, 1)
    assert split_demand(dipole(1), 2) == (0, 0)


def test_basic_decomposition_examples():
    D4 = dipole(4)
    dec = basic_decomposition(D4, 1)
    assert len(dec.H) == 1
    assert all(x >= 1 for x in dec.orientation.out_degrees(dec.rest))
    dec = basic_decomposition(D4, 1, M={0}, M0={1})
    assert 0 in dec.H and 1 not in dec.H and 1 not in dec.rest
    C4 = circulant(4, [1])
    dec = basic_decomposition(C4, 1, z=0)
    assert len(dec.H) == 3 and C4.is_connected(dec.H)
    assert dec.demand[0] == 0


def test_basic_decomposition_hypotheses():
    with pytest.raises(PreconditionUnmet):
        basic_decomposition(circulant(5, [1]), 2)
    with pytest.raises(PreconditionUnmet):
        basic_decomposition(dipole(4), 1, M0={0, 1})


@settings(max_examples=30)
@given(multigraphs(n_min=2, n_max=5, m_max=14, loops=False))
def test_basic_decomposition_on_edge_connected_graphs(G):
    from ffkit.connectivity import edge_connectivity

    if edge_connectivity(G) < 2:
        return
    dec = basic_decomposition(G, 1)
    assert G.is_connected(dec.H)
    out = dec.orientation.out_degrees(dec.rest)
    assert all(out[v] >= G.degree(v) // 2 - 1 for v in range(G.n))


def test_extend_preorientation_dipole():
    D4 = dipole(4)
    ext = extend_preorientation(D4, 1, M0={0: 1}, r=0)
    assert 0 not in ext.F and len(ext.F) == 1
    (f,) = ext.F
    assert ext.orientation.head(f) == 0
    assert all(x <= 2 for x in ext.orientation.out_degrees())


def test_extend_preorientation_root_at_z():
    G = complete(5)
    ext = extend_preorientation(G, 1, r={0: 1}, z=None)
    assert ext.orientation.in_degrees(ext.F)[0] == 0
    out = ext.orientation.out_degrees()
    assert all(out[v] <= (G.degree(v) + 1) // 2 for v in range(G.n))


def test_extend_preorientation_sum_rule():
    with pytest.raises(InvalidInput):
        extend_preorientation(dipole(4), 1, r={0: 1, 1: 1})


@settings(max_examples=30)
@given(multigraphs(n_min=2, n_max=5, m_max=14, loops=False))
def test_extension_bounds(G):
    from ffkit.connectivity import edge_connectivity

    if edge_connectivity(G) < 2:
        return
    ext = extend_preorientation(G, 1, r={G.n - 1: 1})
    out = ext.orientation.out_degrees()
    assert all(out[v] <= (G.degree(v) + 1) // 2 for v in range(G.n))
    inF = ext.orientation.in_degrees(ext.F)
    assert all(inF[v] == (1 if v != G.n - 1 else 0) for v in range(G.n))
