from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import graph, multigraphs
from ffkit import PreconditionUnmet
from ffkit.compat import (
    bipartite_index,
    bipartite_tree_factor,
    compatible,
    compatible_wrt,
    decompose_by_bi_index,
    max_cut,
    tree_join,
)
from ffkit.connectivity import tree_packing
from ffkit.contract import FactorContract
from ffkit.graph import Bipartition, ResidueTarget, inside_edges, two_coloring
from ffkit.harness.generators import circulant, complete, complete_bipartite, dipole, multiplied, petersen
from ffkit.harness.oracle import brute_force_bipartite_index, brute_force_search

C4 = circulant(4, [1])


def compatible_by_definition(G, R):
    k = R.k
    for sides in product((0, 1), repeat=G.n):
        X = [v for v in range(G.n) if sides[v] == 0]
        Y = [v for v in range(G.n) if sides[v] == 1]
        sX = sum(R.res[v] for v in X)
        sY = sum(R.res[v] for v in Y)
        eX = sum(1 for u, v in G.edges if sides[u] == sides[v] == 0)
        eY = sum(1 for u, v in G.edges if sides[u] == sides[v] == 1)
        ok = any((sX - 2 * x - sY) % k == 0 for x in range(eX + 1))
        ok = ok or any((sX - sY + 2 * y) % k == 0 for y in range(eY + 1))
        if not ok:
            return False
    return True


def test_compatible_wrt_examples():
    R = ResidueTarget.constant(4, 3, 1)
    v = compatible_wrt(C4, R, two_coloring(C4))
    assert v and v.slack == ("x", 0)
    v = compatible_wrt(C4, R, Bipartition.from_side(C4, {0}))
    assert v and v.slack == ("y", 1)


def test_odd_sum_is_incompatible_mod_two():
    R = ResidueTarget(2, (1, 0, 0, 0))
    assert not compatible_wrt(C4, R, two_coloring(C4))
    assert not compatible(C4, R)


def test_odd_sum_with_many_inside_edges():
    # plenty of inside edges never repairs a parity defect
    G = multiplied(complete(5), 5)
    v = compatible(G, ResidueTarget(2, (1, 1, 0, 0, 1)))
    assert not v and v.witness is not None


def test_constant_zero_is_compatible():
    assert compatible(complete(5), ResidueTarget.constant(5, 3, 0))


@settings(max_examples=60)
@given(multigraphs(n_max=5, m_max=8), st.integers(2, 4), st.data())
def test_compatible_matches_definition(G, k, data):
    R = ResidueTarget(k, [data.draw(st.integers(0, k - 1)) for _ in range(G.n)])
    assert bool(compatible(G, R, method="full")) == compatible_by_definition(G, R)


@settings(max_examples=60)
@given(multigraphs(n_max=5, m_max=8), st.data())
def test_mod_two_compatibility_is_even_sum(G, data):
    R = ResidueTarget(2, [data.draw(st.integers(0, 1)) for _ in range(G.n)])
    assert bool(compatible(G, R)) == (sum(R.res) % 2 == 0)


@settings(max_examples=60)
@given(multigraphs(n_max=5, m_max=9), st.integers(2, 4), st.data())
def test_factor_existence_implies_compatibility(G, k, data):
    R = ResidueTarget(k, [data.draw(st.integers(0, k - 1)) for _ in range(G.n)])
    if brute_force_search(G, FactorContract(mod=R)) is not None:
        assert compatible(G, R)
    if k % 2 == 0 and compatible(G, R):
        assert sum(R.res) % 2 == 0


def test_bipartite_shortcut_agrees_with_full():
    G = multiplied(complete_bipartite(2, 3), 3)
    for res in product(range(3), repeat=5):
        R = ResidueTarget(3, res)
        fast = compatible(G, R)
        assert fast.method == "bipartite-unique"
        assert bool(fast) == bool(compatible(G, R, method="full"))


def test_bipartite_index_examples():
    assert bipartite_index(complete_bipartite(3, 3)) == 0
    assert bipartite_index(circulant(5, [1])) == 1
    assert bipartite_index(complete(4)) == 2
    assert bipartite_index(petersen()) == 3


@given(multigraphs(n_max=6, m_max=10))
def test_bipartite_index_matches_brute_force(G):
    assert bipartite_index(G) == brute_force_bipartite_index(G)
    cut, P = max_cut(G)
    assert G.m - cut == len(inside_edges(G, P))


def test_tree_join_parity():
    G = complete(5)
    tree = tree_packing(G, 1).trees[0]
    J = tree_join(G, tree, {1, 3})
    d = G.degrees_in(J)
    assert [v for v in range(5) if d[v] % 2] == [1, 3]


def test_bipartite_tree_factor():
    G = multiplied(complete(4), 2)
    P, packing = bipartite_tree_factor(G, 1)
    assert packing.m == 1
    assert bipartite_tree_factor(complete(4), 3) is None


def _split_ok(G, split, m1, m2, k0):
    G1, G2 = split.G1, split.G2
    assert G1 | G2 == frozenset(range(G.m)) and not G1 & G2
    assert tree_packing(G, m1, within=G1) is not None
    cross = G2 - inside_edges(G, split.P, G2)
    assert tree_packing(G, m2, within=cross) is not None
    assert split.target == min(k0, bipartite_index(G))


def test_split_examples():
    D3 = dipole(3)
    s = decompose_by_bi_index(D3, 1, 1, 1)
    _split_ok(D3, s, 1, 1, 1)
    assert len(s.G1) == 1 and len(s.G2) == 2 and s.inside == 0
    K6 = complete(6)
    s = decompose_by_bi_index(K6, 1, 1, 1)
    _split_ok(K6, s, 1, 1, 1)
    assert s.inside == 1


@pytest.mark.parametrize("G", [multiplied(complete(4), 3), multiplied(complete(5), 3), multiplied(complete(6), 2)])
@pytest.mark.parametrize("k0", [0, 1, 2])
def test_split_equality(G, k0):
    s = decompose_by_bi_index(G, 1, 2, k0)
    _split_ok(G, s, 1, 2, k0)
    assert s.inside == s.target


@pytest.mark.parametrize("side", [1, 2])
def test_split_parity_side(side):
    G = multiplied(complete(5), 4)
    s = decompose_by_bi_index(G, 1, 2, 1, parity_side=side, equality=True)
    _split_ok(G, s, 1, 2, 1)
    even = s.G1 if side == 1 else s.G2
    assert all(d % 2 == 0 for d in G.degrees_in(even))
    assert s.inside == s.target


def test_split_parity_without_equality():
    G = multiplied(complete(5), 3)
    s = decompose_by_bi_index(G, 1, 2, 1, parity_side=2, equality=False)
    assert all(d % 2 == 0 for d in G.degrees_in(s.G2))
    assert s.inside >= s.target


def test_split_bipartite_graph_has_no_inside():
    G = multiplied(complete_bipartite(3, 3), 3)
    assert decompose_by_bi_index(G, 1, 1, 1).inside == 0


def test_split_needs_packing():
    with pytest.raises(PreconditionUnmet):
        decompose_by_bi_index(complete(5), 1, 1, 1)
    with pytest.raises(PreconditionUnmet):
        decompose_by_bi_index(graph(2, (0, 1), (0, 1), (0, 1)), 1, 1, 1, parity_side=1)
