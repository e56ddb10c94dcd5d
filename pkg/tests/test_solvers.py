import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import graph, multigraphs
from ffkit import ContractViolation, InvalidInput, PreconditionUnmet
from ffkit.contract import FactorContract
from ffkit.graph import Orientation, ResidueTarget
from ffkit.harness.generators import circulant, complete, complete_bipartite, dipole
from ffkit.harness.oracle import brute_force_search
from ffkit.solvers import (
    LovaszWitness,
    directed_list_factor,
    gf_factor,
    list_factor_incl_excl,
    lovasz_check,
    lovasz_values,
    modulo_factor_bounded,
    orientation_gf,
    solve_contract,
)

C4 = circulant(4, [1])
K2 = graph(2, (0, 1))
TRIANGLE = graph(3, (0, 1), (1, 2), (0, 2))


def test_lovasz_examples():
    w = lovasz_check(K2, 2, 3)
    assert w is not None and w.lhs > w.rhs
    # the first violator by |A u B| is a single vertex; vertex 0 is the most
    # significant digit, so B = {1} comes before B = {0}
    assert (w.A, w.B) == (frozenset(), frozenset({1}))
    assert lovasz_check(C4, 1, 2) is None
    assert lovasz_check(complete(4), 0, list(complete(4).degrees)) is None


def test_lovasz_pair_from_two_vertices_also_violates():
    lhs, rhs = lovasz_values(K2, (2, 2), (3, 3), labels=np.array([[2, 2]]))
    assert int(lhs[0]) - int(rhs[0]) == 2


def test_lovasz_rejects_two_tight_vertices():
    with pytest.raises(InvalidInput):
        lovasz_check(K2, 1, 1)


def test_lovasz_loop_counterexample():
    # one vertex, one loop, g = f = 1: parity forbids degree 1, yet no (A, B) violates
    G = graph(1, (0, 0))
    assert gf_factor(G, 1, 1) is None
    assert lovasz_check(G, 1, 1) is None


def test_witness_must_violate():
    with pytest.raises(AssertionError):
        LovaszWitness(frozenset(), frozenset(), 0, 0)


def test_gf_examples():
    H = gf_factor(C4, 1, 2)
    assert H is not None and all(1 <= d <= 2 for d in C4.degrees_in(H))
    assert gf_factor(C4, 0, 1, F={0}) == frozenset({0})
    assert gf_factor(K2, 2, 3) is None


def test_orientation_gf_examples():
    D2 = dipole(2)
    O = Orientation(D2, (True, False))
    H = orientation_gf(D2, 1, 1, (), (), O)
    assert len(H) == 1
    G = complete(4)
    assert orientation_gf(G, 0, list(G.degrees), (), (), Orientation(G)) is not None
    O3 = Orientation(TRIANGLE, (True, True, False))  # 0->1, 1->2, 2->0
    H = orientation_gf(TRIANGLE, 1, 2, {0}, (), O3)
    assert 0 in H


def test_orientation_gf_condition():
    O = Orientation(K2)
    with pytest.raises(PreconditionUnmet):
        orientation_gf(K2, 1, 1, (), (), O)


def test_list_examples():
    O3 = Orientation(TRIANGLE, (True, True, False))
    H = directed_list_factor(TRIANGLE, O3, [{1, 2}] * 3)
    assert all(d in (1, 2) for d in TRIANGLE.degrees_in(H))
    assert directed_list_factor(K2, None, [{0, 1}] * 2) is not None
    assert directed_list_factor(graph(1), None, [{5}]) is None


def test_list_incl_excl_examples():
    H = list_factor_incl_excl(TRIANGLE, None, [{1, 2}] * 3, F={0})
    assert 0 in H and all(d in (1, 2) for d in TRIANGLE.degrees_in(H))
    G = complete(4)
    full = frozenset(range(G.m))
    assert list_factor_incl_excl(G, None, [{3}] * 4, F=full, s=3) == full
    assert list_factor_incl_excl(K2, None, [{0}, {0}], F0={0}) == frozenset()


def test_modulo_examples():
    H = modulo_factor_bounded(complete(4), ResidueTarget.constant(4, 2, 0), 1, 2)
    assert sorted(complete(4).degrees_in(H)) == [2, 2, 2, 2]
    K33 = complete_bipartite(3, 3)
    assert modulo_factor_bounded(K33, ResidueTarget.constant(6, 3, 0), 1, 3) == frozenset(range(9))
    assert modulo_factor_bounded(K2, ResidueTarget.constant(2, 2, 1), 0, 0) is None


bounds = st.tuples(st.integers(0, 3), st.integers(0, 2))


@settings(max_examples=80)
@given(multigraphs(n_max=5, m_max=10), st.lists(bounds, min_size=5, max_size=5))
def test_gf_matches_oracle(G, raw):
    g = [raw[v][0] for v in range(G.n)]
    f = [raw[v][0] + raw[v][1] for v in range(G.n)]
    H = gf_factor(G, g, f)
    assert (H is None) == (brute_force_search(G, FactorContract(g=g, f=f)) is None)


@settings(max_examples=80)
@given(multigraphs(n_min=2, n_max=5, m_max=9, loops=False), st.data())
def test_lovasz_duality_on_loopless_graphs(G, data):
    g = [data.draw(st.integers(0, 2)) for _ in range(G.n)]
    f = [x + data.draw(st.integers(1, 2)) for x in g]
    tight = data.draw(st.integers(-1, G.n - 1))
    if tight >= 0:
        f[tight] = g[tight]
    F = frozenset(data.draw(st.sets(st.integers(0, G.m - 1), max_size=2))) if G.m else frozenset()
    H = gf_factor(G, g, f, F)
    W = lovasz_check(G, g, f, F)
    assert (H is None) == (W is not None)


@settings(max_examples=60)
@given(multigraphs(n_max=5, m_max=10), st.integers(2, 3), st.data())
def test_modulo_matches_oracle(G, k, data):
    res = [data.draw(st.integers(0, k - 1)) for _ in range(G.n)]
    R = ResidueTarget(k, res)
    lo = [max(0, d // 2 - 1) for d in G.degrees]
    hi = [d // 2 + k for d in G.degrees]
    H = modulo_factor_bounded(G, R, lo, hi)
    oracle = brute_force_search(G, FactorContract(g=lo, f=hi, mod=R))
    assert (H is None) == (oracle is None)


def test_solve_contract_structure():
    C = FactorContract(g=[2] * 5, f=[2] * 5, m=1)
    H = solve_contract(complete(5), C)
    assert H is not None and complete(5).is_connected(H)
    assert solve_contract(complete(5), FactorContract(g=[2] * 5, f=[2] * 5, m=1, bipartite=True)) is None


def test_contract_violation_carries_witness():
    err = ContractViolation("x", 7)
    assert err.witness == 7 and err.exit_code == 3
