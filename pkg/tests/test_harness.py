import pytest

from ffkit import CapacityError, InvalidInput
from ffkit.connectivity import edge_connectivity, max_packing
from ffkit.contract import FactorContract
from ffkit.graph import ResidueTarget
from ffkit.harness.audit import DEFAULT_CORPORA, audit
from ffkit.harness.generators import complete, generate, parse_params
from ffkit.harness.oracle import brute_force_search
from ffkit.harness.verify import verify

EULER = FactorContract(g=[2] * 5, f=[2] * 5, mod=ResidueTarget.constant(5, 2, 0), m=1)


def test_generator_examples():
    D4 = generate("dipole", {"width": 4})
    assert D4.n == 2 and edge_connectivity(D4) == 4
    C = generate("circulant", {"n": 9, "offsets": "1 2"})
    assert set(C.degrees) == {4} and edge_connectivity(C) == 4
    K42 = generate("multiplied", {"base": "complete", "n": 4, "t": 2})
    assert edge_connectivity(K42) == 6 and max_packing(K42) >= 3


@pytest.mark.parametrize("family,params", [
    ("random-regular-multigraph", {"n": 8, "r": 3}),
    ("union-of-hamilton-cycles", {"n": 7, "h": 2}),
])
def test_random_families_are_seeded(family, params):
    a = generate(family, params, 4)
    assert a == generate(family, params, 4)
    assert len(set(a.degrees)) == 1


def test_unknown_family():
    with pytest.raises(InvalidInput):
        generate("wheel", {})


def test_parse_params():
    assert parse_params("n=5,offsets=1 2") == {"n": 5, "offsets": "1 2"}
    with pytest.raises(InvalidInput):
        parse_params("n")


def test_verify_examples():
    K5 = complete(5)
    cycle = {0, 4, 7, 9, 3}  # 0-1-2-3-4-0 in K5 edge order
    assert verify(K5, cycle, EULER).ok
    four = {0, 4, 7, 2}  # 0-1-2-3-0, vertex 4 isolated
    v = verify(K5, four, EULER)
    assert not v.ok and any("tree-connected" in f for f in v.failures)
    assert verify(K5, set(), FactorContract(g=[0] * 5, f=[0] * 5)).ok


def test_verify_lists_every_failed_clause():
    K5 = complete(5)
    C = FactorContract(include={1}, exclude={0}, g=[1] * 5, f=[1] * 5, m=1)
    v = verify(K5, {0}, C)
    assert len(v.failures) >= 4


def test_oracle_examples():
    C4 = generate("circulant", {"n": 4, "offsets": "1"})
    assert brute_force_search(C4, FactorContract(g=[1] * 4, f=[2] * 4)) is not None
    K2 = complete(2)
    assert brute_force_search(K2, FactorContract(g=[2, 2])) is None
    bip_euler = FactorContract(mod=ResidueTarget.constant(5, 2, 0), m=1, bipartite=True)
    assert brute_force_search(complete(5), bip_euler) is None


def test_oracle_cap():
    with pytest.raises(CapacityError):
        brute_force_search(complete(7), FactorContract())


def test_every_theorem_has_a_default_corpus():
    from ffkit.pipelines import THEOREMS

    assert set(THEOREMS) <= set(DEFAULT_CORPORA)


def test_audit_rows_respect_invariants():
    report = audit("eulerian-bounded")
    assert report.summary == {"constructed": len(report.rows)}
    for row in report.rows:
        assert row["verified"]
    keys = [r["key"] for r in report.rows]
    assert keys == sorted(keys)


def test_findings_embed_a_witness():
    report = audit("gen-modk")
    for row in report.findings:
        assert "graph" in row and "witness" in row and "reproduce" in row


def test_audit_report_is_byte_reproducible():
    a = audit("bip-modk-edge", seed=11).to_json(timing=False)
    b = audit("bip-modk-edge", seed=11).to_json(timing=False)
    assert a == b
    assert "wall_time" not in a and "wall_time" in audit("bip-eulerian").to_json()


def test_audit_rejects_unknown_theorem():
    with pytest.raises(InvalidInput):
        audit("no-such-theorem")


def test_bi_index_audit_records_odd_case():
    report = audit("bi-index-regular")
    k4 = [r for r in report.rows if r["graph_entry"] == {"family": "complete", "params": {"n": 4}}]
    assert k4[0]["outcome"] == "recorded" and k4[0]["bi"] == 2
    assert not report.findings


def test_oracle_equivalence_audit():
    report = audit("gf-oracle-equivalence", {"instances": 60, "loops": True}, seed=2)
    assert report.summary == {"checked": 60}
