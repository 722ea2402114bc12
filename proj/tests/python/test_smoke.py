import json

import pytest

import nsforge


def test_catalog_group():
    g = nsforge.catalog("PGL2")
    assert g.name == "PGL2"
    assert g.type == "A1"
    assert g.pi1 == "Z/2"
    assert g.pi1_torsion == [2]
    assert g.basic_forms == [[[2]]]
    assert nsforge.catalog("GL", 3).pi1_free_rank == 1


def test_root_datum_matches_catalog():
    sl2 = nsforge.group_from_root_datum(1, [[2]], [[1]], name="SL2")
    assert sl2.pi1 == "0"
    assert sl2.cartan == nsforge.catalog("SL2").cartan


def test_ns_lattice_against_bruteforce():
    for name, d in [("PGL2", [1]), ("GL2", [1]), ("SL2xT1", [0])]:
        g = nsforge.catalog(name)
        assert nsforge.ns_basis(g, d, genus=2) == nsforge.ns_bruteforce(g, d, genus=2)


def test_rank_formula_and_report():
    g = nsforge.catalog("GL3")
    report = nsforge.report(g, [1], genus=2)
    assert report["schema"] == 1
    assert report["ns_rank"] == report["rank_formula"] == nsforge.rank_formula(g, 2)
    assert report["extension"]["exact"]


def test_end_ring_argument():
    g = nsforge.catalog("T1")
    generic = nsforge.rank_formula(g, 2)
    cm = nsforge.rank_formula(g, 2, involution=[[1, 0], [0, -1]], unit=[1, 0])
    assert cm == generic
    with pytest.raises(nsforge.InputError):
        nsforge.rank_formula(g, 2, involution=[[1, 0], [0, -1]])


def test_pullback_and_dynkin():
    det = nsforge.pullback(nsforge.catalog("GL3"), nsforge.catalog("T1"), [[1, 1, 1]], [1])
    # det restricted to the centre is x -> 3x: linear terms scale by 3, quadratic by 9
    assert det["matrix"] == [[3, 0], [0, 9], [0, 0]]
    basis, coords = det["target_basis"], det["lattice_matrix"]
    ambient = [[sum(basis[k][i] * coords[k][j] for k in range(len(basis))) for j in range(2)] for i in range(3)]
    assert ambient == det["matrix"]
    sl2 = nsforge.catalog("SL2")
    assert nsforge.dynkin_by_weights(sl2, [[3], [1], [-1], [-3]]) == 10
    assert nsforge.dynkin_index(sl2, nsforge.catalog("SL3"), [[2], [2]]) == 4


def test_errors():
    with pytest.raises(ValueError):
        nsforge.catalog("XX9")
    with pytest.raises(nsforge.InputError):
        nsforge.dynkin_by_weights(nsforge.catalog("SL2"), [[1], [1]])


def test_cli_entry_point():
    code, out, err = nsforge.run_cli(["ns", "--catalog", "PGL2", "--component", "1", "--format", "json"])
    assert code == 0 and err == ""
    assert json.loads(out)["ns_basis"] == [[2]]
    code, _, _ = nsforge.run_cli(["frobnicate"])
    assert code == 1
