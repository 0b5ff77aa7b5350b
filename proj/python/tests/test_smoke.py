import pytest

import cosetcx


def test_catalog_lists_examples_and_checks():
    assert "alt5_acyclic" in cosetcx.example_names()
    assert "levi" in cosetcx.check_names()


def test_alt5_is_acyclic_but_not_simply_connected():
    x = cosetcx.build("alt5_acyclic")
    assert x.complex.f_vector == [21, 80, 60]
    assert x.group_order == 60
    h = cosetcx.reduced_homology(x.complex, "z")
    assert all(d["betti"] == 0 and not d["torsion"] for d in h["degrees"])
    assert x.verify("cm")["status"] == "Verified"
    assert x.verify("homotopy-cm")["status"] == "Refuted"


def test_building_report():
    x = cosetcx.build("building_A(3,2)")
    assert x.complex.f_vector == [14, 21]
    r = x.report(seed=3)
    assert r["schema"] == "cosetcx-report/1"
    assert r["exit_code"] == 0
    assert r == x.report(seed=11)


def test_opposition_complex_homology_over_f3():
    x = cosetcx.build("opp_A(3,2)")
    h = cosetcx.reduced_homology(x.complex, "f3")
    assert [d["betti"] for d in h["degrees"]] == [0, 0, 113]


def test_smith_normal_form():
    assert cosetcx.smith_normal_form([[2, 4], [6, 8]]) == [2, 4]
    assert cosetcx.smith_normal_form([[0, 0], [0, 0]]) == [0, 0]


def test_complex_from_facets():
    circle = cosetcx.SimplicialComplex([[0, 1], [1, 2], [0, 2]])
    assert circle == cosetcx.simplex_boundary(2)
    assert cosetcx.fundamental_group(circle)["abelianization"] == "Z"
    assert cosetcx.shelling_search(circle)["status"] == "Verified"
    assert cosetcx.connectivity(circle, 1)["status"] == "Refuted"


def test_coset_complex_of_s3():
    x = cosetcx.coset_complex(["(0 1)", "(0 1 2)"], 3, [["(0 1)"], ["(0 1 2)"]])
    assert x.f_vector == [5, 6]


def test_subspaces():
    assert len(cosetcx.enumerate_subspaces(3, 2, 1)) == 7
    assert len(cosetcx.enumerate_subspaces(4, 3, 2)) == 130


def test_errors_are_raised():
    with pytest.raises(cosetcx.CosetcxError):
        cosetcx.build("nonsense")
