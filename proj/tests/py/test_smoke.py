"""Smoke tests of the python bindings: one call per exported operation."""

import json

import pytest

import escops


def test_dimension_counts_agree():
    assert escops.arnold_hilbert(2, 3) == [1, 3, 2]
    assert escops.oracle_dims(2, 3) == [1, 3, 2]
    assert escops.arnold_hilbert(3, 4) == escops.oracle_dims(3, 4)


def test_normal_form_and_products():
    assert escops.arnold_normal_form(2, 2, "w[2,1]") == "w[1,2]"
    assert escops.arnold_normal_form(3, 2, "w[2,1]") == "-w[1,2]"
    assert escops.arnold_multiply(2, 2, "w[1,2]", "w[1,2]") == "0"
    # three-term relation rewrites the inadmissible product
    assert (
        escops.arnold_multiply(2, 3, "w[1,2]", "w[1,3]")
        == "w[1,2]*w[2,3] - w[1,3]*w[2,3]"
    )


def test_mixed_component_dimensions():
    assert escops.esc_hilbert(1, 2, 1, 1) == [1, 1]
    assert escops.esc_hilbert(1, 2, 1, 2) == [2, 4]
    labels = escops.esc_basis(1, 2, 1, 1)
    assert len(labels) == 2 and labels[0] == "1⊗p[1]"


def test_collapse_certificate():
    rep = escops.em_collapse(1, 2, 1, 2, bound=6)
    assert rep["pass"] and rep["higher_total"] == 0
    assert rep["tor0"][0] == 2 and rep["tor0"][1] == 4
    assert sum(rep["tor0"].values()) == 6


def test_verify_reports_are_json():
    rep = json.loads(escops.verify_arnold(2, 3, seed=5, samples=25))
    assert rep["schema"] == "verify-report/1" and rep["pass"]
    rep = json.loads(escops.verify_colored(1, 2, bound=2, seed=5))
    assert rep["pass"]


def test_torsor_checks():
    rep = json.loads(escops.torsor_synth(1, 2, 3))
    assert rep["pass"]
    with pytest.raises(ValueError):
        escops.torsor_check("{}")
