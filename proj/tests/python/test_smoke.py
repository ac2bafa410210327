import numpy as np
import pytest

import holoverify as hv


def rot(theta):
    return np.array([[np.cos(theta), -np.sin(theta)],
                     [np.sin(theta), np.cos(theta)]])


def test_cone_predicates():
    assert hv.in_right_cone(1 + 0.05j, 0.1)
    assert not hv.in_right_cone(1 + 0.2j, 0.1)
    assert hv.right_cone_margin(1 + 0.05j, 0.1) == pytest.approx(0.05)
    b = np.eye(2, dtype=complex)
    assert hv.in_symmetric_cone(b, 0.1)
    assert hv.quadratic_form_witness(b, 0.1) is None
    bad = np.eye(2, dtype=complex) + 0.2j * np.eye(2)
    w = hv.quadratic_form_witness(bad, 0.1)
    assert w is not None
    assert w["violated_cone"]


def test_principal_sqrt_and_polar():
    b = np.diag([4.0, 9.0]).astype(complex)
    rep = hv.principal_sqrt(b)
    assert np.allclose(rep.S, np.diag([2.0, 3.0]))
    assert rep.residual < 1e-12

    spec = hv.parse_group("sl:3")
    ts = hv.sample_tube(spec, 0.05, 0.5, 11)
    assert np.linalg.norm(ts.h - ts.g @ ts.p) < 1e-13
    pf = hv.complex_polar(ts.h)
    assert np.linalg.norm(pf.S @ pf.Q - ts.h) < 1e-9
    assert pf.residual_orth < 1e-10

    with pytest.raises(hv.DomainError):
        hv.principal_sqrt(np.array([[-4.0, 0.0], [0.0, 1.0]], dtype=complex))


def test_group_sampling_and_polar_closure():
    spec = hv.parse_group("sp:4")
    assert spec.dim() == 10
    g = hv.sample_group(spec, 0.5, 7)
    assert hv.defining_residual(spec, g.astype(complex)) < 1e-9
    gp = hv.group_polar(spec, g)
    assert max(gp.p_residual, gp.k_residual) < 1e-9
    assert np.linalg.norm(gp.p_factor @ gp.k_factor - g) < 1e-9

    with pytest.raises(hv.InvalidInputError):
        hv.parse_group("xx:3")
    with pytest.raises(hv.UnsupportedSizeError):
        hv.parse_group("sl:17")


def test_siegel_action():
    spec = hv.parse_group("so:3")
    z1, z2, resamples = hv.sample_generic_point(spec, 404)
    assert resamples <= 10
    tr = hv.tangent_map_rank(spec, z1, z2)
    assert tr.kernel_dim == 0
    assert hv.totally_real_defect(spec, z1, z2) == 0
    eye = np.eye(3, dtype=complex)
    tr0 = hv.tangent_map_rank(spec, eye, eye)
    assert tr0.kernel_dim == spec.dim()


def test_covering_and_snf():
    loop = [rot(2.0 * np.pi * j / 65) for j in range(65)]
    assert hv.winding_number(loop) == 1
    e = hv.make_cover_element(rot(0.4), 0.4)
    e2 = hv.cover_multiply(e, e)
    assert e2.x == pytest.approx(0.8, abs=1e-9)

    m = np.array([[2, 4], [6, 8]], dtype=np.int64)
    snf = hv.smith_normal_form(m)
    assert (snf.U @ m @ snf.V == snf.D).all()
    assert snf.D[0, 0] == 2 and snf.D[1, 1] == 4
    assert abs(hv.integer_det(snf.U)) == 1
    split = hv.split_abelian(m)
    assert split.torsion_invariants == [2, 4]
    assert split.free_rank == 0


def test_harness_reports():
    rep = hv.run_suite(suite="cones", trials=4, deltas=[0.02], seed=3)
    assert rep["schema"] == 1
    assert rep["mode"] == "verify"
    assert rep["failures_total"] == 0

    cex = hv.find_counterexample("B2-not-psd", deltas=[0.1], budget=50, seed=5)
    assert cex["found"] is True
    assert cex["witness"]["source"] == "targeted-family"
    assert "B2-not-psd" in hv.counterexample_claims()
