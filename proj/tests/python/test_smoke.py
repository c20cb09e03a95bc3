import math

import numpy as np
import pytest
import scipy.special as sp

import plasmon


def test_bessel_against_scipy():
    for n in range(6):
        for z in (0.3, 2.5, 11.0):
            j, h = plasmon.bessel_pair(n, z)
            assert j.real == pytest.approx(sp.spherical_jn(n, z), rel=1e-12)
            assert h.imag == pytest.approx(sp.spherical_yn(n, z), rel=1e-12)


def test_frohlich_root():
    mat = plasmon.Material(plasmon.DrudeParams(1.0, 1.0, 0.0))
    r = plasmon.find_resonance("eps+", 1, mat, 0.01)
    assert r.found
    assert abs(r.omega_star - 1 / math.sqrt(3)) < 1e-8


def test_corrected_resonance_red_shift():
    mat = plasmon.Material(plasmon.DrudeParams(1.0, 1.0, 0.05))
    q = plasmon.find_resonance("eps+", 1, mat, 0.5, "quasistatic")
    c = plasmon.find_resonance("eps+", 1, mat, 0.5, "corrected")
    assert c.omega_star < q.omega_star
    assert c.order == "corrected"


def test_extinction_zero_contrast_and_positive():
    assert plasmon.extinction(0.5, plasmon.MediumPair(1.0, 1.0, 1.0, 1.0), 1.0) == 0.0
    md = plasmon.MediumPair(1.0, 1.0, complex(-2.0, 0.3), 1.0)
    assert plasmon.extinction(0.1, md, 1.0) > 0.0


def test_w0_eigenvalues_are_family_values():
    md = plasmon.MediumPair(1.0, 1.0, complex(-2.5, 0.3), complex(2.0, 0.1))
    w0, w1, w2 = plasmon.w_blocks(1, 0.7, md)
    assert w0.shape == (4, 4)
    ev = np.linalg.eigvals(w0)
    for e in plasmon.eigen_expansions(1, 0.7, md):
        assert np.min(np.abs(ev - e["tau0"])) < 1e-12


def test_maxwell_garnett_clausius_mossotti():
    em, ec, f = 1.3, complex(-4.0, 0.5), 0.05
    beta = (ec - em) / (ec + 2 * em)
    t = plasmon.mg_effective_ball(em, ec, f)
    cm = em * (1 + 3 * f * beta / (1 - f * beta))
    assert abs(t["gamma_star"][0, 0] - cm) < 1e-12 * abs(cm)


def test_shell_and_aniso_and_ewald():
    assert plasmon.shell_np_eigenvalue(1, 0.5) == pytest.approx(math.sqrt(2) / 6, abs=1e-12)
    q = plasmon.q1_correction(complex(-2.0, 0.1), 0.5 * np.eye(3), 2, 1)
    assert abs(q - complex(-2.0, 0.1) * 0.5 * (0.5 - 0.1)) < 1e-10
    x = np.array([0.1, -0.05, 0.2])
    assert plasmon.periodic_regular_part(x) == pytest.approx(plasmon.periodic_regular_part(-x), abs=1e-13)


def test_errors_raise():
    with pytest.raises(plasmon.PlasmonError):
        plasmon.bessel_pair(2, 0.0)
    with pytest.raises(ValueError):
        plasmon.mg_effective_ball(1.0, 2.0, 1.5)


def test_selftest_and_cli(tmp_path):
    assert all(ok for _, ok, _ in plasmon.selftest())
    assert plasmon.run_cli(["resonance", "--order", "quasistatic", "--out", str(tmp_path)]) == 0
    assert (tmp_path / "resonance.json").exists()
    assert plasmon.run_cli(["spectrum", "--format", "xml"]) == 2
