import math

import numpy as np
import pytest

import spdmlab


def test_ring_spectrum():
    evals, vecs = spdmlab.hermitian_eig(spdmlab.ring_hamiltonian(4))
    assert np.allclose(evals, [-2.0, 0.0, 0.0, 2.0], atol=1e-13)
    assert np.allclose(vecs.conj().T @ vecs, np.eye(4), atol=1e-12)


def test_propagator_is_unitary():
    m = spdmlab.ring_hamiltonian(5, hopping=0.7)
    u = spdmlab.propagator(m, 0.3)
    assert np.allclose(u @ u.conj().T, np.eye(5), atol=1e-13)


def test_single_mode_relaxation():
    times, snaps = spdmlab.integrate(
        np.zeros((1, 1), complex), [1.0], [0.5], np.zeros((1, 1), complex),
        dt=1e-3, t_final=1.0, sample_every=1000)
    assert times[-1] == pytest.approx(1.0)
    assert snaps[-1][0, 0].real == pytest.approx(0.5 * (1 - math.exp(-1.0)), abs=1e-8)


def test_projection_clips():
    v = spdmlab.project_physical(np.array([[0.0, 0.1], [0.1, 1.0]], complex))
    assert np.all(np.linalg.eigvalsh(v) >= -1e-14)
    assert np.all(np.linalg.eigvalsh(v) <= 1 + 1e-14)


def test_two_site_steady_state():
    p = spdmlab.TwoSiteParams()
    v = spdmlab.steady_affine(p.hamiltonian(), [p.gamma1, p.gamma2], [p.f1, p.f2])
    assert v[0, 0].real == pytest.approx(14 / 43, abs=1e-13)
    n1, n2 = spdmlab.two_site_sweep_u(p, [0.0, 0.5], t_final=200.0)
    assert n1[0] == pytest.approx(14 / 43, abs=1e-9)
    assert n1[1] > n1[0] and n2[1] < n2[0]


def test_hartree_fixed_point_matches_trajectory():
    p = spdmlab.TwoSiteParams()
    p.u = 2.0
    u = np.array([[0.0, 2.0], [2.0, 0.0]])
    fp = spdmlab.steady_hartree(p.hamiltonian(), u, [0.5, 0.5], [0.2, 0.8])
    run = spdmlab.two_site_run(p, t_final=200.0)
    assert run["n1"][-1] == pytest.approx(fp["v"][0, 0].real, abs=1e-6)


def test_reset_map_and_stein():
    m = spdmlab.ring_hamiltonian(6)
    f_e = np.diag([0.2, 0.5, 0.7, 0.9]).astype(complex)
    a, b = spdmlab.subsystem_affine_map(m, 0.5, f_e, 2)
    fixed = spdmlab.steady_ri(a, b)
    assert np.allclose(a @ fixed @ a.conj().T + b, fixed, atol=1e-12)
    v0 = np.zeros((6, 6), complex)
    v0[2:, 2:] = f_e
    run = spdmlab.run_protocol(m, f_e, 2, v0, tau=0.5, n_strokes=10)
    assert len(run["n_s_avg"]) == 11


def test_exact_embedding():
    p = spdmlab.TwoSiteParams()
    v0 = np.array([[0.3, 0.1j], [-0.1j, 0.6]])
    dev = spdmlab.exact_embedding_deviation(p.hamiltonian(), [0.5, 0.5], [0.2, 0.8], v0, 2.0)
    assert dev < 1e-10


def test_errors_map_to_python_exceptions():
    with pytest.raises(spdmlab.DimensionError):
        spdmlab.propagator(np.zeros((2, 3), complex), 1.0)
    with pytest.raises(spdmlab.SingularError):
        spdmlab.steady_affine(spdmlab.ring_hamiltonian(2), [0.0, 0.0], [0.0, 0.0])
    with pytest.raises(spdmlab.ConfigError):
        spdmlab.integrate(np.zeros((1, 1), complex), [1.0], [0.5], np.zeros((1, 1), complex),
                          method="midpoint")
    assert issubclass(spdmlab.ConvergenceError, spdmlab.SpdmError)


def test_verify_suite_reports_every_check():
    results = spdmlab.verify()
    names = {r["name"] for r in results}
    assert "embedding_N2" in names
    assert all({"value", "bound", "pass"} <= set(r) for r in results)
