import numpy as np
import pytest

from discrim import channels as ch
from discrim import classical as cl
from discrim import linalg as la
from discrim import sdp
from discrim.errors import ConvergenceError, ShapeError

from conftest import random_channel, random_unit_vector

TOL = 1e-6


def unitary_channel(u):
    return ch.KrausChannel((np.asarray(u, dtype=complex),))


def embed_classical(m):
    """Stochastic matrix as a measure-and-prepare channel."""
    a = m.to_array().astype(float)
    ops = []
    for j in range(a.shape[0]):
        for k in range(a.shape[1]):
            if a[j, k] > 0:
                op = np.zeros(a.shape, dtype=complex)
                op[j, k] = np.sqrt(a[j, k])
                ops.append(op)
    return ch.KrausChannel(tuple(ops))


def test_phi0_phi1_single_use():
    res = sdp.diamond_norm_distance(ch.phi0(), ch.phi1(), TOL)
    assert abs(res.value - (1 + 1 / np.sqrt(2))) < 1e-4
    assert 0 <= res.gap <= TOL
    assert res.value <= res.dual_bound


def test_identical_channels_have_zero_distance():
    res = sdp.diamond_norm_distance(ch.phi0(), ch.phi0(), TOL)
    assert abs(res.value) <= TOL and res.dual_bound <= TOL


@pytest.mark.parametrize("theta", [0.3, 1.0, 2.0, np.pi])
def test_phase_rotation_closed_form(theta):
    res = sdp.diamond_norm_distance(ch.identity_channel(2),
                                    unitary_channel(np.diag([1, np.exp(1j * theta)])), TOL)
    assert abs(res.value - 2 * np.sin(theta / 2)) < 1e-5


def test_identity_vs_completely_depolarizing():
    # 2(1 - 1/d^2) needs an entangled input
    dep = ch.constant_channel(np.eye(2) / 2, 2)
    res = sdp.diamond_norm_distance(ch.identity_channel(2), dep, TOL)
    assert abs(res.value - 1.5) < 1e-5
    # without ancilla the best is 1
    assert la.trace_norm(la.projector(la.ket("0")) - np.eye(2) / 2) == pytest.approx(1)


@pytest.mark.parametrize("example", [cl.example1, cl.example2, cl.example3])
def test_classical_embedding_matches_one_shot(example):
    m0, m1 = example()
    res = sdp.diamond_norm_distance(embed_classical(m0), embed_classical(m1), TOL)
    assert abs(res.success_probability - float(cl.one_shot_optimum(m0, m1).value)) < 1e-5


def test_sandwich_on_random_pairs(rng):
    # property: 200 random pairs, certified lower <= upper with gap <= tol
    for _ in range(200):
        din, dout = (int(x) for x in rng.integers(1, 4, size=2))
        a, b = random_channel(rng, din, dout), random_channel(rng, din, dout)
        res = sdp.diamond_norm_distance(a, b, TOL)
        assert res.value <= res.dual_bound + 1e-12
        assert res.gap <= TOL
        assert -1e-9 <= res.value <= 2 + 1e-9


def test_ancilla_inputs_never_beat_the_sdp(rng):
    # property: 40 pairs x 5 random entangled inputs = 200 cases
    for _ in range(40):
        din, dout = (int(x) for x in rng.integers(1, 4, size=2))
        a, b = random_channel(rng, din, dout), random_channel(rng, din, dout)
        res = sdp.diamond_norm_distance(a, b, TOL)
        for _ in range(5):
            w = int(rng.integers(1, din + 1))
            psi = la.projector(random_unit_vector(rng, din * w))
            seen = la.trace_norm(ch.apply_extended(a, psi, w) - ch.apply_extended(b, psi, w))
            assert seen <= res.dual_bound + 1e-9


def test_witness_is_feasible_and_scores_the_value(rng):
    for _ in range(30):
        din, dout = (int(x) for x in rng.integers(1, 4, size=2))
        a, b = random_channel(rng, din, dout), random_channel(rng, din, dout)
        res = sdp.diamond_norm_distance(a, b, TOL)
        rho, w = res.witness_rho, res.witness_w
        assert abs(np.trace(rho) - 1) < 1e-9 and la.min_eigenvalue(rho) > -1e-9
        assert la.min_eigenvalue(w) > -1e-9
        assert la.min_eigenvalue(np.kron(np.eye(dout), rho) - w) > -1e-9
        jdiff = ch.choi(a) - ch.choi(b)
        assert abs(2 * np.real(np.vdot(jdiff, w)) - res.value) < 1e-9


def test_dual_certificate_is_feasible(rng):
    for _ in range(30):
        din, dout = (int(x) for x in rng.integers(1, 4, size=2))
        a, b = random_channel(rng, din, dout), random_channel(rng, din, dout)
        res = sdp.diamond_norm_distance(a, b, TOL)
        jdiff = ch.choi(a) - ch.choi(b)
        assert sdp.certified_dual_bound(jdiff, res.dual_y, dout, din) == pytest.approx(
            res.dual_bound, abs=1e-12)


def test_purified_witness_attains_value(rng):
    for _ in range(30):
        din, dout = (int(x) for x in rng.integers(1, 4, size=2))
        a, b = random_channel(rng, din, dout), random_channel(rng, din, dout)
        res = sdp.diamond_norm_distance(a, b, TOL)
        psi = la.projector(sdp.purified_input(res.witness_rho))
        seen = la.trace_norm(ch.apply_extended(a, psi, din) - ch.apply_extended(b, psi, din))
        assert abs(seen - res.value) < 1e-8


def test_phi_witness_attains_value():
    res = sdp.diamond_norm_distance(ch.phi0(), ch.phi1(), TOL)
    psi = la.projector(sdp.purified_input(res.witness_rho))
    a, b = ch.phi0(), ch.phi1()
    seen = la.trace_norm(ch.apply_extended(a, psi, 4) - ch.apply_extended(b, psi, 4))
    assert abs(seen - res.value) < 1e-8


def test_best_w_value_is_nonnegative(rng):
    a, b = random_channel(rng, 2, 2), random_channel(rng, 2, 2)
    value, _ = sdp.best_w_for_input(ch.choi(a) - ch.choi(b), np.eye(2) / 2, 2)
    assert value >= 0


def test_iteration_budget_raises_with_bounds():
    with pytest.raises(ConvergenceError) as info:
        sdp.diamond_norm_distance(ch.phi0(), ch.phi1(), 1e-6, max_iter=3)
    exc = info.value
    assert exc.lower <= 1 + 1 / np.sqrt(2) + 1e-9 <= exc.upper + 2e-9


def test_dimension_mismatch_rejected():
    with pytest.raises(ShapeError):
        sdp.diamond_norm_distance(ch.identity_channel(2), ch.identity_channel(3))


def test_nonpositive_tolerance_rejected():
    with pytest.raises(ValueError):
        sdp.diamond_norm_distance(ch.identity_channel(2), ch.identity_channel(2), 0)
