"""Ladder algebra, deformed generators, and the generalized scar family."""

import math

import numpy as np

from scarlab.algebra import (degenerate_subspace, first_order_deformation,
                             generalized_family, lambda_op, perturbative_split,
                             reduced_resolvent_apply, standard_sga_witness,
                             subspace_deficit, tau, tau_double_prime)
from scarlab.elliptic import commensurate_q, jacobi_fraction
from scarlab.hamiltonian import build_xyz_chain
from scarlab.scar import gz_energy
from scarlab.spinops import SpinSystem, StateVector, all_up


def test_ladder_commutation_relations():
    for (N, S, p) in [(5, 0.5, 1), (4, 1.0, 1), (6, 0.5, 2)]:
        q0 = 2.0 * math.pi * p / N
        H = build_xyz_chain(N, S, 1.0, 1.0, math.cos(q0))
        t = tau(N, S, q0)
        lam = lambda_op(N, S, q0)
        comm = H.matrix @ t.matrix - t.matrix @ H.matrix
        assert np.abs((comm - lam.matrix).toarray()).max() <= 1e-12
        mutual = t.matrix @ lam.matrix - lam.matrix @ t.matrix
        assert np.abs(mutual.toarray()).max() <= 1e-12
        # Lambda annihilates the fully polarized state
        assert np.linalg.norm(lam.matrix @ all_up(SpinSystem(S, N)).amplitudes) == 0.0


def test_sga_witness_closes_on_tower():
    wit = standard_sga_witness(6, 1.0, 1)
    assert wit.omega == 0.0
    assert max(wit.commutator_residuals) <= 1e-10


def test_tau_double_prime_reduces_to_tau():
    for (N, S) in [(5, 0.5), (4, 1.0)]:
        q = commensurate_q(1, N, 0.0)
        q0 = 2.0 * math.pi / N
        diff = tau_double_prime(N, S, q).matrix - tau(N, S, q0).matrix
        assert np.abs(diff.toarray()).max() <= 1e-13


def tower_deficit(N, S, p, kappa):
    """Worst projection deficit of the deformed tower onto the ED subspace."""
    q = commensurate_q(p, N, kappa)
    sn, cn, dn = jacobi_fraction(q.fraction, q.modulus)
    H = build_xyz_chain(N, S, dn, 1.0, cn)
    basis = degenerate_subspace(H, gz_energy(N, S, q))
    system = SpinSystem(S, N)
    tpp = tau_double_prime(N, S, q)
    vec = all_up(system).amplitudes
    worst = 0.0
    for _ in range(int(round(2 * N * S))):
        vec = tpp.matrix @ vec
        psi = StateVector(system, vec / np.linalg.norm(vec))
        worst = max(worst, subspace_deficit(basis, psi))
    return worst


def test_deformed_tower_deficit_scaling():
    N, S, p = 5, 0.5, 1
    kappas = [0.1, 0.2, 0.4]
    defs = [tower_deficit(N, S, p, k) for k in kappas]
    assert defs[0] < defs[1] < defs[2]
    # first-order accuracy: deficit ~ kappa^4, slope >= 1.7 vs kappa^2
    x = np.log([k * k for k in kappas])
    y = np.log(defs)
    slope = np.polyfit(x, y, 1)[0]
    assert slope >= 1.7


def test_perturbative_split_remainder_order():
    N, S, p = 5, 0.5, 1
    q0 = 2.0 * math.pi * p / N
    h0, h1 = perturbative_split(N, S, q0)
    norms = []
    kappas = [0.05, 0.1, 0.2]
    for kappa in kappas:
        q = commensurate_q(p, N, kappa)
        sn, cn, dn = jacobi_fraction(q.fraction, q.modulus)
        H = build_xyz_chain(N, S, dn, 1.0, cn)
        rem = H.matrix - h0.matrix - kappa ** 2 * h1.matrix
        norms.append(np.abs(rem.toarray()).max())
    slope = np.polyfit(np.log(kappas), np.log(norms), 1)[0]
    assert slope >= 3.5   # remainder is O(kappa^4)


def test_reduced_resolvent_solves_off_kernel():
    N, S = 4, 0.5
    q0 = 2.0 * math.pi / N
    h0, _ = perturbative_split(N, S, q0)
    evals, evecs = np.linalg.eigh(h0.dense())
    E0 = evals[0]
    rng = np.random.default_rng(3)
    vec = rng.normal(size=h0.system.total_dim) + 0j
    out = reduced_resolvent_apply(h0, E0, vec)
    # (H0 - E0) out must equal vec with the degenerate subspace removed
    kernel = evecs[:, np.abs(evals - E0) <= 1e-8]
    vperp = vec - kernel @ (kernel.conj().T @ vec)
    assert np.linalg.norm(h0.dense() @ out - E0 * out - vperp) <= 1e-9
    assert np.linalg.norm(kernel.conj().T @ out) <= 1e-12


def test_first_order_deformation_improves_deficit():
    N, S, p, kappa = 5, 0.5, 1, 0.1
    q = commensurate_q(p, N, kappa)
    sn, cn, dn = jacobi_fraction(q.fraction, q.modulus)
    H = build_xyz_chain(N, S, dn, 1.0, cn)
    basis = degenerate_subspace(H, gz_energy(N, S, q))
    system = SpinSystem(S, N)
    t = tau(N, S, 2.0 * math.pi * p / N)
    vec = t.matrix @ (t.matrix @ all_up(system).amplitudes)
    psi0 = StateVector(system, vec / np.linalg.norm(vec))
    before = subspace_deficit(basis, psi0)
    after = subspace_deficit(basis, first_order_deformation(N, S, p, kappa, psi0))
    assert after < 1e-2 * before


def test_generalized_family_shares_energy():
    states, basis, verdict = generalized_family(
        6, 0.5, 1, 0.6, +1, gammas=np.linspace(-0.8, 0.8, 9))
    assert verdict.max_energy_spread <= 1e-10
    assert verdict.max_residual <= 1e-10
    assert 1 <= verdict.rank <= int(round(4 * 6 * 0.5))
    assert len(states) == 9
