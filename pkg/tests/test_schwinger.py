"""Two-flavor boson realization of the helical scar subspace."""

import math

import numpy as np
import pytest

from scarlab.errors import SameSite, ScarlabError
from scarlab.schwinger import (DOWN, UP, FockBasis, annihilator_report,
                               bilinear, decomposition_check,
                               zeta_annihilation_residuals, zeta_states,
                               zeta_tower_fidelities)
from scarlab.spinops import SpinSystem, embed, local_spin_matrices


def test_constrained_basis_is_spin_space():
    for (N, S) in [(3, 0.5), (2, 1.0), (2, 1.5)]:
        basis = FockBasis(N, S)
        system = SpinSystem(S, N)
        assert basis.dim == system.total_dim
        U = basis.spin_isometry()
        assert np.abs(U.T @ U - np.eye(basis.dim)).max() <= 1e-15


def test_spin_raising_maps_to_boson_hop():
    # S+_n on spins = c+_{n,up} c_{n,down} on the constrained Fock space
    N, S = 3, 1.0
    basis = FockBasis(N, S)
    system = SpinSystem(S, N)
    U = basis.spin_isometry()
    _, _, _, sp_, _ = local_spin_matrices(S)
    for n in range(N):
        spin_side = embed(sp_, n, system).matrix.toarray()
        boson_side = basis.monomial([(n, UP, True), (n, DOWN, False)]).toarray()
        assert np.abs(U @ boson_side @ U.T - spin_side).max() <= 1e-13


def test_monomial_respects_boson_statistics():
    basis = FockBasis(2, 1.0)
    # c+ c on the same mode must count the occupation
    num_up = basis.monomial([(0, UP, True), (0, UP, False)]).toarray()
    counts = [occ[0][0] for occ in basis.states]
    assert np.allclose(num_up, np.diag(counts), atol=1e-14)


def test_hardcore_projects_full_site_creation():
    basis = FockBasis(2, 0.5, mode="hardcore")
    vac = basis.vacuum_product()   # every site full with 2S down bosons
    created = basis.monomial([(0, DOWN, True)]) @ vac
    assert np.linalg.norm(created) == 0.0


@pytest.mark.parametrize("N,S,p", [(3, 0.5, 1), (4, 0.5, 1), (4, 1.0, 1), (5, 1.0, 2)])
def test_zeta_states_equal_rotated_tower(N, S, p):
    fids = zeta_tower_fidelities(N, S, p)
    assert max(abs(1.0 - f) for f in fids) <= 1e-12


@pytest.mark.parametrize("N,S", [(3, 0.5), (4, 0.5), (3, 1.0)])
def test_annihilation_chains(N, S):
    rep = annihilator_report(N, S)
    assert rep["zeta"] <= 1e-12
    assert rep["eta"] <= 1e-12
    assert rep["epsilon"] <= 1e-12
    # a bare pair annihilator is not in the commutant: O(1) failure
    assert rep["generic"] > 1e-1


def test_zeta_annihilation_direct():
    res = zeta_annihilation_residuals(4, 0.5)
    assert max(res.values()) <= 1e-12


def test_symmetric_pair_combination_fails():
    # the flavor-symmetric pair annihilator does not kill the zeta-states
    N, S = 3, 0.5
    hc = FockBasis(N, S, mode="hardcore")
    _, zstates = zeta_states(N, S, basis=hc)
    sym = (hc.monomial([(0, UP, False), (1, DOWN, False)])
           + hc.monomial([(0, DOWN, False), (1, UP, False)]))
    worst = max(float(np.linalg.norm(sym @ z)) for z in zstates)
    assert worst > 1e-1


@pytest.mark.parametrize("N,S", [(3, 0.5), (4, 0.5), (3, 1.0)])
def test_decomposition_equals_rotated_chain(N, S):
    q0 = 2.0 * math.pi / N
    assert decomposition_check(N, S, q0) <= 1e-12


def test_identity_bond_sum():
    # (zeta_nm zeta_mn + eta+_nm eta_mn) / 4 = S_n . S_m + S/2 on the
    # constrained space, the scalar part of the decomposition
    N, S = 3, 0.5
    con = FockBasis(N, S)
    enl = FockBasis(N, S, mode="enlarged")
    E = con.embed_into(enl)
    U = con.spin_isometry()
    system = SpinSystem(S, N)
    sx, sy, sz, _, _ = local_spin_matrices(S)
    from scarlab.spinops import two_site
    n, m = 0, 1
    boson = (bilinear(enl, "zeta", n, m) @ bilinear(enl, "zeta", m, n)
             + bilinear(enl, "eta", n, m).conj().T @ bilinear(enl, "eta", m, n))
    lhs = U @ (E.T @ (boson / 4.0) @ E).toarray() @ U.T
    rhs = (two_site(sx, n, sx, m, system) + two_site(sy, n, sy, m, system)
           + two_site(sz, n, sz, m, system)).toarray() + 0.5 * S * np.eye(8)
    assert np.abs(lhs - rhs).max() <= 1e-13


def test_guards():
    with pytest.raises(SameSite):
        bilinear(FockBasis(2, 0.5), "zeta", 1, 1)
    with pytest.raises(ScarlabError):
        bilinear(FockBasis(2, 0.5), "bogus", 0, 1)
    with pytest.raises(ScarlabError):
        FockBasis(2, 0.5, mode="bogus")
    with pytest.raises(ScarlabError):
        FockBasis(2, 0.5, mode="hardcore").spin_isometry()
