"""Many-body Hamiltonian builders.

Covers the 1D XYZ chain, the centrosymmetric spin-exchange (CSSE) chain with
the full symmetric 3x3 coupling per bond, the graph Hamiltonian whose CSSE
bonds carry couplings J*(dn(r*q), 1, cn(r*q)) and whose SU(2) bonds are
isotropic, plus the rotated-frame form used for the local vanishing-condition
checks of the scar construction.
"""

from __future__ import annotations

import numpy as np
import scipy.sparse as sp

from .elliptic import CommensurateQ
from .frames import CsseCouplings
from .lattice import SU2, ScarGraph
from .spinops import (ManyBodyOperator, SiteAngles, SpinSystem, all_up,
                      basis_state, local_spin_matrices, product_rotation,
                      two_site)


def _bond_term(M: np.ndarray, n: int, m: int, system: SpinSystem) -> sp.csr_matrix:
    """sum_ab M[a,b] S^a_n S^b_m for one bond (M symmetric covers both orders)."""
    sx, sy, sz, _, _ = local_spin_matrices(system.S)
    ops = (sx, sy, sz)
    total = None
    for a in range(3):
        for b in range(3):
            if M[a, b] == 0.0:
                continue
            term = M[a, b] * two_site(ops[a], n, ops[b], m, system)
            total = term if total is None else total + term
    if total is None:
        total = sp.csr_matrix((system.total_dim, system.total_dim), dtype=complex)
    return total


def _chain_bonds(N: int, periodic: bool):
    bonds = [(n, n + 1) for n in range(N - 1)]
    if periodic and N > 2:
        bonds.append((N - 1, 0))
    elif periodic and N == 2:
        bonds = [(0, 1)]          # periodic two-site chain has a single bond
    return bonds


def build_xyz_chain(N: int, S: float, Jx: float, Jy: float, Jz: float,
                    periodic: bool = True) -> ManyBodyOperator:
    """H = sum_n Jx Sx_n Sx_{n+1} + Jy Sy_n Sy_{n+1} + Jz Sz_n Sz_{n+1}."""
    system = SpinSystem(S, N)
    M = np.diag([Jx, Jy, Jz]).astype(float)
    total = sp.csr_matrix((system.total_dim, system.total_dim), dtype=complex)
    for n, m in _chain_bonds(N, periodic):
        total = total + _bond_term(M, n, m, system)
    return ManyBodyOperator(system, total, hermitian=True)


def build_csse_chain(N: int, S: float, c: CsseCouplings,
                     periodic: bool = True) -> ManyBodyOperator:
    """Chain with the full symmetric 3x3 exchange matrix on every bond."""
    system = SpinSystem(S, N)
    M = c.matrix()
    total = sp.csr_matrix((system.total_dim, system.total_dim), dtype=complex)
    for n, m in _chain_bonds(N, periodic):
        total = total + _bond_term(M, n, m, system)
    return ManyBodyOperator(system, total, hermitian=True)


def build_on_graph(g: ScarGraph, S: float, q: CommensurateQ) -> ManyBodyOperator:
    """Graph Hamiltonian: CSSE bonds J*(dn(r q) SxSx + SySy + cn(r q) SzSz),
    SU(2) bonds J * S_n . S_m; the r multiplier evaluates the elliptic factors
    at r*q on the exact rational tag."""
    from .elliptic import jacobi_fraction

    system = SpinSystem(S, g.num_vertices)
    total = sp.csr_matrix((system.total_dim, system.total_dim), dtype=complex)
    for e in g.edges:
        if e.kind == SU2:
            M = e.J * np.eye(3)
        else:
            _, cn, dn = jacobi_fraction(e.r * q.fraction, q.modulus)
            M = e.J * np.diag([dn, 1.0, cn])
        total = total + _bond_term(M, e.u, e.v, system)
    return ManyBodyOperator(system, total, hermitian=True)


def rotated_hamiltonian(H: ManyBodyOperator, angles: SiteAngles,
                        helicity: int = +1, dim_cap: int = 4096) -> ManyBodyOperator:
    """H' = U H U^dag with U the inverse of the coherent-state product rotation.

    U maps the product scar state with the given Bloch angles onto |up...up>,
    so when the angles are scar angles, H'|up...up> = E |up...up>.  Dense
    under the hood, hence the dimension cap.
    """
    phi = tuple(helicity * p for p in angles.phi)
    V = product_rotation(SiteAngles(angles.theta, phi), H.system, dim_cap=dim_cap)
    Vd = V.dagger()
    return ManyBodyOperator(H.system, (Vd.matrix @ H.matrix @ V.matrix).tocsr(),
                            hermitian=H.hermitian)


def vanishing_conditions(H_rot: ManyBodyOperator):
    """Per-site amplitudes that must vanish for the rotated scar to be an eigenstate.

    a2_n = <up| s+_n s+_{n+1} H' |up> (two-magnon creation amplitude) and
    a1_n = <up| s+_n H' |up> (single-magnon amplitude), both with periodic
    site indexing.  Evaluated as overlaps of single basis vectors with H'|up>,
    so no operator products are formed.
    """
    system = H_rot.system
    N = system.N
    S = system.S
    w = H_rot.matrix @ all_up(system).amplitudes
    a2 = np.zeros(N, dtype=complex)
    a1 = np.zeros(N, dtype=complex)
    lowered = 2.0 * S                      # <S,S-1|S-|S,S> squared
    for n in range(N):
        idx1 = [0] * N
        idx1[n] = 1
        a1[n] = np.sqrt(lowered) * np.vdot(basis_state(system, idx1).amplitudes, w)
        idx2 = [0] * N
        idx2[n] = 1
        idx2[(n + 1) % N] = 1
        a2[n] = lowered * np.vdot(basis_state(system, idx2).amplitudes, w)
    return a2, a1


def load_parameters(text: str) -> dict:
    """Parameters JSON {"S", "kappa", "p", "denominator", "J", "Jprime"}."""
    import json
    doc = json.loads(text)
    out = {"S": float(doc["S"]), "kappa": float(doc["kappa"]),
           "p": int(doc["p"]), "denominator": int(doc["denominator"]),
           "J": float(doc.get("J", 1.0)), "Jprime": float(doc.get("Jprime", 1.0))}
    return out
