"""Schwinger-boson realization of the helical scar subspace.

Each spin-S site carries two boson flavors; on the physical (constrained)
space every site holds exactly n_up + n_down = 2S bosons, and under the
bijection l_n = n_down that space is isometric to the spin product basis with
S+_n = c+_{n,up} c_{n,down} mapping exactly.  The zeta-states tau'^m |down..>
reproduce the helical tower in a site-dependently rotated frame, the hopping
and pairing bilinears annihilate all of them, and the rotated XXZ chain
equals a group-theoretical assembly H0 + sum_a O_a T_a of those bilinears.

Three basis modes:
  constrained - per-site total exactly 2S (the physical space);
  hardcore    - per-site total at most 2S, global total within 2 of 2SN;
                the home of the annihilation-chain checks, where creation on
                a full site projects to zero;
  enlarged    - per-site total at most 2S+2, global total within 2 of 2SN;
                large enough to hold every intermediate of a product of two
                bilinears, used for the Hamiltonian assembly.

Operators are applied as boson monomials (amplitude sqrt factors from the
occupations, projection onto the basis only at the final state), so the
hard-core truncation never corrupts intermediate states.
"""

from __future__ import annotations

import math
from itertools import product as iter_product

import numpy as np
import scipy.sparse as sp

from .errors import DimensionMismatch, SameSite, ScarlabError
from .spinops import SpinSystem, basis_state

UP, DOWN = 0, 1
_MODES = ("constrained", "hardcore", "enlarged")
_KINDS = ("zeta", "eta", "epsilon", "O1", "O2")


class FockBasis:
    """Two-flavor boson occupation basis in one of the three modes."""

    def __init__(self, N: int, S: float, mode: str = "constrained"):
        two_s = int(round(2 * S))
        if abs(2 * S - two_s) > 1e-12:
            raise ScarlabError(f"S must be a half-integer, got {S}")
        if mode not in _MODES:
            raise ScarlabError(f"unknown basis mode {mode!r}")
        self.N = N
        self.S = S
        self.mode = mode
        if mode == "constrained":
            site_cap, slack = two_s, 0
        elif mode == "hardcore":
            site_cap, slack = two_s, 2
        else:
            site_cap, slack = two_s + 2, 2
        site_occ = [(u, t - u) for t in range(site_cap + 1) for u in range(t + 1)]
        lo, hi = two_s * N - slack, two_s * N + slack
        states = []
        for combo in iter_product(site_occ, repeat=N):
            tot = sum(u + d for u, d in combo)
            if lo <= tot <= hi:
                states.append(combo)
        self.states = states
        self.index = {s: i for i, s in enumerate(states)}

    @property
    def dim(self) -> int:
        return len(self.states)

    def monomial(self, ops) -> sp.csr_matrix:
        """Normal boson action of a product of c / c+ factors.

        ops is a sequence of (site, flavor, dagger) applied right to left.
        Amplitudes are the exact sqrt(n) boson factors; only the final state
        is checked against the basis, which implements the projection P o P
        without truncating intermediates.
        """
        rows, cols, vals = [], [], []
        for j, occ in enumerate(self.states):
            amp = 1.0
            work = [list(site) for site in occ]
            dead = False
            for site, flavor, dagger in reversed(list(ops)):
                cnt = work[site][flavor]
                if dagger:
                    amp *= math.sqrt(cnt + 1)
                    work[site][flavor] = cnt + 1
                else:
                    if cnt == 0:
                        dead = True
                        break
                    amp *= math.sqrt(cnt)
                    work[site][flavor] = cnt - 1
            if dead:
                continue
            i = self.index.get(tuple(tuple(site) for site in work))
            if i is None:
                continue
            rows.append(i)
            cols.append(j)
            vals.append(amp)
        return sp.csr_matrix((vals, (rows, cols)), shape=(self.dim, self.dim))

    def vacuum_product(self) -> np.ndarray:
        """|down...down>: every site filled with 2S down bosons."""
        two_s = int(round(2 * self.S))
        occ = tuple((0, two_s) for _ in range(self.N))
        vec = np.zeros(self.dim, dtype=complex)
        vec[self.index[occ]] = 1.0
        return vec

    def spin_isometry(self) -> np.ndarray:
        """Columns: constrained Fock states as spin product-basis vectors.

        The spin module indexes local states by the number of lowerings from
        Sz = +S, which equals n_down, so the map is a permutation of labels.
        """
        if self.mode != "constrained":
            raise ScarlabError("spin bijection is defined on the constrained basis")
        system = SpinSystem(self.S, self.N)
        if system.total_dim != self.dim:
            raise DimensionMismatch("constrained basis size != spin dimension")
        U = np.zeros((system.total_dim, self.dim))
        for j, occ in enumerate(self.states):
            idx = [d for _, d in occ]
            U[:, j] = basis_state(system, idx).amplitudes.real
        return U

    def embed_into(self, other: "FockBasis") -> sp.csr_matrix:
        """Inclusion matrix of this basis's states inside a larger basis."""
        rows = [other.index[occ] for occ in self.states]
        return sp.csr_matrix((np.ones(self.dim), (rows, range(self.dim))),
                             shape=(other.dim, self.dim))


def bilinear(basis: FockBasis, kind: str, m: int, n: int) -> sp.csr_matrix:
    """Two-site boson bilinears of the group-theoretical decomposition.

    zeta    = c+_{m,up} c_{n,up} + c+_{m,down} c_{n,down}   (flavor-blind hop)
    eta     = c_{m,up} c_{n,down} - c_{m,down} c_{n,up}     (pair annihilation)
    epsilon = c+_{m,up} c_{n,down} - c+_{m,down} c_{n,up}
    O1      = c+_{m,up} c_{n,up} - c_{m,down} c_{n,down}
    O2      = c+_{m,up} c_{n,down} + c+_{m,down} c_{n,up}

    The pair annihilator carries the antisymmetric flavor combination: the
    symmetric one does not annihilate the flavor-symmetric zeta-states.
    """
    if m == n:
        raise SameSite(f"bilinear requires two distinct sites, got {m}")
    if kind not in _KINDS:
        raise ScarlabError(f"unknown bilinear kind {kind!r}")
    if kind == "zeta":
        return (basis.monomial([(m, UP, True), (n, UP, False)])
                + basis.monomial([(m, DOWN, True), (n, DOWN, False)]))
    if kind == "eta":
        return (basis.monomial([(m, UP, False), (n, DOWN, False)])
                - basis.monomial([(m, DOWN, False), (n, UP, False)]))
    if kind == "epsilon":
        return (basis.monomial([(m, UP, True), (n, DOWN, False)])
                - basis.monomial([(m, DOWN, True), (n, UP, False)]))
    if kind == "O1":
        return (basis.monomial([(m, UP, True), (n, UP, False)])
                - basis.monomial([(m, DOWN, False), (n, DOWN, False)]))
    return (basis.monomial([(m, UP, True), (n, DOWN, False)])
            + basis.monomial([(m, DOWN, True), (n, UP, False)]))


def tau_prime(basis: FockBasis) -> sp.csr_matrix:
    """Raising generator sum_n c+_{n,up} c_{n,down}; preserves the constraint."""
    total = sp.csr_matrix((basis.dim, basis.dim))
    for n in range(basis.N):
        total = total + basis.monomial([(n, UP, True), (n, DOWN, False)])
    return total.tocsr()


def zeta_states(N: int, S: float, basis: FockBasis | None = None) -> tuple:
    """Normalized tau'^m |down...down>, m = 0..2NS."""
    if basis is None:
        basis = FockBasis(N, S)
    tp = tau_prime(basis)
    vec = basis.vacuum_product()
    states = [vec]
    for _ in range(int(round(2 * N * S))):
        vec = tp @ vec
        states.append(vec / np.linalg.norm(vec))
    return basis, states


def rotated_tower_states(N: int, S: float, p: int) -> list:
    """Helical tower mapped by the frame rotation prod_n exp(i (n+1) q0 Sz_n).

    In this frame the helical phases cancel, so state m becomes the uniform
    spin-wave state (sum_n S-_n)^m |up...up>, matching zeta-state 2NS - m
    under the Fock-spin bijection up to a global phase.
    """
    from .scar import helical_tower
    from .spinops import embed, local_spin_matrices
    system = SpinSystem(S, N)
    q0 = 2.0 * math.pi * p / N
    _, _, sz, _, _ = local_spin_matrices(S)
    rot = sp.identity(system.total_dim, dtype=complex, format="csr")
    for n in range(N):
        zn = embed(sz, n, system).matrix
        phase = sp.diags(np.exp(1j * (n + 1) * q0 * zn.diagonal()))
        rot = (rot @ phase).tocsr()
    tower = helical_tower(N, S, +1, p)
    return [rot @ st.amplitudes for st in tower.states]


def zeta_tower_fidelities(N: int, S: float, p: int) -> list:
    """|<m_zeta | rotated tower state 2NS-m>| for every m (should all be 1)."""
    basis, zstates = zeta_states(N, S)
    U = basis.spin_isometry()
    rotated = rotated_tower_states(N, S, p)
    M = len(zstates) - 1
    fids = []
    for m, zv in enumerate(zstates):
        spin_vec = U @ zv
        fids.append(float(abs(np.vdot(spin_vec, rotated[M - m]))))
    return fids


def annihilation_chain_check(op: sp.spmatrix, tp: sp.spmatrix,
                             vacuum: np.ndarray, depth: int) -> float:
    """max_k ||ad_{tau'}^k(op) |vac>|| for k = 0..depth.

    Vanishing of the whole chain is equivalent to op annihilating every
    zeta-state.
    """
    cur = op.copy()
    worst = float(np.linalg.norm(cur @ vacuum))
    for _ in range(depth):
        cur = (cur @ tp - tp @ cur).tocsr()
        worst = max(worst, float(np.linalg.norm(cur @ vacuum)))
    return worst


def annihilator_report(N: int, S: float) -> dict:
    """Chain residuals for zeta, eta, epsilon plus a generic control bilinear.

    Evaluated on the hardcore basis, where creation on a full site projects
    to zero.  The control is the bare pair annihilator c_{0,up} c_{1,down},
    which lowers site totals (so it survives the hard-core projection) but
    does not annihilate the zeta-states; its chain residual must be O(1).
    """
    basis = FockBasis(N, S, mode="hardcore")
    tp = tau_prime(basis)
    vac = basis.vacuum_product()
    depth = int(round(2 * N * S)) + 1
    out = {}
    for kind in ("zeta", "eta", "epsilon"):
        out[kind] = annihilation_chain_check(bilinear(basis, kind, 0, 1), tp, vac, depth)
    generic = basis.monomial([(0, UP, False), (1, DOWN, False)])
    out["generic"] = annihilation_chain_check(generic, tp, vac, depth)
    return out


def zeta_annihilation_residuals(N: int, S: float) -> dict:
    """max_m ||op |m_zeta>|| per operator kind, on the hardcore basis."""
    hc = FockBasis(N, S, mode="hardcore")
    _, zstates = zeta_states(N, S, basis=hc)
    out = {}
    for kind in ("zeta", "eta", "epsilon"):
        op = bilinear(hc, kind, 0, 1)
        out[kind] = max(float(np.linalg.norm(op @ z)) for z in zstates)
    return out


def _rotated_spin_hamiltonian(N: int, S: float, q0: float, Jx: float) -> sp.csr_matrix:
    """Jx cos(q0) sum S.S - Jx sin(q0) sum (Sx_n Sy_{n+1} - Sy_n Sx_{n+1})."""
    from .hamiltonian import _chain_bonds
    from .spinops import local_spin_matrices, two_site
    system = SpinSystem(S, N)
    sx, sy, sz, _, _ = local_spin_matrices(S)
    total = sp.csr_matrix((system.total_dim, system.total_dim), dtype=complex)
    for n, m in _chain_bonds(N, periodic=True):
        heis = (two_site(sx, n, sx, m, system) + two_site(sy, n, sy, m, system)
                + two_site(sz, n, sz, m, system))
        dm_z = two_site(sx, n, sy, m, system) - two_site(sy, n, sx, m, system)
        total = total + Jx * math.cos(q0) * heis - Jx * math.sin(q0) * dm_z
    return total.tocsr()


def decomposition_check(N: int, S: float, q0: float, Jx: float = 1.0) -> float:
    """Entrywise deviation between the rotated spin chain and its bilinear form.

    The bilinear side is the constant -N Jx S cos(q0)/2, the hopping/pairing
    block (Jx cos(q0)/4) sum (zeta_{n,n+1} zeta_{n+1,n} + eta+_{n,n+1}
    eta_{n+1,n}), and the current block (-i Jx sin(q0)/2) sum (O1_{n,n+1}
    zeta_{n+1,n} - O1_{n+1,n} zeta_{n,n+1} + O2_{n,n+1} eps_{n+1,n} -
    O2_{n+1,n} eps_{n,n+1}), assembled as true boson products on the enlarged
    basis and restricted to the constrained subspace.  The pair terms that
    drop two bosons telescope out of the restriction, and the locally
    non-Hermitian Sz difference term sums to zero on the periodic ring, so
    the two sides must agree exactly.
    """
    con = FockBasis(N, S)
    enl = FockBasis(N, S, mode="enlarged")
    E = con.embed_into(enl)
    dim = enl.dim
    total = sp.csr_matrix((dim, dim), dtype=complex)
    cos_q, sin_q = math.cos(q0), math.sin(q0)
    bonds = [(n, (n + 1) % N) for n in range(N)] if N > 2 else [(0, 1)]
    for n, m in bonds:
        z_nm = bilinear(enl, "zeta", n, m)
        z_mn = bilinear(enl, "zeta", m, n)
        e_nm = bilinear(enl, "eta", n, m)
        e_mn = bilinear(enl, "eta", m, n)
        o1_nm = bilinear(enl, "O1", n, m)
        o1_mn = bilinear(enl, "O1", m, n)
        o2_nm = bilinear(enl, "O2", n, m)
        o2_mn = bilinear(enl, "O2", m, n)
        eps_nm = bilinear(enl, "epsilon", n, m)
        eps_mn = bilinear(enl, "epsilon", m, n)
        total = total + (Jx * cos_q / 4.0) * (z_nm @ z_mn + e_nm.conj().T @ e_mn)
        total = total + (-0.5j * Jx * sin_q) * (
            o1_nm @ z_mn - o1_mn @ z_nm + o2_nm @ eps_mn - o2_mn @ eps_nm)
    rhs = (E.T @ total @ E).toarray()
    rhs += -N * Jx * S * cos_q / 2.0 * np.eye(con.dim)
    U = con.spin_isometry()
    lhs = U.T @ _rotated_spin_hamiltonian(N, S, q0, Jx).toarray() @ U
    return float(np.abs(lhs - rhs).max())
