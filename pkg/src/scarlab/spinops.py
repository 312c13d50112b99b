"""Spin-S local operators, Kronecker embedding, product states, expectations.

Basis conventions (fixed globally, do not change):
  * local Sz eigenbasis ordered m = S, S-1, ..., -S, so local index l = S - m;
  * composite index i = sum_n l_n * (2S+1)^n with site 0 least significant.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .errors import DimensionCap, DimensionMismatch, InvalidSpin, SiteOutOfRange

DENSE_DIM_CAP = 200_000
MATFREE_DIM_CAP = 20_000_000


def _check_spin(S: float) -> int:
    """Return 2S as an int, rejecting non-half-integers."""
    two_s = 2.0 * S
    if two_s < 0 or abs(two_s - round(two_s)) > 1e-12:
        raise InvalidSpin(f"2S must be a non-negative integer, got S={S}")
    return int(round(two_s))


@dataclass(frozen=True)
class SpinSystem:
    S: float
    N: int

    def __post_init__(self):
        _check_spin(self.S)
        if self.N < 1:
            raise InvalidSpin(f"need at least one site, got N={self.N}")
        if self.total_dim > MATFREE_DIM_CAP:
            raise DimensionCap(f"(2S+1)^N = {self.total_dim} exceeds cap {MATFREE_DIM_CAP}")

    @property
    def local_dim(self) -> int:
        return _check_spin(self.S) + 1

    @property
    def total_dim(self) -> int:
        return (_check_spin(self.S) + 1) ** self.N


def local_spin_matrices(S: float):
    """(Sx, Sy, Sz, S+, S-) in the m = S..-S ordered Sz eigenbasis."""
    two_s = _check_spin(S)
    d = two_s + 1
    m = S - np.arange(d)                    # m values per basis index
    sz = np.diag(m).astype(complex)
    # S+ |S, m> = sqrt(S(S+1) - m(m+1)) |S, m+1>; m+1 lives at index l-1
    off = np.sqrt(S * (S + 1) - m[1:] * (m[1:] + 1))
    sp_ = np.zeros((d, d), dtype=complex)
    sp_[np.arange(d - 1), np.arange(1, d)] = off
    sm = sp_.conj().T
    sx = 0.5 * (sp_ + sm)
    sy = -0.5j * (sp_ - sm)
    return sx, sy, sz, sp_, sm


@dataclass
class StateVector:
    system: SpinSystem
    amplitudes: np.ndarray

    def __post_init__(self):
        self.amplitudes = np.asarray(self.amplitudes, dtype=complex).ravel()
        if self.amplitudes.shape[0] != self.system.total_dim:
            raise DimensionMismatch("amplitude vector length != total_dim")

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalized(self) -> "StateVector":
        return StateVector(self.system, self.amplitudes / self.norm())

    def overlap(self, other: "StateVector") -> complex:
        if other.system != self.system:
            raise DimensionMismatch("states live on different systems")
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def fidelity(self, other: "StateVector") -> float:
        return abs(self.overlap(other))


@dataclass
class ManyBodyOperator:
    system: SpinSystem
    matrix: sp.csr_matrix
    hermitian: bool = False

    def __post_init__(self):
        self.matrix = sp.csr_matrix(self.matrix, dtype=complex)
        d = self.system.total_dim
        if self.matrix.shape != (d, d):
            raise DimensionMismatch("matrix shape != (total_dim, total_dim)")

    def apply(self, psi: StateVector) -> StateVector:
        if psi.system != self.system:
            raise DimensionMismatch("operator and state on different systems")
        return StateVector(self.system, self.matrix @ psi.amplitudes)

    def dense(self) -> np.ndarray:
        return self.matrix.toarray()

    def dagger(self) -> "ManyBodyOperator":
        return ManyBodyOperator(self.system, self.matrix.conj().T.tocsr(), self.hermitian)

    def __add__(self, other: "ManyBodyOperator") -> "ManyBodyOperator":
        if other.system != self.system:
            raise DimensionMismatch("operator systems differ")
        return ManyBodyOperator(self.system, self.matrix + other.matrix,
                                self.hermitian and other.hermitian)

    def __sub__(self, other: "ManyBodyOperator") -> "ManyBodyOperator":
        if other.system != self.system:
            raise DimensionMismatch("operator systems differ")
        return ManyBodyOperator(self.system, self.matrix - other.matrix,
                                self.hermitian and other.hermitian)

    def __matmul__(self, other: "ManyBodyOperator") -> "ManyBodyOperator":
        if other.system != self.system:
            raise DimensionMismatch("operator systems differ")
        return ManyBodyOperator(self.system, (self.matrix @ other.matrix).tocsr(), False)

    def __mul__(self, scalar) -> "ManyBodyOperator":
        return ManyBodyOperator(self.system, self.matrix * scalar,
                                self.hermitian and abs(complex(scalar).imag) == 0.0)

    __rmul__ = __mul__

    def commutator(self, other: "ManyBodyOperator") -> "ManyBodyOperator":
        return self @ other - other @ self

    def hermiticity_defect(self) -> float:
        diff = self.matrix - self.matrix.conj().T
        return 0.0 if diff.nnz == 0 else float(np.abs(diff.data).max())


def identity(system: SpinSystem) -> ManyBodyOperator:
    return ManyBodyOperator(system, sp.identity(system.total_dim, dtype=complex, format="csr"),
                            hermitian=True)


def embed(local_op: np.ndarray, site: int, system: SpinSystem,
          hermitian: bool | None = None) -> ManyBodyOperator:
    """Place a local operator at one site, identity elsewhere."""
    if not 0 <= site < system.N:
        raise SiteOutOfRange(f"site {site} outside [0, {system.N})")
    d = system.local_dim
    left = sp.identity(d ** (system.N - site - 1), dtype=complex, format="csr")
    right = sp.identity(d ** site, dtype=complex, format="csr")
    mat = sp.kron(left, sp.kron(sp.csr_matrix(local_op), right, format="csr"), format="csr")
    if hermitian is None:
        hermitian = bool(np.allclose(local_op, np.asarray(local_op).conj().T, atol=1e-14))
    return ManyBodyOperator(system, mat, hermitian)


def two_site(op_a: np.ndarray, site_a: int, op_b: np.ndarray, site_b: int,
             system: SpinSystem) -> sp.csr_matrix:
    """Sparse matrix of (op_a at site_a) @ (op_b at site_b), disjoint sites."""
    if site_a == site_b:
        raise SiteOutOfRange("two_site needs distinct sites")
    a = embed(op_a, site_a, system).matrix
    b = embed(op_b, site_b, system).matrix
    return (a @ b).tocsr()


def basis_state(system: SpinSystem, local_indices) -> StateVector:
    """Product basis state |l_0, l_1, ...>, l_n = S - m_n."""
    idx = 0
    for n, l in enumerate(local_indices):
        idx += int(l) * system.local_dim ** n
    amps = np.zeros(system.total_dim, dtype=complex)
    amps[idx] = 1.0
    return StateVector(system, amps)


def all_up(system: SpinSystem) -> StateVector:
    return basis_state(system, [0] * system.N)


def all_down(system: SpinSystem) -> StateVector:
    return basis_state(system, [system.local_dim - 1] * system.N)


@dataclass(frozen=True)
class SiteAngles:
    theta: tuple
    phi: tuple

    @classmethod
    def make(cls, theta, phi) -> "SiteAngles":
        theta = tuple(float(t) for t in theta)
        phi = tuple(float(p) for p in phi)
        if len(theta) != len(phi):
            raise DimensionMismatch("theta/phi length mismatch")
        return cls(theta, phi)


def _local_rotation(S: float, theta: float, phi: float) -> np.ndarray:
    """d x d unitary rotating |S, S> to polar angle theta, azimuth phi.

    Built as exp(-i*phi*Sz) exp(-i*theta*Sy) through eigendecomposition of Sy,
    exact for any S.  With this sign convention the single-site expectations
    are (S sin(theta) cos(phi), S sin(theta) sin(phi), S cos(theta)).
    """
    sx, sy, sz, _, _ = local_spin_matrices(S)
    evals, evecs = np.linalg.eigh(sy)
    rot_y = (evecs * np.exp(-1j * theta * evals)) @ evecs.conj().T
    rot_z = np.diag(np.exp(-1j * phi * np.diag(sz).real))
    return rot_z @ rot_y


def coherent_product_state(angles: SiteAngles, system: SpinSystem) -> StateVector:
    """Unit-norm spin-coherent product state with per-site Bloch angles.

    Site n points along (sin(theta_n) cos(phi_n), sin(theta_n) sin(phi_n),
    cos(theta_n)); helicity enters through the sign of the phi sequence.
    """
    if len(angles.theta) != system.N:
        raise DimensionMismatch("angle sequences must have length N")
    up = np.zeros(system.local_dim, dtype=complex)
    up[0] = 1.0
    full = np.array([1.0 + 0.0j])
    for n in range(system.N - 1, -1, -1):   # site 0 least significant
        v = _local_rotation(system.S, angles.theta[n], angles.phi[n]) @ up
        full = np.kron(full, v)
    return StateVector(system, full)


def product_rotation(angles: SiteAngles, system: SpinSystem, dagger: bool = False,
                     dim_cap: int = 4096) -> ManyBodyOperator:
    """Full product rotation U = prod_n exp(-i phi_n Sz_n) exp(-i theta_n Sy_n).

    Dense under the hood (a product of per-site rotations has no sparsity), so
    it is capped to small systems; use coherent_product_state for vectors.
    """
    if system.total_dim > dim_cap:
        raise DimensionCap(f"product rotation dense at dim {system.total_dim} > {dim_cap}")
    full = np.array([[1.0 + 0.0j]])
    for n in range(system.N - 1, -1, -1):
        u = _local_rotation(system.S, angles.theta[n], angles.phi[n])
        full = np.kron(full, u)
    if dagger:
        full = full.conj().T
    return ManyBodyOperator(system, sp.csr_matrix(full), hermitian=False)


def expectation(op: ManyBodyOperator, psi: StateVector) -> complex:
    """<psi|op|psi>; collapses to the real part for Hermitian operators."""
    if psi.system != op.system:
        raise DimensionMismatch("operator and state on different systems")
    val = complex(np.vdot(psi.amplitudes, op.matrix @ psi.amplitudes))
    if op.hermitian and abs(val.imag) <= 1e-12 * max(1.0, abs(val.real)):
        return complex(val.real)
    return val


def site_spin_expectations(psi: StateVector) -> np.ndarray:
    """Array of shape (N, 3): (<Sx_n>, <Sy_n>, <Sz_n>) for each site."""
    system = psi.system
    sx, sy, sz, _, _ = local_spin_matrices(system.S)
    out = np.zeros((system.N, 3))
    d = system.local_dim
    tensor = psi.amplitudes.reshape((d,) * system.N)  # axis k is site N-1-k
    for n in range(system.N):
        axis = system.N - 1 - n
        rho = np.tensordot(tensor, tensor.conj(), axes=(
            [a for a in range(system.N) if a != axis],
            [a for a in range(system.N) if a != axis]))
        # rho[l, l'] = psi_l conj(psi_l'), so <S> = trace(rho @ S)
        out[n] = [np.trace(rho @ s).real for s in (sx, sy, sz)]
    return out


def entanglement_entropy(psi: StateVector, cut_site: int) -> float:
    """Von Neumann entropy of the bipartition [0..cut_site] | [cut_site+1..N-1]."""
    system = psi.system
    d = system.local_dim
    left_dim = d ** (cut_site + 1)
    mat = psi.amplitudes.reshape(system.total_dim // left_dim, left_dim)
    svals = np.linalg.svd(mat, compute_uv=False)
    p = svals ** 2
    p = p[p > 1e-16]
    return float(-(p * np.log(p)).sum())
