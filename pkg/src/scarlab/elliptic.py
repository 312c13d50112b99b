"""Jacobi elliptic functions and elliptic integrals on the real line.

Everything is evaluated with the arithmetic-geometric mean (AGM) /
descending-Landen scheme: the complete integral K(kappa) is pi/(2*AGM(1, kappa')),
and sn/cn/dn come from the AGM amplitude back-substitution.  The incomplete
integral F(phi, kappa) is done by adaptive Gauss-Legendre quadrature and is the
inverse map used to recover q from XYZ couplings.

The modulus convention is kappa (not the parameter m = kappa^2) throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import ModulusOutOfRange, OrderingViolated, PoleAtQuarterPeriod, ScarlabError

_AGM_TOL = 1e-16      # convergence threshold on the modulus sequence c_n
_SC_POLE_TOL = 1e-12  # |cn| below this counts as a quarter-period pole


def _check_modulus(kappa: float) -> None:
    if not 0.0 <= kappa < 1.0:
        raise ModulusOutOfRange(f"kappa must lie in [0, 1), got {kappa}")


def complete_K(kappa: float) -> float:
    """Complete elliptic integral of the first kind, K(kappa) = pi/(2*AGM(1, kappa'))."""
    _check_modulus(kappa)
    a, b = 1.0, math.sqrt(1.0 - kappa * kappa)
    for _ in range(64):
        if abs(a - b) <= _AGM_TOL * a:
            break
        a, b = 0.5 * (a + b), math.sqrt(a * b)
    return math.pi / (a + b)


@dataclass(frozen=True)
class EllipticModulus:
    """kappa together with its complement and quarter period K(kappa)."""

    kappa: float
    kappa_prime: float
    quarter_period: float

    @classmethod
    def from_kappa(cls, kappa: float) -> "EllipticModulus":
        _check_modulus(kappa)
        return cls(kappa=float(kappa),
                   kappa_prime=math.sqrt(1.0 - kappa * kappa),
                   quarter_period=complete_K(kappa))


@dataclass(frozen=True)
class EllipticPoint:
    """Cached (sn, cn, dn) values of one real argument u at a fixed modulus."""

    u: float
    modulus: EllipticModulus
    sn: float
    cn: float
    dn: float

    @classmethod
    def at(cls, u: float, modulus: EllipticModulus) -> "EllipticPoint":
        sn, cn, dn = _jacobi_reduced(u, modulus)
        return cls(u=u, modulus=modulus, sn=sn, cn=cn, dn=dn)


@dataclass(frozen=True)
class CommensurateQ:
    """q = 4 p K(kappa) / denom with the exact rational tag p/denom retained."""

    p: int
    denominator: int
    modulus: EllipticModulus
    value: float

    @classmethod
    def make(cls, p: int, denominator: int, kappa: float) -> "CommensurateQ":
        if denominator < 1:
            raise ScarlabError("denominator must be >= 1")
        mod = EllipticModulus.from_kappa(kappa)
        value = 4.0 * p * mod.quarter_period / denominator
        return cls(p=int(p), denominator=int(denominator), modulus=mod, value=value)

    @property
    def fraction(self) -> Fraction:
        """Exact q / (4K)."""
        return Fraction(self.p, self.denominator)


def commensurate_q(p: int, denom: int, kappa: float) -> CommensurateQ:
    return CommensurateQ.make(p, denom, kappa)


def _agm_scheme(kappa: float):
    """Descending AGM sequence (a_n, c_n) down to c_n < 1e-16."""
    a, b, c = 1.0, math.sqrt(1.0 - kappa * kappa), kappa
    seq_a, seq_c = [a], [c]
    for _ in range(64):
        if c <= _AGM_TOL:
            break
        a, b, c = 0.5 * (a + b), math.sqrt(a * b), 0.5 * (a - b)
        seq_a.append(a)
        seq_c.append(c)
    return seq_a, seq_c


def _jacobi_core(u: float, kappa: float):
    """sn, cn, dn for u already reduced into [0, K]; AGM amplitude back-substitution."""
    seq_a, seq_c = _agm_scheme(kappa)
    n = len(seq_a) - 1
    phi = (2 ** n) * seq_a[n] * u
    for i in range(n, 0, -1):
        phi = 0.5 * (phi + math.asin(max(-1.0, min(1.0, seq_c[i] / seq_a[i] * math.sin(phi)))))
    sn = math.sin(phi)
    cn = math.cos(phi)
    dn = math.sqrt(max(0.0, 1.0 - (kappa * sn) ** 2))
    return sn, cn, dn


def _jacobi_reduced(u: float, modulus: EllipticModulus) -> tuple[float, float, float]:
    """Reduce u modulo 4K, fold into [0, K] by the half/quarter-period symmetries."""
    K = modulus.quarter_period
    t = math.fmod(u, 4.0 * K)
    if t < 0.0:
        t += 4.0 * K
    sign_sn = sign_cn = 1.0
    if t >= 2.0 * K:          # sn(u+2K) = -sn, cn(u+2K) = -cn, dn unchanged
        t -= 2.0 * K
        sign_sn = sign_cn = -1.0
    if t > K:                 # sn(2K-u) = sn, cn(2K-u) = -cn, dn unchanged
        t = 2.0 * K - t
        sign_cn = -sign_cn
    sn, cn, dn = _jacobi_core(t, modulus.kappa)
    return sign_sn * sn, sign_cn * cn, dn


def jacobi(u: float, kappa: float) -> tuple[float, float, float]:
    """Simultaneous (sn, cn, dn) at real argument u, modulus kappa."""
    mod = EllipticModulus.from_kappa(kappa)
    return _jacobi_reduced(u, mod)


def jacobi_fraction(frac: Fraction, modulus: EllipticModulus) -> tuple[float, float, float]:
    """(sn, cn, dn) at u = 4K * frac, reducing on the exact rational tag.

    The tag is wrapped modulo 1 before touching floats, so many-period
    arguments lose no precision.
    """
    r = frac - math.floor(frac)
    u = 4.0 * modulus.quarter_period * float(r)
    return _jacobi_reduced(u, modulus)


def jacobi_sc(u: float, kappa: float) -> float:
    """sc(u, kappa) = sn/cn; raises at the quarter-period poles."""
    sn, cn, _ = jacobi(u, kappa)
    if abs(cn) < _SC_POLE_TOL:
        raise PoleAtQuarterPeriod(f"cn({u}, {kappa}) = {cn:.2e}; u is at an odd multiple of K")
    return sn / cn


def _gauss_legendre(f, a: float, b: float, nodes, weights) -> float:
    mid, half = 0.5 * (a + b), 0.5 * (b - a)
    return half * sum(w * f(mid + half * x) for x, w in zip(nodes, weights))


def _adaptive_gl(f, a: float, b: float, tol: float, nodes, weights, whole: float, depth: int) -> float:
    mid = 0.5 * (a + b)
    left = _gauss_legendre(f, a, mid, nodes, weights)
    right = _gauss_legendre(f, mid, b, nodes, weights)
    if abs(left + right - whole) <= tol or depth >= 40:
        return left + right
    return (_adaptive_gl(f, a, mid, 0.5 * tol, nodes, weights, left, depth + 1)
            + _adaptive_gl(f, mid, b, 0.5 * tol, nodes, weights, right, depth + 1))


_GL_NODES_WEIGHTS = None


def _gl_rule():
    global _GL_NODES_WEIGHTS
    if _GL_NODES_WEIGHTS is None:
        import numpy as np
        x, w = np.polynomial.legendre.leggauss(20)
        _GL_NODES_WEIGHTS = (x.tolist(), w.tolist())
    return _GL_NODES_WEIGHTS


def incomplete_F(phi: float, kappa: float, tol: float = 1e-13) -> float:
    """Incomplete elliptic integral of the first kind F(phi, kappa)."""
    _check_modulus(kappa)
    if phi == 0.0:
        return 0.0
    nodes, weights = _gl_rule()
    m = kappa * kappa

    def integrand(theta: float) -> float:
        s = math.sin(theta)
        return 1.0 / math.sqrt(1.0 - m * s * s)

    whole = _gauss_legendre(integrand, 0.0, phi, nodes, weights)
    return _adaptive_gl(integrand, 0.0, phi, tol, nodes, weights, whole, 0)


def solve_q_kappa(Jx: float, Jy: float, Jz: float) -> tuple[float, EllipticModulus]:
    """Invert dn(q) = Jx/Jy, cn(q) = Jz/Jy, kappa^2 = (Jy^2-Jx^2)/(Jy^2-Jz^2).

    Requires the ordering Jy >= Jx > Jz with Jy > 0.  The returned pair is
    re-checked against the defining relations to 1e-12.
    """
    if not (Jy >= Jx > Jz) or Jy <= 0.0:
        raise OrderingViolated(f"need Jy >= Jx > Jz with Jy > 0, got ({Jx}, {Jy}, {Jz})")
    kappa2 = (Jy * Jy - Jx * Jx) / (Jy * Jy - Jz * Jz)
    kappa = math.sqrt(max(0.0, kappa2))
    mod = EllipticModulus.from_kappa(kappa)
    q = incomplete_F(math.acos(Jz / Jy), kappa)
    _, cn, dn = _jacobi_reduced(q, mod)
    if abs(dn - Jx / Jy) > 1e-12 or abs(cn - Jz / Jy) > 1e-12:
        raise ScarlabError(
            f"q-kappa inversion inconsistent: dn residual {dn - Jx / Jy:.2e}, "
            f"cn residual {cn - Jz / Jy:.2e}")
    return q, mod
