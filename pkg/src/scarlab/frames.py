"""Reduce a centrosymmetric spin-exchange (CSSE) coupling to XYZ form.

The CSSE bond is the symmetric 3x3 matrix

    M = [[J1, J12, J13], [J12, J2, J23], [J13, J23, J3]],

and the reduction is a sequence of SO(3) frame rotations Rx(psi), Ry(phi),
Rz(theta) that diagonalizes M.  The (psi, phi) pair is found by a multi-start
2D Newton solve of the two closed-form zero conditions; theta then kills the
remaining xy coupling in closed form.  The eigenvalues of M serve as an
independent cross-check of the whole procedure.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import NoRootFound

_ROOT_TOL = 1e-12


@dataclass(frozen=True)
class CsseCouplings:
    J1: float
    J2: float
    J3: float
    J12: float = 0.0
    J13: float = 0.0
    J23: float = 0.0

    @classmethod
    def from_json(cls, text: str) -> "CsseCouplings":
        doc = json.loads(text)
        return cls(**{k: float(doc.get(k, 0.0)) for k in ("J1", "J2", "J3", "J12", "J13", "J23")})

    def matrix(self) -> np.ndarray:
        return np.array([[self.J1, self.J12, self.J13],
                         [self.J12, self.J2, self.J23],
                         [self.J13, self.J23, self.J3]])


def rot_x(a: float) -> np.ndarray:
    c, s = math.cos(a), math.sin(a)
    return np.array([[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]])


def rot_y(a: float) -> np.ndarray:
    c, s = math.cos(a), math.sin(a)
    return np.array([[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]])


def rot_z(a: float) -> np.ndarray:
    c, s = math.cos(a), math.sin(a)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


def angle_equations(c: CsseCouplings, psi: float, phi: float) -> tuple[float, float]:
    """The two conditions that remove the xz and yz couplings after Rx, Ry."""
    sp, cp = math.sin(psi), math.cos(psi)
    s2p, c2p = math.sin(2 * psi), math.cos(2 * psi)
    sf, cf = math.sin(phi), math.cos(phi)
    s2f, c2f = math.sin(2 * phi), math.cos(2 * phi)
    f1 = (c.J13 * sp - c.J12 * cp) * sf + (0.5 * (c.J2 - c.J3) * s2p + c.J23 * c2p) * cf
    f2 = (0.5 * s2f) * (-c.J1 + c.J2 * sp * sp + c.J3 * cp * cp) \
        + (c.J12 * sp + c.J13 * cp) * c2f + 0.5 * c.J23 * s2p * s2f
    return f1, f2


def primed_couplings(c: CsseCouplings, psi: float, phi: float) -> tuple[float, float, float, float]:
    """(J'x, J'y, J'z, J'xy) after the Rx(psi), Ry(phi) rotations (closed form)."""
    sp, cp = math.sin(psi), math.cos(psi)
    s2p = math.sin(2 * psi)
    sf, cf = math.sin(phi), math.cos(phi)
    s2f = math.sin(2 * phi)
    jx = (c.J1 * cf * cf + c.J2 * sf * sf * sp * sp + c.J3 * sf * sf * cp * cp
          + c.J12 * s2f * sp + c.J13 * s2f * cp + c.J23 * sf * sf * s2p)
    jy = c.J2 * cp * cp + c.J3 * sp * sp - c.J23 * s2p
    jz = (c.J1 * sf * sf + c.J2 * cf * cf * sp * sp + c.J3 * cf * cf * cp * cp
          - c.J12 * s2f * sp - c.J13 * s2f * cp + c.J23 * cf * cf * s2p)
    jxy = (c.J12 * cf * cp - c.J13 * cf * sp + c.J23 * sf * math.cos(2 * psi)
           + 0.5 * (c.J2 - c.J3) * sf * s2p)
    return jx, jy, jz, jxy


def primed_matrix(c: CsseCouplings, psi: float, phi: float) -> np.ndarray:
    """Conjugated coupling matrix; equals the closed forms on the x/y/z/xy slots."""
    rot = rot_y(phi) @ rot_x(psi)
    return rot @ c.matrix() @ rot.T


def _canonicalize(psi: float, phi: float) -> tuple[float, float]:
    """Map a root into [0, pi)^2 using the (psi+pi, pi-phi) and phi+pi symmetries."""
    psi = psi % (2 * math.pi)
    if psi >= math.pi - 1e-12:
        psi -= math.pi
        phi = math.pi - phi
    if psi < 0.0:
        psi = 0.0
    phi = phi % math.pi
    if phi > math.pi - 1e-12:
        phi = 0.0
    return psi, phi


def solve_frame_angles(c: CsseCouplings, grid: int = 8) -> list[tuple[float, float]]:
    """All distinct (psi, phi) roots in [0, pi)^2 of the angle equations.

    Multi-start Newton with a numerically differenced Jacobian; roots are kept
    only if the residual re-evaluates below 1e-12.  Sorted by psi^2 + phi^2 so
    the first entry is the canonical root.
    """
    roots: list[tuple[float, float]] = []
    h = 1e-7
    starts = [(math.pi * (i + 0.5) / grid, math.pi * (j + 0.5) / grid)
              for i in range(grid) for j in range(grid)]
    starts.insert(0, (0.0, 0.0))
    for psi0, phi0 in starts:
        psi, phi = psi0, phi0
        converged = False
        for _ in range(60):
            f1, f2 = angle_equations(c, psi, phi)
            if math.hypot(f1, f2) < 1e-14:
                converged = True
                break
            j11 = (angle_equations(c, psi + h, phi)[0] - angle_equations(c, psi - h, phi)[0]) / (2 * h)
            j12 = (angle_equations(c, psi, phi + h)[0] - angle_equations(c, psi, phi - h)[0]) / (2 * h)
            j21 = (angle_equations(c, psi + h, phi)[1] - angle_equations(c, psi - h, phi)[1]) / (2 * h)
            j22 = (angle_equations(c, psi, phi + h)[1] - angle_equations(c, psi, phi - h)[1]) / (2 * h)
            det = j11 * j22 - j12 * j21
            if abs(det) < 1e-14:
                break
            dpsi = (f1 * j22 - f2 * j12) / det
            dphi = (f2 * j11 - f1 * j21) / det
            step = math.hypot(dpsi, dphi)
            if step > 1.0:               # damp wild Newton steps
                dpsi, dphi = dpsi / step, dphi / step
            psi, phi = psi - dpsi, phi - dphi
            if step < 1e-15:
                converged = True
                break
        if not converged:
            continue
        cpsi, cphi = _canonicalize(psi, phi)
        f1, f2 = angle_equations(c, cpsi, cphi)
        if max(abs(f1), abs(f2)) > _ROOT_TOL:
            continue
        if not any(abs(cpsi - r[0]) < 1e-7 and abs(cphi - r[1]) < 1e-7 for r in roots):
            roots.append((cpsi, cphi))
    if not roots:
        raise NoRootFound("no (psi, phi) root found from any start point")
    roots.sort(key=lambda r: (r[0] * r[0] + r[1] * r[1], r))
    return roots


@dataclass(frozen=True)
class FrameSolution:
    psi: float
    phi: float
    theta: float
    primed: tuple[float, float, float, float]
    xyz: tuple[float, float, float]
    residual: float

    def rotation(self) -> np.ndarray:
        """Composed lab-from-xyz rotation G with G^T M G = diag(Jx, Jy, Jz)."""
        return rot_x(self.psi).T @ rot_y(self.phi).T @ rot_z(self.theta)


def xyz_reduction(c: CsseCouplings) -> FrameSolution:
    """Full CSSE -> XYZ reduction; Jy >= Jx by choice of the theta branch."""
    psi, phi = solve_frame_angles(c)[0]
    jxp, jyp, jzp, jxyp = primed_couplings(c, psi, phi)
    theta = 0.5 * math.atan2(2.0 * jxyp, jxp - jyp)
    mp = primed_matrix(c, psi, phi)
    rz = rot_z(theta)
    mz = rz.T @ mp @ rz
    if mz[0, 0] > mz[1, 1]:              # enforce Jy >= Jx
        theta += 0.5 * math.pi
        rz = rot_z(theta)
        mz = rz.T @ mp @ rz
    jx, jy, jz = float(mz[0, 0]), float(mz[1, 1]), float(mz[2, 2])
    off = max(abs(mz[0, 1]), abs(mz[0, 2]), abs(mz[1, 2]))
    f1, f2 = angle_equations(c, psi, phi)
    return FrameSolution(psi=psi, phi=phi, theta=theta,
                         primed=(jxp, jyp, jzp, jxyp), xyz=(jx, jy, jz),
                         residual=max(abs(f1), abs(f2), off))
