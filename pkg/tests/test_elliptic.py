"""Elliptic layer against the mpmath oracle and the classical identities."""

import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest

from scarlab.elliptic import (EllipticModulus, commensurate_q,
                              complete_K, incomplete_F, jacobi,
                              jacobi_fraction, jacobi_sc, solve_q_kappa)
from scarlab.errors import (ModulusOutOfRange, OrderingViolated,
                            PoleAtQuarterPeriod)

RNG = np.random.default_rng(20240811)


def mp_jacobi(u, kappa):
    m = kappa * kappa
    return (float(mpmath.ellipfun("sn", u, m=m)),
            float(mpmath.ellipfun("cn", u, m=m)),
            float(mpmath.ellipfun("dn", u, m=m)))


def test_complete_K_against_mpmath():
    for kappa in (0.0, 0.1, 0.5, 0.9, 0.99):
        assert complete_K(kappa) == pytest.approx(
            float(mpmath.ellipk(kappa * kappa)), abs=1e-13)


def test_jacobi_against_mpmath():
    for _ in range(300):
        kappa = float(RNG.uniform(0.0, 0.97))
        u = float(RNG.uniform(-25.0, 25.0))
        got = jacobi(u, kappa)
        want = mp_jacobi(u, kappa)
        assert np.allclose(got, want, atol=5e-13)


def test_identities_random_points():
    for _ in range(2000):
        kappa = float(RNG.uniform(0.0, 0.95))
        u = float(RNG.uniform(-30.0, 30.0))
        sn, cn, dn = jacobi(u, kappa)
        assert abs(sn * sn + cn * cn - 1.0) <= 1e-11
        assert abs(dn * dn + kappa * kappa * sn * sn - 1.0) <= 1e-11


def test_periodicity_4K():
    for _ in range(500):
        kappa = float(RNG.uniform(0.0, 0.95))
        u = float(RNG.uniform(-10.0, 10.0))
        a = np.array(jacobi(u, kappa))
        b = np.array(jacobi(u + 4.0 * complete_K(kappa), kappa))
        assert np.abs(a - b).max() <= 1e-11


def test_addition_identity():
    # sn(u+v) = (sn u cn v dn v + sn v cn u dn u) / (1 - k^2 sn^2 u sn^2 v)
    for _ in range(500):
        kappa = float(RNG.uniform(0.0, 0.95))
        u, v = RNG.uniform(-5.0, 5.0, 2)
        snu, cnu, dnu = jacobi(u, kappa)
        snv, cnv, dnv = jacobi(v, kappa)
        denom = 1.0 - (kappa * snu * snv) ** 2
        want = (snu * cnv * dnv + snv * cnu * dnu) / denom
        got, _, _ = jacobi(u + v, kappa)
        assert abs(got - want) <= 1e-11


def test_trig_limit():
    for u in np.linspace(-3, 3, 17):
        sn, cn, dn = jacobi(float(u), 0.0)
        assert sn == pytest.approx(math.sin(u), abs=1e-14)
        assert cn == pytest.approx(math.cos(u), abs=1e-14)
        assert dn == pytest.approx(1.0, abs=1e-14)


def test_commensurate_q_exact_fraction():
    q = commensurate_q(3, 7, 0.6)
    assert q.fraction == Fraction(3, 7)
    assert q.value == pytest.approx(4.0 * 3 * complete_K(0.6) / 7, rel=1e-15)


def test_jacobi_fraction_special_points():
    # multiples of K land exactly on the lattice points of the functions
    mod = EllipticModulus.from_kappa(0.8)
    sn, cn, dn = jacobi_fraction(Fraction(1, 4), mod)   # u = K
    assert sn == pytest.approx(1.0, abs=1e-14)
    assert cn == pytest.approx(0.0, abs=1e-14)
    assert dn == pytest.approx(mod.kappa_prime, abs=1e-13)
    sn, cn, dn = jacobi_fraction(Fraction(1, 2), mod)   # u = 2K
    assert sn == pytest.approx(0.0, abs=1e-13)
    assert cn == pytest.approx(-1.0, abs=1e-13)


def test_jacobi_fraction_matches_float_eval():
    mod = EllipticModulus.from_kappa(0.55)
    for num in range(-9, 10):
        frac = Fraction(num, 9)
        u = 4.0 * mod.quarter_period * float(frac)
        assert np.allclose(jacobi_fraction(frac, mod), jacobi(u, mod.kappa),
                           atol=1e-11)


def test_incomplete_F_against_mpmath():
    for _ in range(100):
        kappa = float(RNG.uniform(0.0, 0.95))
        phi = float(RNG.uniform(0.0, math.pi / 2))
        assert incomplete_F(phi, kappa) == pytest.approx(
            float(mpmath.ellipf(phi, kappa * kappa)), abs=1e-12)


def test_solve_q_kappa_roundtrip():
    count = 0
    while count < 50:
        vals = np.sort(RNG.uniform(-1.0, 1.0, 3))
        jz, jx, jy = float(vals[0]), float(vals[1]), float(vals[2])
        # kappa^2 = (Jy^2-Jx^2)/(Jy^2-Jz^2) <= 1 needs |Jz| < Jx
        if jy <= 0 or jx <= 0 or jx - jz < 1e-3 or jy - jx < 1e-6 or abs(jz) >= jx:
            continue
        q, mod = solve_q_kappa(jx, jy, jz)
        _, cn, dn = jacobi(q, mod.kappa)
        assert abs(dn - jx / jy) <= 1e-10
        assert abs(cn - jz / jy) <= 1e-10
        count += 1


def test_solve_q_kappa_rejects_bad_ordering():
    with pytest.raises(OrderingViolated):
        solve_q_kappa(0.9, 0.5, 0.1)


def test_modulus_range_guard():
    with pytest.raises(ModulusOutOfRange):
        EllipticModulus.from_kappa(1.0)
    with pytest.raises(ModulusOutOfRange):
        EllipticModulus.from_kappa(-0.1)


def test_sc_pole_guard():
    kappa = 0.4
    with pytest.raises(PoleAtQuarterPeriod):
        jacobi_sc(complete_K(kappa), kappa)
