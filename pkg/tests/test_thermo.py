import math

import numpy as np
import pytest

from raisepeel.thermo import (
    Y,
    Y_deriv,
    Ytilde,
    Ytilde_deriv,
    a_xi,
    bulk_energy,
    elliptic_moduli,
    fsc_gapless,
    fsc_gapped,
    k1_product,
)

PI = math.pi
S3 = math.sqrt(3)

# Exact values of Y and its derivatives at gamma = pi/3, orders 0..6.
Y_PI3 = [
    4 / 3,
    -25 / (6 * S3),
    18 * S3 / PI - 3,
    463 / (8 * S3) - 54 / PI - 243 * S3 / PI**2,
    15059 / 18 - 9306 * S3 / (5 * PI) + 972 / PI**2 + 3888 * S3 / PI**3,
    -33185 * S3 / 4 + 8946 / PI + 72495 * S3 / PI**2 - 19440 / PI**3
    - 72900 * S3 / PI**4,
    -3938533 / 6 + 10658034 * S3 / (7 * PI) - 425250 / PI**2
    - 2658420 * S3 / PI**3 + 437400 / PI**4 + 1574640 * S3 / PI**5,
]


@pytest.mark.parametrize("n", range(7))
def test_Y_derivatives_at_pi3(n):
    tol = 1e-8 if n <= 4 else 1e-5
    assert abs(Y_deriv(PI / 3, n) - Y_PI3[n]) < tol


def test_Y_at_pi2():
    assert abs(Y(PI / 2) - 2 / PI) < 1e-10


def test_Y_small_gamma_law():
    g = 1e-3
    assert abs(g * g * Y(g) - 2 * math.log(2)) < 1e-4
    # constant term of the small-gamma expansion
    assert abs((Y(g) - 2 * math.log(2) / g**2) - (math.log(2) / 3 - 1 / 6)) < 1e-4


def test_Y_linear_coefficient_at_pi2():
    h = 1e-4
    slope = (Y(PI / 2) - Y(PI / 2 - h)) / h  # one-sided: gamma <= pi/2 domain
    # central difference around pi/2 - h keeps both nodes in-domain
    slope_c = (Y(PI / 2) - Y(PI / 2 - 2 * h)) / (2 * h)
    expected = -(0.5 + 2 / PI**2)
    assert abs(slope_c - expected) < 1e-3
    assert abs(slope - expected) < 5e-3


def test_Y_quadrature_stability():
    g = 0.9
    base = Y(g)
    assert abs(Y(g, cutoff=24.0) - base) < 1e-13
    assert abs(Y(g, panels_per_unit=4) - base) < 1e-13


def test_Y_against_mpmath():
    mp = pytest.importorskip("mpmath")
    mp.mp.dps = 25
    for g in (0.3, 0.9, 1.4):
        ref = mp.quad(
            lambda x: 1 / (mp.cosh(mp.pi * x) * (mp.cosh(2 * g * x) - mp.cos(g))),
            [-mp.inf, 0, mp.inf],
        )
        assert abs(Y(g) - float(ref)) < 1e-12


def test_Y_domain():
    with pytest.raises(ValueError):
        Y(0.0)
    with pytest.raises(ValueError):
        Y(PI / 2 + 0.1)
    with pytest.raises(ValueError):
        Y_deriv(0.5, 7)


def test_Ytilde_leading_term():
    # Large-lambda expansion 2e^-x + 10e^-3x + ...; at x=10 the remainder
    # beyond the leading term is 10e^-30.
    x = 10.0
    assert abs(Ytilde(x) - 2 * math.exp(-x) - 10 * math.exp(-3 * x)) < 1e-15


def test_Ytilde_truncation_stability():
    assert abs(Ytilde(5.0) - Ytilde(5.0, tol=1e-32)) < 1e-14 * Ytilde(5.0)


def test_Ytilde_domain():
    with pytest.raises(ValueError):
        Ytilde(0.0)
    with pytest.raises(ValueError):
        Ytilde(-1.0)


def test_Ytilde_deriv_matches_differences():
    for lam in (0.3, 1.0, 2.5):
        h = 1e-5
        num = (Ytilde(lam + h) - Ytilde(lam - h)) / (2 * h)
        assert abs(Ytilde_deriv(lam) - num) < 1e-8 * max(1.0, abs(num))


def test_bulk_energy_stochastic_point():
    assert abs(bulk_energy(-0.5) + 0.75) < 1e-12


def test_bulk_energy_free_fermion_limit():
    assert abs(bulk_energy(-1e-6) + 2 / PI) < 1e-4


def test_bulk_energy_continuity_at_isotropic_point():
    left = bulk_energy(-1 - 1e-6)
    right = bulk_energy(-1 + 1e-6)
    assert abs(left - right) < 1e-5
    assert abs(bulk_energy(-1.0) - right) < 1e-9


def test_bulk_energy_domain():
    with pytest.raises(ValueError):
        bulk_energy(0.0)
    with pytest.raises(ValueError):
        bulk_energy(0.3)


def test_fsc_gapless_values():
    # Stochastic point: Casimir and twist terms cancel exactly.
    assert abs(fsc_gapless(PI / 3, 2 * PI / 3)) < 1e-12
    # phi = 0 leaves the pure Casimir term.
    g = 0.7
    assert math.isclose(fsc_gapless(g, 0.0), -PI**2 * math.sin(g) / (6 * g))
    # Direct arithmetic at (pi/2, pi): -pi/3 + pi = 2pi/3.
    assert abs(fsc_gapless(PI / 2, PI) - 2 * PI / 3) < 1e-12


def test_fsc_gapless_imaginary_twist():
    # Pure imaginary phi gives phi^2 < 0 and a real value.
    v = fsc_gapless(PI / 3, 1.5j)
    assert v < fsc_gapless(PI / 3, 0.0)
    with pytest.raises(ValueError):
        fsc_gapless(PI / 3, 1.0 + 1.0j)
    with pytest.raises(ValueError):
        fsc_gapless(PI / 3, 2 * PI)  # phi^2 beyond pi^2
    with pytest.raises(ValueError):
        fsc_gapless(0.0, 0.0)


def test_elliptic_moduli_invariants():
    for lam in (0.2, 1.0, 3.0):
        m = elliptic_moduli(lam)
        assert 0 < m.k1 < 1
        assert abs(m.K_kprime / m.K_k - lam / PI) < 1e-10
        assert abs(m.k1 - ((1 - m.k_prime) / m.k) ** 2) < 1e-10
        assert abs(m.k1 - k1_product(lam)) < 1e-10


def test_elliptic_K_against_scipy():
    from scipy.special import ellipk

    m = elliptic_moduli(1.0)
    assert abs(m.K_k - ellipk(m.k**2)) < 1e-12
    assert abs(m.K_kprime - ellipk(m.k_prime**2)) < 1e-12


def test_elliptic_domain():
    with pytest.raises(ValueError):
        elliptic_moduli(0.0)
    with pytest.raises(ValueError):
        fsc_gapped(10, -1.0, 0.0)
    with pytest.raises(ValueError):
        fsc_gapped(9, 1.0, 0.0)
    with pytest.raises(ValueError):
        fsc_gapped(10, 1.0, 0.0, branch=0)


def test_fsc_gapped_branches():
    v_minus = fsc_gapped(12, 1.0, 0.0, branch=-1)
    v_plus = fsc_gapped(12, 1.0, 0.0, branch=+1)
    assert v_minus < 0 < v_plus
    assert abs(v_minus + v_plus) < 1e-15


def test_a_xi_properties():
    ln2 = math.log(2)
    r = a_xi(-1.0)
    assert r.xi > 0 and r.a > 0
    # xi diverges approaching the sewing point from below and shrinks deeper in.
    assert a_xi(-ln2 - 1e-3).xi > a_xi(-ln2 - 1e-2).xi > a_xi(-1.0).xi
    assert a_xi(-ln2 - 1e-4).xi > 1e2
    with pytest.raises(ValueError):
        a_xi(-ln2)
    with pytest.raises(ValueError):
        a_xi(0.0)


@pytest.mark.parametrize("beta,L", [(-0.8, 6), (-1.2, 10), (-2.0, 14)])
def test_a_xi_unwinds_gapped_fsc(beta, L):
    # a(b) e^{-L/xi(b)} / sqrt(L) is exactly -e^b * (ground-branch FSC) at the
    # alpha=0 twist phi0 = 2pi/3.
    r = a_xi(beta)
    lam = math.acosh(math.exp(-beta) / 2)
    lhs = r.a * math.exp(-L / r.xi) / math.sqrt(L)
    rhs = -math.exp(beta) * fsc_gapped(L, lam, 2 * PI / 3)
    assert abs(lhs - rhs) < 1e-14 * abs(lhs)


def test_Y_complex_analyticity():
    # Complex gamma near the real segment: conjugate symmetry of the integral.
    z = Y(complex(1.0, 0.05))
    zbar = Y(complex(1.0, -0.05))
    assert abs(z - np.conj(zbar)) < 1e-12
    assert abs(z.imag) > 1e-4  # genuinely complex off the real axis
