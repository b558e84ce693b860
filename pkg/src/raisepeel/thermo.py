"""Closed-form thermodynamic ingredients for the twisted chain ground state.

Everything here is a pure function of the anisotropy parametrization:
gamma in (0, pi/2] on the gapless side (Delta = -cos gamma), lambda > 0 on
the gapped side (Delta = -cosh lambda), together with the twist angle phi.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .numutil import panel_quad

_CUTOFF = 12.0          # integrand < 5e-17 beyond; doubled in stability tests
_PANELS_PER_UNIT = 2
_NODES = 16


def _denominator(gamma, x):
    # cosh(2*gamma*x) - cos(gamma), written cancellation-free for small gamma
    return 2.0 * np.sinh(gamma * x) ** 2 + 2.0 * np.sin(gamma / 2.0) ** 2


def Y(gamma: float, cutoff: float = _CUTOFF, panels_per_unit: int = _PANELS_PER_UNIT) -> float:
    """Integral of sech(pi x) / (cosh(2 gamma x) - cos gamma) over the line.

    Diverges like 2 ln2 / gamma^2 as gamma -> 0; defined for 0 < gamma <= pi/2.
    Accepts complex gamma (analytic continuation near the real segment).
    """
    _check_gamma(gamma)

    def f(x):
        return 2.0 / (np.cosh(np.pi * x) * _denominator(gamma, x))

    n_panels = max(2, int(round(cutoff * panels_per_unit)))
    return panel_quad(f, 0.0, cutoff, n_panels=n_panels, n_nodes=_NODES)


def Y_deriv(gamma: float, n: int, cutoff: float = _CUTOFF,
            panels_per_unit: int = _PANELS_PER_UNIT) -> float:
    """n-th derivative of Y, n <= 6, by exact differentiation under the integral.

    With D = cosh(2 gamma x) - cos gamma and g = 1/D, repeated Leibniz on
    D*g = 1 gives g^(n) = -sum_k C(n,k) D^(k) g^(n-k) / D, and every D^(k)
    is elementary.
    """
    _check_gamma(gamma)
    if not 0 <= n <= 6:
        raise ValueError(f"derivative order must be 0..6, got {n}")
    if n == 0:
        return Y(gamma, cutoff, panels_per_unit)

    def f(x):
        D = _denominator(gamma, x)
        ch = np.cosh(2.0 * gamma * x)
        sh = np.sinh(2.0 * gamma * x)
        cg, sg = np.cos(gamma), np.sin(gamma)
        dcos = [-cg, sg, cg, -sg]  # d^k/dgamma^k of (-cos gamma), k mod 4
        g = [1.0 / D]
        for m in range(1, n + 1):
            acc = 0.0
            for k in range(1, m + 1):
                dk = (2.0 * x) ** k * (ch if k % 2 == 0 else sh) + dcos[k % 4]
                acc = acc + math.comb(m, k) * dk * g[m - k]
            g.append(-acc / D)
        return 2.0 * g[n] / np.cosh(np.pi * x)

    n_panels = max(2, int(round(cutoff * panels_per_unit)))
    return panel_quad(f, 0.0, cutoff, n_panels=n_panels, n_nodes=_NODES)


def _check_gamma(gamma):
    g = complex(gamma)
    if not 0.0 < g.real <= math.pi / 2 + 1e-12:
        raise ValueError(f"gamma must satisfy 0 < gamma <= pi/2, got {gamma}")


def Ytilde(lam: float, tol: float = 1e-16, max_terms: int = 500_000) -> float:
    """(1/sinh lam) * sum over integer m of exp(-|m| lam)/cosh(m lam), lam > 0."""
    if lam <= 0:
        raise ValueError(f"lambda must be positive, got {lam}")
    total = 1.0
    m = 1
    while m < max_terms:
        term = 2.0 * math.exp(-m * lam) / math.cosh(m * lam)
        total += term
        if term < tol:
            break
        m += 1
    return total / math.sinh(lam)


def Ytilde_deriv(lam: float, tol: float = 1e-16, max_terms: int = 500_000) -> float:
    """First derivative of Ytilde, term-by-term (exponentially convergent)."""
    if lam <= 0:
        raise ValueError(f"lambda must be positive, got {lam}")
    s = 1.0
    ds = 0.0
    m = 1
    while m < max_terms:
        e = math.exp(-m * lam)
        ch = math.cosh(m * lam)
        term = 2.0 * e / ch
        s += term
        ds += -m * term * (1.0 + math.tanh(m * lam))
        if term < tol:
            break
        m += 1
    sh, ch = math.sinh(lam), math.cosh(lam)
    return ds / sh - s * ch / sh**2


def bulk_energy(Delta: float) -> float:
    """Ground-state energy per site in the thermodynamic limit, Delta < 0.

    cos(g)/2 - sin^2(g) Y(g) for -1 < Delta < 0; cosh(l)/2 - sinh^2(l) Ytilde(l)
    for Delta < -1; the two expressions continue each other through Delta = -1.
    """
    if Delta >= 0:
        raise ValueError(f"Delta must be negative, got {Delta}")
    if Delta == -1.0:
        Delta = -1.0 + 1e-6  # one-sided limit; sides agree to ~1e-5
    if Delta > -1.0:
        g = math.acos(-Delta)
        return math.cos(g) / 2.0 - math.sin(g) ** 2 * Y(g)
    lam = math.acosh(-Delta)
    return math.cosh(lam) / 2.0 - math.sinh(lam) ** 2 * Ytilde(lam)


def fsc_gapless(gamma: float, phi: complex) -> float:
    """1/L coefficient of E - L e_inf in the gapless regime.

    phi may be real (unit-modulus twist) or pure imaginary; only phi^2 enters
    and must lie in (-inf, pi^2].
    """
    if not 0.0 < gamma <= math.pi / 2 + 1e-12:
        raise ValueError(f"gamma must satisfy 0 < gamma <= pi/2, got {gamma}")
    phi2 = complex(phi) ** 2
    if abs(phi2.imag) > 1e-9 * max(1.0, abs(phi2)):
        raise ValueError(f"phi must be real or pure imaginary, got {phi}")
    p2 = phi2.real
    if p2 > math.pi**2 + 1e-12:
        raise ValueError(f"phi^2 must not exceed pi^2, got {p2}")
    s = math.sin(gamma)
    return (-math.pi**2 * s / (6.0 * gamma)
            + p2 * math.pi * s / (4.0 * gamma * (math.pi - gamma)))


@dataclass(frozen=True)
class EllipticModuli:
    lam: float
    k: float
    k_prime: float
    k1: float
    K_k: float
    K_kprime: float
    ln_k1: float


def _agm(a: float, b: float) -> float:
    for _ in range(64):  # quadratic convergence; stalls at ~1 ulp
        if abs(a - b) <= 4e-16 * a:
            break
        a, b = 0.5 * (a + b), math.sqrt(a * b)
    return 0.5 * (a + b)


def _theta_series(q: float) -> tuple[float, float]:
    t2 = 0.0
    t3 = 1.0
    n = 0
    while True:
        a = q ** (n * (n + 1))
        t2 += a
        if n > 0:
            b = q ** (n * n)
            t3 += 2.0 * b
            if a < 1e-17 and b < 1e-17:
                break
        n += 1
    return 2.0 * q**0.25 * t2, t3


def _modulus_from_log_nome(log_q: float) -> float:
    """(theta2/theta3)^2 at nome exp(log_q), safe against nome underflow."""
    t2 = 0.0
    t3 = 1.0
    n = 0
    while True:
        a = math.exp(log_q * n * (n + 1))
        t2 += a
        if n > 0:
            b = math.exp(log_q * n * n)
            t3 += 2.0 * b
            if a < 1e-17 and b < 1e-17:
                break
        n += 1
    lead = math.exp(log_q / 4.0)  # may underflow to 0 for extreme nomes
    return (2.0 * lead * t2 / t3) ** 2


def elliptic_moduli(lam: float) -> EllipticModuli:
    """Moduli for the gapped finite-size correction at nome exp(-lam).

    k = theta2^2/theta3^2 solves K(k')/K(k) = lam/pi.  k' is evaluated from
    its own theta series at the conjugate nome exp(-pi^2/lam), which keeps it
    accurate down to lam -> 0 where 1 - k is far below machine precision.
    k1 = ((1-k')/k)^2 is the modulus at nome exp(-2 lam); ln_k1 is carried
    separately because 1 - k1 ~ 2k' can be subnormal near lam = 0.
    """
    if lam <= 0:
        raise ValueError(f"lambda must be positive, got {lam}")
    k = _modulus_from_log_nome(-lam)
    kp = _modulus_from_log_nome(-math.pi**2 / lam)
    K_k = math.pi / (2.0 * _agm(1.0, kp)) if kp > 0 else math.inf
    K_kp = math.pi / (2.0 * _agm(1.0, k))
    # ln k1 = ln(1 - kp^2) - 2 ln(1 + kp), exact and cancellation-free
    ln_k1 = math.log1p(-kp * kp) - 2.0 * math.log1p(kp)
    k1 = math.exp(ln_k1)
    return EllipticModuli(lam, k, kp, k1, K_k, K_kp, ln_k1)


def k1_product(lam: float, n_max: int = 400) -> float:
    """Infinite-product form of k1; used as an independent identity check."""
    if lam <= 0:
        raise ValueError(f"lambda must be positive, got {lam}")
    out = 4.0 * math.exp(-lam)
    for n in range(n_max):
        num = 1.0 + math.exp(-2.0 * lam * (2 * n + 2))
        den = 1.0 + math.exp(-2.0 * lam * (2 * n + 1))
        out *= (num / den) ** 4
        if abs(num - 1.0) < 1e-18 and abs(den - 1.0) < 1e-18:
            break
    return out


def fsc_gapped(L: int, lam: float, phi: complex, branch: int = -1) -> float:
    """Leading finite-size correction E - L e_inf in the gapped regime.

    branch=-1 is the true ground state of the asymptotically degenerate pair,
    branch=+1 the partner.  Exponentially small, ~ k1^(L/2)/sqrt(L).
    """
    if branch not in (-1, +1):
        raise ValueError("branch must be -1 (ground) or +1")
    if L < 2 or L % 2:
        raise ValueError(f"lattice width must be even and >= 2, got {L}")
    mod = elliptic_moduli(lam)
    c = complex(np.cos(complex(phi) / 2.0))
    if abs(c.imag) > 1e-9 * max(1.0, abs(c)):
        raise ValueError(f"phi must be real or pure imaginary, got {phi}")
    amp = (math.sinh(lam) * math.sqrt(8.0 * mod.k_prime) / (math.pi**1.5 * math.sqrt(L))
           * mod.K_k * math.exp(0.5 * L * mod.ln_k1))
    return branch * c.real * amp


@dataclass(frozen=True)
class AXi:
    a: float
    xi: float


def a_xi(beta: float) -> AXi:
    """Amplitude and correlation length of the gapped-side correction to the
    tile-counting CGF: the correction is a(beta) exp(-L/xi(beta)) / sqrt(L).

    Defined for beta < -ln 2; assembled from the gapped FSC with the
    stochastic-sector twist cos(phi0/2) = 1/2, sign fixed so the correction
    to the Perron eigenvalue is positive on the ground branch.
    """
    if beta >= -math.log(2.0):
        raise ValueError(f"beta must be below -ln 2, got {beta}")
    lam = math.acosh(math.exp(-beta) / 2.0)
    mod = elliptic_moduli(lam)
    if mod.k_prime == 0.0:  # conjugate nome underflow, ~5e-6 from the boundary
        return AXi(0.0, math.inf)
    xi = -2.0 / mod.ln_k1
    a = (math.exp(beta) * 0.5 * math.sinh(lam)
         * math.sqrt(8.0 * mod.k_prime) * mod.K_k / math.pi**1.5)
    return AXi(a, xi)
