"""Shared numerics: panel quadrature, Richardson differentiation, one-sided stencils."""

from __future__ import annotations

from functools import lru_cache

import numpy as np


@lru_cache(maxsize=None)
def _leggauss(n: int):
    x, w = np.polynomial.legendre.leggauss(n)
    return x, w


def panel_quad(f, a: float, b: float, n_panels: int = 24, n_nodes: int = 16):
    """Composite Gauss-Legendre quadrature of a vectorized integrand on [a, b].

    The integrand must accept a numpy array and may return complex values.
    With smooth integrands the error is at machine level long before the
    panel count matters; callers double n_panels for stability checks.
    """
    x, w = _leggauss(n_nodes)
    edges = np.linspace(a, b, n_panels + 1)
    mid = 0.5 * (edges[1:] + edges[:-1])
    half = 0.5 * (edges[1:] - edges[:-1])
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    vals = np.asarray(f(nodes)).reshape(n_panels, n_nodes)
    total = (vals * w[None, :]).sum(axis=1) @ half
    return complex(total) if np.iscomplexobj(vals) else float(total)


# Central-difference stencils with error series in even powers of h.
_CENTRAL = {
    1: ([1, -1], [1.0, -1.0], 2.0),
    2: ([1, 0, -1], [1.0, -2.0, 1.0], 1.0),
    3: ([2, 1, -1, -2], [1.0, -2.0, 2.0, -1.0], 2.0),
    4: ([2, 1, 0, -1, -2], [1.0, -4.0, 6.0, -4.0, 1.0], 1.0),
}


def richardson_derivative(f, x0: float, order: int = 1, base_step: float = 1e-2,
                          levels: int = 3) -> float:
    """Richardson-extrapolated central-difference derivative of given order (1..4)."""
    if order not in _CENTRAL:
        raise ValueError(f"order must be in 1..4, got {order}")
    offsets, coeffs, denom = _CENTRAL[order]
    table = np.empty(levels)
    for i in range(levels):
        h = base_step / 2**i
        table[i] = sum(c * f(x0 + k * h) for k, c in zip(offsets, coeffs)) / (denom * h**order)
    for j in range(1, levels):
        fac = 4.0**j
        table[: levels - j] = (fac * table[1: levels - j + 1] - table[: levels - j]) / (fac - 1.0)
    return float(table[0])


def richardson_mixed(f, x0: float, y0: float, base_step: float = 0.1,
                     levels: int = 4) -> float:
    """Mixed second derivative d2f/dxdy by Richardson on the cross stencil."""
    table = np.empty(levels)
    for i in range(levels):
        h = base_step / 2**i
        table[i] = (f(x0 + h, y0 + h) - f(x0 + h, y0 - h)
                    - f(x0 - h, y0 + h) + f(x0 - h, y0 - h)) / (4.0 * h * h)
    for j in range(1, levels):
        fac = 4.0**j
        table[: levels - j] = (fac * table[1: levels - j + 1] - table[: levels - j]) / (fac - 1.0)
    return float(table[0])


def one_sided_derivatives(f, x0: float, side: int, gap: float, step: float,
                          degree: int = 6, max_order: int = 3) -> list[float]:
    """Estimate f(x0), f'(x0), ..., f^(max_order)(x0) using points on one side only.

    Samples at x0 + side*(gap + j*step), j = 0..degree, fits the interpolating
    polynomial in the shifted variable, and reads derivatives at x0.  Used for
    branch comparisons where the function is not evaluable across x0.
    """
    if side not in (-1, 1):
        raise ValueError("side must be +1 or -1")
    ts = side * (gap + step * np.arange(degree + 1))
    ys = np.array([f(x0 + t) for t in ts], dtype=float)
    scale = np.max(np.abs(ts))
    coeffs = np.polynomial.polynomial.polyfit(ts / scale, ys, degree)
    out = []
    fact = 1.0
    for k in range(max_order + 1):
        if k > 0:
            fact *= k
        out.append(float(coeffs[k]) * fact / scale**k)
    return out
