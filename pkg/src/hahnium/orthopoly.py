"""Classical orthogonal polynomials and the discrete Hahn family.

Evaluation is by three-term recurrence in the degree throughout (never
by Rodrigues differentiation); the hypergeometric definitions stay
available as cross-checks.  Recurrences are written in plain arithmetic
so the same code runs on floats, Fractions and numpy arrays, and Hahn
prefactors use the Pochhammer rewrite (N-k)_k of Gamma(N)/Gamma(N-k) so
negative N never touches a gamma pole.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .specfun import HypSeriesSpec, hyp_terminating, hyp_terminating_exact, pochhammer

__all__ = [
    "HahnParams",
    "LaguerreSpec",
    "chebyshev_discrete",
    "hahn",
    "hahn_recurrence_rhs",
    "jacobi",
    "laguerre",
    "laguerre_derivative",
    "legendre",
]


def _is_exact(value) -> bool:
    return isinstance(value, (int, Fraction))


@dataclass(frozen=True)
class LaguerreSpec:
    """Degree and weight parameter of a generalized Laguerre polynomial.

    alpha may be any real with alpha + degree + 1 > 0; non-integer
    alpha < 0 occurs in the relativistic radial problem.
    """

    degree: int
    alpha: float

    def __post_init__(self) -> None:
        if self.degree < 0:
            raise ValueError(f"Laguerre degree must be >= 0, got {self.degree}")


@dataclass(frozen=True)
class HahnParams:
    """Degree and parameters of a Hahn polynomial h_k^{(alpha,beta)}(x, N).

    N may be negative or non-integer; the classical discrete
    orthogonality additionally needs k < N when N is a positive integer.
    """

    degree: int
    alpha: float
    beta: float
    N: float

    def __post_init__(self) -> None:
        if self.degree < 0:
            raise ValueError(f"Hahn degree must be >= 0, got {self.degree}")


def laguerre(spec: LaguerreSpec, x):
    """L_n^alpha(x) by the stable degree recurrence.

    Generic over the scalar type: exact for Fraction inputs,
    elementwise for numpy arrays.
    """
    n, alpha = spec.degree, spec.alpha
    prev = x * 0 + 1  # L_0 in the type of x
    if n == 0:
        return prev
    curr = alpha + 1 - x
    for k in range(1, n):
        prev, curr = curr, ((alpha + 2 * k + 1 - x) * curr - (alpha + k) * prev) / (k + 1)
    return curr


def laguerre_derivative(spec: LaguerreSpec, x):
    """d/dx L_n^alpha(x) = -L_{n-1}^{alpha+1}(x); zero for n = 0."""
    if spec.degree == 0:
        return x * 0
    return -laguerre(LaguerreSpec(spec.degree - 1, spec.alpha + 1), x)


def hahn(params: HahnParams, x):
    """h_k^{(alpha,beta)}(x, N) via the Pochhammer-prefactor series.

    Exact (Fraction) when all inputs are int or Fraction, binary64
    otherwise.  Raises if the series' denominator Pochhammer vanishes
    before termination (possible only for positive integer N <= k).
    """
    k = params.degree
    alpha, beta, big_n = params.alpha, params.beta, params.N
    spec = HypSeriesSpec((-k, alpha + beta + k + 1, -x), (beta + 1, 1 - big_n), 1)
    prefactor = pochhammer(big_n - k, k) * pochhammer(beta + 1, k)
    sign = -1 if k % 2 else 1
    if _is_exact(x) and all(_is_exact(v) for v in (alpha, beta, big_n)):
        return Fraction(sign, math.factorial(k)) * prefactor * hyp_terminating_exact(spec)
    return sign * float(prefactor) * hyp_terminating(spec) / math.factorial(k)


def chebyshev_discrete(k: int, x, big_n):
    """Discrete Chebyshev polynomial t_k(x, N) = h_k^{(0,0)}(x, N)."""
    return hahn(HahnParams(k, 0, 0, big_n), x)


def hahn_recurrence_rhs(k: int, alpha, beta, big_n, x, h_prev, h_curr):
    """h_{k+1} solved from the Hahn three-term recurrence in the degree.

    The recurrence reads x h_k = a_k h_{k+1} + b_k h_k + c_k h_{k-1};
    the running index in the printed coefficient formulas is the degree
    k.  h_prev is ignored at k = 0 (its coefficient multiplies h_{-1}).
    """
    if k < 0:
        raise ValueError(f"degree must be >= 0, got {k}")
    exact = all(_is_exact(v) for v in (alpha, beta, big_n, x, h_prev, h_curr))
    one = Fraction(1) if exact else 1.0
    ab = alpha + beta
    lead = one * (k + 1) * (ab + k + 1) / ((ab + 2 * k + 1) * (ab + 2 * k + 2))
    if lead == 0:
        raise ValueError(f"leading recurrence coefficient vanishes at degree {k}")
    mid = one * (alpha - beta + 2 * big_n - 2) / 4
    skew = (beta - alpha) * (beta + alpha)
    if skew != 0:
        mid += one * skew * (ab + 2 * big_n) / (4 * (ab + 2 * k) * (ab + 2 * k + 2))
    if k == 0:
        trailing = 0
    else:
        low = (
            one
            * (alpha + k)
            * (beta + k)
            * (ab + big_n + k)
            * (big_n - k)
            / ((ab + 2 * k) * (ab + 2 * k + 1))
        )
        trailing = low * h_prev
    return ((x - mid) * h_curr - trailing) / lead


def legendre(n: int, x):
    """Legendre polynomial P_n(x) by the standard recurrence."""
    if n < 0:
        raise ValueError(f"degree must be >= 0, got {n}")
    prev = x * 0 + 1
    if n == 0:
        return prev
    curr = x * 1
    for k in range(1, n):
        prev, curr = curr, ((2 * k + 1) * x * curr - k * prev) / (k + 1)
    return curr


def jacobi(n: int, alpha, beta, s):
    """Jacobi polynomial P_n^{(alpha,beta)}(s) by the table recurrence.

    Coefficients of s P_k = a_k P_{k+1} + b_k P_k + c_k P_{k-1}; the
    k = 0 step is the explicit P_1 (the printed b_0 is 0/0 at
    alpha + beta = 0).  Needs alpha + beta > -2.
    """
    if n < 0:
        raise ValueError(f"degree must be >= 0, got {n}")
    exact = all(_is_exact(v) for v in (alpha, beta, s))
    one = Fraction(1) if exact else 1.0
    prev = s * 0 + 1
    if n == 0:
        return prev
    curr = one * ((alpha + beta + 2) * s + (alpha - beta)) / 2
    ab = alpha + beta
    for k in range(1, n):
        a_k = one * 2 * (k + 1) * (ab + k + 1) / ((ab + 2 * k + 1) * (ab + 2 * k + 2))
        b_k = one * (beta - alpha) * (beta + alpha) / ((ab + 2 * k) * (ab + 2 * k + 2))
        c_k = one * 2 * (alpha + k) * (beta + k) / ((ab + 2 * k) * (ab + 2 * k + 1))
        prev, curr = curr, ((s - b_k) * curr - c_k * prev) / a_k
    return curr
