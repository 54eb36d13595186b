"""Master integrals of products of two Laguerre polynomials.

Everything here reduces to

    J = integral_0^inf e^(-x) x^(alpha+s) L_n^alpha(x) L_m^beta(x) dx

for n >= m, integer alpha - beta and alpha + s > -1.  The closed form is a
single terminating 3F2 at unit argument; all gamma-function ratios collapse
to Pochhammer symbols, so only one Gamma(alpha+s+1) survives and the exact
rational path just needs alpha + s to be a nonnegative integer.

Two evaluation routes exist.  The direct route keeps the series produced by
repeated integration by parts; its partner is the image of that series under
the classical three-term transformation.  They agree wherever both are
regular, and the direct route is the one that stays finite when s is a
nonpositive integer (negative moments), because there the transformed
prefactor hits a gamma pole.

The diagonal case n = m with integer s is where the discrete Chebyshev
polynomials appear: J is a polynomial norm times t_k evaluated at the degree,
which is what makes hydrogenic moment formulas three-term-recursive.

Also here: the incomplete version of J with lower limit z > 0 (needed for
screening potentials), connection coefficients between Laguerre families with
different superscripts, and linearization coefficients of a product
L_n^alpha L_m^alpha back into the same family.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .orthopoly import LaguerreSpec, chebyshev_discrete, laguerre
from .specfun import (
    HypSeriesSpec,
    hyp_terminating,
    hyp_terminating_exact,
    inc_gamma_upper,
    pochhammer,
)

__all__ = [
    "JSpec",
    "LinearizationTriple",
    "j_integral",
    "j_integral_exact",
    "j_diag_positive",
    "j_diag_positive_exact",
    "j_diag_negative",
    "j_diag_negative_exact",
    "j_integral_incomplete",
    "connection_coeffs",
    "linearization_coeffs",
    "linearization_closed_form",
    "triple_product_integral",
]

Real = Union[int, float, Fraction]


def _is_exact(value: Real) -> bool:
    return isinstance(value, (int, Fraction)) and not isinstance(value, bool)


def _is_integer_valued(value: Real) -> bool:
    if isinstance(value, int):
        return True
    if isinstance(value, Fraction):
        return value.denominator == 1
    return float(value).is_integer()


@dataclass(frozen=True)
class JSpec:
    """Parameters of the master integral.

    n, m are the polynomial degrees (n >= m >= 0), alpha and beta their
    superscripts, and s shifts the weight exponent to alpha + s.  The
    integral converges iff alpha + s > -1; alpha - beta must be an integer
    for the closed form to terminate.
    """

    n: int
    m: int
    s: Real
    alpha: Real
    beta: Real

    def __post_init__(self) -> None:
        if self.m < 0 or self.n < self.m:
            raise ValueError(f"need n >= m >= 0, got n={self.n}, m={self.m}")
        if not _is_integer_valued(self.alpha - self.beta):
            raise ValueError("alpha - beta must be an integer")
        if not self.alpha + self.s > -1:
            raise ValueError("need alpha + s > -1 for convergence")


@dataclass(frozen=True)
class LinearizationTriple:
    """Coefficients c_p of L_n^alpha L_m^alpha = sum_p c_p L_p^alpha.

    coefficients[i] belongs to p = n - m + i; the support is exactly
    p in [n - m, n + m].
    """

    n: int
    m: int
    alpha: Real
    coefficients: tuple

    @property
    def p_min(self) -> int:
        return self.n - self.m

    @property
    def p_max(self) -> int:
        return self.n + self.m

    def coefficient(self, p: int) -> Real:
        if p < self.p_min or p > self.p_max:
            return 0 * self.coefficients[0]
        return self.coefficients[p - self.p_min]


def _series_direct(spec: JSpec) -> HypSeriesSpec:
    # From n-fold integration by parts; denominator s-n+1 is safe because
    # the -m (or s+1, when s <= 0) termination always precedes its pole.
    return HypSeriesSpec(
        (-spec.m, spec.s + 1, spec.alpha + spec.s + 1),
        (spec.beta + 1, spec.s - spec.n + 1),
    )


def _series_transformed(spec: JSpec) -> HypSeriesSpec:
    return HypSeriesSpec(
        (-spec.m, spec.s + 1, spec.beta - spec.alpha - spec.s),
        (spec.beta + 1, spec.n - spec.m + 1),
    )


def _pick_route(spec: JSpec, route: str) -> str:
    if route == "auto":
        # Nonpositive-integer s+1 (negative moments) goes direct: there the
        # transformed series would truncate through a prefactor pole, while
        # the direct denominator pole sits beyond the termination index.
        # Everything else, including s = 0, goes through the transform,
        # whose denominators (beta+1, n-m+1) are never at a pole.
        if _is_integer_valued(spec.s) and spec.s <= -1:
            return "direct"
        return "transformed"
    if route not in ("direct", "transformed"):
        raise ValueError(f"unknown route {route!r}")
    return route


def j_integral(spec: JSpec, route: str = "auto") -> float:
    """Master integral as a float.

    route="direct" uses the series straight from integration by parts,
    route="transformed" its three-term transform; "auto" picks the one that
    is regular for the given s.  Both are exposed so callers can assert
    their agreement wherever both are finite.
    """
    scale = math.gamma(float(spec.alpha + spec.s) + 1.0)
    scale *= float(pochhammer(spec.beta + 1, spec.m))
    if _pick_route(spec, route) == "direct":
        sign = -1.0 if spec.n % 2 else 1.0
        weight = float(pochhammer(spec.s - spec.n + 1, spec.n))
        weight /= math.factorial(spec.n) * math.factorial(spec.m)
        series = hyp_terminating(_series_direct(spec))
    else:
        d = spec.n - spec.m
        sign = -1.0 if d % 2 else 1.0
        weight = float(pochhammer(spec.s - d + 1, d))
        weight /= math.factorial(spec.m) * math.factorial(d)
        series = hyp_terminating(_series_transformed(spec))
    return sign * scale * weight * series


def j_integral_exact(spec: JSpec, route: str = "auto") -> Fraction:
    """Master integral in exact rational arithmetic.

    Requires alpha + s to be a nonnegative integer (so the surviving gamma
    factor is a factorial) and all parameters rational.
    """
    total = Fraction(spec.alpha) + Fraction(spec.s)
    if total.denominator != 1 or total < 0:
        raise ValueError("exact evaluation needs integer alpha + s >= 0")
    spec = JSpec(spec.n, spec.m, Fraction(spec.s), Fraction(spec.alpha), Fraction(spec.beta))
    scale = Fraction(math.factorial(int(total))) * pochhammer(spec.beta + 1, spec.m)
    if _pick_route(spec, route) == "direct":
        sign = -1 if spec.n % 2 else 1
        weight = Fraction(
            pochhammer(spec.s - spec.n + 1, spec.n),
            math.factorial(spec.n) * math.factorial(spec.m),
        )
        series = hyp_terminating_exact(_series_direct(spec))
    else:
        d = spec.n - spec.m
        sign = -1 if d % 2 else 1
        weight = Fraction(
            pochhammer(spec.s - d + 1, d),
            math.factorial(spec.m) * math.factorial(d),
        )
        series = hyp_terminating_exact(_series_transformed(spec))
    return sign * scale * weight * series


def j_diag_positive(n: int, alpha: float, k: int) -> float:
    """Diagonal moment J with weight x^(alpha+k), k >= 0 integer.

    Equals the squared norm Gamma(alpha+n+1)/n! times the discrete Chebyshev
    polynomial t_k(n, -alpha).
    """
    if k < 0:
        raise ValueError("k must be a nonnegative integer")
    norm = math.gamma(float(alpha) + n + 1.0) / math.factorial(n)
    return norm * float(chebyshev_discrete(k, n, -float(alpha)))


def j_diag_positive_exact(n: int, alpha: int, k: int) -> Fraction:
    if k < 0:
        raise ValueError("k must be a nonnegative integer")
    if not _is_integer_valued(alpha) or alpha + n < 0:
        raise ValueError("exact evaluation needs integer alpha with alpha + n >= 0")
    alpha = int(alpha)
    norm = Fraction(math.factorial(alpha + n), math.factorial(n))
    return norm * chebyshev_discrete(k, n, Fraction(-alpha))


def j_diag_negative(n: int, alpha: float, k: int) -> float:
    """Diagonal inverse moment J with weight x^(alpha-k-1), 0 <= k < alpha.

    Same discrete Chebyshev value as the positive side; the norm is divided
    by the Pochhammer run (alpha-k)_(2k+1), which is where the k < alpha
    convergence bound shows up.
    """
    if not 0 <= k < alpha:
        raise ValueError("need 0 <= k < alpha")
    norm = math.gamma(float(alpha) + n + 1.0) / math.factorial(n)
    norm /= float(pochhammer(float(alpha) - k, 2 * k + 1))
    return norm * float(chebyshev_discrete(k, n, -float(alpha)))


def j_diag_negative_exact(n: int, alpha: int, k: int) -> Fraction:
    if not 0 <= k < alpha:
        raise ValueError("need 0 <= k < alpha")
    if not _is_integer_valued(alpha):
        raise ValueError("exact evaluation needs integer alpha")
    alpha = int(alpha)
    norm = Fraction(math.factorial(alpha + n), math.factorial(n))
    norm /= pochhammer(Fraction(alpha - k), 2 * k + 1)
    return norm * chebyshev_discrete(k, n, Fraction(-alpha))


def _shape_derivative(m: int, beta: float, s: float, order: int, z: float) -> float:
    """order-th derivative of z^s L_m^beta(z), evaluated at z > 0.

    Termwise differentiation of the monomial expansion; the gamma ratio per
    term is a Pochhammer of length `order`, finite for every real s.
    """
    total = 0.0
    comp = 0.0
    coeff = 1.0  # (-m)_j / (j! (beta+1)_j), updated in place
    for j in range(m + 1):
        term = coeff * float(pochhammer(s + j - order + 1, order))
        term *= z ** (s + j - order)
        # Neumaier update keeps alternating-sign sums honest.
        t = total + term
        if abs(total) >= abs(term):
            comp += (total - t) + term
        else:
            comp += (term - t) + total
        total = t
        coeff *= (j - m) / ((j + 1) * (beta + 1 + j))
    return (total + comp) * float(pochhammer(beta + 1, m)) / math.factorial(m)


def j_integral_incomplete(spec: JSpec, z: float) -> float:
    """Master integral with the lower limit raised to z >= 0.

    Integration by parts n times leaves boundary terms at z (a Laguerre
    ladder against derivatives of the weight-times-L_m factor) plus a tail
    that is the complete closed form with every gamma replaced by an upper
    incomplete gamma.  At z = 0 this reduces to j_integral exactly.
    """
    if z < 0:
        raise ValueError("z must be nonnegative")
    if z == 0:
        return j_integral(spec)
    n, m = spec.n, spec.m
    s, alpha, beta = float(spec.s), float(spec.alpha), float(spec.beta)
    damp = math.exp(-z)

    boundary = 0.0
    for k in range(1, n + 1):
        term = math.factorial(n - k) / math.factorial(n)
        term *= z ** (alpha + k) * damp
        term *= laguerre(LaguerreSpec(n - k, alpha + k), z)
        term *= _shape_derivative(m, beta, s, k - 1, z)
        boundary += -term if k % 2 else term

    tail = 0.0
    coeff = 1.0  # (-m)_k / (k! (beta+1)_k)
    for k in range(m + 1):
        piece = coeff * float(pochhammer(s - n + k + 1, n))
        piece *= inc_gamma_upper(alpha + s + k + 1.0, z)
        tail += piece
        coeff *= (k - m) / ((k + 1) * (beta + 1 + k))
    tail *= float(pochhammer(beta + 1, m)) / (math.factorial(n) * math.factorial(m))
    if n % 2:
        tail = -tail
    return boundary + tail


def connection_coeffs(n: int, alpha: Real, beta: Real) -> list:
    """Coefficients expanding L_n^alpha over L_m^beta, m = 0..n.

    coefficient[m] = (alpha-beta)_(n-m) / (n-m)!.  Exact when alpha and beta
    are int/Fraction, floats otherwise.
    """
    if n < 0:
        raise ValueError("degree must be nonnegative")
    exact = _is_exact(alpha) and _is_exact(beta)
    out = []
    for m in range(n + 1):
        d = n - m
        run = pochhammer(alpha - beta, d)
        if exact:
            out.append(Fraction(run) / math.factorial(d))
        else:
            out.append(float(run) / math.factorial(d))
    return out


def _linearization_single(n: int, m: int, p: int, alpha: Real, exact: bool) -> Real:
    one = Fraction(1) if exact else 1.0
    lead = pochhammer(-p, n - m)  # kills p < n - m
    if lead == 0:
        return 0 * one
    total = 0 * one
    coeff = one  # (-p)_k (-m)_k / (k! (alpha+1)_k)
    for k in range(min(p, m) + 1):
        gap = n - m - p + 2 * k
        # gap < 0 means the reciprocal gamma of the term is at a pole: the
        # term vanishes, which is what enforces 2k >= p - n + m.
        if gap >= 0:
            total += coeff * math.factorial(2 * k) / math.factorial(gap)
        coeff = coeff * ((k - p) * (k - m)) / ((k + 1) * (alpha + 1 + k))
    pref = lead * pochhammer(alpha + 1, m)
    pref = one * pref / (math.factorial(p) * math.factorial(m))
    return -pref * total if p % 2 else pref * total


def linearization_coeffs(n: int, m: int, alpha: Real) -> LinearizationTriple:
    """All linearization coefficients of L_n^alpha L_m^alpha, n >= m.

    Single finite sum per coefficient; exact Fractions for int/Fraction
    alpha, floats otherwise.
    """
    if m < 0 or n < m:
        raise ValueError(f"need n >= m >= 0, got n={n}, m={m}")
    exact = _is_exact(alpha)
    if exact:
        alpha = Fraction(alpha)
    coeffs = tuple(
        _linearization_single(n, m, p, alpha, exact) for p in range(n - m, n + m + 1)
    )
    return LinearizationTriple(n, m, alpha, coeffs)


def linearization_closed_form(n: int, m: int, p: int, alpha: Real) -> Real:
    """Single linearization coefficient via the parity-split closed forms.

    p = n - m is a pure gamma ratio; for larger p the sum collapses to a
    terminating 3F2 whose lower parameter is 1/2 or 3/2 by the parity of
    p - n + m.  Used as an independent cross-check of linearization_coeffs.
    """
    if m < 0 or n < m:
        raise ValueError(f"need n >= m >= 0, got n={n}, m={m}")
    exact = _is_exact(alpha)
    one = Fraction(1) if exact else 1.0
    if exact:
        alpha = Fraction(alpha)
    gap = p - n + m
    if gap < 0 or p > n + m:
        return 0 * one
    if gap == 0:
        # Chu-Vandermonde collapse of the general sum.
        return one * pochhammer(alpha + 1, n) / (
            math.factorial(m) * pochhammer(alpha + 1, n - m)
        )
    # Shift the sum to start at its smallest admissible index k0 and split
    # (2k0+2j)! and the step factorial by the duplication formula: the
    # (k0+1)_j pair cancels, leaving a terminating 3F2.
    half = one / 2
    sign = -1 if p % 2 else 1
    k0 = (gap + 1) // 2
    pref = pochhammer(-p, n - m) * pochhammer(-p, k0) * pochhammer(-m, k0)
    pref = one * pref / (math.factorial(p) * math.factorial(m))
    pref *= Fraction(math.factorial(2 * k0), math.factorial(k0)) if exact else (
        math.factorial(2 * k0) / math.factorial(k0)
    )
    pref *= pochhammer(alpha + k0 + 1, m - k0)
    series = HypSeriesSpec(
        (k0 - p, k0 - m, k0 + half),
        (half if gap % 2 == 0 else 3 * half, alpha + k0 + 1),
    )
    body = hyp_terminating_exact(series) if exact else hyp_terminating(series)
    return sign * pref * body


def triple_product_integral(n: int, m: int, p: int, alpha: Real) -> Real:
    """Weighted integral of L_n^alpha L_m^alpha L_p^alpha against x^alpha e^-x.

    Norm of L_p times the linearization coefficient.  The sign pattern
    (-1)^(n+m+p) times this is nonnegative for alpha > -1.
    """
    if p < 0:
        raise ValueError("degree must be nonnegative")
    exact = _is_exact(alpha)
    if exact:
        alpha = Fraction(alpha)
        if (alpha + p).denominator != 1 or alpha + p < 0:
            raise ValueError("exact evaluation needs integer alpha + p >= 0")
        norm = Fraction(math.factorial(int(alpha) + p), math.factorial(p))
    else:
        norm = math.gamma(float(alpha) + p + 1.0) / math.factorial(p)
    return norm * _linearization_single(n, m, p, alpha, exact)
