"""Dirac-Coulomb bound states.

Sommerfeld energy levels, two-component radial functions, closed-form
radial moments <r^p> as combinations of three terminating 3F2 series,
their Hahn-polynomial forms, explicit special cases, the screened 1S
potential, and the nonrelativistic limit machinery.

Radial quantities use the reduced Compton length hbar/mc as the length
unit (the scale factor beta = mc/hbar is then 1), so xi = 2*a*r stays
dimensionless.  The command-line layer converts to Bohr radii via
a0 = (hbar/mc)/alpha.

Numerical policy: the three terms of the moment closed form carry
alternating signs and can cancel almost completely for large p.  Each
term is evaluated with compensated summation and the stable
epsilon*kappa -+ nu factorizations; when the combined sum still loses
more than six digits to cancellation, the value is recomputed in exact
rational arithmetic at two nearby rational nu values and extrapolated
linearly to the true nu, and the result is flagged.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .angular import HalfInt
from .hydrogen_nr import Expectation, NrState, expect_r_power_nr, radial_nr
from .orthopoly import HahnParams, LaguerreSpec, hahn, laguerre
from .specfun import (
    HypSeriesSpec,
    gamma_ratio,
    hyp_terminating,
    hyp_terminating_exact,
    inc_gamma_upper,
    pochhammer,
)

__all__ = [
    "ALPHA_FS",
    "RelState",
    "RadialPair",
    "energy_rel",
    "fine_structure_expansion",
    "radial_rel",
    "expect_r_power_rel",
    "expect_special_rel",
    "expect_hahn_form_rel",
    "identity_checks_rel",
    "sommerfeld_remainder",
    "nonrel_limit_suite",
    "screening_rel_1s",
]

ALPHA_FS = 7.29735308e-3  # fine-structure constant


@dataclass(frozen=True)
class RelState:
    """Quantum numbers (Z, n_r, kappa) of a Dirac-Coulomb bound state.

    kappa = +(j+1/2) couples l = j+1/2, kappa = -(j+1/2) couples
    l = j-1/2.  Derived parameters: mu = Z*alpha, nu = sqrt(kappa^2-mu^2),
    epsilon = E/mc^2 and a = sqrt(1-epsilon^2).
    """

    Z: float
    n_r: int
    kappa: int
    alpha_fs: float = ALPHA_FS

    def __post_init__(self) -> None:
        if not self.Z > 0:
            raise ValueError("Z must be positive")
        if not isinstance(self.n_r, int) or self.n_r < 0:
            raise ValueError("n_r must be a nonnegative integer")
        if not isinstance(self.kappa, int) or self.kappa == 0:
            raise ValueError("kappa must be a nonzero integer")
        if self.n_r == 0 and self.kappa > 0:
            raise ValueError("the n_r = 0 state exists only for kappa < 0")
        if not self.mu < abs(self.kappa):
            raise ValueError(
                f"mu >= |kappa|: mu = Z*alpha = {self.mu:.9f} must stay below "
                f"|kappa| = {abs(self.kappa)}"
            )

    @property
    def mu(self) -> float:
        return float(self.Z) * self.alpha_fs

    @property
    def nu(self) -> float:
        return math.sqrt((self.kappa - self.mu) * (self.kappa + self.mu))

    @property
    def j(self) -> HalfInt:
        return HalfInt(2 * abs(self.kappa) - 1)

    @property
    def epsilon(self) -> float:
        n_eff = self.n_r + self.nu
        return n_eff / math.hypot(n_eff, self.mu)

    @property
    def a(self) -> float:
        # sqrt(1 - epsilon^2) without the cancellation near epsilon = 1
        n_eff = self.n_r + self.nu
        return self.mu / math.hypot(n_eff, self.mu)


@dataclass(frozen=True)
class RadialPair:
    """Large (F) and small (G) radial components at one radius."""

    F: float
    G: float


def energy_rel(state: RelState) -> float:
    """Level epsilon = E/mc^2 = 1/sqrt(1 + mu^2/(n_r+nu)^2)."""
    return state.epsilon


def fine_structure_expansion(state: RelState):
    """Coefficients (c0, c2, c4) of epsilon = c0 + c2 mu^2 + c4 mu^4 + O(mu^6).

    Exact rationals; n = n_r + |kappa| plays the principal quantum number.
    """
    n = state.n_r + abs(state.kappa)
    c2 = -Fraction(1, 2 * n**2)
    c4 = -(Fraction(n, abs(state.kappa)) - Fraction(3, 4)) / (2 * n**4)
    return Fraction(1), c2, c4


def _eps_kappa_pm(n: int, kappa: int, eps: float, nu: float, a: float):
    """(eps*kappa + nu, eps*kappa - nu) with the small member rebuilt
    from the eigenvalue identity (eps k - nu)(eps k + nu) = a^2 n (2nu+n),
    which avoids the O(mu^2) cancellation on one side."""
    product = a * a * n * (2.0 * nu + n)
    if kappa < 0:
        minus = eps * kappa - nu
        plus = product / minus if n > 0 else 0.0
    else:
        plus = eps * kappa + nu
        minus = product / plus
    return plus, minus


def radial_rel(state: RelState, r):
    """Radial pair (F, G) at r (reduced Compton lengths).

    Normalized so the integral of (F^2+G^2) r^2 is 1.  Accepts a scalar
    or an ndarray.  The n_r = 0 state keeps only the L_n^{2nu-1} column.
    """
    n, kappa = state.n_r, state.kappa
    eps, nu, a, mu = state.epsilon, state.nu, state.a, state.mu
    _, ek_minus = _eps_kappa_pm(n, kappa, eps, nu, a)
    xi = 2.0 * a * r
    norm = (a * a / nu) * math.sqrt(
        (ek_minus / (kappa - nu))
        * gamma_ratio((n + 1.0,), (n + 2.0 * nu,))
        / mu
    )
    exp = np.exp if isinstance(xi, np.ndarray) else math.exp
    shape = norm * xi ** (nu - 1.0) * exp(-xi / 2.0)
    f1 = a * mu / ek_minus
    g1 = a * (kappa - nu) / ek_minus
    f2 = kappa - nu
    g2 = mu
    lower = laguerre(LaguerreSpec(n, 2.0 * nu - 1.0), xi)
    if n >= 1:
        upper = xi * laguerre(LaguerreSpec(n - 1, 2.0 * nu + 1.0), xi)
    else:
        upper = 0.0 * xi
    return RadialPair(
        F=shape * (f1 * upper + f2 * lower),
        G=shape * (g1 * upper + g2 * lower),
    )


def _check_admissible(nu: float, p: int) -> None:
    if not 2.0 * nu + p + 1.0 > 0.0:
        raise ValueError(
            f"p={p} violates 2*nu+p+1 > 0 (nu={nu:.6f}): integral diverges"
        )


def _rc8_terms(n: int, kappa: int, p: int, eps: float, nu: float, a: float, mu: float):
    """The three closed-form terms of 4 mu nu^2 (2a)^p <r^p>."""
    ek_plus, ek_minus = _eps_kappa_pm(n, kappa, eps, nu, a)
    product = a * a * n * (2.0 * nu + n)  # = eps^2 kappa^2 - nu^2
    t1 = t2 = 0.0
    if n >= 1:
        series1 = hyp_terminating(
            HypSeriesSpec((1 - n, p + 2, -p - 1), (2.0 * nu + 2.0, 1.0))
        )
        t1 = (
            a
            * kappa
            * ek_plus
            * gamma_ratio((2.0 * nu + p + 3.0,), (2.0 * nu + 2.0,))
            * series1
        )
        series2 = hyp_terminating(
            HypSeriesSpec((1 - n, p + 3, -p), (2.0 * nu + 2.0, 2.0))
        )
        t2 = (
            -2.0
            * (p + 2)
            * mu
            * product
            * gamma_ratio((2.0 * nu + p + 2.0,), (2.0 * nu + 2.0,))
            * series2
        )
    series3 = hyp_terminating(HypSeriesSpec((-n, p + 2, -p - 1), (2.0 * nu, 1.0)))
    t3 = (
        a
        * kappa
        * ek_minus
        * gamma_ratio((2.0 * nu + p + 1.0,), (2.0 * nu,))
        * series3
    )
    return t1, t2, t3


def _poch_int(x: Fraction, k: int) -> Fraction:
    """(x)_k for integer k of either sign, exact."""
    if k >= 0:
        out = Fraction(1)
        for i in range(k):
            out *= x + i
        return out
    out = Fraction(1)
    for i in range(1, -k + 1):
        out *= x - i
    return 1 / out


def _sqrt_frac(x: Fraction, digits: int = 60) -> Fraction:
    """Rational approximation of sqrt(x) good to ~digits decimals."""
    scale = 10**digits
    root = math.isqrt(x.numerator * x.denominator * scale * scale)
    return Fraction(root, x.denominator * scale)


def _rc8_exact_at(n: int, kappa: int, p: int, nu_t: Fraction) -> Fraction:
    """<r^p> for the rational-parameter problem nu = nu_t, exact up to
    two high-precision square roots.

    With mu^2 = kappa^2 - nu^2 and the quantization rule a = eps*mu/(n+nu)
    every term is linear in eps over the rationals, so the sum is carried
    as u + v*eps with exact u, v; eps and mu enter numerically only at
    the end, at 60-digit precision.
    """
    mu2 = kappa * kappa - nu_t * nu_t
    n_eff = n + nu_t
    hyp2 = n_eff * n_eff + mu2
    eps2 = n_eff * n_eff / hyp2
    g1 = g2 = Fraction(0)
    if n >= 1:
        g1 = _poch_int(2 * nu_t + 2, p + 1) * hyp_terminating_exact(
            HypSeriesSpec((1 - n, p + 2, -p - 1), (2 * nu_t + 2, 1))
        )
        g2 = _poch_int(2 * nu_t + 2, p) * hyp_terminating_exact(
            HypSeriesSpec((1 - n, p + 3, -p), (2 * nu_t + 2, 2))
        )
    g3 = _poch_int(2 * nu_t, p + 1) * hyp_terminating_exact(
        HypSeriesSpec((-n, p + 2, -p - 1), (2 * nu_t, 1))
    )
    u = kappa * kappa * eps2 * (g1 + g3) / n_eff
    u -= 2 * (p + 2) * (eps2 * kappa * kappa - nu_t * nu_t) * g2
    v = kappa * nu_t * (g1 - g3) / n_eff
    eps_hp = _sqrt_frac(eps2)
    mu_hp = _sqrt_frac(mu2)
    total = u + v * eps_hp
    return (
        total
        * n_eff**p
        / (4 * nu_t**2 * Fraction(2) ** p * eps_hp**p * mu_hp**p)
    )


def _rc8_rational_fallback(state: RelState, p: int) -> float:
    """Moment via exact arithmetic at two dyadic nu values bracketing the
    true nu, extrapolated linearly; removes the float cancellation."""
    kappa, n = state.kappa, state.n_r
    mu2 = (Fraction(state.Z) * Fraction(state.alpha_fs)) ** 2
    nu_hp = _sqrt_frac(kappa * kappa - mu2)
    grid = Fraction(1, 2**40)
    low = Fraction(math.floor(nu_hp / grid), 1) * grid
    y_low = _rc8_exact_at(n, kappa, p, low)
    y_high = _rc8_exact_at(n, kappa, p, low + grid)
    return float(y_low + (y_high - y_low) * (nu_hp - low) / grid)


def expect_r_power_rel(state: RelState, p: int) -> Expectation:
    """<r^p> in (hbar/mc)^p units from the three-series closed form.

    Admissible when 2*nu+p+1 > 0.  Severe cancellation between the terms
    triggers the rational fallback and sets cancellation_flag.
    """
    nu = state.nu
    _check_admissible(nu, p)
    n, kappa, mu, eps, a = state.n_r, state.kappa, state.mu, state.epsilon, state.a
    terms = _rc8_terms(n, kappa, p, eps, nu, a, mu)
    total = math.fsum(terms)
    largest = max(abs(t) for t in terms)
    if largest > 0.0 and abs(total) < 1e-6 * largest:
        value = _rc8_rational_fallback(state, p)
        return Expectation(value, p, "compton_reduced", "closed_form", True)
    value = total / (4.0 * mu * nu * nu * (2.0 * a) ** p)
    return Expectation(value, p, "compton_reduced", "closed_form")


_SPECIAL_POWERS = {"r2": 2, "r1": 1, "one": 0, "rm1": -1, "rm2": -2, "rm3": -3}


def expect_special_rel(state: RelState, case: str) -> Expectation:
    """Explicit closed forms for p = 2, 1, 0, -1, -2, -3.

    case is one of r2, r1, one, rm1, rm2, rm3.  Each equals
    expect_r_power_rel at the same power; rm3 needs nu > 1.
    """
    if case not in _SPECIAL_POWERS:
        raise ValueError(f"unknown case {case!r}; expected one of "
                         f"{sorted(_SPECIAL_POWERS)}")
    p = _SPECIAL_POWERS[case]
    n, kappa = state.n_r, state.kappa
    eps, nu, a, mu = state.epsilon, state.nu, state.a, state.mu
    _check_admissible(nu, p)
    if case == "r2":
        value = (
            5.0 * n * (n + 2.0 * nu)
            + 4.0 * nu * nu
            + 1.0
            - eps * kappa * (2.0 * eps * kappa + 3.0)
        ) / (2.0 * a * a)
    elif case == "r1":
        value = (
            3.0 * eps * n * (n + 2.0 * nu) + kappa * (2.0 * eps * kappa - 1.0)
        ) / (2.0 * mu)
    elif case == "one":
        value = 1.0
    elif case == "rm1":
        # canonical form 2 a eps kappa^2 - 2 mu a^2 n over 2 mu nu^2 / a
        value = a * a * (eps * kappa * kappa - mu * a * n) / (mu * nu * nu)
    elif case == "rm2":
        value = (
            2.0
            * a**3
            * kappa
            * (2.0 * eps * kappa - 1.0)
            / (mu * nu * (4.0 * nu * nu - 1.0))
        )
    else:  # rm3
        value = (
            2.0
            * a**3
            * (3.0 * eps * eps * kappa * kappa - 3.0 * eps * kappa - nu * nu + 1.0)
            / (nu * (nu * nu - 1.0) * (4.0 * nu * nu - 1.0))
        )
    return Expectation(value, p, "compton_reduced", "closed_form")


def expect_hahn_form_rel(state: RelState, p: int, which: str = "positive") -> Expectation:
    """<r^p> (which="positive") or <1/r^{p+3}> (which="negative") through
    Hahn polynomials at negative parameter N.

    positive needs p >= 0; negative needs 2*nu - p - 2 > 0 on top of
    p >= 0.  Both agree with expect_r_power_rel.
    """
    if p < 0:
        raise ValueError("the Hahn forms take p >= 0")
    n, kappa = state.n_r, state.kappa
    eps, nu, a, mu = state.epsilon, state.nu, state.a, state.mu
    ek_plus, ek_minus = _eps_kappa_pm(n, kappa, eps, nu, a)
    product = a * a * n * (2.0 * nu + n)
    h1 = hahn(HahnParams(p + 1, 0.0, 0.0, -1.0 - 2.0 * nu), n - 1)
    h2 = hahn(HahnParams(p, 1.0, 1.0, -1.0 - 2.0 * nu), n - 1)
    h3 = hahn(HahnParams(p + 1, 0.0, 0.0, 1.0 - 2.0 * nu), n)
    if which == "positive":
        bracket = (
            a * kappa * ek_plus * h1
            - 2.0 * ((p + 2) / (p + 1)) * mu * product * h2
            + a * kappa * ek_minus * h3
        )
        value = bracket / (4.0 * mu * nu * nu * (2.0 * a) ** p)
        return Expectation(value, p, "compton_reduced", "closed_form")
    if which != "negative":
        raise ValueError("which must be 'positive' or 'negative'")
    if not 2.0 * nu - p - 2.0 > 0.0:
        raise ValueError(
            f"negative form needs 2*nu-p-2 > 0 (nu={nu:.6f}, p={p}): "
            "integral diverges"
        )
    bracket = (
        a * kappa * ek_plus * h1 / pochhammer(2.0 * nu - p, 2 * p + 3)
        + 2.0 * mu * product * h2 / pochhammer(2.0 * nu - p - 1.0, 2 * p + 3)
        + a * kappa * ek_minus * h3 / pochhammer(2.0 * nu - p - 2.0, 2 * p + 3)
    )
    value = bracket * (2.0 * a) ** (p + 3) / (4.0 * mu * nu * nu)
    return Expectation(value, -(p + 3), "compton_reduced", "closed_form")


def sommerfeld_remainder(n_r: int, kappa: int, mu) -> float:
    """epsilon(mu) minus its mu^4 fine-structure series, for Z = 1.

    The remainder is O(mu^6), around 1e-18 for mu ~ 1e-3, far below
    binary64 resolution near epsilon = 1, so both sides are built in
    rational arithmetic (60-digit square roots) before subtracting.
    """
    mu_f = Fraction(mu)
    state = RelState(1.0, n_r, kappa, alpha_fs=float(mu_f))
    c0, c2, c4 = fine_structure_expansion(state)
    nu = _sqrt_frac(kappa * kappa - mu_f * mu_f)
    n_eff = n_r + nu
    eps = n_eff / _sqrt_frac(n_eff * n_eff + mu_f * mu_f)
    return float(eps - (c0 + c2 * mu_f**2 + c4 * mu_f**4))


def identity_checks_rel(state: RelState) -> dict:
    """Both sides of the eigenvalue identity a^2 n (2nu+n) = eps^2 k^2 - nu^2
    and of the quantization rule eps*mu = a*(nu+n), with their relative
    residuals.  Evaluated at 60-digit precision so the residuals measure
    the identities, not binary64 rounding.
    """
    kappa, n = state.kappa, state.n_r
    mu2 = (Fraction(state.Z) * Fraction(state.alpha_fs)) ** 2
    mu = _sqrt_frac(mu2)
    nu = _sqrt_frac(kappa * kappa - mu2)
    n_eff = n + nu
    hyp = _sqrt_frac(n_eff * n_eff + mu2)
    eps = n_eff / hyp
    a = mu / hyp
    lhs_eig = a * a * n * (2 * nu + n)
    rhs_eig = eps * eps * kappa * kappa - nu * nu
    lhs_q = eps * mu
    rhs_q = a * (nu + n)
    def rel(x: Fraction, y: Fraction) -> float:
        scale = max(abs(x), abs(y), Fraction(1, 10**30))
        return float(abs(x - y) / scale)
    return {
        "eigenvalue_identity": (float(lhs_eig), float(rhs_eig), rel(lhs_eig, rhs_eig)),
        "quantization": (float(lhs_q), float(rhs_q), rel(lhs_q, rhs_q)),
    }


def nonrel_limit_suite(
    n_r: int,
    kappa: int,
    mu_values,
    p_values=(-1, 1, 2),
    radius: float = 2.0,
) -> dict:
    """Convergence report of the Dirac problem onto the Schroedinger one.

    For each mu in mu_values (decreasing, e.g. halving) builds the Z=1
    state with alpha = mu and collects: absolute moment errors
    |<r^p>_rel - <r^p>_nr| in Bohr units, their successive ratios
    (O(mu^2) signature: ratio ~ 4 per halving), the coefficient
    (nu - |kappa|)/mu^2 (limit -1/(2|kappa|)), and the pointwise radial
    limit F -> sign(kappa) R_nl, G -> 0 at the given Bohr radius.
    """
    n = n_r + abs(kappa)
    l = kappa if kappa > 0 else -kappa - 1
    nr_state = NrState(1.0, n, l)
    moment_errors: dict = {p: [] for p in p_values}
    nu_gap = []
    radial_f_err = []
    radial_g_over_f = []
    sign = 1.0 if kappa > 0 else -1.0
    r_nr = radial_nr(nr_state, radius)
    for mu in mu_values:
        rel_state = RelState(1.0, n_r, kappa, alpha_fs=mu)
        for p in p_values:
            rel_bohr = expect_r_power_rel(rel_state, p).value * mu**p
            nr_val = expect_r_power_nr(nr_state, p).value
            moment_errors[p].append(abs(rel_bohr - nr_val))
        nu_gap.append((rel_state.nu - abs(kappa)) / mu**2)
        pair = radial_rel(rel_state, radius / mu)
        f_bohr = pair.F * mu**-1.5
        g_bohr = pair.G * mu**-1.5
        radial_f_err.append(abs(f_bohr - sign * r_nr))
        radial_g_over_f.append(abs(g_bohr / f_bohr))
    moment_ratios = {
        p: [errs[i] / errs[i + 1] for i in range(len(errs) - 1)]
        for p, errs in moment_errors.items()
    }
    return {
        "moment_errors": moment_errors,
        "moment_ratios": moment_ratios,
        "nu_gap": nu_gap,
        "radial_f_err": radial_f_err,
        "radial_g_over_f": radial_g_over_f,
    }


def screening_rel_1s(Z: float, r: float, alpha_fs: float = ALPHA_FS) -> float:
    """Screened potential of the nucleus plus a 1S_1/2 Dirac electron.

    In e/a0 units with r in Bohr radii; nu1 = sqrt(1 - mu^2).  Recovers
    the nonrelativistic closed form as mu -> 0 and the Coulomb limits
    r*V -> Z (r -> 0), r*V -> Z-1 (r -> infinity).
    """
    if not r > 0:
        raise ValueError("r must be positive")
    mu = float(Z) * alpha_fs
    if not mu < 1.0:
        raise ValueError(f"mu >= 1: mu = {mu:.6f}; the 1S state needs mu < 1")
    nu1 = math.sqrt((1.0 - mu) * (1.0 + mu))
    x = 2.0 * Z * r
    norm = math.gamma(2.0 * nu1 + 1.0)
    peak = (2.0 * Z) ** (2.0 * nu1) * r ** (2.0 * nu1 - 1.0) * math.exp(-x) / norm
    tail = inc_gamma_upper(2.0 * nu1, x) / norm * (2.0 * nu1 / r - 2.0 * Z)
    return (Z - 1.0) / r + peak + tail
