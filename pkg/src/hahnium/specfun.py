"""Gamma-family primitives and terminating hypergeometric series.

Everything here is a pure function of its arguments.  Float paths run in
binary64 with compensated summation; every series evaluator has an exact
twin over `fractions.Fraction`, and the exact path is the arbiter
whenever two float routes disagree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

__all__ = [
    "BigRational",
    "HypSeriesSpec",
    "gamma_ratio",
    "gauss_2f1_unit",
    "hyp_terminating",
    "hyp_terminating_exact",
    "inc_gamma_upper",
    "ln_gamma",
    "pochhammer",
    "recip_gamma",
    "thomae_image",
]

# Arbitrary-precision rationals: always lowest terms, denominator > 0.
BigRational = Fraction

_MAX_LENTZ_ITER = 500
_MAX_SERIES_ITER = 10_000
_TINY = 1e-300


def ln_gamma(x: float) -> float:
    """Natural log of the gamma function for positive argument.

    Negative arguments are never needed by callers: gamma ratios at
    negative points are rewritten as Pochhammer symbols or routed
    through `recip_gamma` instead.
    """
    if x <= 0:
        raise ValueError(f"ln_gamma requires x > 0, got {x}")
    return math.lgamma(x)


def pochhammer(a, n: int):
    """Rising factorial (a)_n = a(a+1)...(a+n-1) as an exact product.

    Returns 0 when a is a nonpositive integer with |a| < n.  The result
    type follows `a`: int and Fraction inputs stay exact.
    """
    if n < 0:
        raise ValueError(f"pochhammer requires n >= 0, got {n}")
    result = a**0  # multiplicative unit in the type of a
    for k in range(n):
        result = result * (a + k)
    return result


def _as_nonpositive_int(x) -> int | None:
    """int(x) when x is an integer-valued number <= 0, else None."""
    if isinstance(x, int):
        value = x
    elif isinstance(x, float):
        if not x.is_integer():
            return None
        value = int(x)
    elif isinstance(x, Fraction):
        if x.denominator != 1:
            return None
        value = int(x)
    else:
        return None
    return value if value <= 0 else None


def _is_gamma_pole(x) -> bool:
    return _as_nonpositive_int(x) is not None


@dataclass(frozen=True)
class HypSeriesSpec:
    """A generalized hypergeometric series at a fixed argument.

    The series is sum_k [prod_i (a_i)_k / prod_j (b_j)_k] z^k / k!.
    Terminating evaluation requires at least one numerator parameter to
    be a nonpositive integer; no denominator parameter may hit a pole
    before that termination index.
    """

    numerator_params: tuple
    denominator_params: tuple
    argument: object = 1

    def __post_init__(self) -> None:
        object.__setattr__(self, "numerator_params", tuple(self.numerator_params))
        object.__setattr__(self, "denominator_params", tuple(self.denominator_params))

    def termination_index(self) -> int:
        """Smallest |a| over nonpositive-integer numerator parameters."""
        stops = [
            -v
            for p in self.numerator_params
            if (v := _as_nonpositive_int(p)) is not None
        ]
        if not stops:
            raise ValueError(
                "series does not terminate: no nonpositive-integer numerator parameter"
            )
        return min(stops)


def hyp_terminating(spec: HypSeriesSpec) -> float:
    """Terminating series value in binary64 with compensated accumulation."""
    order = spec.termination_index()
    nums = [float(a) for a in spec.numerator_params]
    dens = [float(b) for b in spec.denominator_params]
    z = float(spec.argument)
    total = 0.0
    carry = 0.0
    term = 1.0
    for k in range(order + 1):
        # Neumaier update: keeps alternating partial sums honest.
        fresh = total + term
        if abs(total) >= abs(term):
            carry += (total - fresh) + term
        else:
            carry += (term - fresh) + total
        total = fresh
        if k == order:
            break
        ratio = z / (k + 1)
        for a in nums:
            ratio *= a + k
        for b in dens:
            if b + k == 0.0:
                raise ValueError(
                    f"denominator parameter {b} hits a pole at index {k + 1} "
                    f"before termination at {order}"
                )
            ratio /= b + k
        term *= ratio
    return total + carry


def hyp_terminating_exact(spec: HypSeriesSpec) -> Fraction:
    """Exact rational twin of `hyp_terminating` (parameters must be rational)."""
    order = spec.termination_index()
    nums = [Fraction(a) for a in spec.numerator_params]
    dens = [Fraction(b) for b in spec.denominator_params]
    z = Fraction(spec.argument)
    total = Fraction(0)
    term = Fraction(1)
    for k in range(order + 1):
        total += term
        if k == order:
            break
        ratio = z / (k + 1)
        for a in nums:
            ratio *= a + k
        for b in dens:
            if b + k == 0:
                raise ValueError(
                    f"denominator parameter {b} hits a pole at index {k + 1} "
                    f"before termination at {order}"
                )
            ratio /= b + k
        term *= ratio
    return total


def _ln_gamma_signed(x: float) -> tuple[float, int]:
    """(ln|Gamma(x)|, sign of Gamma(x)); errors at the poles."""
    if x > 0:
        return math.lgamma(x), 1
    if float(x).is_integer():
        raise ValueError(f"gamma pole at {x}")
    sign = 1 if math.floor(x) % 2 == 0 else -1
    return math.lgamma(x), sign


def recip_gamma(x: float) -> float:
    """1/Gamma(x); identically zero at the poles (nonpositive integers)."""
    if _is_gamma_pole(x):
        return 0.0
    ln_abs, sign = _ln_gamma_signed(float(x))
    return sign * math.exp(-ln_abs)


def gamma_ratio(numerators: Sequence[float], denominators: Sequence[float]) -> float:
    """prod Gamma(numerators) / prod Gamma(denominators), sign tracked in log space.

    A pole downstairs contributes a zero factor and wins; a pole
    upstairs is an error (callers rewrite those as Pochhammer symbols).
    """
    for x in numerators:
        if _is_gamma_pole(x):
            raise ValueError(f"gamma pole at {x} in a numerator")
    if any(_is_gamma_pole(x) for x in denominators):
        return 0.0
    log_total = 0.0
    sign = 1
    for x in numerators:
        ln_abs, s = _ln_gamma_signed(float(x))
        log_total += ln_abs
        sign *= s
    for x in denominators:
        ln_abs, s = _ln_gamma_signed(float(x))
        log_total -= ln_abs
        sign *= s
    return sign * math.exp(log_total)


def gauss_2f1_unit(a: float, b: float, c: float) -> float:
    """2F1(a, b; c; 1) summed by the gamma evaluation.

    Terminating cases (a or b a nonpositive integer) go through the
    finite sum, which also covers parameter ranges where the gamma form
    only holds as a limit.
    """
    if _as_nonpositive_int(a) is not None or _as_nonpositive_int(b) is not None:
        return hyp_terminating(HypSeriesSpec((a, b), (c,), 1))
    excess = c - a - b
    if excess <= 0:
        raise ValueError(
            f"gauss_2f1_unit needs c - a - b > 0 for a nonterminating series, got {excess}"
        )
    if _is_gamma_pole(c):
        raise ValueError(f"gamma pole at c = {c}")
    return gamma_ratio((c, excess), (c - a, c - b))


def thomae_image(n: int, a, b, c, d) -> tuple:
    """Rewrite 3F2(-n, a, b; c, d; 1) as prefactor times another terminating 3F2.

    Returns ((d-b)_n / (d)_n, 3F2(-n, c-a, b; c, b-d-n+1; 1)); evaluating
    prefactor times the returned series must reproduce the original sum.
    Exact when the inputs are exact.
    """
    if n < 0:
        raise ValueError(f"thomae_image requires n >= 0, got {n}")
    scale = pochhammer(d, n)
    if scale == 0:
        raise ValueError(f"(d)_n vanishes for d = {d}, n = {n}")
    prefactor = pochhammer(d - b, n) / scale
    image = HypSeriesSpec((-n, c - a, b), (c, b - d - n + 1), 1)
    return prefactor, image


def _inc_gamma_lower_series(alpha: float, z: float) -> float:
    """Lower incomplete gamma via its standard power series (z < alpha + 1)."""
    shifted = alpha
    term = 1.0 / alpha
    total = term
    for _ in range(_MAX_SERIES_ITER):
        shifted += 1.0
        term *= z / shifted
        total += term
        if abs(term) < abs(total) * 1e-17:
            return total * math.exp(alpha * math.log(z) - z)
    raise ArithmeticError(
        f"lower incomplete gamma series failed to converge for alpha={alpha}, z={z}"
    )


def _inc_gamma_upper_lentz(alpha: float, z: float) -> float:
    """Upper incomplete gamma via the Lentz continued fraction (z >= alpha + 1)."""
    b = z + 1.0 - alpha
    c = 1.0 / _TINY
    d = 1.0 / (b if b != 0.0 else _TINY)
    h = d
    for i in range(1, _MAX_LENTZ_ITER + 1):
        coeff = -i * (i - alpha)
        b += 2.0
        d = coeff * d + b
        if d == 0.0:
            d = _TINY
        c = b + coeff / c
        if c == 0.0:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            return math.exp(alpha * math.log(z) - z) * h
    raise ArithmeticError(
        f"incomplete gamma continued fraction failed to converge for alpha={alpha}, z={z}"
    )


def inc_gamma_upper(alpha: float, z: float) -> float:
    """Upper incomplete gamma Gamma(alpha, z) for alpha > 0, z >= 0.

    Split at z = alpha + 1: lower-series complement below, Lentz
    continued fraction above.  Satisfies the standard recurrence
    Gamma(alpha+1, z) = alpha*Gamma(alpha, z) + z^alpha e^{-z} and the
    finite elementary sum for integer alpha.
    """
    if alpha <= 0:
        raise ValueError(f"inc_gamma_upper requires alpha > 0, got {alpha}")
    if z < 0:
        raise ValueError(f"inc_gamma_upper requires z >= 0, got {z}")
    if z == 0.0:
        return math.gamma(alpha)
    if z < alpha + 1.0:
        return math.gamma(alpha) - _inc_gamma_lower_series(alpha, z)
    return _inc_gamma_upper_lentz(alpha, z)
