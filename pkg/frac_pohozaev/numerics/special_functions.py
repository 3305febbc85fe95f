"""Gamma-family primitives, incomplete beta and the normalization constants.

All arguments are positive: the fundamental-solution constant ``-c_{N,-s}`` is
simplified algebraically so that no reflection step is ever needed.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass
from functools import lru_cache

from ..exceptions import ConvergenceError, DomainError

# Lanczos approximation (N=13, g=6.024680040776729583740234375), rational form of
# the exp(-g)-scaled sum. Coefficients are in descending powers of x.
_LANCZOS_G = 6.024680040776729583740234375
_LANCZOS_NUM = (
    0.006061842346248906525783753964555936883222,
    0.5098416655656676188125178644804694509993,
    19.51992788247617482847860966235652136208,
    449.9445569063168119446858607650988409623,
    6955.999602515376140356310115515198987526,
    75999.29304014542649875303443598909137092,
    601859.6171681098786670226533699352302507,
    3481712.15498064590882071018964774556468,
    14605578.08768506808414169982791359218571,
    43338889.32467613834773723740590533316085,
    86363131.28813859145546927288977868422342,
    103794043.1163445451906271053616070238554,
    56906521.91347156388090791033559122686859,
)
_LANCZOS_DEN = (
    1.0,
    66.0,
    1925.0,
    32670.0,
    357423.0,
    2637558.0,
    13339535.0,
    45995730.0,
    105258076.0,
    150917976.0,
    120543840.0,
    39916800.0,
    0.0,
)

_GAMMA_OVERFLOW = 171.6
_FACTORIAL_LIMIT = 170
_FPMIN = 1e-300
_CF_EPS = 1e-15
DEFAULT_BETA_ITERATIONS = 500


def _check_positive(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value) or value <= 0.0:
        raise DomainError(f"{name} must be a finite positive number, got {value!r}")
    return value


def _lanczos_sum_expg_scaled(x: float) -> float:
    """Evaluate the scaled Lanczos rational by Horner's rule (x >= 1, no cancellation)."""

    num = 0.0
    den = 0.0
    for a, b in zip(_LANCZOS_NUM, _LANCZOS_DEN):
        num = num * x + a
        den = den * x + b
    return num / den


def gamma_fn(x: float) -> float:
    """Return Γ(x) for finite x > 0.

    Integers up to 170 are returned exactly (as the nearest double of the factorial);
    arguments below 1 are shifted up once with Γ(x) = Γ(x+1)/x.

    Raises:
        DomainError: If x is not finite, x <= 0, or Γ(x) overflows.
    """

    x = _check_positive("gamma_fn argument", x)
    if x >= _GAMMA_OVERFLOW:
        raise DomainError(f"gamma_fn overflows for x={x!r}")
    if x.is_integer() and x <= _FACTORIAL_LIMIT:
        return float(math.factorial(int(x) - 1))
    if x < 1.0:
        result = gamma_fn(x + 1.0) / x
        if not math.isfinite(result):
            raise DomainError(f"gamma_fn overflows for x={x!r}")
        return result

    zgh = x + _LANCZOS_G - 0.5
    scaled = _lanczos_sum_expg_scaled(x)
    if x > 100.0:
        half = zgh ** ((x - 0.5) / 2.0)
        return scaled * half * (half * math.exp(0.5 - x))
    return scaled * zgh ** (x - 0.5) * math.exp(0.5 - x)


def log_gamma(x: float) -> float:
    """Return log Γ(x) for finite x > 0."""

    x = _check_positive("log_gamma argument", x)
    if x < 1.0:
        return log_gamma(x + 1.0) - math.log(x)
    zgh = x + _LANCZOS_G - 0.5
    return math.log(_lanczos_sum_expg_scaled(x)) + (x - 0.5) * math.log(zgh) + (0.5 - x)


def beta_fn(a: float, b: float) -> float:
    """Return the complete beta function B(a, b) = Γ(a)Γ(b)/Γ(a+b)."""

    a = _check_positive("beta_fn a", a)
    b = _check_positive("beta_fn b", b)
    if a + b < _FACTORIAL_LIMIT:
        return gamma_fn(a) * gamma_fn(b) / gamma_fn(a + b)
    return math.exp(log_gamma(a) + log_gamma(b) - log_gamma(a + b))


def _beta_continued_fraction(a: float, b: float, x: float, max_iterations: int) -> float:
    """Modified Lentz evaluation of the incomplete-beta continued fraction."""

    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _FPMIN:
        d = _FPMIN
    d = 1.0 / d
    h = d
    for m in range(1, max_iterations + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = 1.0 + aa / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = 1.0 + aa / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _CF_EPS:
            return h
    raise ConvergenceError(
        "incomplete_beta continued fraction",
        max_iterations,
        detail=f"x={x!r}, a={a!r}, b={b!r}",
    )


def incomplete_beta_lower(
    x: float,
    a: float,
    b: float,
    *,
    complement: float | None = None,
    max_iterations: int = DEFAULT_BETA_ITERATIONS,
) -> float:
    """Return the unnormalised lower incomplete beta ∫_0^x u^{a-1}(1-u)^{b-1} du.

    Args:
        x: Upper limit in [0, 1].
        a: First shape parameter (> 0).
        b: Second shape parameter (> 0).
        complement: ``1 - x`` when the caller knows it more accurately than the
            subtraction would give (e.g. ``1/(1+r)`` for ``x = r/(1+r)``).
        max_iterations: Continued-fraction iteration budget.

    Raises:
        DomainError: On parameter violations.
        ConvergenceError: If the continued fraction exceeds its budget.
    """

    a = _check_positive("incomplete_beta_lower a", a)
    b = _check_positive("incomplete_beta_lower b", b)
    x = float(x)
    if not math.isfinite(x) or x < 0.0 or x > 1.0:
        raise DomainError(f"incomplete_beta_lower x must lie in [0, 1], got {x!r}")
    one_minus_x = 1.0 - x if complement is None else float(complement)
    if x == 0.0:
        return 0.0
    if x == 1.0 or one_minus_x <= 0.0:
        return beta_fn(a, b)

    front = math.exp(a * math.log(x) + b * math.log(one_minus_x))
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _beta_continued_fraction(a, b, x, max_iterations) / a
    tail = front * _beta_continued_fraction(b, a, one_minus_x, max_iterations) / b
    return beta_fn(a, b) - tail


@dataclass(frozen=True, slots=True)
class OperatorParams:
    """Dimension N and order s of (−Δ)^s alone; s == 1 selects the local Laplacian.

    The pointwise operator and c_{N,s} exist for every N >= 1, so no relation between
    N and s is imposed here.
    """

    N: int
    s: float

    def __post_init__(self) -> None:
        try:
            N = operator.index(self.N)
        except TypeError:
            raise DomainError(f"N must be an integer >= 1, got {self.N!r}") from None
        if isinstance(self.N, bool) or N < 1:
            raise DomainError(f"N must be an integer >= 1, got {self.N!r}")
        object.__setattr__(self, "N", int(N))
        s = float(self.s)
        if not math.isfinite(s) or not (0.0 < s < 1.0 or s == 1.0):
            raise DomainError(f"s must lie in (0, 1) or equal 1, got {self.s!r}")
        object.__setattr__(self, "s", s)

    @property
    def is_local(self) -> bool:
        """True for the classical Laplacian (s = 1)."""

        return self.s == 1.0


@dataclass(frozen=True, slots=True)
class FracParams(OperatorParams):
    """Operator parameters that also satisfy N > 2s, as every Green-function formula needs."""

    def __post_init__(self) -> None:
        OperatorParams.__post_init__(self)
        if self.N <= 2.0 * self.s:
            raise DomainError(f"N > 2s is required, got N={self.N}, s={self.s}")


@dataclass(frozen=True, slots=True)
class ConstantSet:
    """Normalization constants derived from :class:`FracParams`.

    Attributes:
        c_norm: c_{N,s} of the operator (1 for the local Laplacian, which has no kernel)
        b_fund: b_{N,s} of the fundamental solution
        kappa_bgr: normalization of the ball Green function closed form
        sphere_area: σ_N = |S^{N-1}|
    """

    c_norm: float
    b_fund: float
    kappa_bgr: float
    sphere_area: float

    def __post_init__(self) -> None:
        for name in ("c_norm", "b_fund", "kappa_bgr", "sphere_area"):
            value = getattr(self, name)
            if not math.isfinite(value) or value <= 0.0:
                raise DomainError(f"{name} must be finite and positive, got {value!r}")


def sphere_area(N: int) -> float:
    """Return σ_N = 2π^{N/2}/Γ(N/2), the measure of the unit sphere in R^N."""

    return 2.0 * math.pi ** (N / 2.0) / gamma_fn(N / 2.0)


def normalization_constant(N: int, s: float) -> float:
    """Return c_{N,s} = π^{-N/2} s 4^s Γ((N+2s)/2)/Γ(1-s).

    Defined whenever (N+2s)/2 > 0 and 1 - s > 0, so negative s is accepted; this is
    what lets ``-normalization_constant(N, -s)`` evaluate b_{N,s} literally.
    """

    if (N + 2.0 * s) <= 0.0 or s >= 1.0 or s == 0.0:
        raise DomainError(f"c_(N,s) is undefined for N={N}, s={s}")
    return (
        math.pi ** (-N / 2.0)
        * s
        * 4.0**s
        * gamma_fn((N + 2.0 * s) / 2.0)
        / gamma_fn(1.0 - s)
    )


@lru_cache(maxsize=256)
def make_constants(p: FracParams) -> ConstantSet:
    """Return every normalization constant the kernels need for ``p``."""

    N, s = p.N, p.s
    area = sphere_area(N)
    half_n = N / 2.0
    if p.is_local:
        return ConstantSet(
            c_norm=1.0,
            b_fund=1.0 / ((N - 2) * area),
            kappa_bgr=gamma_fn(half_n) / (4.0 * math.pi**half_n),
            sphere_area=area,
        )

    gamma_s = gamma_fn(s)
    return ConstantSet(
        c_norm=normalization_constant(N, s),
        b_fund=gamma_fn(half_n - s) / (4.0**s * math.pi**half_n * gamma_s),
        kappa_bgr=gamma_fn(half_n) / (4.0**s * math.pi**half_n * gamma_s * gamma_s),
        sphere_area=area,
    )


def fundamental_constant_literal(p: FracParams) -> float:
    """Return b_{N,s} evaluated literally as -c_{N,-s} (fractional case only)."""

    if p.is_local:
        raise DomainError("the literal -c_(N,-s) form has no s = 1 counterpart")
    return -normalization_constant(p.N, -p.s)
