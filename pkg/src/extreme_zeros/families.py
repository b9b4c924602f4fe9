"""Orthogonal polynomial families, their ODE coefficients and recurrences.

Every family member u solves a linear ODE that we normalize to

    u'' - 2 a(x) u' + b(x) u = 0,

and ``delta = b - a**2`` is the discriminant whose positivity region
brackets the zeros.  Polynomials are evaluated in monic form through the
three-term recurrence ``p[n+1] = (x - d[n]) p[n] - e[n] p[n-1]``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, ClassVar, Union

import numpy as np

from .errors import ParameterDomainError

__all__ = [
    "GeneralizedHermite",
    "Laguerre",
    "Jacobi",
    "BesselSpec",
    "FamilySpec",
    "OdeCoefficients",
    "DiscriminantWindow",
    "make_spec",
    "theta",
    "ode_coefficients",
    "delta_closed_form",
    "discriminant_window",
    "recurrence_coefficients",
    "jacobi_matrix",
    "total_mass",
    "eval_poly",
    "eval_poly_scaled",
]


@dataclass(frozen=True)
class GeneralizedHermite:
    """Weight ``|x|**(2 mu) exp(-x**2)`` on the real line; ``mu = 0`` is Hermite."""

    mu: float = 0.0
    family: ClassVar[str] = "hermite"

    def __post_init__(self):
        if not math.isfinite(self.mu) or self.mu <= -0.5:
            raise ParameterDomainError(f"generalized Hermite requires mu > -1/2, got mu={self.mu}")

    @property
    def params(self):
        return (self.mu, None)


@dataclass(frozen=True)
class Laguerre:
    """Weight ``x**alpha exp(-x)`` on ``[0, inf)``."""

    alpha: float = 0.0
    family: ClassVar[str] = "laguerre"

    def __post_init__(self):
        if not math.isfinite(self.alpha) or self.alpha <= -1:
            raise ParameterDomainError(f"Laguerre requires alpha > -1, got alpha={self.alpha}")

    @property
    def params(self):
        return (self.alpha, None)


@dataclass(frozen=True)
class Jacobi:
    """Weight ``(1-x)**alpha (1+x)**beta`` on ``[-1, 1]``."""

    alpha: float = 0.0
    beta: float = 0.0
    family: ClassVar[str] = "jacobi"

    def __post_init__(self):
        if not (math.isfinite(self.alpha) and math.isfinite(self.beta)) or self.alpha <= -1 or self.beta <= -1:
            raise ParameterDomainError(
                f"Jacobi requires alpha > -1 and beta > -1, got alpha={self.alpha}, beta={self.beta}"
            )

    @property
    def params(self):
        return (self.alpha, self.beta)


@dataclass(frozen=True)
class BesselSpec:
    """``x**-nu J_nu(x)``, an entire function of the Laguerre-Polya class."""

    nu: float = 0.0
    family: ClassVar[str] = "bessel"

    def __post_init__(self):
        if not math.isfinite(self.nu) or self.nu <= -0.5:
            raise ParameterDomainError(f"Bessel bound requires nu > -1/2, got nu={self.nu}")

    @property
    def params(self):
        return (self.nu, None)


FamilySpec = Union[GeneralizedHermite, Laguerre, Jacobi]


def make_spec(family: str, mu=None, alpha=None, beta=None) -> FamilySpec:
    """Build a family spec from a name and optional parameters (missing ones default to 0)."""
    family = family.lower()
    if family == "hermite":
        return GeneralizedHermite(0.0 if mu is None else float(mu))
    if family == "laguerre":
        return Laguerre(0.0 if alpha is None else float(alpha))
    if family == "jacobi":
        return Jacobi(0.0 if alpha is None else float(alpha), 0.0 if beta is None else float(beta))
    raise ParameterDomainError(f"unknown family {family!r}")


def _check_degree(k):
    if int(k) != k or k < 1:
        raise ParameterDomainError(f"degree must be an integer >= 1, got {k}")


def theta(spec, k: int) -> float:
    """Parity term of the generalized Hermite ODE: 0 for even k, 2 mu for odd k."""
    if isinstance(spec, GeneralizedHermite) and k % 2 == 1:
        return 2.0 * spec.mu
    return 0.0


@dataclass(frozen=True)
class OdeCoefficients:
    a: Callable
    b: Callable
    da: Callable
    d2a: Callable
    db: Callable
    domain: tuple[float, float] = (-math.inf, math.inf)
    k: int | None = None
    theta: float = 0.0
    singular: tuple[float, ...] = field(default=())

    def delta(self, x):
        return self.b(x) - self.a(x) ** 2

    def is_singular(self, x, rtol: float = 1e-12) -> bool:
        return any(abs(x - s) <= rtol * max(1.0, abs(s)) for s in self.singular)


def _const(c):
    return lambda x: 0.0 * x + c


def ode_coefficients(spec, k: int | None = None) -> OdeCoefficients:
    """Coefficients ``a, b`` (and ``a', a'', b'``) of the normalized ODE.

    ``k`` is ignored for :class:`BesselSpec`.
    """
    if isinstance(spec, BesselSpec):
        c = spec.nu + 0.5
        return OdeCoefficients(
            a=lambda x: -c / x,
            b=_const(1.0),
            da=lambda x: c / x**2,
            d2a=lambda x: -2.0 * c / x**3,
            db=_const(0.0),
            domain=(0.0, math.inf),
            singular=(0.0,),
        )
    _check_degree(k)
    if isinstance(spec, GeneralizedHermite):
        mu, th = spec.mu, theta(spec, k)
        if mu == 0.0:
            return OdeCoefficients(
                a=lambda x: 0.0 * x + x,
                b=_const(2.0 * k),
                da=_const(1.0),
                d2a=_const(0.0),
                db=_const(0.0),
                k=k,
            )
        return OdeCoefficients(
            a=lambda x: x - mu / x,
            b=lambda x: 2.0 * k - th / x**2,
            da=lambda x: 1.0 + mu / x**2,
            d2a=lambda x: -2.0 * mu / x**3,
            db=lambda x: 2.0 * th / x**3,
            domain=(0.0, math.inf),
            k=k,
            theta=th,
            singular=(0.0,),
        )
    if isinstance(spec, Laguerre):
        # r*s = alpha + 1 with r, s = sqrt(k+alpha+1) -/+ sqrt(k)
        rs = spec.alpha + 1.0
        return OdeCoefficients(
            a=lambda x: (x - rs) / (2.0 * x),
            b=lambda x: k / x,
            da=lambda x: rs / (2.0 * x**2),
            d2a=lambda x: -rs / x**3,
            db=lambda x: -k / x**2,
            domain=(0.0, math.inf),
            k=k,
            singular=(0.0,),
        )
    if isinstance(spec, Jacobi):
        al, be = spec.alpha, spec.beta
        slope, q = al + be + 2.0, al - be
        kk = k * (k + al + be + 1.0)

        def da(x):
            w = 1.0 - x * x
            return (0.5 * slope * w + x * (slope * x + q)) / w**2

        def d2a(x):
            w = 1.0 - x * x
            num = 0.5 * slope * w + x * (slope * x + q)
            return (slope * x + q) / w**2 + 4.0 * x * num / w**3

        return OdeCoefficients(
            a=lambda x: (slope * x + q) / (2.0 * (1.0 - x * x)),
            b=lambda x: kk / (1.0 - x * x),
            da=da,
            d2a=d2a,
            db=lambda x: 2.0 * kk * x / (1.0 - x * x) ** 2,
            domain=(-1.0, 1.0),
            k=k,
            singular=(-1.0, 1.0),
        )
    raise ParameterDomainError(f"unsupported spec {spec!r}")


def delta_closed_form(spec, k, x):
    """Discriminant written in the factored forms used for the closed-form bounds."""
    if isinstance(spec, BesselSpec):
        return 1.0 - (2 * spec.nu + 1) ** 2 / (4.0 * x * x)
    if isinstance(spec, GeneralizedHermite):
        mu, th = spec.mu, theta(spec, k)
        return (2 * k * x * x - th - (x * x - mu) ** 2) / (x * x)
    if isinstance(spec, Laguerre):
        r = math.sqrt(k + spec.alpha + 1) - math.sqrt(k)
        s = math.sqrt(k + spec.alpha + 1) + math.sqrt(k)
        return (x - r * r) * (s * s - x) / (4.0 * x * x)
    if isinstance(spec, Jacobi):
        s, q, r = spec.alpha + spec.beta + 1, spec.alpha - spec.beta, 2 * k + spec.alpha + spec.beta + 1
        return -((r * r + 2 * s + 1) * x * x + 2 * q * (s + 1) * x + q * q + s * s - r * r) / (
            4.0 * (1.0 - x * x) ** 2
        )
    raise ParameterDomainError(f"unsupported spec {spec!r}")


@dataclass(frozen=True)
class DiscriminantWindow:
    """Interval ``(y1, y2)`` on which ``delta > 0`` inside ``domain``.

    ``clamped`` marks a generalized Hermite window whose lower radicand
    ``k + mu - r`` came out negative and was set to zero.
    """

    y1: float
    y2: float
    domain: tuple[float, float]
    clamped: bool = False

    @property
    def width(self) -> float:
        return self.y2 - self.y1


def discriminant_window(spec, k: int | None = None) -> DiscriminantWindow:
    if isinstance(spec, BesselSpec):
        return DiscriminantWindow(spec.nu + 0.5, math.inf, (0.0, math.inf))
    _check_degree(k)
    if isinstance(spec, GeneralizedHermite):
        mu = spec.mu
        if mu == 0.0:
            y = math.sqrt(2.0 * k)
            return DiscriminantWindow(-y, y, (-math.inf, math.inf))
        r = math.sqrt(k * k + 2 * k * mu - theta(spec, k))
        inner = k + mu - r
        return DiscriminantWindow(
            math.sqrt(max(inner, 0.0)), math.sqrt(k + mu + r), (0.0, math.inf), clamped=inner < 0
        )
    if isinstance(spec, Laguerre):
        r = math.sqrt(k + spec.alpha + 1) - math.sqrt(k)
        s = math.sqrt(k + spec.alpha + 1) + math.sqrt(k)
        return DiscriminantWindow(r * r, s * s, (0.0, math.inf))
    if isinstance(spec, Jacobi):
        s, q, r = spec.alpha + spec.beta + 1, spec.alpha - spec.beta, 2 * k + spec.alpha + spec.beta + 1
        big_r = math.sqrt((r * r - q * q + 2 * s + 1) * (r * r - s * s))
        den = r * r + 2 * s + 1
        return DiscriminantWindow(-(big_r + q * (s + 1)) / den, (big_r - q * (s + 1)) / den, (-1.0, 1.0))
    raise ParameterDomainError(f"unsupported spec {spec!r}")


def recurrence_coefficients(spec, k: int):
    """Monic recurrence coefficients ``(d, e)``, both of length k.

    ``d[n]`` is the diagonal term for ``n = 0..k-1``; ``e[n]`` is the squared
    off-diagonal for ``n = 1..k-1`` and ``e[0] = 0``.
    """
    _check_degree(k)
    n = np.arange(k, dtype=float)
    e = np.zeros(k)
    if isinstance(spec, GeneralizedHermite):
        d = np.zeros(k)
        e[1:] = n[1:] / 2.0 + spec.mu * (n[1:] % 2)
    elif isinstance(spec, Laguerre):
        d = 2.0 * n + spec.alpha + 1.0
        e[1:] = n[1:] * (n[1:] + spec.alpha)
    elif isinstance(spec, Jacobi):
        al, be = spec.alpha, spec.beta
        ab = al + be
        d = np.empty(k)
        d[0] = (be - al) / (ab + 2.0)
        t = 2.0 * n[1:] + ab
        d[1:] = (be * be - al * al) / (t * (t + 2.0))
        if k > 1:
            e[1] = 4.0 * (1 + al) * (1 + be) / ((2 + ab) ** 2 * (3 + ab))
        if k > 2:
            m = n[2:]
            t = 2.0 * m + ab
            e[2:] = 4.0 * m * (m + al) * (m + be) * (m + ab) / (t * t * (t + 1.0) * (t - 1.0))
    else:
        raise ParameterDomainError(f"unsupported spec {spec!r}")
    return d, e


def jacobi_matrix(spec, k: int):
    """Diagonal and (strictly positive) off-diagonal of the symmetric tridiagonal Jacobi matrix."""
    d, e = recurrence_coefficients(spec, k)
    return d.copy(), np.sqrt(e[1:])


def total_mass(spec) -> float:
    """Integral of the weight function over its support."""
    if isinstance(spec, GeneralizedHermite):
        return math.gamma(spec.mu + 0.5)
    if isinstance(spec, Laguerre):
        return math.gamma(spec.alpha + 1.0)
    if isinstance(spec, Jacobi):
        al, be = spec.alpha, spec.beta
        return math.exp(
            (al + be + 1) * math.log(2.0) + math.lgamma(al + 1) + math.lgamma(be + 1) - math.lgamma(al + be + 2)
        )
    raise ParameterDomainError(f"unsupported spec {spec!r}")


_HI = 2.0**400
_LO = 2.0**-400


def _run_recurrence(d, e, x):
    """Evaluate ``p_k, p_{k-1}, p_k'`` with per-point power-of-two rescaling.

    Returns the three arrays and the integer exponent ``s`` such that the true
    values are the returned ones times ``2**s``.
    """
    x = np.asarray(x, dtype=float)
    p_prev = np.zeros_like(x)
    p = np.ones_like(x)
    dp_prev = np.zeros_like(x)
    dp = np.zeros_like(x)
    expo = np.zeros(x.shape, dtype=np.int64)
    for n in range(len(d)):
        xd = x - d[n]
        p_next = xd * p - e[n] * p_prev
        dp_next = p + xd * dp - e[n] * dp_prev
        p_prev, p, dp_prev, dp = p, p_next, dp, dp_next
        if n % 4 != 3 and n != len(d) - 1:
            continue
        m = np.maximum(np.maximum(np.abs(p), np.abs(p_prev)), np.maximum(np.abs(dp), np.abs(dp_prev)))
        rescale = (m > _HI) | ((m < _LO) & (m > 0))
        if rescale.any():
            _, ex = np.frexp(np.where(rescale, m, 1.0))
            ex = np.where(rescale, ex, 0)
            p, p_prev = np.ldexp(p, -ex), np.ldexp(p_prev, -ex)
            dp, dp_prev = np.ldexp(dp, -ex), np.ldexp(dp_prev, -ex)
            expo += ex
    return p, p_prev, dp, expo


def eval_poly_scaled(spec, k: int, x):
    """Monic ``(p_k, p_{k-1}, p_k', exponent)``; true values are ``2**exponent`` times these."""
    d, e = recurrence_coefficients(spec, k)
    return _run_recurrence(d, e, x)


def eval_poly(spec, k: int, x):
    """Value and first derivative of the monic degree-k family member at x.

    Both outputs share one positive factor ``2**-s``, with ``s = 0`` unless the
    unscaled pair would leave the double range; signs and the ratio
    ``value / derivative`` are always exact up to rounding.
    """
    p, _, dp, expo = eval_poly_scaled(spec, k, x)
    fits = np.abs(expo) < 600
    scale = np.where(fits, np.ldexp(1.0, np.where(fits, expo, 0)), 1.0)
    with np.errstate(over="ignore"):
        value, deriv = p * scale, dp * scale
    bad = ~np.isfinite(value) | ~np.isfinite(deriv)
    value = np.where(bad, p, value)
    deriv = np.where(bad, dp, deriv)
    if np.ndim(x) == 0:
        return float(value), float(deriv)
    return value, deriv
