"""Bounds on extreme zeros and zero spacings.

Closed forms per family, the numeric discriminant bracket
``x_min > min(x + delta**-1/2)``, ``x_max < max(x - delta**-1/2)`` over the
window where ``delta > 0``, spacing bounds, and the two pointwise
inequalities that hold at every zero of a Laguerre-Polya function.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateWindowError, HypothesisError, InapplicableError, ParameterDomainError
from .families import (
    BesselSpec,
    GeneralizedHermite,
    Jacobi,
    Laguerre,
    OdeCoefficients,
    discriminant_window,
    ode_coefficients,
    theta,
)
from .optimize import grid_maximize, grid_minimize

# 3^(-1/3) i_11 in the Airy second-term constant, used verbatim
AIRY_CONSTANT = 1.85575
CLOSED_FORM_CONSTANT = 1.5
RESULTANT_CONSTANT = 3.0 * 2.0 ** (-11.0 / 6.0)
EPS = float(np.finfo(float).eps)

CLOSED = "closed_form"
NUMERIC = "numeric_theorem1"
RESULTANT = "resultant"
REFERENCE = "reference_szego"


@dataclass(frozen=True)
class ExtremeBounds:
    """Lower bound on the least (positive) zero and upper bound on the largest zero.

    Either side is ``None`` when the method gives no information for it.
    """

    min_zero_lower: float | None
    max_zero_upper: float | None
    method: str
    intermediates: dict = field(default_factory=dict)
    flags: tuple[str, ...] = ()


@dataclass(frozen=True)
class SpacingBound:
    gap_lower_simple: float
    gap_sq_lower: float
    interval: tuple[float, float]
    max_delta: float = math.nan


@dataclass(frozen=True)
class LambdaFormReport:
    """Slack of both pointwise zero inequalities at one zero.

    ``quad_value`` is ``delta - 2a'``; ``quartic_min`` is the minimum over
    real lambda of the quartic whose coefficients (highest first) are in
    ``coefficients``; ``scale`` is the magnitude used for tolerances.
    """

    zero: float
    quad_value: float
    quartic_min: float
    argmin_lambda: float
    coefficients: tuple[float, ...] = ()
    quad_scale: float = 1.0
    quartic_scale: float = 1.0

    @property
    def leading(self) -> float:
        return self.coefficients[0] if self.coefficients else math.nan


def _pos_pow(base, p):
    """``base**p`` for base >= 0 (0 maps to 0 for p > 0)."""
    if base < 0:
        raise ValueError(f"negative base {base} for fractional power")
    return 0.0 if base == 0.0 else math.exp(p * math.log(base))


def _check_k(k):
    if int(k) != k or k < 1:
        raise ParameterDomainError(f"degree must be an integer >= 1, got {k}")


# -- closed forms -----------------------------------------------------------


def bessel_lower_bound(nu: float) -> float:
    """Lower bound on the first positive zero of ``J_nu``.

    The formula is continuous at ``nu = -1/2`` (value 1, the limit of
    ``j_{nu,1} -> pi/2`` there), so that endpoint is accepted.
    """
    if not math.isfinite(nu) or nu < -0.5:
        raise ParameterDomainError(f"Bessel bound requires nu > -1/2, got nu={nu}")
    c = 2.0 * nu + 1.0
    if c == 0.0:
        return 1.0
    return _pos_pow(_pos_pow(c, 2.0 / 3.0) + 2.0 ** (2.0 / 3.0), 1.5) / 2.0


def gen_hermite_bounds(k: int, mu: float) -> ExtremeBounds:
    """Bounds on the least and largest POSITIVE zeros of ``H_k^mu``."""
    GeneralizedHermite(mu)
    _check_k(k)
    th = theta(GeneralizedHermite(mu), k)
    r = math.sqrt(k * k + 2 * k * mu - th)
    # k + mu - r without cancellation
    inner = (mu * mu + th) / (k + mu + r)
    flags = ()
    if inner < 0:
        inner, flags = 0.0, ("clamped_radicand",)
    outer = k + mu + r
    lower = math.sqrt(inner) + 1.5 * _pos_pow(inner / (4 * r * r), 1 / 6)
    upper = math.sqrt(outer) - 1.5 * _pos_pow(outer / (4 * r * r), 1 / 6)
    return ExtremeBounds(
        lower,
        upper,
        CLOSED,
        {"r": r, "theta": th, "y1": math.sqrt(inner), "y2": math.sqrt(outer)},
        flags,
    )


def laguerre_bounds(k: int, alpha: float) -> ExtremeBounds:
    Laguerre(alpha)
    _check_k(k)
    root_a, root_k = math.sqrt(k + alpha + 1), math.sqrt(k)
    r = (alpha + 1) / (root_a + root_k)
    s = root_a + root_k
    gap = 4.0 * root_a * root_k  # s^2 - r^2
    lower = r * r + 3 * _pos_pow(r, 4 / 3) * gap ** (-1 / 3)
    upper = s * s - 3 * _pos_pow(s, 4 / 3) * gap ** (-1 / 3) + 2
    return ExtremeBounds(lower, upper, CLOSED, {"r": r, "s": s, "y1": r * r, "y2": s * s})


def jacobi_bounds(k: int, alpha: float, beta: float) -> ExtremeBounds:
    """Closed-form bounds for ``P_k^(alpha, beta)``; proved only for ``alpha >= beta``."""
    Jacobi(alpha, beta)
    _check_k(k)
    if alpha < beta:
        raise HypothesisError("Jacobi closed-form bound requires alpha >= beta")
    s, q, r = alpha + beta + 1, alpha - beta, 2 * k + alpha + beta + 1
    big_r = math.sqrt((r * r - q * q + 2 * s + 1) * (r * r - s * s))
    den = r * r + 2 * s + 1
    y1 = -(big_r + q * (s + 1)) / den
    y2 = (big_r - q * (s + 1)) / den
    edge = (2 * big_r) ** (-1 / 3)
    lower = y1 + 3 * _pos_pow((1 - y1) * (1 + y1), 2 / 3) * edge
    upper = y2 - 3 * _pos_pow((1 - y2) * (1 + y2), 2 / 3) * edge + 4 * q * (s + 1) / den**1.5
    return ExtremeBounds(lower, upper, CLOSED, {"s": s, "q": q, "r": r, "R": big_r, "y1": y1, "y2": y2})


def jacobi_bounds_symmetric(k: int, alpha: float, beta: float) -> ExtremeBounds:
    """Jacobi bounds for any order of parameters.

    For ``alpha < beta`` the zeros of ``P^(alpha,beta)`` are the negated zeros
    of ``P^(beta,alpha)``, so the swapped bounds are negated and exchanged.
    """
    if alpha >= beta:
        return jacobi_bounds(k, alpha, beta)
    b = jacobi_bounds(k, beta, alpha)
    inter = dict(b.intermediates)
    inter["y1"], inter["y2"] = -b.intermediates["y2"], -b.intermediates["y1"]
    return ExtremeBounds(-b.max_zero_upper, -b.min_zero_lower, CLOSED, inter, b.flags + ("hypothesis_swapped",))


def closed_form_bounds(spec, k: int) -> ExtremeBounds:
    if isinstance(spec, GeneralizedHermite):
        return gen_hermite_bounds(k, spec.mu)
    if isinstance(spec, Laguerre):
        return laguerre_bounds(k, spec.alpha)
    if isinstance(spec, Jacobi):
        return jacobi_bounds_symmetric(k, spec.alpha, spec.beta)
    if isinstance(spec, BesselSpec):
        return ExtremeBounds(bessel_lower_bound(spec.nu), None, CLOSED, {"y1": spec.nu + 0.5})
    raise ParameterDomainError(f"unsupported spec {spec!r}")


# -- numeric discriminant bracket --------------------------------------------


def _inv_sqrt_delta(ode):
    def g(x):
        with np.errstate(divide="ignore", invalid="ignore"):
            d = np.asarray(ode.delta(x), dtype=float)
            return np.where(d > 0, 1.0 / np.sqrt(np.where(d > 0, d, 1.0)), np.nan)

    return g


def theorem1_numeric_bounds(spec, k: int | None = None) -> ExtremeBounds:
    """Numeric extrema of ``x +/- delta(x)**-1/2`` over the positive-discriminant window.

    Generalized Hermite is restricted to ``x > 0`` (bounds on positive zeros);
    Bessel yields only the lower bound.
    """
    ode = ode_coefficients(spec, k)
    w = discriminant_window(spec, k)
    lo, hi = w.y1, w.y2
    if isinstance(spec, BesselSpec):
        hi = 2.0 * lo + 10.0
    if isinstance(spec, GeneralizedHermite):
        lo = max(lo, 0.0)
    lo, hi = max(lo, ode.domain[0]), min(hi, ode.domain[1])
    if not lo < hi:
        raise DegenerateWindowError(f"empty discriminant window ({lo}, {hi})")
    g = _inv_sqrt_delta(ode)
    x_lo, lower = grid_minimize(lambda x: x + g(x), lo, hi)
    inter = {"y1": w.y1, "y2": w.y2, "argmin": x_lo}
    upper = None
    if not isinstance(spec, BesselSpec):
        x_hi, upper = grid_maximize(lambda x: x - g(x), lo, hi)
        inter["argmax"] = x_hi
    return ExtremeBounds(lower, upper, NUMERIC, inter)


def numeric_bounds_symmetric(spec, k: int) -> ExtremeBounds:
    """Numeric bracket; Jacobi with ``alpha < beta`` goes through the reflection."""
    if isinstance(spec, Jacobi) and spec.alpha < spec.beta:
        b = theorem1_numeric_bounds(Jacobi(spec.beta, spec.alpha), k)
        return ExtremeBounds(-b.max_zero_upper, -b.min_zero_lower, NUMERIC, {}, ("hypothesis_swapped",))
    return theorem1_numeric_bounds(spec, k)


# -- spacing ---------------------------------------------------------------------


def spacing_bounds(ode: OdeCoefficients, xi: float, xj: float) -> SpacingBound:
    """``2 / sqrt(max delta)`` and ``8 / max delta`` over the open interval ``(xi, xj)``."""
    if not xi < xj:
        raise ValueError(f"need xi < xj, got ({xi}, {xj})")
    if any(xi <= s <= xj for s in ode.singular):
        raise InapplicableError(f"interval ({xi}, {xj}) contains a coefficient singularity")
    probe = xi + (xj - xi) * np.arange(1, 65) / 65.0
    with np.errstate(divide="ignore", invalid="ignore"):
        if not np.all(np.asarray(ode.delta(probe)) > 0):
            raise InapplicableError(f"discriminant is not positive on ({xi}, {xj})")
    _, dmax = grid_maximize(ode.delta, xi, xj)
    if not (dmax > 0 and math.isfinite(dmax)):
        raise InapplicableError(f"no finite positive discriminant maximum on ({xi}, {xj})")
    return SpacingBound(2.0 / math.sqrt(dmax), 8.0 / dmax, (float(xi), float(xj)), dmax)


def spacing_lower_bounds(spec, k: int, i: int, j: int, zero_set=None) -> SpacingBound:
    """Spacing bounds between oracle zeros ``i < j`` (0-based) of the degree-k member."""
    from .zero_oracle import zeros

    zs = zero_set if zero_set is not None else zeros(spec, k)
    if not 0 <= i < j < len(zs.zeros):
        raise IndexError(f"need 0 <= i < j < {len(zs.zeros)}, got ({i}, {j})")
    return spacing_bounds(ode_coefficients(spec, k), float(zs.zeros[i]), float(zs.zeros[j]))


# -- pointwise inequalities at zeros --------------------------------------------


def _coefficients_at(spec, k, x, ode=None):
    ode = ode if ode is not None else ode_coefficients(spec, k)
    if ode.is_singular(x):
        raise InapplicableError(f"x={x} is a singular point of the ODE coefficients")
    return tuple(float(fn(x)) for fn in (ode.a, ode.da, ode.d2a, ode.b, ode.db))


def eqmin0_slack(spec, k: int, x: float, ode: OdeCoefficients | None = None) -> float:
    """``delta(x) - 2 a'(x)``, nonnegative at every zero."""
    a, da, _, b, _ = _coefficients_at(spec, k, x, ode)
    return b - a * a - 2.0 * da


def quartic_coefficients(a, da, d2a, b, db):
    """Coefficients (highest degree first) of the lambda-quartic that is >= 0 at a zero."""
    return (
        b * b - 8 * a * a * da - 4 * b * da + 4 * da * da + 4 * a * db - 4 * a * d2a,
        -4 * (a * b - 4 * a * da + db - d2a),
        2 * (2 * a * a + b - 2 * da),
        -4 * a,
        1.0,
    )


def real_cubic_roots(c3, c2, c1, c0):
    """Real roots of ``c3 t^3 + c2 t^2 + c1 t + c0`` with ``c3 != 0``; closed form plus Newton polish."""
    b, c, d = c2 / c3, c1 / c3, c0 / c3
    p = c - b * b / 3.0
    q = 2.0 * b**3 / 27.0 - b * c / 3.0 + d
    disc = (q / 2.0) ** 2 + (p / 3.0) ** 3
    if disc > 0:
        sq = math.sqrt(disc)
        ts = [float(np.cbrt(-q / 2.0 + sq) + np.cbrt(-q / 2.0 - sq))]
    elif p == 0.0:
        ts = [float(np.cbrt(-q))]
    else:
        m = 2.0 * math.sqrt(-p / 3.0)
        arg = max(-1.0, min(1.0, 3.0 * q / (p * m)))
        phi = math.acos(arg) / 3.0
        ts = [m * math.cos(phi - 2.0 * math.pi * j / 3.0) for j in range(3)]
    roots = []
    for t in ts:
        x = t - b / 3.0
        for _ in range(4):
            f = ((x + b) * x + c) * x + d
            df = (3.0 * x + 2.0 * b) * x + c
            if df == 0.0:
                break
            x_new = x - f / df
            if not math.isfinite(x_new) or abs(x_new - x) > 1e-3 * max(1.0, abs(x)):
                break
            x = x_new
        roots.append(x)
    return roots


def _poly_value(coeffs, x):
    v = 0.0
    for c in coeffs:
        v = v * x + c
    return v


def quartic_term_scales(a, da, d2a, b, db):
    """Sum of absolute terms behind each quartic coefficient."""
    a, da, d2a, b, db = (abs(v) for v in (a, da, d2a, b, db))
    return (
        b * b + 8 * a * a * da + 4 * b * da + 4 * da * da + 4 * a * db + 4 * a * d2a,
        4 * (a * b + 4 * a * da + db + d2a),
        2 * (2 * a * a + b + 2 * da),
        4 * a,
        1.0,
    )


def minimize_quartic(coeffs, noise=None):
    """Global minimum over real lambda of the quartic ``coeffs`` (highest first).

    A coefficient no larger than its entry in ``noise`` (absolute) is treated
    as zero; by default the noise is ``64 eps`` times the largest coefficient.
    Returns ``(-inf, nan)`` when the polynomial is unbounded below.
    """
    if noise is None:
        noise = (64 * EPS * max(abs(c) for c in coeffs),) * 5
    c4, c3, c2, c1, c0 = (0.0 if abs(c) <= n else c for c, n in zip(coeffs, noise))
    if c4 == 0.0:
        if c3 != 0.0:
            return -math.inf, math.nan
        if c2 > 0:
            return c0 - c1 * c1 / (4 * c2), -c1 / (2 * c2)
        if c2 == 0.0 and c1 == 0.0:
            return c0, 0.0
        return -math.inf, math.nan
    if c4 < 0:
        return -math.inf, math.nan
    reduced = (c4, c3, c2, c1, c0)
    candidates = real_cubic_roots(4 * c4, 3 * c3, 2 * c2, c1) + [0.0]
    values = [_poly_value(reduced, lam) for lam in candidates]
    i = int(np.argmin(values))
    return values[i], candidates[i]


def quartic_noise(spec, k, x, ode=None):
    """Per-coefficient noise level of the quartic at ``x``.

    Combines rounding of the summed terms with the spread of the coefficients
    over ``x +/- 16 eps |x|``, since a zero is only known to working precision
    and the coefficients can be steep near an endpoint.
    """
    ode = ode if ode is not None else ode_coefficients(spec, k)
    values = _coefficients_at(spec, k, x, ode)
    base = quartic_term_scales(*values)
    h = 16 * EPS * abs(x)
    if h == 0.0:
        return tuple(64 * EPS * t for t in base)
    lo = quartic_coefficients(*_coefficients_at(spec, k, x - h, ode))
    hi = quartic_coefficients(*_coefficients_at(spec, k, x + h, ode))
    return tuple(64 * EPS * t + abs(u - v) for t, u, v in zip(base, hi, lo))


def eqmin_quartic_min(spec, k: int, x: float, ode: OdeCoefficients | None = None) -> LambdaFormReport:
    ode = ode if ode is not None else ode_coefficients(spec, k)
    a, da, d2a, b, db = _coefficients_at(spec, k, x, ode)
    coeffs = quartic_coefficients(a, da, d2a, b, db)
    qmin, lam = minimize_quartic(coeffs, quartic_noise(spec, k, x, ode))
    if math.isfinite(lam):
        q_scale = max(1.0, max(abs(c) * abs(lam) ** (4 - i) for i, c in enumerate(coeffs)))
    else:
        q_scale = max(abs(c) for c in coeffs)
    return LambdaFormReport(
        zero=float(x),
        quad_value=b - a * a - 2.0 * da,
        quartic_min=qmin,
        argmin_lambda=lam,
        coefficients=coeffs,
        quad_scale=max(1.0, abs(b) + a * a + 2.0 * abs(da)),
        quartic_scale=q_scale,
    )


# -- Hermite resultant and literature references --------------------------------


def hermite_phi(k, x, lam):
    """Hermite specialization of the lambda-quartic, in its factored display form."""
    return (
        4 * lam**2 * (1 - 2 * lam**2) * x**2
        - 4 * lam * (2 * k * lam**2 - 4 * lam**2 + 1) * x
        + (2 * k * lam**2 - 2 * lam**2 + 1) ** 2
    )


def _resultant_closed_form(k):
    m6 = 2 * k + 2 + math.sqrt(4 * k * k + 8 * k + 5)
    m = m6 ** (1 / 6)
    return (m**4 - 1) ** 1.5 / (math.sqrt(2.0) * m**3)


def hermite_resultant_bound(k: int) -> float:
    """Upper bound ``(m^4-1)^(3/2) / (sqrt(2) m^3)``, ``m^6 = 2k+2+sqrt(4k^2+8k+5)``, on Hermite zeros.

    This value is exactly the critical root of the quartic's discriminant at
    degree ``k + 2`` (see :func:`hermite_resultant_critical_x`), so it is a
    valid but slightly loose bound at degree k.
    """
    _check_k(k)
    return _resultant_closed_form(k)


def hermite_resultant_critical_x(k: int) -> float:
    """Largest x at which ``min_lambda phi(x, lambda) >= 0`` for Hermite degree k.

    The root of ``4x^6 - 24(k-1)x^4 + (48k^2-96k+75)x^2 - 32(k-1)^3``; the
    closed form is the resultant formula shifted by two degrees.
    """
    _check_k(k)
    return _resultant_closed_form(k - 2)


def hermite_resultant_sextic(k, x):
    return 4 * x**6 - 24 * (k - 1) * x**4 + (48 * k * k - 96 * k + 75) * x**2 - 32 * (k - 1) ** 3


def reference_bounds(spec, k: int) -> ExtremeBounds:
    """Literature upper bounds used as comparison baselines.

    Hermite (``mu = 0``): ``sqrt(2k+1) - 1.85575 (2k+1)^(-1/6)``.
    Laguerre (``|alpha| >= 1/4``): ``(sqrt(N) - 1.85575 N^(-1/6))^2`` with ``N = 4k+2alpha+2``.
    """
    _check_k(k)
    if isinstance(spec, GeneralizedHermite) and spec.mu == 0.0:
        n = 2 * k + 1
        return ExtremeBounds(None, math.sqrt(n) - AIRY_CONSTANT * n ** (-1 / 6), REFERENCE)
    if isinstance(spec, Laguerre):
        if abs(spec.alpha) < 0.25:
            raise InapplicableError("classical Laguerre bound requires |alpha| >= 1/4")
        n = 4 * k + 2 * spec.alpha + 2
        return ExtremeBounds(None, (math.sqrt(n) - AIRY_CONSTANT * n ** (-1 / 6)) ** 2, REFERENCE)
    raise InapplicableError(f"no reference bound for {spec!r}")
