"""Ground-truth zeros: Golub-Welsch eigenvalues polished by safeguarded Newton.

Nothing here depends on the bound formulas, so every bound can be checked
against these values.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigvalsh_tridiagonal
from scipy.special import jv

from .errors import OracleFailure, ParameterDomainError, SearchFailure
from .families import (
    BesselSpec,
    GeneralizedHermite,
    Laguerre,
    _run_recurrence,
    jacobi_matrix,
    recurrence_coefficients,
)
from .tridiag import tql_eigenvalues

log = logging.getLogger(__name__)

K_MAX = 2000
NEWTON_MAX_ITER = 50
BESSEL_NU_MAX = 100.0
BESSEL_MAX_STEPS = 10_000
DEFAULT_TOL = 1e-12


@dataclass(frozen=True)
class ZeroSet:
    k: int
    zeros: np.ndarray
    residuals: np.ndarray
    tol: float

    @property
    def positive(self) -> np.ndarray:
        return self.zeros[self.zeros > 0]

    @property
    def xmin(self) -> float:
        return float(self.zeros[0])

    @property
    def xmax(self) -> float:
        return float(self.zeros[-1])


def _validate(k, tol, k_max=K_MAX):
    if int(k) != k or k < 1:
        raise ParameterDomainError(f"degree must be an integer >= 1, got {k}")
    if k > k_max:
        raise ParameterDomainError(f"degree {k} exceeds the eigen-path limit {k_max}")
    if not tol >= 1e-14:
        raise ParameterDomainError(f"tol must be >= 1e-14, got {tol}")


def _eigenvalues(spec, k, eigensolver):
    diag, off = jacobi_matrix(spec, k)
    if k == 1:
        return diag.copy()
    if eigensolver == "ql":
        return tql_eigenvalues(diag, off)
    if eigensolver == "lapack":
        try:
            return np.sort(eigvalsh_tridiagonal(diag, off))
        except np.linalg.LinAlgError as exc:
            raise OracleFailure(f"tridiagonal eigensolver failed for k={k}: {exc}") from exc
    raise ValueError(f"unknown eigensolver {eigensolver!r}")


def _polish(spec, k, x0, tol):
    """Newton on the recurrence, kept inside sign-change brackets around each start point."""
    d, e = recurrence_coefficients(spec, k)
    x = np.array(x0, dtype=float)
    if k == 1:
        lo, hi = x - 1.0, x + 1.0
    else:
        mids = 0.5 * (x[1:] + x[:-1])
        lo = np.concatenate(([2 * x[0] - mids[0]], mids))
        hi = np.concatenate((mids, [2 * x[-1] - mids[-1]]))
    ends = np.sign(_run_recurrence(d, e, np.concatenate((lo, hi)))[0])
    p_lo, p_hi = ends[:k], ends[k:]
    if np.any(p_lo * p_hi > 0):
        raise OracleFailure(f"eigenvalue brackets lost their sign change (k={k})")

    done = np.zeros(k, dtype=bool)
    prev_step = np.full(k, np.inf)
    for _ in range(NEWTON_MAX_ITER):
        p, _, dp, _ = _run_recurrence(d, e, x)
        exact = p == 0
        left = np.sign(p) == p_lo
        lo = np.where(left & ~exact, x, lo)
        hi = np.where(~left & ~exact, x, hi)
        with np.errstate(divide="ignore", invalid="ignore"):
            step = np.where(exact, 0.0, p / dp)
        mag = np.maximum(1.0, np.abs(x))
        size = np.abs(step)
        # steps at rounding level (tiny, no longer shrinking) count as converged
        converged = exact | (size <= tol * mag) | ((size >= 0.5 * prev_step) & (size <= 1e-10 * mag))
        x_new = x - step
        stray = ~np.isfinite(x_new) | (x_new < lo) | (x_new > hi)
        x_new = np.where(stray & ~converged, 0.5 * (lo + hi), x_new)
        x = np.where(done | (stray & converged), x, x_new)
        done |= converged | (hi - lo <= tol * mag)
        prev_step = size
        if done.all():
            break
    else:
        raise OracleFailure(f"Newton polish did not converge in {NEWTON_MAX_ITER} steps (k={k})")
    p, _, dp, _ = _run_recurrence(d, e, x)
    with np.errstate(divide="ignore", invalid="ignore"):
        residuals = np.where(p == 0, 0.0, np.abs(p / dp))
    return x, residuals


def zeros(spec, k: int, tol: float = DEFAULT_TOL, eigensolver: str = "lapack") -> ZeroSet:
    """All k zeros of the degree-k family member, ascending, with residual certificates.

    The residual of a zero is the size of the next Newton correction ``|p/p'|``.
    Generalized Hermite zeros come from the Laguerre polynomial in ``x**2``
    (parameter ``mu -/+ 1/2`` for even/odd k) and are then re-polished on the
    generalized Hermite recurrence itself.
    """
    _validate(k, tol)
    if isinstance(spec, GeneralizedHermite):
        m = k // 2
        pos = np.empty(0)
        if m:
            lag = Laguerre(spec.mu - 0.5 if k % 2 == 0 else spec.mu + 0.5)
            pos = np.sqrt(zeros(lag, m, tol, eigensolver).zeros)
        mid = [0.0] if k % 2 else []
        x0 = np.concatenate((-pos[::-1], mid, pos))
    else:
        x0 = _eigenvalues(spec, k, eigensolver)
    x, residuals = _polish(spec, k, x0, tol)
    if k > 1 and np.any(np.diff(x) <= 0):
        raise OracleFailure(f"polished zeros are not strictly increasing (k={k})")
    bad = residuals > 1e-9 * np.maximum(1.0, np.abs(x))
    if np.any(bad):
        raise OracleFailure(f"{int(bad.sum())} zeros failed the residual certificate (k={k})")
    return ZeroSet(k=int(k), zeros=x, residuals=residuals, tol=tol)


def _scalar_recurrence(d, e, x):
    p_prev, p, dp_prev, dp = 0.0, 1.0, 0.0, 0.0
    for dn, en in zip(d, e):
        xd = x - dn
        p_prev, p, dp_prev, dp = p, xd * p - en * p_prev, dp, p + xd * dp - en * dp_prev
        m = max(abs(p), abs(dp))
        if m > 1e150 or 0 < m < 1e-150:
            s = 2.0 ** -math.frexp(m)[1]
            p, p_prev, dp, dp_prev = p * s, p_prev * s, dp * s, dp_prev * s
    return p, dp


def largest_zero(spec, k: int, tol: float = DEFAULT_TOL, max_iter: int = 500) -> float:
    """Largest zero only, for degrees beyond the eigen path.

    Newton started at the Gershgorin upper bound of the Jacobi matrix: for a
    real-rooted polynomial the iterates decrease monotonically to the largest
    zero, so any increase signals a failure.
    """
    if int(k) != k or k < 1:
        raise ParameterDomainError(f"degree must be an integer >= 1, got {k}")
    d, e = recurrence_coefficients(spec, k)
    off = np.concatenate((np.sqrt(e[1:]), [0.0]))
    radius = off + np.concatenate(([0.0], off[:-1]))
    x = float(np.max(d + radius))
    d, e = d.tolist(), e.tolist()
    for _ in range(max_iter):
        p, dp = _scalar_recurrence(d, e, x)
        if p == 0.0:
            return x
        step = p / dp
        if not step > -tol * max(1.0, abs(x)):
            raise OracleFailure(f"Newton from the right moved away from the largest zero (k={k})")
        x -= step
        if abs(step) <= tol * max(1.0, abs(x)):
            return x
    raise OracleFailure(f"largest-zero Newton did not converge in {max_iter} steps (k={k})")


def bessel_series(nu: float, x: float):
    """Value, derivative and absolute term sum of ``sum (-1)^i (x/2)^(2i) / (i! Gamma(i+nu+1))``.

    The function shares its zeros with ``x**-nu J_nu(x)``; the absolute sum
    bounds the rounding error of the alternating series.
    """
    if x == 0.0:
        v = math.exp(-math.lgamma(nu + 1.0))
        return v, 0.0, v
    logh = math.log(0.5 * x)
    value = deriv = abs_sum = 0.0
    i = 0
    while True:
        t = math.exp(2 * i * logh - math.lgamma(i + 1.0) - math.lgamma(i + nu + 1.0))
        sign = -1.0 if i % 2 else 1.0
        value += sign * t
        deriv += sign * t * 2 * i / x
        abs_sum += t
        if i > 0.5 * x and t < 1e-18 * abs_sum:
            break
        i += 1
    return value, deriv, abs_sum


def _bisect(f, lo, hi, tol):
    f_lo = f(lo)
    while hi - lo > tol * max(1.0, abs(hi)):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        f_mid = f(mid)
        if f_mid == 0.0:
            return mid
        if (f_mid > 0) == (f_lo > 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _first_sign_change(f, x0, step):
    s0 = f(x0) > 0
    x = x0
    for _ in range(BESSEL_MAX_STEPS):
        if (f(x + step) > 0) != s0:
            return x, x + step
        x += step
    raise SearchFailure(f"no sign change within {BESSEL_MAX_STEPS} steps of {step} from {x0}")


def bessel_first_zero(nu: float, tol: float = DEFAULT_TOL) -> float:
    """Least positive zero ``j_{nu,1}`` for ``-1/2 < nu <= 100``.

    Steps right from ``nu + 1/2`` until the sign flips, then bisects.  The
    power series is used whenever its cancellation error, measured at the
    root, stays below ``tol``; otherwise (large nu) the sign comes from
    ``scipy.special.jv``.
    """
    BesselSpec(nu)
    if nu > BESSEL_NU_MAX:
        raise ParameterDomainError(f"nu must be <= {BESSEL_NU_MAX}, got {nu}")
    x0 = nu + 0.5
    step = max(0.5, nu / 10.0)

    series = lambda x: bessel_series(nu, x)[0]
    lo, hi = _first_sign_change(series, x0, step)
    root = _bisect(series, lo, hi, tol)
    _, deriv, abs_sum = bessel_series(nu, root)
    err = np.finfo(float).eps * abs_sum / abs(deriv) if deriv else math.inf
    if err <= tol * max(1.0, root):
        return root

    log.debug("series cancellation too large at nu=%g (err %.2e); using jv", nu, err)
    bessel = lambda x: float(jv(nu, x))
    lo, hi = _first_sign_change(bessel, x0, step)
    return _bisect(bessel, lo, hi, tol)


def _christoffel_sums(d, e, x):
    """``log sum_{n<k} q_n(x)**2`` for the orthonormal polynomials with ``q_0 = 1``.

    A sum of positive terms, so no cancellation beyond that inside each
    ``q_n``; the pair ``(q_{n-1}, q_n)`` and the sum are rescaled by powers
    of two to stay in range.
    """
    b = np.sqrt(e)
    q_prev = np.zeros_like(x)
    q = np.ones_like(x)
    total = np.ones_like(x)
    expo = np.zeros(x.shape, dtype=np.int64)  # everything is scaled by 2**-expo
    for n in range(len(d) - 1):
        q_prev, q = q, ((x - d[n]) * q - b[n] * q_prev) / b[n + 1]
        total = total + q * q
        big = np.abs(q) > 2.0**400
        if np.any(big):
            shift = np.where(big, np.frexp(q)[1], 0)
            q, q_prev = np.ldexp(q, -shift), np.ldexp(q_prev, -shift)
            total = np.ldexp(total, -2 * shift)
            expo += shift
    return np.log(total) + 2.0 * expo * math.log(2.0)


def gauss_weights(spec, k: int, tol: float = DEFAULT_TOL):
    """Gauss quadrature nodes (the zeros) and positive weights.

    Weights use the Christoffel function ``w_i = 1 / sum_n q_n(x_i)**2`` over
    orthonormal ``q_n``, evaluated in log space so tiny tail weights keep full
    relative precision and endpoint-clustered nodes avoid the cancellation of
    the ``p_{k-1} p_k'`` formula.
    """
    zs = zeros(spec, k, tol)
    d, e = recurrence_coefficients(spec, k)
    if isinstance(spec, GeneralizedHermite):
        log_mass = math.lgamma(spec.mu + 0.5)
    elif isinstance(spec, Laguerre):
        log_mass = math.lgamma(spec.alpha + 1.0)
    else:
        al, be = spec.alpha, spec.beta
        log_mass = (al + be + 1) * math.log(2.0) + math.lgamma(al + 1) + math.lgamma(be + 1) - math.lgamma(al + be + 2)
    weights = np.exp(log_mass - _christoffel_sums(d, e, zs.zeros))
    if not np.all(weights >= 0):
        raise OracleFailure(f"invalid Gauss weight (k={k})")
    return zs.zeros, weights
