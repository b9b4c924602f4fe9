"""Sweeps comparing every bound with oracle zeros, plus sharpness diagnostics and reports."""
from __future__ import annotations

import csv
import io
import json
import logging
import math
import os
from dataclasses import dataclass, field, replace

import numpy as np

from . import bounds as bd
from .errors import ExtremeZerosError, InapplicableError, ParameterDomainError
from .families import GeneralizedHermite, Jacobi, Laguerre, discriminant_window, make_spec, ode_coefficients
from .zero_oracle import K_MAX, largest_zero, zeros

log = logging.getLogger(__name__)

PASS_RTOL = 1e-9
MEMBERSHIP_RTOL = 1e-8
LARGEST_ZERO_K_MAX = 10**5

DEFAULT_MUS = (-0.49, -0.25, 0.0, 0.5, 1.0, 5.0, 25.0)
DEFAULT_ALPHAS = (-0.99, -0.5, 0.0, 0.5, 1.0, 10.0, 50.0)
DEFAULT_KS = tuple(range(1, 101)) + (200, 500, 1000, 2000)
FAMILIES = ("hermite", "laguerre", "jacobi")
METHODS = ("closed", "numeric", "resultant", "reference")

CSV_COLUMNS = (
    "family", "k", "param1", "param2", "xmin_true", "xmax_true",
    "lb_closed", "ub_closed", "lb_numeric", "ub_numeric", "ub_resultant", "ub_reference",
    "margin_lb", "margin_ub", "pass",
)


def _ordered_pairs(values):
    return tuple((a, b) for a in values for b in values if a >= b)


@dataclass(frozen=True)
class SweepConfig:
    families: tuple[str, ...] = FAMILIES
    ks: tuple[int, ...] = DEFAULT_KS
    mus: tuple[float, ...] = DEFAULT_MUS
    alphas: tuple[float, ...] = DEFAULT_ALPHAS
    jacobi_pairs: tuple[tuple[float, float], ...] = _ordered_pairs(DEFAULT_ALPHAS)
    methods: tuple[str, ...] = METHODS
    out: str | None = None
    fmt: str = "csv"

    def __post_init__(self):
        for f in self.families:
            if f not in FAMILIES:
                raise ParameterDomainError(f"unknown family {f!r}; expected one of {FAMILIES}")
        for m in self.methods:
            if m not in METHODS:
                raise ParameterDomainError(f"unknown method {m!r}; expected one of {METHODS}")
        for k in self.ks:
            if int(k) != k or k < 1:
                raise ParameterDomainError(f"degrees must be integers >= 1, got {k}")
        if self.fmt not in ("csv", "json"):
            raise ParameterDomainError(f"report format must be csv or json, got {self.fmt!r}")
        self.specs()  # building each spec validates its parameters

    def specs(self):
        """Every family spec in the grid, in a fixed order."""
        out = []
        if "hermite" in self.families:
            out += [GeneralizedHermite(mu) for mu in self.mus]
        if "laguerre" in self.families:
            out += [Laguerre(a) for a in self.alphas]
        if "jacobi" in self.families:
            out += [Jacobi(a, b) for a, b in self.jacobi_pairs]
        return out

    def limited(self, kmax: int) -> SweepConfig:
        return replace(self, ks=tuple(k for k in self.ks if k <= kmax))


QUICK_CONFIG = SweepConfig(
    ks=tuple(range(1, 21)) + (50, 100),
    mus=(-0.25, 0.0, 0.5, 5.0),
    alphas=(-0.5, 0.0, 1.0, 10.0),
    jacobi_pairs=((0.0, 0.0), (-0.5, -0.5), (1.0, -0.5), (10.0, 0.5), (0.0, 0.5)),
)
SUITES = {"default": SweepConfig(), "quick": QUICK_CONFIG}


@dataclass(frozen=True)
class SweepRecord:
    family: str
    k: int
    param1: float
    param2: float | None
    xmin_true: float | None
    xmax_true: float | None
    lb_closed: float | None
    ub_closed: float | None
    lb_numeric: float | None = None
    ub_numeric: float | None = None
    ub_resultant: float | None = None
    ub_reference: float | None = None
    margin_lb: float | None = None
    margin_ub: float | None = None
    passed: bool = False
    flags: tuple[str, ...] = ()
    error: str | None = None

    def sort_key(self):
        p2 = -math.inf if self.param2 is None else self.param2
        return (self.family, self.k, self.param1, p2)

    def row(self) -> dict:
        """Values keyed by report column."""
        d = {c: getattr(self, c) for c in CSV_COLUMNS if c != "pass"}
        d["pass"] = self.passed
        return d


def _extremes(spec, zs):
    """Least and largest zeros; positive ones only for generalized Hermite."""
    x = zs.positive if isinstance(spec, GeneralizedHermite) else zs.zeros
    if x.size == 0:
        return None, None
    return float(x[0]), float(x[-1])


def _margin_ok(margin, x):
    return margin is not None and margin > PASS_RTOL * max(1.0, abs(x))


def sweep_point(spec, k: int, methods=METHODS) -> SweepRecord:
    """One record: oracle extremes against every requested bound."""
    p1, p2 = spec.params
    flags = []
    base = dict(family=spec.family, k=int(k), param1=p1, param2=p2)
    try:
        zs = zeros(spec, k)
    except ExtremeZerosError as exc:
        return SweepRecord(**base, xmin_true=None, xmax_true=None, lb_closed=None, ub_closed=None,
                           flags=("oracle_failure",), error=str(exc))
    xmin, xmax = _extremes(spec, zs)
    closed = bd.closed_form_bounds(spec, k)
    flags += closed.flags
    values = dict(lb_closed=closed.min_zero_lower, ub_closed=closed.max_zero_upper)
    if "numeric" in methods:
        try:
            num = bd.numeric_bounds_symmetric(spec, k)
            values.update(lb_numeric=num.min_zero_lower, ub_numeric=num.max_zero_upper)
        except ExtremeZerosError as exc:
            flags.append("numeric_unavailable")
            log.debug("numeric bounds unavailable for %r k=%d: %s", spec, k, exc)
    if "resultant" in methods and isinstance(spec, GeneralizedHermite) and spec.mu == 0.0:
        values["ub_resultant"] = bd.hermite_resultant_bound(k)
    if "reference" in methods:
        try:
            values["ub_reference"] = bd.reference_bounds(spec, k).max_zero_upper
        except InapplicableError:
            pass
    if "closed" not in methods:
        values.update(lb_closed=None, ub_closed=None)

    if xmin is None:
        # generalized Hermite of degree 1 has no positive zero: nothing to bracket
        flags.append("no_positive_zero")
        return SweepRecord(**base, xmin_true=None, xmax_true=None, **values, passed=True, flags=tuple(flags))
    if "closed" not in methods:
        return SweepRecord(**base, xmin_true=xmin, xmax_true=xmax, **values, passed=True, flags=tuple(flags))
    m_lb = xmin - closed.min_zero_lower
    m_ub = closed.max_zero_upper - xmax
    ok = _margin_ok(m_lb, xmin) and _margin_ok(m_ub, xmax)
    return SweepRecord(**base, xmin_true=xmin, xmax_true=xmax, **values, margin_lb=m_lb, margin_ub=m_ub,
                       passed=ok, flags=tuple(flags))


def _check_writable(path):
    parent = os.path.dirname(os.path.abspath(path))
    if os.path.isdir(path):
        raise IsADirectoryError(f"report path {path!r} is a directory")
    if not os.path.isdir(parent):
        raise FileNotFoundError(f"report directory {parent!r} does not exist")
    if not os.access(parent, os.W_OK) or (os.path.exists(path) and not os.access(path, os.W_OK)):
        raise PermissionError(f"report path {path!r} is not writable")


def run_sweep(config: SweepConfig) -> list[SweepRecord]:
    """All grid records, sorted by (family, k, params); writes the report if ``config.out`` is set."""
    if config.out is not None:
        _check_writable(config.out)
    records = [sweep_point(spec, k, config.methods) for spec in config.specs() for k in config.ks]
    records.sort(key=SweepRecord.sort_key)
    if config.out is not None:
        write_report(records, config.fmt, config.out)
    return records


# -- reports ---------------------------------------------------------------------


def _csv_cell(v):
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def _json_value(v):
    if isinstance(v, float) and not math.isfinite(v):
        return None
    return list(v) if isinstance(v, tuple) else v


def format_report(records, fmt: str) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for r in records:
            row = r.row()
            w.writerow([_csv_cell(row[c]) for c in CSV_COLUMNS])
        return buf.getvalue()
    if fmt == "json":
        rows = []
        for r in records:
            d = r.row()
            d.update(flags=list(r.flags), error=r.error)
            rows.append({key: _json_value(v) for key, v in d.items()})
        return json.dumps(rows, indent=1) + "\n"
    raise ParameterDomainError(f"report format must be csv or json, got {fmt!r}")


def write_report(records, fmt: str, path: str) -> str:
    """Write records as CSV or JSON to ``path`` and return the text."""
    text = format_report(records, fmt)
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write report to {path!r}: {exc}") from exc
    return text


def records_from_json(text: str) -> list[SweepRecord]:
    out = []
    for d in json.loads(text):
        d = dict(d)
        d["passed"] = d.pop("pass")
        d["flags"] = tuple(d.get("flags") or ())
        out.append(SweepRecord(**d))
    return out


# -- membership inequalities at every zero ----------------------------------------


@dataclass(frozen=True)
class MembershipRecord:
    """Worst scaled slack of the two zero inequalities over one polynomial's zeros."""

    family: str
    k: int
    param1: float
    param2: float | None
    n_checked: int
    worst_quad: float
    worst_quartic: float

    @property
    def passed(self) -> bool:
        return self.worst_quad >= -MEMBERSHIP_RTOL and self.worst_quartic >= -MEMBERSHIP_RTOL


def membership_point(spec, k: int) -> MembershipRecord:
    zs = zeros(spec, k)
    ode = ode_coefficients(spec, k)
    worst_q = worst_4 = math.inf
    n = 0
    for x in zs.zeros:
        if ode.is_singular(float(x)):
            continue
        rep = bd.eqmin_quartic_min(spec, k, float(x), ode)
        worst_q = min(worst_q, rep.quad_value / rep.quad_scale)
        worst_4 = min(worst_4, rep.quartic_min / rep.quartic_scale)
        n += 1
    p1, p2 = spec.params
    return MembershipRecord(spec.family, int(k), p1, p2, n, worst_q, worst_4)


def membership_sweep(config: SweepConfig) -> list[MembershipRecord]:
    return [membership_point(spec, k) for spec in config.specs() for k in config.ks]


# -- sharpness ---------------------------------------------------------------------


@dataclass(frozen=True)
class SharpnessSummary:
    """Scaled second-term constants of the largest-zero bounds over a list of degrees.

    For Hermite with ``mu = 0``: ``closed`` is ``(sqrt(2k) - ub) (2k)^(1/6)``,
    ``oracle`` is ``(sqrt(2k+1) - x_max) (2k+1)^(1/6)`` and ``resultant`` is
    ``(sqrt(2k) - ub_resultant) k^(1/6)``.  For other members ``closed`` and
    ``oracle`` are the raw distances ``y2 - ub`` and ``y2 - x_max`` from the
    window edge.  ``ratio`` is oracle distance over closed distance (measured
    from ``sqrt(2k)`` for Hermite), i.e. how much of the true edge gap the bound
    captures.
    """

    family: str
    regime: str
    params: dict
    k_list: tuple[int, ...]
    closed: tuple[float, ...]
    oracle: tuple[float | None, ...]
    ratio: tuple[float | None, ...]
    resultant: tuple[float, ...] | None = None
    reference_constants: dict = field(default_factory=lambda: {
        "closed_form": bd.CLOSED_FORM_CONSTANT,
        "airy": bd.AIRY_CONSTANT,
        "resultant": bd.RESULTANT_CONSTANT,
    })
    flags: tuple[str, ...] = ()


def _largest_oracle_zero(spec, k):
    """Largest zero, or None past the oracle's reach.

    The full eigen path is used up to its limit; beyond it Newton from the
    right takes over.  That shortcut needs a plain three-term recurrence, so
    generalized Hermite with ``mu != 0`` stops at the eigen limit.
    """
    if k <= K_MAX:
        return float(zeros(spec, k).zeros[-1])
    if isinstance(spec, GeneralizedHermite) and spec.mu != 0.0:
        return None
    return largest_zero(spec, k) if k <= LARGEST_ZERO_K_MAX else None


def sharpness_constants(family: str, regime: str, k_list, *, mu=0.0, alpha=0.0, beta=0.0, delta=None):
    """Second-term constants for one family.

    ``regime`` is ``"fixed"`` (parameters as given) or ``"proportional"``
    (the first parameter, and for Jacobi both, equal ``delta * k``).
    """
    ks = tuple(int(k) for k in k_list)
    if any(b <= a for a, b in zip(ks, ks[1:])):
        raise ParameterDomainError("k_list must be strictly ascending")
    if regime not in ("fixed", "proportional"):
        raise ParameterDomainError(f"regime must be fixed or proportional, got {regime!r}")
    if regime == "proportional" and delta is None:
        raise ParameterDomainError("proportional regime needs delta")

    closed, oracle, ratio, resultant, flags = [], [], [], [], set()
    hermite0 = family == "hermite" and regime == "fixed" and mu == 0.0
    for k in ks:
        if regime == "proportional":
            scale = delta * k
            spec = make_spec(family, mu=scale, alpha=scale, beta=scale if family == "jacobi" else None)
        else:
            spec = make_spec(family, mu=mu, alpha=alpha, beta=beta)
        ub = bd.closed_form_bounds(spec, k).max_zero_upper
        try:
            xm = _largest_oracle_zero(spec, k)
        except ExtremeZerosError as exc:
            flags.add(f"oracle_failure_k{k}")
            log.debug("oracle failed at k=%d: %s", k, exc)
            xm = None
        if xm is None:
            flags.add("k_beyond_oracle")
        if hermite0:
            edge = math.sqrt(2 * k)
            closed.append((edge - ub) * (2 * k) ** (1 / 6))
            n = 2 * k + 1
            oracle.append(None if xm is None else (math.sqrt(n) - xm) * n ** (1 / 6))
            resultant.append((edge - bd.hermite_resultant_bound(k)) * k ** (1 / 6))
        else:
            edge = discriminant_window(spec, k).y2
            closed.append(edge - ub)
            oracle.append(None if xm is None else edge - xm)
        ratio.append(None if xm is None else (edge - xm) / (edge - ub))
    params = {"delta": delta} if regime == "proportional" else {"hermite": {"mu": mu}, "laguerre": {"alpha": alpha},
                                                                "jacobi": {"alpha": alpha, "beta": beta}}[family]
    return SharpnessSummary(
        family=family,
        regime=regime,
        params=params,
        k_list=ks,
        closed=tuple(closed),
        oracle=tuple(oracle),
        ratio=tuple(ratio),
        resultant=tuple(resultant) if hermite0 else None,
        flags=tuple(sorted(flags)),
    )


# -- Chebyshev spacing and edge -----------------------------------------------------


@dataclass(frozen=True)
class ChebyshevGapReport:
    k: int
    ratio: float
    max_ratio: float
    edge_scaled: float
    true_edge_scaled: float
    oracle_discrepancy: float


def chebyshev_gap_check(k: int) -> ChebyshevGapReport:
    """Spacing and edge diagnostics for ``T_k`` (Jacobi ``alpha = beta = -1/2``).

    ``ratio`` is the smallest zero gap over the gap bound ``sqrt(8 / max delta)``
    on that gap; ``max_ratio`` is the largest such ratio over all consecutive
    pairs.  Oracle zeros are checked against ``cos((2i-1) pi / 2k)``.
    """
    if int(k) != k or k < 2:
        raise ParameterDomainError(f"Chebyshev gap check needs k >= 2, got {k}")
    spec = Jacobi(-0.5, -0.5)
    x = zeros(spec, k).zeros
    exact = np.sort(np.cos((2 * np.arange(1, k + 1) - 1) * np.pi / (2 * k)))
    ode = ode_coefficients(spec, k)
    gaps = np.diff(x)
    ratios = np.array([
        g / math.sqrt(bd.spacing_bounds(ode, float(x[i]), float(x[i + 1])).gap_sq_lower)
        for i, g in enumerate(gaps)
    ])
    ub = bd.jacobi_bounds(k, -0.5, -0.5).max_zero_upper
    return ChebyshevGapReport(
        k=int(k),
        ratio=float(ratios[int(np.argmin(gaps))]),
        max_ratio=float(ratios.max()),
        edge_scaled=(1.0 - ub) * k * k,
        true_edge_scaled=(1.0 - math.cos(math.pi / (2 * k))) * k * k,
        oracle_discrepancy=float(np.max(np.abs(x - exact))),
    )

