"""Bounds on the extreme zeros of classical orthogonal polynomials and Bessel functions.

The bounds come from the discriminant ``b - a**2`` of the normalized
second-order equation ``f'' - 2a f' + b f = 0``; every bound is checked
against independently computed zeros.
"""
from .bounds import (
    ExtremeBounds,
    LambdaFormReport,
    SpacingBound,
    bessel_lower_bound,
    closed_form_bounds,
    eqmin0_slack,
    eqmin_quartic_min,
    gen_hermite_bounds,
    hermite_resultant_bound,
    jacobi_bounds,
    jacobi_bounds_symmetric,
    laguerre_bounds,
    reference_bounds,
    spacing_bounds,
    spacing_lower_bounds,
    theorem1_numeric_bounds,
)
from .errors import (
    DegenerateWindowError,
    ExtremeZerosError,
    HypothesisError,
    InapplicableError,
    OracleFailure,
    ParameterDomainError,
    SearchFailure,
)
from .families import BesselSpec, GeneralizedHermite, Jacobi, Laguerre, make_spec, ode_coefficients
from .verify import SweepConfig, SweepRecord, chebyshev_gap_check, run_sweep, sharpness_constants, write_report
from .zero_oracle import ZeroSet, bessel_first_zero, gauss_weights, largest_zero, zeros

__version__ = "0.1.0"
