import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from extreme_zeros.errors import ParameterDomainError
from extreme_zeros.families import (
    BesselSpec,
    GeneralizedHermite,
    Jacobi,
    Laguerre,
    delta_closed_form,
    discriminant_window,
    eval_poly,
    make_spec,
    ode_coefficients,
    recurrence_coefficients,
    theta,
    total_mass,
)

mp.mp.dps = 40


def mp_poly(spec, k):
    """Independent mpmath representation (any normalization) of the degree-k member."""
    if isinstance(spec, Laguerre):
        return lambda x: mp.laguerre(k, spec.alpha, x)
    if isinstance(spec, Jacobi):
        return lambda x: mp.jacobi(k, spec.alpha, spec.beta, x)
    m, mu = divmod(k, 2)[0], spec.mu
    if k % 2 == 0:
        return lambda x: mp.laguerre(m, mu - 0.5, x * x)
    return lambda x: x * mp.laguerre(m, mu + 0.5, x * x)


def ode_residual(spec, k, f, x):
    ode = ode_coefficients(spec, k)
    x = mp.mpf(x)
    f0, f1, f2 = f(x), mp.diff(f, x), mp.diff(f, x, 2)
    a, b = ode.a(float(x)), ode.b(float(x))
    scale = abs(f2) + abs(2 * a * f1) + abs(b * f0)
    return float(abs(f2 - 2 * a * f1 + b * f0) / scale)


CASES = [
    (GeneralizedHermite(0.0), 5, [-1.3, 0.4, 2.2]),
    (GeneralizedHermite(0.0), 6, [-0.7, 1.1]),
    (GeneralizedHermite(1.5), 4, [0.3, 1.7]),
    (GeneralizedHermite(-0.3), 7, [0.5, -1.2]),
    (Laguerre(0.0), 3, [0.4, 2.5, 7.0]),
    (Laguerre(2.5), 6, [1.0, 9.0]),
    (Laguerre(-0.7), 4, [0.2, 3.3]),
    (Jacobi(0.0, 0.0), 5, [-0.6, 0.2, 0.9]),
    (Jacobi(1.5, -0.5), 4, [-0.3, 0.7]),
    (Jacobi(-0.9, 3.0), 3, [0.1, -0.8]),
]


@pytest.mark.parametrize("spec,k,xs", CASES)
def test_polynomial_satisfies_normalized_ode(spec, k, xs):
    f = mp_poly(spec, k)
    for x in xs:
        assert ode_residual(spec, k, f, x) < 1e-13


@pytest.mark.parametrize("nu", [-0.3, 0.0, 1.0, 4.5])
def test_bessel_quotient_satisfies_ode(nu):
    spec = BesselSpec(nu)
    f = lambda x: mp.besselj(nu, x) / x**nu
    for x in [0.7, 2.0, 5.3]:
        assert ode_residual(spec, None, f, x) < 1e-13


@pytest.mark.parametrize("spec,k,xs", CASES)
def test_discriminant_matches_factored_form(spec, k, xs):
    ode = ode_coefficients(spec, k)
    for x in xs:
        exact = delta_closed_form(spec, k, x)
        assert ode.delta(x) == pytest.approx(exact, rel=1e-12, abs=1e-12)


@pytest.mark.parametrize("spec,k", [(c[0], c[1]) for c in CASES])
def test_window_edges_are_discriminant_roots(spec, k):
    w = discriminant_window(spec, k)
    ode = ode_coefficients(spec, k)
    for y in (w.y1, w.y2):
        if y <= w.domain[0] or w.clamped:
            continue
        # delta changes sign across each finite edge
        h = 1e-6 * max(1.0, abs(y))
        assert ode.delta(y - h) * ode.delta(y + h) < 0
    mid = 0.5 * (max(w.y1, w.domain[0]) + min(w.y2, w.domain[1]))
    assert ode.delta(mid) > 0


def test_hermite_window_is_symmetric():
    w = discriminant_window(GeneralizedHermite(0.0), 8)
    assert (w.y1, w.y2) == (-4.0, 4.0)


def test_theta_by_parity():
    assert theta(GeneralizedHermite(0.75), 3) == 1.5
    assert theta(GeneralizedHermite(0.75), 4) == 0.0


@pytest.mark.parametrize("spec,k", [(c[0], c[1]) for c in CASES])
def test_recurrence_evaluation_is_proportional_to_reference(spec, k):
    f = mp_poly(spec, k)
    xs = np.array([-0.77, -0.31, 0.13, 0.58, 0.91]) if isinstance(spec, Jacobi) else np.array([0.37, 0.8, 1.9, 3.1])
    values, derivs = eval_poly(spec, k, xs)
    ref = np.array([float(f(x)) for x in xs])
    dref = np.array([float(mp.diff(f, x)) for x in xs])
    ratio = values / ref
    assert np.allclose(ratio, ratio[0], rtol=1e-11)
    assert np.allclose(derivs / dref, ratio[0], rtol=1e-10)


def test_recurrence_survives_extreme_degrees():
    # the scaled evaluation must stay finite where p_k itself overflows a double
    v, d = eval_poly(Laguerre(0.0), 2000, np.array([1.0, 5000.0]))
    assert np.all(np.isfinite(v)) and np.all(np.isfinite(d))


def test_total_mass_matches_quadrature_of_weight():
    assert total_mass(GeneralizedHermite(0.0)) == pytest.approx(math.sqrt(math.pi))
    assert total_mass(Laguerre(2.0)) == pytest.approx(2.0)
    w = float(mp.quad(lambda x: (1 - x) ** 0.5 * (1 + x) ** -0.5, [-1, 1]))
    assert total_mass(Jacobi(0.5, -0.5)) == pytest.approx(w, rel=1e-12)


def test_recurrence_coefficients_positive():
    for spec in (GeneralizedHermite(-0.4), Laguerre(-0.99), Jacobi(-0.99, -0.99), Jacobi(50.0, -0.5)):
        _, e = recurrence_coefficients(spec, 30)
        assert e[0] == 0.0 and np.all(e[1:] > 0)


@pytest.mark.parametrize(
    "ctor,args",
    [
        (GeneralizedHermite, (-0.5,)),
        (Laguerre, (-1.0,)),
        (Jacobi, (0.0, -1.0)),
        (Jacobi, (math.nan, 0.0)),
        (BesselSpec, (-0.5,)),
    ],
)
def test_parameter_domain_errors(ctor, args):
    with pytest.raises(ParameterDomainError):
        ctor(*args)


def test_make_spec():
    assert make_spec("Jacobi", alpha=1, beta=0.5) == Jacobi(1.0, 0.5)
    assert make_spec("hermite") == GeneralizedHermite(0.0)
    with pytest.raises(ParameterDomainError):
        make_spec("chebyshev")


@settings(max_examples=40, deadline=None)
@given(
    alpha=st.floats(-0.95, 20.0),
    beta=st.floats(-0.95, 20.0),
    k=st.integers(1, 60),
    t=st.floats(-0.99, 0.99),
)
def test_jacobi_delta_closed_form_property(alpha, beta, k, t):
    spec = Jacobi(alpha, beta)
    got = ode_coefficients(spec, k).delta(t)
    exact = delta_closed_form(spec, k, t)
    assert got == pytest.approx(exact, rel=1e-9, abs=1e-9 * (1 + abs(exact)))
