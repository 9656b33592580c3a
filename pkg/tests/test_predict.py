"""Quadrature, density terms, and the two prediction routes."""

import math

import numpy as np
import pytest

from primebias import (
    SingularContext,
    adaptive_gauss_legendre,
    always_bias_difference,
    asymptotic_prediction,
    c1,
    c2_pair,
    density_terms_brute,
    density_terms_semianalytic,
    integral_lower_limit,
    integral_prediction,
    li,
    quad_residue_sum_prediction,
    s0_brute,
    skip_coefficient,
    skip_prediction,
)

P_FAST = 200_000


def test_quadrature_exact_polynomial():
    # 16-point Gauss-Legendre is exact through degree 31
    value, err = adaptive_gauss_legendre(lambda u: u**7 - 3 * u**2, -1.0, 2.0)
    want = (2.0**8 - 1.0) / 8 - (2.0**3 + 1.0)
    assert value == pytest.approx(want, abs=1e-12)
    assert err < 1e-12


def test_quadrature_sin():
    value, _ = adaptive_gauss_legendre(np.sin, 0.0, math.pi)
    assert value == pytest.approx(2.0, abs=1e-10)


def test_quadrature_deterministic():
    f = lambda u: np.exp(-u) * np.cos(17 * u)
    first = adaptive_gauss_legendre(f, 0.0, 30.0, rel_tol=1e-9)
    second = adaptive_gauss_legendre(f, 0.0, 30.0, rel_tol=1e-9)
    assert first == second


def simpson_li(x, n=200_001):
    """Composite Simpson for int_2^x dt/log t plus the t <= 2 constant."""
    u = np.linspace(math.log(2.0), math.log(x), n)
    f = np.exp(u) / u
    h = (u[-1] - u[0]) / (n - 1)
    w = np.ones(n)
    w[1:-1:2], w[2:-1:2] = 4.0, 2.0
    return h / 3 * float(np.dot(w, f)) + 1.0451637801174927848


def test_li_against_simpson():
    for x in (1e6, 1e9, 1e12):
        assert li(x) == pytest.approx(simpson_li(x), rel=1e-9)


def test_li_reference_value():
    assert li(1e9) == pytest.approx(50849234.957, abs=2e-2)


def test_li_below_two():
    assert li(1.5) == 0.0


def test_integral_lower_limit():
    assert integral_lower_limit(3) == pytest.approx(math.exp(3.0))
    assert integral_lower_limit(4) == pytest.approx(math.exp(4.0))


def test_brute_d0_is_geometric_plus_s0():
    """The d0 regrouping is exact when the same truncated sums feed it."""
    for q, a, b, y in ((3, 1, 2, 1e6), (5, 2, 2, 1e8)):
        ctx = SingularContext(q)
        terms = density_terms_brute(q, a, b, y, ctx=ctx)
        v0 = (b - a) % q
        w = v0 if v0 else q
        geo = math.exp(-w / terms.H) / -math.expm1(-q / terms.H)
        s0 = s0_brute(ctx, v0, terms.H).value
        assert terms.d0 == pytest.approx(geo + s0, abs=1e-9)


def test_density_terms_total_scale():
    # D0 dominates and behaves like H/q for large y
    terms = density_terms_semianalytic(3, 1, 2, 1e10, truncation=P_FAST)
    assert terms.d0 * 3 / terms.H == pytest.approx(1.0, abs=0.2)
    assert abs(terms.d1) < terms.d0
    assert abs(terms.d2) < terms.d0


def test_brute_vs_semianalytic_within_proposition_error():
    """The two assemblies differ only in dropped Z(H) = O(H^{-1/2}) pieces."""
    for q in (3, 5):
        ctx = SingularContext(q)
        for a in (1, 2) if q == 5 else (1,):
            for b in (1, 2):
                semi = density_terms_semianalytic(q, a, b, 1e6,
                                                  truncation=10**6)
                brute = density_terms_brute(q, a, b, 1e6, ctx=ctx)
                bound = 4.0 / math.sqrt(semi.H)
                assert abs(semi.total - brute.total) <= bound, (q, a, b)


def test_brute_vs_semianalytic_tight_for_q3():
    semi = density_terms_semianalytic(3, 1, 1, 1e6, truncation=10**6)
    brute = density_terms_brute(3, 1, 1, 1e6)
    assert semi.total == pytest.approx(brute.total, rel=0.01)


def test_asymptotic_assembly_literal():
    q, classes, x = 5, (1, 3), 1e10
    row = asymptotic_prediction(q, classes, x, truncation=P_FAST)
    lg, llg = math.log(x), math.log(math.log(x))
    want = li(x) / 16 * (1 + c1(q, classes) * llg / lg
                         + c2_pair(q, 1, 3, truncation=P_FAST) / lg)
    assert row.value == pytest.approx(want, rel=1e-12)
    assert row.method == "asymptotic"


def test_integral_prediction_published_value_1e9():
    row = integral_prediction(3, 1, 2, 1e9, truncation=P_FAST)
    assert row.value == pytest.approx(1.405e7, rel=5e-3)
    assert row.quadrature_error < 1.0


def test_pattern_sum_recovers_prime_count():
    # summing the prediction over all phi^2 patterns recovers li(x)
    total = 0.0
    for a in (1, 2):
        for b in (1, 2):
            total += integral_prediction(3, a, b, 1e9, truncation=P_FAST).value
    assert total == pytest.approx(li(1e9), rel=5e-3)


def test_asymptotic_pattern_sum_exact_cancellation():
    # sum of c1 and of c2 over patterns is zero mod the li main term
    total = 0.0
    for a in (1, 2):
        for b in (1, 2):
            total += asymptotic_prediction(3, (a, b), 1e9,
                                           truncation=P_FAST).value
    assert total == pytest.approx(li(1e9), rel=1e-6)


def test_skip_prediction_formula():
    q, a, b, k, x = 5, 1, 2, 3, 1e10
    row = skip_prediction(q, a, b, k, x)
    _, c2s = skip_coefficient(q, k, equal=False)
    assert row.value == pytest.approx(
        li(x) / 16 * (1 + c2s / math.log(x)), rel=1e-12)
    row_eq = skip_prediction(5, 2, 2, 2, x)
    _, c2e = skip_coefficient(5, 2, equal=True)
    assert row_eq.value == pytest.approx(
        li(x) / 16 * (1 + c2e / math.log(x)), rel=1e-12)


def test_always_bias_difference():
    x = 1e9
    want = x / (4 * math.log(x) ** 2) * math.log(2 * math.pi * math.log(x) / 3)
    assert always_bias_difference(3, x) == pytest.approx(want, rel=1e-12)
    assert always_bias_difference(3, x) > 0
    with pytest.raises(ValueError):
        always_bias_difference(5, x)


def test_quad_residue_sum_prediction():
    x = 1e9
    want = -x / (2 * math.log(x) ** 2) * math.log(2 * math.pi * math.log(x) / 5)
    assert quad_residue_sum_prediction(5, x) == pytest.approx(want, rel=1e-12)
    assert quad_residue_sum_prediction(3, x) < 0
    with pytest.raises(ValueError):
        quad_residue_sum_prediction(4, x)
    with pytest.raises(ValueError):
        quad_residue_sum_prediction(9, x)
