"""Twin-style singular series values and truncated exponential sums."""

import math

import numpy as np
import pytest

from primebias import (
    SingularContext,
    s0_brute,
    s0_moment_main,
    singular_pair,
    singular_pair_zero,
    singular_zero,
)


def direct_product(q, h, P):
    """Transcribe the defining product with plain loops (the oracle)."""
    if q % 2 == 1 and h % 2 == 1:
        return 0.0
    value = 2.0 if q % 2 == 1 else 1.0
    for p in range(3, P + 1):
        if any(p % d == 0 for d in range(2, int(math.isqrt(p)) + 1)):
            continue
        if q % p == 0:
            continue
        if h % p == 0:
            value *= (p - 1.0) / (p - 2.0)
        value *= 1 - 1.0 / (p - 1.0) ** 2
    return value


def test_twin_constant_q4():
    # h = 1 with an even modulus: no parity obstruction, bare twin constant
    ctx = SingularContext(4, truncation=10**7)
    assert singular_pair(ctx, 1) == pytest.approx(0.6601618158, abs=1e-6)


def test_pair_value_q3_h2():
    # twin constant with the p = 3 factor stripped, times the parity 2
    ctx = SingularContext(3, truncation=10**7)
    assert singular_pair(ctx, 2) == pytest.approx(2 * 0.6601618158 / 0.75, abs=1e-6)


def test_odd_h_vanishes_for_odd_q():
    ctx = SingularContext(3, truncation=10**5)
    for h in (1, 3, 5, 7, 9):
        assert singular_pair(ctx, h) == 0.0


def test_pair_against_direct_product():
    P = 5000
    for q in (3, 4, 10, 12):
        ctx = SingularContext(q, truncation=P)
        for h in (1, 2, 3, 4, 6, 9, 30, 49, 1024):
            assert singular_pair(ctx, h) == pytest.approx(
                direct_product(q, h, P), rel=1e-12)


def test_pair_array_matches_scalar():
    for q in (3, 10):
        ctx = SingularContext(q, truncation=10**5)
        vals = ctx.pair_values(500)
        for h in range(1, 500):
            assert vals[h] == pytest.approx(singular_pair(ctx, h), rel=1e-12)
        assert np.isnan(vals[0])


def test_large_prime_correction_factor():
    # beyond the truncation the h-dependent factor is p/(p-1), not
    # (p-1)/(p-2): both are 1 + 1/p + O(1/p^2) but only the former pairs
    # with the missing quadratic factor
    P = 10000
    ctx = SingularContext(3, truncation=P)
    big = 10007  # prime above the cutoff
    ratio = singular_pair(ctx, 2 * big) / singular_pair(ctx, 2)
    assert ratio == pytest.approx(big / (big - 1.0), rel=1e-12)


def test_random_pairs_against_tail_bound():
    rng = np.random.default_rng(20260817)
    base = SingularContext(3, truncation=10**7)
    for _ in range(200):
        q = int(rng.integers(3, 31))
        h = int(rng.integers(1, 100_000))
        lo = SingularContext(q, truncation=10**5)
        hi = SingularContext(q, truncation=10**7)
        a, b = singular_pair(lo, h), singular_pair(hi, h)
        assert abs(a - b) <= 10 * lo.tail_bound * max(1.0, abs(b))
    assert base.tail_bound < 1e-7


def test_zero_variant_subtracts_one():
    ctx = SingularContext(3, truncation=10**6)
    for h in (2, 4, 6, 100):
        assert singular_pair_zero(ctx, h) == pytest.approx(
            singular_pair(ctx, h) - 1.0, rel=1e-12)


def test_zero_sets_small_cases():
    ctx = SingularContext(3, truncation=10**6)
    assert singular_zero(ctx, ()) == 1.0
    assert singular_zero(ctx, (4,)) == 0.0
    assert singular_zero(ctx, (2, 2)) == 0.0  # a set, not a multiset
    assert singular_zero(ctx, (0, 2)) == pytest.approx(
        singular_pair_zero(ctx, 2), rel=1e-12)
    assert singular_zero(ctx, (3, 5)) == pytest.approx(
        singular_pair_zero(ctx, 2), rel=1e-12)


def test_s0_brute_v0_has_log_main_term():
    """S_0(q, 0; H) = -(phi/2q) log H + const + o(1) as H grows."""
    ctx = SingularContext(3, truncation=10**6)
    h1, h2 = 300.0, 3000.0
    s1 = s0_brute(ctx, 0, h1).value
    s2 = s0_brute(ctx, 0, h2).value
    slope = (s2 - s1) / (math.log(h2) - math.log(h1))
    assert slope == pytest.approx(-2.0 / 6.0, abs=0.02)


def test_s0_moment_main_formula():
    # k-th moment of the geometric weight: Gamma(k) H^k times the slope
    for q, k, H in ((3, 1, 1000.0), (3, 2, 1000.0), (5, 1, 500.0)):
        phi = 2 if q == 3 else 4
        want = -(phi / (2.0 * q)) * math.factorial(k - 1) * H**k
        assert s0_moment_main(q, H, k) == pytest.approx(want, rel=1e-12)


def test_s0_brute_moments_near_main_term():
    ctx = SingularContext(3, truncation=2 * 10**6)
    H = 1000.0
    for k in (1, 2):
        got = s0_brute(ctx, 0, H, k=k).value
        want = s0_moment_main(3, H, k)
        assert abs(got - want) <= H ** (k - 0.4)


def test_s0_brute_offclass_moments_bounded():
    ctx = SingularContext(3, truncation=2 * 10**6)
    H = 1000.0
    for k in (1, 2):
        for v in (1, 2):
            got = s0_brute(ctx, v, H, k=k).value
            assert abs(got) <= H ** (k - 0.4)


def test_s0_cutoff_insensitivity():
    # doubling the brute cutoff moves nothing at double precision
    ctx = SingularContext(4, truncation=10**6)
    H = 50.0
    base = s0_brute(ctx, 1, H)
    vals = ctx.pair_values(4 * base.cutoff)
    hs = np.arange(1, 4 * base.cutoff)
    sel = hs[hs % 4 == 1]
    doubled = float(np.sum((vals[sel] - 1.0) * np.exp(-sel / H)))
    assert doubled == pytest.approx(base.value, abs=1e-12)
