"""Segmented counting engine against small hand counts and a slow oracle."""

import math

import numpy as np
import pytest

from primebias import (
    CountTable,
    SieveConfig,
    character_sum,
    count_patterns,
    count_patterns_series,
    primes_upto,
    stream_primes,
)
from primebias.sieve import MAX_SIEVE_LIMIT, nth_prime_upper_bound


def window_table(q, r=2, skip=1, x=None, count=None, prime_limit=3_000_000):
    """Slow reference count: plain python loop over a precomputed list."""
    ps = [int(p) for p in primes_upto(prime_limit) if p > q]
    span = (r - 1) * skip
    table = {}
    done = 0
    for i in range(len(ps) - span):
        p = ps[i]
        if x is not None and p > x:
            break
        if count is not None and done >= count:
            break
        w = tuple(ps[i + j * skip] % q for j in range(r))
        table[w] = table.get(w, 0) + 1
        done += 1
    return table


def test_hand_count_q3_to_100():
    # windows: 31-37, 61-67, 73-79 give (1,1); totals check against pi(100)
    t = count_patterns(SieveConfig(q=3, x=100))
    assert t.counts == {(1, 1): 3, (1, 2): 8, (2, 1): 8, (2, 2): 4}
    assert t.total() == 23
    assert t.mode == "by_x"


def test_stream_primes_matches_simple_sieve():
    got = np.concatenate(list(stream_primes(200_000, segment_size=4096)))
    want = primes_upto(200_000)
    assert np.array_equal(got, want)


def test_stream_primes_budget_refusal():
    with pytest.raises(ValueError):
        list(stream_primes(MAX_SIEVE_LIMIT * 2))


def test_nth_prime_bound_is_upper_bound():
    ps = primes_upto(2_000_000)
    for n in (1, 5, 6, 100, 10_000, 100_000):
        assert int(ps[n - 1]) < nth_prime_upper_bound(n)


@pytest.mark.parametrize("q", [3, 4, 5, 8, 10, 12])
def test_by_x_against_oracle(q):
    want = window_table(q, x=10**6)
    got = count_patterns(SieveConfig(q=q, x=10**6))
    assert {k: v for k, v in got.counts.items() if v} == want


def test_by_count_against_oracle():
    want = window_table(5, count=10_000)
    got = count_patterns(SieveConfig(q=5, count=10_000))
    assert {k: v for k, v in got.counts.items() if v} == want
    assert got.total() == 10_000


def test_row_sum_identity():
    # every included start is counted exactly once
    x = 10**6
    t = count_patterns(SieveConfig(q=8, x=x))
    pi_x = len(primes_upto(x))
    pi_q = len(primes_upto(8))
    assert t.total() == pi_x - pi_q


def test_triples_against_oracle():
    want = window_table(3, r=3, x=200_000)
    got = count_patterns(SieveConfig(q=3, r=3, x=200_000))
    assert {k: v for k, v in got.counts.items() if v} == want


def test_skip_windows_against_oracle():
    want = window_table(5, r=2, skip=3, x=200_000)
    got = count_patterns(SieveConfig(q=5, skip=3, x=200_000))
    assert {k: v for k, v in got.counts.items() if v} == want


def test_checkpoint_series_matches_individual_runs():
    xs = [10**4, 10**5, 10**6]
    series = count_patterns_series(SieveConfig(q=3, x=10**6), xs)
    assert [t.limit for t in series] == xs
    for t, x in zip(series, xs):
        single = count_patterns(SieveConfig(q=3, x=x))
        assert t.counts == single.counts, x


def test_thread_determinism_small():
    tables = [count_patterns(SieveConfig(q=12, x=2_000_000, threads=th,
                                         segment_size=4096))
              for th in (1, 3, 7)]
    assert tables[0].counts == tables[1].counts == tables[2].counts


def test_segment_size_invariance():
    a = count_patterns(SieveConfig(q=5, x=500_000, segment_size=2048))
    b = count_patterns(SieveConfig(q=5, x=500_000))
    assert a.counts == b.counts


def test_count_table_lookup_canonicalises():
    t = count_patterns(SieveConfig(q=3, x=100))
    assert t.count((4, 5)) == t.counts[(1, 2)]
    assert t.count((1, 2)) == 8


def test_config_validation():
    with pytest.raises(ValueError):
        SieveConfig(q=3)  # neither x nor count
    with pytest.raises(ValueError):
        SieveConfig(q=3, x=100, count=5)
    with pytest.raises(ValueError):
        SieveConfig(q=2, x=100)
    with pytest.raises(ValueError):
        SieveConfig(q=3, x=100, r=1)
    with pytest.raises(ValueError):
        SieveConfig(q=3, x=100, skip=0)


def test_character_sum_legendre_oracle():
    # q = 3: residue 1 is the square, 2 is not
    t = count_patterns(SieveConfig(q=3, x=10**6))
    want = (t.counts[(1, 1)] + t.counts[(2, 2)]
            - t.counts[(1, 2)] - t.counts[(2, 1)])
    assert character_sum(t) == want
    with pytest.raises(ValueError):
        character_sum(count_patterns(SieveConfig(q=4, x=1000)))


def test_character_sum_is_negative_early():
    # the diagonal deficit makes the paired Legendre sum negative
    t = count_patterns(SieveConfig(q=5, x=10**6))
    assert character_sum(t) < 0
