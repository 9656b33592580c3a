"""Two-term singular series mod q and their exponentially weighted sums.

For a pair {0, h} the Hardy-Littlewood singular series restricted away
from primes dividing q is

    S_q({0,h}) = prod_{p !| q} (1 - #({0,h} mod p)/p) (1 - 1/p)^{-2},

which factors as  [2 if q odd]  *  prod_{odd p !| q} (1 - 1/(p-1)^2)
                 *  prod_{odd p | h, p !| q} (p-1)/(p-2),

and vanishes for odd h when q is odd (the p = 2 factor dies).  The
zero-mean variant is S_{q,0}({0,h}) = S_q({0,h}) - 1 on pairs, 1 on the
empty set and 0 on singletons.  A SingularContext freezes q and the
truncation point of the infinite product; the h-dependent corrections
are applied exactly, by sieving, never by per-h full products.

s0_brute computes S_0^k(q, v; H) = sum over h = v mod q of
h^k S_{q,0}({0,h}) e^{-h/H}, truncated where the weight is ~e^{-50}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .arith import canonical_residue, prime_factors, primes_upto, totient

__all__ = ["SingularContext", "S0Sum", "singular_pair", "singular_pair_zero",
           "singular_zero", "s0_brute", "s0_moment_main"]

DEFAULT_SINGULAR_TRUNCATION = 10_000_000


class SingularContext:
    """q plus a truncation point P for the generic twin-type product."""

    def __init__(self, q: int, truncation: int = DEFAULT_SINGULAR_TRUNCATION):
        if q < 3:
            raise ValueError(f"modulus must be >= 3, got {q}")
        if truncation < 100:
            raise ValueError("truncation too small")
        self.q = q
        self.phi = totient(q)
        self.truncation = truncation
        primes = primes_upto(truncation)
        odd = primes[primes > 2]
        keep = np.ones(len(odd), dtype=bool)
        for p in prime_factors(q):
            if p > 2:
                keep &= odd != p
        odd = odd[keep]
        self.twin_tail = float(np.prod(1.0 - 1.0 / (odd - 1.0) ** 2))
        # dropped log-product mass is ~ sum_{p>P} 1/(p-1)^2 ~ 1/(P log P)
        self.tail_bound = 2.0 / (truncation * math.log(truncation))
        self._pair_cache: np.ndarray | None = None

    def pair_values(self, cutoff: int) -> np.ndarray:
        """S_q({0,h}) for h = 0..cutoff (index 0 is NaN); grown as needed."""
        if self._pair_cache is not None and len(self._pair_cache) > cutoff:
            return self._pair_cache[: cutoff + 1]
        base = 2.0 * self.twin_tail if self.q % 2 else self.twin_tail
        vals = np.full(cutoff + 1, base)
        vals[0] = np.nan
        if self.q % 2:
            vals[1::2] = 0.0
        for p in primes_upto(cutoff):
            p = int(p)
            if p == 2 or self.q % p == 0:
                continue
            mult = (p - 1.0) / (p - 2.0) if p <= self.truncation else p / (p - 1.0)
            vals[p::p] *= mult
        self._pair_cache = vals
        return vals


def singular_pair(ctx: SingularContext, h: int) -> float:
    """S_q({0, h}) for a single h >= 1, by trial division of h."""
    if h < 1:
        raise ValueError(f"h must be >= 1, got {h}")
    if ctx.q % 2 and h % 2:
        return 0.0
    val = 2.0 * ctx.twin_tail if ctx.q % 2 else ctx.twin_tail
    for p in prime_factors(h):
        if p == 2 or ctx.q % p == 0:
            continue
        if p <= ctx.truncation:
            val *= (p - 1.0) / (p - 2.0)
        else:
            val *= p / (p - 1.0)
    return val


def singular_pair_zero(ctx: SingularContext, h: int) -> float:
    """S_{q,0}({0, h}) = S_q({0, h}) - 1."""
    return singular_pair(ctx, h) - 1.0


def singular_zero(ctx: SingularContext, hs: tuple[int, ...]) -> float:
    """S_{q,0} on a set of size <= 2 (inclusion-exclusion over subsets)."""
    uniq = sorted(set(hs))
    if len(uniq) == 0:
        return 1.0
    if len(uniq) == 1:
        return 0.0
    if len(uniq) == 2:
        return singular_pair_zero(ctx, uniq[1] - uniq[0])
    raise ValueError("only sets of size <= 2 are supported")


@dataclass(frozen=True)
class S0Sum:
    q: int
    v: int
    H: float
    k: int
    value: float
    cutoff: int
    method: str


def s0_brute(ctx: SingularContext, v: int, H: float, k: int = 0) -> S0Sum:
    """Truncated S_0^k(q, v; H); the tail beyond 50 H (k+1) is ~e^{-50}."""
    if H <= 0:
        raise ValueError("H must be positive")
    if k < 0:
        raise ValueError("k must be >= 0")
    cutoff = math.ceil(50.0 * H * (k + 1))
    vals = ctx.pair_values(cutoff)
    hs = np.arange(canonical_residue(ctx.q, v), cutoff + 1, ctx.q, dtype=np.int64)
    sig0 = vals[hs] - 1.0
    hf = hs.astype(float)
    weights = np.exp(-hf / H)
    if k:
        weights = weights * hf**k
    return S0Sum(
        q=ctx.q, v=v % ctx.q, H=float(H), k=k,
        value=float(np.dot(sig0, weights)), cutoff=cutoff, method="brute",
    )


def s0_moment_main(q: int, H: float, k: int) -> float:
    """Main term of S_0^k(q, 0; H) for k >= 1: -(phi/2q) Gamma(k) H^k."""
    if k < 1:
        raise ValueError("moments need k >= 1")
    return -totient(q) / (2 * q) * math.gamma(k) * H**k
