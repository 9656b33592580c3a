"""Dirichlet L-values at s = 0 and s = 1 and the correction products A.

For a non-principal character chi mod m the finite formulas

    L(0, chi) = -(1/m) sum_{a=1}^{m} chi(a) a
    L(1, chi) = -(1/m) sum_{a=1}^{m-1} chi(a) psi(a/m)

are exact, with psi the digamma function.  The Euler-type product

    A(q, chi) = prod_{p | q} (1 - chi(p)/p)
              * prod_{p !| q} (1 - (1 - chi(p))^2 / (p-1)^2)

converges absolutely; it is truncated at a bound P with the tail of the
log-product dominated by sum_{p > P} 4/(p-1)^2 <= 5 / (P log P).  The
combinations C(q, chi) = L(0,chi) L(1,chi) A(q,chi) vanish identically
for even chi and drive all the second-order bias constants.

chi may live on any modulus m dividing the ambient q (and for the
reduction identities also on moduli coprime to parts of q); chi(p) is
always evaluated with chi's own modulus.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import digamma

from .arith import prime_factors, primes_upto
from .characters import DirichletCharacter, character_group

__all__ = [
    "DEFAULT_TRUNCATION",
    "l_at_zero",
    "l_at_one",
    "a_q_chi",
    "c_q_chi",
    "reduce_c",
    "tail_bound",
    "CTable",
    "build_ctable",
]

DEFAULT_TRUNCATION = 20_000_000


def tail_bound(truncation: int) -> float:
    """Upper bound for sum_{p > P} 4/(p-1)^2, the dropped log-product mass."""
    if truncation < 100:
        raise ValueError("truncation too small for the tail estimate")
    return 5.0 / (truncation * math.log(truncation))


def l_at_zero(chi: DirichletCharacter) -> complex:
    """L(0, chi) for non-principal chi; exactly 0 for even characters."""
    if chi.is_principal():
        raise ValueError("L(0, chi) requires a non-principal character")
    if not chi.is_odd():
        return 0j
    m = chi.modulus
    vals = chi.values_table()
    total = sum(vals[a % m] * a for a in range(1, m + 1))
    return complex(-total / m)


def l_at_one(chi: DirichletCharacter) -> complex:
    """L(1, chi) for non-principal chi via the digamma formula."""
    if chi.is_principal():
        raise ValueError("L(1, chi) requires a non-principal character")
    m = chi.modulus
    vals = chi.values_table()
    a = np.arange(1, m)
    return complex(-(vals[a % m] * digamma(a / m)).sum() / m)


# per-(m, truncation) residue tables and per-truncation 1/(p-1)^2 tables
_residue_cache: dict[tuple[int, int], np.ndarray] = {}
_invsq_cache: dict[int, np.ndarray] = {}
_a_cache: dict[tuple, tuple[complex, float]] = {}


def _prime_data(m: int, truncation: int):
    primes = primes_upto(truncation)
    if truncation not in _invsq_cache:
        _invsq_cache[truncation] = 1.0 / (primes - 1.0) ** 2
    key = (m, truncation)
    if key not in _residue_cache:
        _residue_cache[key] = (primes % m).astype(np.intp)
    return primes, _residue_cache[key], _invsq_cache[truncation]


def a_q_chi(
    q: int, chi: DirichletCharacter, truncation: int = DEFAULT_TRUNCATION
) -> tuple[complex, float]:
    """Truncated A(q, chi) together with its tail bound.

    The ambient modulus q decides which primes sit in the "p | q" factor;
    chi keeps its own modulus.  Requires q <= truncation so every prime
    dividing q is inside the sieve range.
    """
    q = int(q)
    if q < 1 or q > truncation:
        raise ValueError(f"need 1 <= q <= truncation, got q={q}")
    rad = prime_factors(q)
    key = (rad, chi.modulus, chi.label, truncation)
    if key in _a_cache:
        return _a_cache[key]

    primes, residues, invsq = _prime_data(chi.modulus, truncation)
    vals = chi.values_table()
    z = vals[residues]
    factor = 1.0 - (1.0 - z) ** 2 * invsq
    # primes dividing q get the (1 - chi(p)/p) factor instead
    for p in rad:
        idx = int(np.searchsorted(primes, p))
        factor[idx] = 1.0 - vals[p % chi.modulus] / p
    value = complex(np.prod(factor))
    result = (value, tail_bound(truncation))
    _a_cache[key] = result
    return result


def c_q_chi(
    q: int, chi: DirichletCharacter, truncation: int = DEFAULT_TRUNCATION
) -> complex:
    """C(q, chi) = L(0,chi) L(1,chi) A(q,chi); exactly 0 unless chi is odd."""
    if chi.is_principal() or not chi.is_odd():
        return 0j
    a_val, _ = a_q_chi(q, chi, truncation)
    return l_at_zero(chi) * l_at_one(chi) * a_val


def reduce_c(
    q: int, chi: DirichletCharacter, truncation: int = DEFAULT_TRUNCATION
) -> complex:
    """C(q, chi) via the reduction identities, cross-checked against the direct product.

    Route 1 (always): through the primitive character chi* of conductor f,
        C(q, chi) = C(q, chi*) prod_{p | m} (1 - chi*(p)).
    Route 2 (q even, chi of odd modulus): with q0 the odd part of q,
        C(q, chi) = (conj(chi)(2)/2) C(q0, chi).
    Both must agree with the direct evaluation; the identities are exact
    at any fixed truncation, so the tolerance is rounding-level.
    """
    direct = c_q_chi(q, chi, truncation)

    chi_star = chi.primitive()
    extra = 1.0 + 0j
    for p in prime_factors(chi.modulus):
        extra *= 1.0 - chi_star(p)
    via_primitive = c_q_chi(q, chi_star, truncation) * extra
    scale = max(abs(direct), 1.0)
    if abs(via_primitive - direct) > 1e-9 * scale:
        raise AssertionError(
            f"primitive reduction mismatch for q={q}, chi={chi.name()}: "
            f"{via_primitive} vs {direct}"
        )

    if q % 2 == 0 and chi.modulus % 2 == 1:
        q0 = q
        while q0 % 2 == 0:
            q0 //= 2
        via_dyadic = np.conj(chi(2)) / 2.0 * c_q_chi(q0, chi, truncation)
        if abs(via_dyadic - direct) > 1e-9 * scale:
            raise AssertionError(
                f"dyadic reduction mismatch for q={q}, chi={chi.name()}: "
                f"{via_dyadic} vs {direct}"
            )

    return via_primitive


@dataclass(frozen=True)
class CTableRow:
    name: str
    conductor: int
    parity: int
    l0: complex
    l1: complex
    a: complex
    c: complex
    tail: float


@dataclass(frozen=True)
class CTable:
    """L-value summary for the non-principal characters mod q."""

    q: int
    truncation: int
    rows: tuple[CTableRow, ...]


def build_ctable(q: int, truncation: int = DEFAULT_TRUNCATION) -> CTable:
    rows = []
    for chi in character_group(int(q)).characters():
        if chi.is_principal():
            continue
        a_val, tail = a_q_chi(q, chi, truncation)
        l0 = l_at_zero(chi)
        l1 = l_at_one(chi)
        rows.append(
            CTableRow(
                name=chi.name(),
                conductor=chi.conductor(),
                parity=chi.parity(),
                l0=l0,
                l1=l1,
                a=a_val,
                c=l0 * l1 * a_val if chi.is_odd() else 0j,
                tail=tail,
            )
        )
    return CTable(q=int(q), truncation=truncation, rows=tuple(rows))
