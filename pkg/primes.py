# primes.py
"""
Search for heights h with 2p - 1 = h², i.e. odd h with (h² + 1)/2 prime.

Candidates are pre-filtered segment by segment with a numpy sieve over the
odd heights, then certified with deterministic Miller-Rabin.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from math import isqrt
from typing import Iterator

import numpy as np
from sympy import isprime as _sympy_isprime
from sympy import primerange
from sympy.ntheory import sqrt_mod

import config
from errors import DomainError

log = logging.getLogger(__name__)

# (bound, bases): every composite below bound fails MR for one of the bases.
_MR_TIERS = (
    (2_047, (2,)),
    (1_373_653, (2, 3)),
    (25_326_001, (2, 3, 5)),
    (3_215_031_751, (2, 3, 5, 7)),
    (2_152_302_898_747, (2, 3, 5, 7, 11)),
    (3_474_749_660_383, (2, 3, 5, 7, 11, 13)),
    (341_550_071_728_321, (2, 3, 5, 7, 11, 13, 17)),
    (3_825_123_056_546_413_051, (2, 3, 5, 7, 11, 13, 17, 19, 23)),
    (318_665_857_834_031_151_167_461, (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)),
    (3_317_044_064_679_887_385_961_981, (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)),
)
MR_DETERMINISTIC_BOUND = _MR_TIERS[-1][0]


# ── Primality ─────────────────────────────────────────────────────────────────
def is_prime(n: int) -> bool:
    """
    Deterministic Miller-Rabin below 3.3×10^24.
    Larger inputs go to sympy's BPSW test.
    """
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        if n % q == 0:
            return n == q
    if n >= MR_DETERMINISTIC_BOUND:
        return bool(_sympy_isprime(n))

    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1

    bases = next(b for bound, b in _MR_TIERS if n < bound)
    for a in bases:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


# ── Pairs ─────────────────────────────────────────────────────────────────────
@dataclass(frozen=True, order=True)
class HeightPrimePair:
    h: int
    p: int

    def __post_init__(self):
        if self.h % 2 == 0:
            raise ArithmeticError(f"height {self.h} is even")
        if 2 * self.p - 1 != self.h * self.h:
            raise ArithmeticError(f"2p - 1 != h² for (h={self.h}, p={self.p})")
        if self.h % (self.p - 1) == 0:
            raise ArithmeticError(f"(p - 1) divides h for (h={self.h}, p={self.p})")


def pair_for_height(h: int) -> HeightPrimePair | None:
    if h < 1:
        raise DomainError("height must be at least 1", h=h)
    if h % 2 == 0:
        return None
    p = (h * h + 1) // 2
    return HeightPrimePair(h, p) if is_prime(p) else None


@lru_cache(maxsize=8)
def _sieve_roots(limit: int) -> tuple[tuple[int, int, int], ...]:
    """(q, r, q - r) for primes 5 ≤ q ≤ limit with r² ≡ -1 mod q."""
    roots = []
    for q in primerange(5, limit + 1):
        if q % 4 != 1:
            continue
        r = min(sqrt_mod(q - 1, q, all_roots=True))
        roots.append((q, r, q - r))
    return tuple(roots)


def _segment_candidates(h0: int, count: int, sieve_limit: int) -> np.ndarray:
    """Odd heights h0, h0 + 2, ... (count of them) that survive the sieve."""
    mask = np.ones(count, dtype=bool)
    for q, r1, r2 in _sieve_roots(sieve_limit):
        inv2 = (q + 1) // 2
        for r in (r1, r2):
            start = (r - h0) * inv2 % q
            mask[start::q] = False
        # (h² + 1)/2 == q itself is prime
        h_q = isqrt(2 * q - 1)
        if h_q * h_q == 2 * q - 1 and h0 <= h_q < h0 + 2 * count:
            mask[(h_q - h0) // 2] = True
    return h0 + 2 * np.flatnonzero(mask)


def stream_pairs(lo: int, hi: int, *, sieve_limit: int = config.SIEVE_LIMIT,
                 segment_size: int = config.SEGMENT_SIZE) -> Iterator[HeightPrimePair]:
    """Ascending pairs with lo ≤ h < hi."""
    if lo < 1:
        raise DomainError("range start must be at least 1", lo=lo)
    if lo > hi:
        raise DomainError("range start exceeds range end", lo=lo, hi=hi)

    h = lo if lo % 2 == 1 else lo + 1
    while h < hi:
        count = min(segment_size, (hi - h + 1) // 2)
        for cand in _segment_candidates(h, count, sieve_limit).tolist():
            p = (cand * cand + 1) // 2
            if is_prime(p):
                yield HeightPrimePair(cand, p)
        h += 2 * count


def count_range(lo: int, hi: int, sieve_limit: int = config.SIEVE_LIMIT,
                segment_size: int = config.SEGMENT_SIZE) -> int:
    return sum(1 for _ in stream_pairs(lo, hi, sieve_limit=sieve_limit,
                                       segment_size=segment_size))


def shard_bounds(lo: int, hi: int, shards: int) -> list[tuple[int, int]]:
    """Splits [lo, hi) into at most `shards` contiguous, non-empty pieces."""
    shards = max(1, min(shards, hi - lo))
    step, extra = divmod(hi - lo, shards)
    bounds, start = [], lo
    for i in range(shards):
        end = start + step + (1 if i < extra else 0)
        bounds.append((start, end))
        start = end
    return bounds


def count_pairs(limit: int, *, workers: int = 1, lo: int = 1,
                sieve_limit: int = config.SIEVE_LIMIT,
                segment_size: int = config.SEGMENT_SIZE) -> int:
    """Number of heights lo ≤ h < limit admitting a pair."""
    if limit < 1:
        raise DomainError("limit must be at least 1", limit=limit)
    if lo > limit:
        raise DomainError("range start exceeds range end", lo=lo, hi=limit)
    if limit == lo:
        return 0
    if workers <= 1:
        return count_range(lo, limit, sieve_limit, segment_size)

    # ~4 shards per worker keeps the pool busy when segments differ in cost
    bounds = shard_bounds(lo, limit, workers * 4)
    log.debug("counting %d shards on %d workers", len(bounds), workers)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        counts = pool.map(count_range, *zip(*bounds),
                          [sieve_limit] * len(bounds), [segment_size] * len(bounds))
        return sum(counts)
