# ideals.py
"""
Invariant ideals (p, v_1^{d_1}, ..., v_{h-1}^{d_{h-1}} [, y_{h,N}^s]):
Baird's criterion, enumeration, the u ↔ v translation and degree sums.
"""

from dataclasses import dataclass
from enum import Enum
from math import gcd
from typing import Iterator, Sequence

from errors import DomainError
from grading import ChromaticContext, Degree, v_degree


class Certificate(str, Enum):
    BAIRD = "baird"     # Baird's criterion with s_h = p^N appended
    MRW = "mrw"         # top generator is the corrected replacement x_{h,N}


@dataclass(frozen=True)
class TopPart:
    """y_{h,N}^s, of formal degree s·p^N·|v_h|."""

    s: int
    N: int


@dataclass(frozen=True)
class InvariantIdeal:
    ctx: ChromaticContext
    exponents: tuple[int, ...]
    top: TopPart | None = None
    certificate: Certificate = Certificate.BAIRD

    def __post_init__(self):
        ctx = self.ctx
        object.__setattr__(self, "exponents", tuple(self.exponents))
        if len(self.exponents) != ctx.h - 1:
            raise DomainError(f"expected {ctx.h - 1} exponents, got {len(self.exponents)}",
                              exponents=self.exponents)
        if any(d < 1 for d in self.exponents):
            raise DomainError("exponents must be positive", exponents=self.exponents)
        if self.top is not None:
            if self.top.N < 0:
                raise DomainError("top N must be non-negative", N=self.top.N)
            if gcd(self.top.s, ctx.p) != 1:
                raise DomainError(f"s = {self.top.s} is not coprime to p = {ctx.p}", s=self.top.s)

        if self.certificate is Certificate.MRW:
            self._check_mrw_shape()
            return
        sequence = self.baird_sequence()
        if sequence and not is_invariant(ctx, sequence):
            raise DomainError("Baird's criterion fails", exponents=sequence)

    def _check_mrw_shape(self):
        # The exponent bound itself (p^N + p^{N-1} - 1, or a_{h,N}) is enforced
        # by greek.mrw_ideal, which owns the MRW tables.
        if self.top is None or self.top.N < 1:
            raise DomainError("MRW-certified ideals need a top part with N ≥ 1")
        if self.ctx.h < 2 or any(d != 1 for d in self.exponents[:-1]):
            raise DomainError("MRW-certified ideals have shape (1, ..., 1, e)",
                              exponents=self.exponents)

    def baird_sequence(self) -> tuple[int, ...]:
        if self.top is None:
            return self.exponents
        return self.exponents + (self.ctx.p ** self.top.N,)

    def label(self) -> str:
        gens = [f"v{i}^{d}" if d != 1 else f"v{i}" for i, d in enumerate(self.exponents, 1)]
        if self.top is not None:
            gens.append(f"y{self.ctx.h},{self.top.N}^{self.top.s}")
        return "(" + ", ".join(["p", *gens]) + ")"


@dataclass(frozen=True)
class UIdeal:
    """(p, u_1^{j_1}, ..., u_{h-1}^{j_{h-1}}) in π_0(E_h)."""

    ctx: ChromaticContext
    exponents: tuple[int, ...]


# ── Baird's criterion ─────────────────────────────────────────────────────────
def p_valuation(n: int, p: int) -> int:
    if n == 0:
        raise DomainError("valuation of zero is undefined")
    n, e = abs(n), 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def _next_power(p: int, d: int) -> int:
    """Smallest p^k with p^k ≥ d."""
    q = 1
    while q < d:
        q *= p
    return q


def is_invariant(ctx: ChromaticContext, exponents: Sequence[int]) -> bool:
    """(p, v_1^{s_1}, ..., v_n^{s_n}) is invariant iff s_i ≤ p^{e_{i+1}} for i < n."""
    if not exponents:
        raise DomainError("exponent vector is empty")
    if any(s < 1 for s in exponents):
        raise DomainError("exponents must be positive", exponents=tuple(exponents))
    p = ctx.p
    return all(s <= p ** p_valuation(nxt, p) for s, nxt in zip(exponents, exponents[1:]))


def max_exponents(ctx: ChromaticContext, N: int) -> tuple[int, ...]:
    if N < 0:
        raise DomainError(f"N must be non-negative, got {N}", N=N)
    return (ctx.p ** N,) * (ctx.h - 1)


def enumerate_invariant(ctx: ChromaticContext, N: int, cap: int) -> Iterator[InvariantIdeal]:
    """
    Lazily yields every ideal with 1 ≤ d_i ≤ min(cap, p^N) that stays invariant
    with s_h = p^N appended, in lexicographic order of (d_1, ..., d_{h-1}).
    """
    if N < 0:
        raise DomainError(f"N must be non-negative, got {N}", N=N)
    if cap < 1:
        raise DomainError(f"cap must be at least 1, got {cap}", cap=cap)
    n = ctx.h - 1
    bound = min(cap, ctx.p ** N)
    top = TopPart(1, N)

    def extend(prefix: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
        if len(prefix) == n:
            yield prefix
            return
        # d_{k+1} must be divisible by the least power of p that is ≥ d_k
        step = _next_power(ctx.p, prefix[-1]) if prefix else 1
        for d in range(step, bound + 1, step):
            yield from extend(prefix + (d,))

    for exponents in extend(()):
        yield InvariantIdeal(ctx, exponents, top)


def find_exponents_with_degree(ctx: ChromaticContext, N: int,
                               target: Degree) -> tuple[int, ...] | None:
    """
    A vector (d_1, ..., d_{h-1}), invariant with s_h = p^N appended, whose
    degree sum Σ d_i|v_i| equals target; None if there is none.
    """
    n = ctx.h - 1
    if n == 0:
        return () if target == 0 else None
    degs = [v_degree(ctx, i) for i in range(1, n + 1)]
    floors = [sum(degs[:k]) for k in range(n + 1)]     # all-ones partial sums
    p = ctx.p

    def search(k: int, remaining: int, upper: int) -> tuple[int, ...] | None:
        # choose d_k (1-based) with d_k ≤ upper; d_1..d_{k-1} still open
        if k == 1:
            q, rem = divmod(remaining, degs[0])
            return (q,) if rem == 0 and 1 <= q <= upper else None
        top_d = min(upper, (remaining - floors[k - 1]) // degs[k - 1])
        for d in range(top_d, 0, -1):
            found = search(k - 1, remaining - d * degs[k - 1], p ** p_valuation(d, p))
            if found is not None:
                return found + (d,)
        return None

    return search(n, target, p ** N)


# ── Translation and degrees ───────────────────────────────────────────────────
def translate_u_to_v(ideal: UIdeal) -> InvariantIdeal:
    """(p, u_1^{j_1}, ...) ↦ (p, v_1^{j_1}, ...); exponents carry over unchanged."""
    return InvariantIdeal(ideal.ctx, tuple(ideal.exponents))


def ideal_degree_sum(ideal: InvariantIdeal) -> Degree:
    return sum(d * v_degree(ideal.ctx, i) for i, d in enumerate(ideal.exponents, 1))
