# greek.py
"""
Greek letter elements of H^{0,*}(M_1^{h-1}): the three families, their
internal degrees, the Miller-Ravenel-Wilson generator tables and the
exponent bound a_{h,N}.

x_N, x_{h,N} and y_{h,N} are formal symbols of degree p^N|v_h|; their
correcting terms are never computed.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from itertools import chain
from math import gcd
from typing import Iterator, Mapping

import config
from errors import DomainError
from grading import ChromaticContext, Degree, generator_degree, period
from ideals import (Certificate, InvariantIdeal, TopPart, enumerate_invariant,
                    ideal_degree_sum, is_invariant)

log = logging.getLogger(__name__)

Window = tuple[int, int]


class Family(str, Enum):
    I = "I"
    II = "II"
    III = "III"


class Level(str, Enum):
    CHART = "chart"     # listed by a proven generator table
    BOUND = "bound"     # only known to satisfy the invariance bounds


@dataclass(frozen=True)
class GreekElement:
    ctx: ChromaticContext
    family: Family
    s: int = 1
    N: int = 0
    denominators: tuple[int, ...] = ()
    level: Level = Level.CHART

    def __post_init__(self):
        ctx = self.ctx
        object.__setattr__(self, "denominators", tuple(self.denominators))
        if len(self.denominators) != ctx.h - 1:
            raise DomainError(f"expected {ctx.h - 1} denominators", denominators=self.denominators)
        if any(d < 1 for d in self.denominators):
            raise DomainError("denominators must be positive", denominators=self.denominators)

        if self.family is Family.I:
            if any(d != 1 for d in self.denominators) or self.N != 0:
                raise DomainError("family I has denominator p·v_1···v_{h-1} and N = 0")
            self._require_unit_s()
        elif self.family is Family.II:
            if self.s != 1 or self.N != 0:
                raise DomainError("family II has s = 1 and N = 0")
            if self.denominators and not is_invariant(ctx, self.denominators):
                raise DomainError("denominator ideal is not invariant", denominators=self.denominators)
        else:
            if self.N < 1:
                raise DomainError("family III needs N ≥ 1", N=self.N)
            self._require_unit_s()
            self.associated_ideal()

    def _require_unit_s(self):
        if gcd(self.s, self.ctx.p) != 1:
            raise DomainError(f"s = {self.s} is not coprime to p = {self.ctx.p}", s=self.s)

    def associated_ideal(self) -> InvariantIdeal:
        if self.family is Family.III:
            if self.level is Level.CHART:
                return _mrw_certified(self.ctx, self.denominators, self.s, self.N)
            return InvariantIdeal(self.ctx, self.denominators, TopPart(self.s, self.N))
        return InvariantIdeal(self.ctx, self.denominators)

    def label(self) -> str:
        ctx = self.ctx
        den = "".join(f"v{i}" if d == 1 else f"v{i}^{d}" for i, d in enumerate(self.denominators, 1))
        if self.family is Family.I:
            num = f"v{ctx.h}^{self.s}"
        elif self.family is Family.II:
            num = "1"
        else:
            num = f"x{ctx.h},{self.N}^{self.s}"
        return f"{num}/(p{den})"

    def params(self) -> dict[str, str]:
        record = {"s": str(self.s), "N": str(self.N),
                  "d": ",".join(map(str, self.denominators))}
        if self.level is Level.BOUND:
            record["level"] = self.level.value
        return record


@dataclass(frozen=True)
class MonomialFraction:
    """Π v_i^{e_i}; indices may exceed h."""

    ctx: ChromaticContext
    exponents: tuple[tuple[int, int], ...]

    @classmethod
    def of(cls, ctx: ChromaticContext, exponents: Mapping[int, int]) -> "MonomialFraction":
        if any(i < 1 for i in exponents):
            raise DomainError("generator indices start at 1", exponents=dict(exponents))
        return cls(ctx, tuple(sorted((i, e) for i, e in exponents.items() if e != 0)))


# ── Degrees ───────────────────────────────────────────────────────────────────
def degree(e: GreekElement) -> Degree:
    ctx = e.ctx
    denominator = sum(d * generator_degree(ctx.p, i) for i, d in enumerate(e.denominators, 1))
    if e.family is Family.I:
        return e.s * ctx.vh - denominator
    if e.family is Family.II:
        return -denominator
    return e.s * period(ctx, e.N) - denominator


def monomial_degree(m: MonomialFraction) -> Degree:
    return sum(e * generator_degree(m.ctx.p, i) for i, e in m.exponents)


def corrector_terms(p: int) -> tuple[MonomialFraction, ...]:
    """The three terms of the permanent cycle detected by v_1^{-(p²+1)} v_2^{p²}."""
    ctx = ChromaticContext(p, 2)
    return (
        MonomialFraction.of(ctx, {2: p * p, 1: -(p * p + 1)}),
        MonomialFraction.of(ctx, {2: p * p - p + 1, 1: -2}),
        MonomialFraction.of(ctx, {2: -p, 3: p, 1: -1}),
    )


# ── a_{h,N} ───────────────────────────────────────────────────────────────────
def _check_ahn_args(h: int, p: int, N: int):
    if h < 3:
        raise DomainError(f"a_(h,N) needs h ≥ 3, got {h}", h=h)
    if p < 2:
        raise DomainError(f"p must be at least 2, got {p}", p=p)
    if N < 0:
        raise DomainError(f"N must be non-negative, got {N}", N=N)


def a_hn_recursive(h: int, p: int, N: int) -> int:
    _check_ahn_args(h, p, N)
    if N == 0:
        return 1
    a = p
    for n in range(2, N + 1):
        a = p * a + (p - 1 if n % (h - 1) == 1 else 0)
    return a


def a_hn_closed(h: int, p: int, N: int) -> int:
    """p^N + (p-1)(p^{N-1} - p^{r-1}) / (p^{h-1} - 1), r ∈ [1, h-1] with N ≡ r."""
    _check_ahn_args(h, p, N)
    if N == 0:
        raise DomainError("closed formula starts at N = 1; a_(h,0) = 1 by definition")
    r = (N - 1) % (h - 1) + 1
    q, rem = divmod((p - 1) * (p ** (N - 1) - p ** (r - 1)), p ** (h - 1) - 1)
    if rem:
        raise ArithmeticError(f"closed formula not integral at (h={h}, p={p}, N={N})")
    return p ** N + q


def mrw_exponent_bound(ctx: ChromaticContext, N: int) -> int:
    """Largest admissible last denominator exponent for x_{h,N}^s."""
    if N < 1:
        raise DomainError(f"N must be at least 1, got {N}", N=N)
    if ctx.h == 2:
        return ctx.p ** N + ctx.p ** (N - 1) - 1
    return a_hn_recursive(ctx.h, ctx.p, N)


def mrw_ideal(ctx: ChromaticContext, N: int, e: int, s: int = 1) -> InvariantIdeal:
    if ctx.h < 2:
        raise DomainError("MRW tables start at height 2", h=ctx.h)
    return _mrw_certified(ctx, (1,) * (ctx.h - 2) + (e,), s, N)


def _mrw_certified(ctx: ChromaticContext, denominators: tuple[int, ...],
                   s: int, N: int) -> InvariantIdeal:
    bound = mrw_exponent_bound(ctx, N)
    e = denominators[-1]
    if not 1 <= e <= bound:
        raise DomainError(f"exponent {e} outside 1..{bound}", e=e, N=N)
    return InvariantIdeal(ctx, denominators, TopPart(s, N), Certificate.MRW)


def mrw_shape_ideals(ctx: ChromaticContext, N: int,
                     extremal_only: bool = False) -> Iterator[InvariantIdeal]:
    bound = mrw_exponent_bound(ctx, N)
    for e in ([bound] if extremal_only else range(1, bound + 1)):
        yield mrw_ideal(ctx, N, e)


# ── Generator tables ──────────────────────────────────────────────────────────
def _check_window(window: Window) -> Window:
    if window is None or len(window) != 2 or any(w is None for w in window):
        raise DomainError("degree window must be a finite closed interval")
    lo, hi = int(window[0]), int(window[1])
    if lo > hi:
        raise DomainError("window lower end exceeds upper end", lo=lo, hi=hi)
    return lo, hi


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def _unit_range(lo: int, hi: int, step: int, shift: int, p: int) -> Iterator[int]:
    """s coprime to p with lo ≤ s·step - shift ≤ hi."""
    for s in range(_ceil_div(lo + shift, step), (hi + shift) // step + 1):
        if s % p:
            yield s


def _family_one(ctx: ChromaticContext, lo: int, hi: int) -> Iterator[GreekElement]:
    base = sum(generator_degree(ctx.p, i) for i in range(1, ctx.h))
    for s in _unit_range(lo, hi, ctx.vh, base, ctx.p):
        yield GreekElement(ctx, Family.I, s, 0, (1,) * (ctx.h - 1))


def _family_two_mrw(ctx: ChromaticContext, lo: int, hi: int) -> Iterator[GreekElement]:
    prefix = sum(generator_degree(ctx.p, i) for i in range(1, ctx.h - 1))
    v = generator_degree(ctx.p, ctx.h - 1)
    for j in range(max(1, _ceil_div(-hi - prefix, v)), (-lo - prefix) // v + 1):
        yield GreekElement(ctx, Family.II, 1, 0, (1,) * (ctx.h - 2) + (j,))


def _family_three_mrw(ctx: ChromaticContext, lo: int, hi: int) -> Iterator[GreekElement]:
    prefix = sum(generator_degree(ctx.p, i) for i in range(1, ctx.h - 1))
    v = generator_degree(ctx.p, ctx.h - 1)
    reach = max(abs(lo), abs(hi))
    for N in range(1, config.MAX_SCAN_N + 1):
        bound = mrw_exponent_bound(ctx, N)
        M = period(ctx, N)
        # every s ≠ 0 gives |degree| ≥ M - (prefix + bound·v), increasing in N
        if M - (prefix + bound * v) > reach:
            log.debug("family III scan stops at N = %d", N)
            return
        for e in range(1, bound + 1):
            for s in _unit_range(lo, hi, M, prefix + e * v, ctx.p):
                yield GreekElement(ctx, Family.III, s, N, (1,) * (ctx.h - 2) + (e,))
    raise ArithmeticError("family III scan did not terminate")


def _ordered(elements: Iterator[GreekElement]) -> list[GreekElement]:
    order = {Family.I: 0, Family.II: 1, Family.III: 2}
    return sorted(elements, key=lambda e: (order[e.family], e.N, e.s, e.denominators))


def mrw_generators_h2(p: int, degree_window: Window) -> list[GreekElement]:
    """Generators of H^{0,*}(M^1_1) with degree in the window."""
    lo, hi = _check_window(degree_window)
    ctx = ChromaticContext(p, 2)
    return _ordered(chain(_family_one(ctx, lo, hi), _family_two_mrw(ctx, lo, hi),
                           _family_three_mrw(ctx, lo, hi)))


def mrw_generators_general(ctx: ChromaticContext, degree_window: Window) -> list[GreekElement]:
    """Generators of H^{0,*}(M^1_{h-1}) for h ≥ 3 with degree in the window."""
    if ctx.h < 3:
        raise DomainError(f"general table needs h ≥ 3, got {ctx.h}", h=ctx.h)
    lo, hi = _check_window(degree_window)
    return _ordered(chain(_family_one(ctx, lo, hi), _family_two_mrw(ctx, lo, hi),
                           _family_three_mrw(ctx, lo, hi)))


def bound_level_family_III(ctx: ChromaticContext, N: int, degree_window: Window,
                           cap: int = config.DEFAULT_SEARCH_CAP) -> list[GreekElement]:
    """General-shape family III candidates from the Baird box; bound-level, not chart-level."""
    if N < 1:
        raise DomainError(f"N must be at least 1, got {N}", N=N)
    lo, hi = _check_window(degree_window)
    M = period(ctx, N)
    found = []
    for ideal in enumerate_invariant(ctx, N, cap):
        D = ideal_degree_sum(ideal)
        for s in _unit_range(lo, hi, M, D, ctx.p):
            found.append(GreekElement(ctx, Family.III, s, N, ideal.exponents, Level.BOUND))
    return _ordered(iter(found))


def generators(ctx: ChromaticContext, degree_window: Window) -> list[GreekElement]:
    """Chart-level table for the context's height (h = 2 or h ≥ 3)."""
    if ctx.h == 2:
        return mrw_generators_h2(ctx.p, degree_window)
    return mrw_generators_general(ctx, degree_window)