# grading.py
"""
Exact graded-degree arithmetic for the generators v_i, the determinant
shift, and the sparseness / vanishing-line predicates.

All degrees are plain Python ints (arbitrary precision).
"""

import logging
from dataclasses import dataclass

from errors import DomainError
from primes import is_prime

Degree = int

log = logging.getLogger(__name__)


# ── Context ───────────────────────────────────────────────────────────────────
@dataclass(frozen=True)
class ChromaticContext:
    """The pair (p, h)."""

    p: int
    h: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise DomainError(f"p = {self.p} is not prime", p=self.p)
        if self.h < 1:
            raise DomainError(f"height must be at least 1, got {self.h}", h=self.h)
        if self.p == 2:
            log.debug("p = 2: (p - 1) divides every height, no finite top degree")

    @property
    def coprime_height(self) -> bool:
        """True when (p - 1) does not divide h."""
        return self.h % (self.p - 1) != 0

    @property
    def vh(self) -> Degree:
        return generator_degree(self.p, self.h)

    def to_record(self) -> dict[str, str]:
        return {"p": str(self.p), "h": str(self.h)}


@dataclass(frozen=True)
class ResidueClass:
    modulus: int
    representative: int

    def __post_init__(self):
        if self.modulus <= 0:
            raise DomainError("modulus must be positive", modulus=self.modulus)
        if not 0 <= self.representative < self.modulus:
            raise DomainError("representative outside [0, modulus)",
                              representative=self.representative, modulus=self.modulus)

    def contains(self, t: int) -> bool:
        return (t - self.representative) % self.modulus == 0

    def lift_into(self, lo: int, hi: int) -> int | None:
        """Smallest member of the class inside [lo, hi], if any."""
        first = lo + (self.representative - lo) % self.modulus
        return first if first <= hi else None


# ── Degrees ───────────────────────────────────────────────────────────────────
def generator_degree(p: int, i: int) -> Degree:
    """|v_i| = 2(p^i - 1) for any i ≥ 1; v_0 = p has degree 0."""
    if i < 0:
        raise DomainError(f"generator index must be non-negative, got {i}", i=i)
    return 2 * (p ** i - 1)


def v_degree(ctx: ChromaticContext, i: int) -> Degree:
    if not 1 <= i <= ctx.h:
        raise DomainError(f"generator index {i} outside 1..{ctx.h}", i=i, h=ctx.h)
    return generator_degree(ctx.p, i)


def det_shift(ctx: ChromaticContext, N: int) -> Degree:
    """p^N |v_h| / (p - 1); (p - 1) always divides |v_h|."""
    if N < 0:
        raise DomainError(f"N must be non-negative, got {N}", N=N)
    return ctx.p ** N * ctx.vh // (ctx.p - 1)


def period(ctx: ChromaticContext, N: int) -> int:
    """Periodicity p^N |v_h| of the quotient where v_h^{p^N} is invariant."""
    if N < 0:
        raise DomainError(f"N must be non-negative, got {N}", N=N)
    return ctx.p ** N * ctx.vh


def family_one_identity(ctx: ChromaticContext) -> Degree:
    """2h + Σ_{i<h} |v_i|, which equals |v_h| / (p - 1)."""
    return 2 * ctx.h + sum(generator_degree(ctx.p, i) for i in range(1, ctx.h))


# ── Predicates ────────────────────────────────────────────────────────────────
def sparseness_ok(ctx: ChromaticContext, t: Degree) -> bool:
    return t % (2 * (ctx.p - 1)) == 0


def top_cohomological_degree(ctx: ChromaticContext) -> int | None:
    """h² when (p - 1) ∤ h, otherwise None (no finite top degree)."""
    return ctx.h * ctx.h if ctx.coprime_height else None


def residue_of(t: Degree, modulus: int) -> ResidueClass:
    if modulus <= 0:
        raise DomainError(f"modulus must be positive, got {modulus}", modulus=modulus)
    return ResidueClass(modulus, t % modulus)
