# duality.py
"""
Gross-Hopkins duality as degree bookkeeping.

A class in H^{h²}_c(G_h; π_t(E_h)/J) corresponds to a zero-line Greek letter
element of degree 2h - t - p^N|v_h|/(p-1) modulo p^N|v_h|. This module solves
those residue equations family by family and turns them into per-degree
verdicts, the divisibility-bound checks, and the conclusions report.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from math import gcd

import config
from errors import DomainError
from grading import (ChromaticContext, Degree, ResidueClass, det_shift, generator_degree,
                     period, residue_of, sparseness_ok, top_cohomological_degree)
from greek import Family, Level, mrw_exponent_bound, mrw_shape_ideals
from ideals import InvariantIdeal, find_exponents_with_degree, ideal_degree_sum

log = logging.getLogger(__name__)


class Coefficients(str, Enum):
    MOD_P = "mod_p"
    MOD_I = "mod_I"         # π_t(E_h)/I_{h-1}, I_{h-1} = (p, u_1, ..., u_{h-2})


class Verdict(str, Enum):
    ZERO = "zero"
    NONZERO = "nonzero"
    INCONCLUSIVE = "inconclusive"


class Variant(str, Enum):
    RHVC = "rhvc"           # t = 0
    KAPPA = "kappa"         # t = 2p - 2


@dataclass(frozen=True)
class PatternQuery:
    ctx: ChromaticContext
    t: Degree
    coefficients: Coefficients = Coefficients.MOD_P
    N_max: int | None = None

    def __post_init__(self):
        if top_cohomological_degree(self.ctx) is None:
            raise DomainError(f"(p - 1) divides h at (p={self.ctx.p}, h={self.ctx.h}); "
                              "no top cohomological degree", p=self.ctx.p, h=self.ctx.h)
        if self.ctx.h < 2:
            raise DomainError("patterns need height at least 2", h=self.ctx.h)
        if self.N_max is not None and self.N_max < 1:
            raise DomainError("N_max must be at least 1", N_max=self.N_max)
        object.__setattr__(self, "coefficients", Coefficients(self.coefficients))


@dataclass(frozen=True)
class Witness:
    family: Family
    N: int
    params: dict[str, str] = field(default_factory=dict)
    residue: ResidueClass | None = None
    level: Level = Level.CHART

    def params_text(self) -> str:
        return ";".join(f"{k}={v}" for k, v in self.params.items())


@dataclass(frozen=True)
class PatternReport:
    query: PatternQuery
    verdict: Verdict
    reason: str
    witnesses: tuple[Witness, ...] = ()
    potential_witnesses: tuple[Witness, ...] = ()
    checked_N_range: tuple[int, int] | None = None
    termination_N: int | None = None


# ── Residue equations ─────────────────────────────────────────────────────────
def dual_degree(ctx: ChromaticContext, t: Degree, N: int) -> ResidueClass:
    """Residue of 2h - t - p^N|v_h|/(p-1) modulo p^N|v_h|."""
    return residue_of(2 * ctx.h - t - det_shift(ctx, N), period(ctx, N))


def solve_family_I(ctx: ChromaticContext, N: int) -> ResidueClass:
    """s ≡ -(p^N - 1)/(p - 1) mod p^N, the family I exponent landing on t = 0."""
    if N < 1:
        raise DomainError(f"N must be at least 1, got {N}", N=N)
    residue = residue_of(-((ctx.p ** N - 1) // (ctx.p - 1)), ctx.p ** N)
    if gcd(residue.representative, ctx.p) != 1:
        raise ArithmeticError(f"solved s = {residue.representative} is divisible by p")
    return residue


def family_II_window(ctx: ChromaticContext, N: int) -> tuple[Degree, Degree]:
    """Canonical interval for t when the denominators range over the Baird box."""
    if N < 1:
        raise DomainError(f"N must be at least 1, got {N}", N=N)
    lower = -(ctx.p ** N - 1) * ctx.vh // (ctx.p - 1)
    upper = 2 * ctx.h * (1 - ctx.p ** N)
    return lower, upper


def _window_floor(ctx: ChromaticContext, N: int) -> Degree:
    """t-value of the all-ones denominator: -(p^N - 1)|v_h|/(p - 1)."""
    return -(ctx.p ** N - 1) * ctx.vh // (ctx.p - 1)


def _stepped_membership(ctx: ChromaticContext, t: Degree, N: int, bound: int) -> int | None:
    """
    The e in [1, bound] with t ≡ floor + (e-1)|v_{h-1}| mod p^N|v_h|, if any.
    (bound - 1)|v_{h-1}| < p^N|v_h| makes e unique.
    """
    step = generator_degree(ctx.p, ctx.h - 1)
    q, rem = divmod((t - _window_floor(ctx, N)) % period(ctx, N), step)
    return q + 1 if rem == 0 and q + 1 <= bound else None


def h2_window_membership(p: int, t: Degree, N: int) -> int | None:
    """e_1 ∈ [1, p^N + p^{N-1} - 1] solving the height-2 family III congruence."""
    if N < 1:
        raise DomainError(f"N must be at least 1, got {N}", N=N)
    ctx = ChromaticContext(p, 2)
    return _stepped_membership(ctx, t, N, mrw_exponent_bound(ctx, N))


def mod_I_window_membership(ctx: ChromaticContext, t: Degree, N: int) -> int | None:
    """e_{h-1} ∈ [1, a_{h,N}] solving the family III congruence modulo I_{h-1}."""
    if N < 1:
        raise DomainError(f"N must be at least 1, got {N}", N=N)
    return _stepped_membership(ctx, t, N, mrw_exponent_bound(ctx, N))


# ── N-scan ────────────────────────────────────────────────────────────────────
def _chart_level(ctx: ChromaticContext, coefficients: Coefficients) -> bool:
    return ctx.h == 2 or coefficients is Coefficients.MOD_I


def _window_top(ctx: ChromaticContext, coefficients: Coefficients, N: int) -> Degree:
    """Upper end of the union of contributing windows at N (canonical lift)."""
    if _chart_level(ctx, coefficients):
        step = generator_degree(ctx.p, ctx.h - 1)
        return _window_floor(ctx, N) + (mrw_exponent_bound(ctx, N) - 1) * step
    return family_II_window(ctx, N)[1]


def termination_index(ctx: ChromaticContext, coefficients: Coefficients, t: Degree) -> int:
    """
    Least N* ≥ 1 past which no window can contain t: every window top lies
    below -(|t| + 2h + 4p) and every next-period window bottom lies above it.
    Both ends move monotonically away from zero as N grows.
    """
    coefficients = Coefficients(coefficients)
    margin = abs(t) + 2 * ctx.h + 4 * ctx.p
    for N in range(1, config.MAX_SCAN_N + 1):
        top = _window_top(ctx, coefficients, N)
        bottom = _window_floor(ctx, N) + period(ctx, N)
        if -top > margin and bottom > margin:
            return N
    raise ArithmeticError(f"no termination index below N = {config.MAX_SCAN_N}")


def _family_I_witness(ctx: ChromaticContext, t: Degree) -> Witness:
    p, vh = ctx.p, ctx.vh
    k = -t // vh
    if (k - 1) % p:
        # N = 1: s ≡ k - 1 (mod p); the larger-modulus reading is recorded too
        N = 1
        s = residue_of(k - (p ** N - 1) // (p - 1), p ** N)
        wide = residue_of(k - (p ** N - 1) // (p - 1), period(ctx, N))
        params = {"s": str(s.representative), "s_modulus": str(s.modulus),
                  "s_mod_pN_vh": str(wide.representative)}
    else:
        # every N ≥ 1 forces p | s; v_h itself is invariant modulo I_h (N = 0)
        N, s = 0, residue_of(1, 1)
        params = {"s": "1", "s_modulus": "1"}
    return Witness(Family.I, N, params, s)


def pattern(query: PatternQuery) -> PatternReport:
    ctx, t, coefficients = query.ctx, query.t, query.coefficients

    if not sparseness_ok(ctx, t):
        return PatternReport(query, Verdict.ZERO, "sparseness")

    witnesses: list[Witness] = []
    potential: list[Witness] = []
    if t % ctx.vh == 0:
        witnesses.append(_family_I_witness(ctx, t))

    n_star = termination_index(ctx, coefficients, t)
    cap = query.N_max if query.N_max is not None else max(n_star, config.DEFAULT_N_MAX_FLOOR)
    n_hi = min(n_star, cap)
    log.debug("pattern t=%d: N* = %d, scanning 1..%d", t, n_star, n_hi)

    ones = (1,) * (ctx.h - 2)
    for N in range(1, n_hi + 1):
        if _chart_level(ctx, coefficients):
            j = _stepped_membership(ctx, t, N, ctx.p ** N)
            if j is not None:
                witnesses.append(Witness(Family.II, N, {"d": _csv(ones + (j,))},
                                         residue_of(t, period(ctx, N))))
            e = _stepped_membership(ctx, t, N, mrw_exponent_bound(ctx, N))
            if e is not None:
                witnesses.append(Witness(Family.III, N, {"s": "any p∤s", "d": _csv(ones + (e,))},
                                         residue_of(t, period(ctx, N))))
            continue

        lower, upper = family_II_window(ctx, N)
        lift = residue_of(t, period(ctx, N)).lift_into(lower, upper)
        if lift is None:
            continue
        D = lift - 2 * ctx.h + det_shift(ctx, N)
        d = find_exponents_with_degree(ctx, N, D)
        if d is None:
            # no box ideal has degree sum D, so neither family II nor III reaches t here
            continue
        residue = residue_of(t, period(ctx, N))
        witnesses.append(Witness(Family.II, N, {"d": _csv(d)}, residue))
        potential.append(Witness(Family.III, N, {"d": _csv(d), "lift": str(lift),
                                                 "degree_sum": str(D)}, residue, Level.BOUND))

    checked = (1, n_hi) if n_hi >= 1 else None
    if witnesses:
        verdict, reason = Verdict.NONZERO, "witness"
    elif n_star > cap:
        verdict, reason = Verdict.INCONCLUSIVE, f"N_max = {cap} reached before N* = {n_star}"
    elif not _chart_level(ctx, coefficients):
        verdict, reason = Verdict.ZERO, "no witness; family III checked at bound level"
    else:
        verdict, reason = Verdict.ZERO, "no family contributes"
    return PatternReport(query, verdict, reason, tuple(witnesses), tuple(potential),
                         checked, n_star)


def pattern_range(ctx: ChromaticContext, lo: Degree, hi: Degree,
                  coefficients: Coefficients = Coefficients.MOD_P,
                  N_max: int | None = None) -> list[PatternReport]:
    """Reports for every t in [lo, hi], ascending."""
    if lo > hi:
        raise DomainError("t-range start exceeds end", lo=lo, hi=hi)
    return [pattern(PatternQuery(ctx, t, coefficients, N_max)) for t in range(lo, hi + 1)]


def _csv(values) -> str:
    return ",".join(map(str, values))


# ── Divisibility bounds ───────────────────────────────────────────────────────
def theoremC_threshold(ctx: ChromaticContext, N: int, variant: Variant) -> Degree:
    bound = det_shift(ctx, N) - 2 * ctx.h
    if Variant(variant) is Variant.KAPPA:
        bound += 2 * ctx.p - 2
    return bound


def theoremC_bound(ideal: InvariantIdeal, variant: Variant) -> bool:
    """Strict inequality Σ d_i|v_i| < p^N|v_h|/(p-1) - 2h (+ 2p - 2 for kappa)."""
    if ideal.top is None:
        raise DomainError("divisibility bounds need an ideal with a top part y_{h,N}^s")
    return ideal_degree_sum(ideal) < theoremC_threshold(ideal.ctx, ideal.top.N, variant)


@dataclass(frozen=True)
class SweepRow:
    N: int
    e_max: int
    degree_sum: Degree
    threshold: Degree
    holds: bool


def theoremC_sweep(ctx: ChromaticContext, N_max: int, variant: Variant) -> list[SweepRow]:
    """
    Checks the bound over MRW-shape ideals (1, ..., 1, e), N = 1..N_max.
    The degree sum grows with e, so the extremal e decides each N.
    """
    if N_max < 1:
        raise DomainError("N_max must be at least 1", N_max=N_max)
    rows = []
    for N in range(1, N_max + 1):
        ideal = next(mrw_shape_ideals(ctx, N, extremal_only=True))
        rows.append(SweepRow(N, ideal.exponents[-1], ideal_degree_sum(ideal),
                             theoremC_threshold(ctx, N, variant), theoremC_bound(ideal, variant)))
    return rows


# ── Conclusions ───────────────────────────────────────────────────────────────
# Smith-Toda complexes V(k) known to exist at p: (p, k)
KNOWN_SMITH_TODA = {(5, 1), (13, 3)}


@dataclass(frozen=True)
class Statement:
    key: str
    holds: bool
    text: str


@dataclass(frozen=True)
class ConclusionsReport:
    ctx: ChromaticContext
    applicable: bool
    regime: str
    statements: tuple[Statement, ...]
    family_I_witness: Witness | None = None


def _regime(ctx: ChromaticContext) -> str:
    p, h = ctx.p, ctx.h
    if not ctx.coprime_height:
        return "(p-1) divides h"
    if 2 * p - 1 > h * h:
        return "2p-1 > h^2"
    if 2 * p - 1 == h * h:
        return "2p-1 = h^2"
    return "2p-1 < h^2"


def _verdict(ctx: ChromaticContext, t: Degree, coefficients: Coefficients) -> Verdict:
    return pattern(PatternQuery(ctx, t, coefficients)).verdict


def conclusions(ctx: ChromaticContext, N_max: int = 20) -> ConclusionsReport:
    p, h = ctx.p, ctx.h
    regime = _regime(ctx)
    statements: list[Statement] = []
    applicable = 2 * p - 1 == h * h

    if regime == "2p-1 > h^2":
        statements.append(Statement(
            "hms", True, f"(p-1) does not divide h and 2p-1 > h^2: kappa_{h} = 0 is already known"))

    if not applicable:
        statements.append(Statement(
            "applicability", False,
            f"inapplicable: 2p-1 = {2 * p - 1} != {h * h} = h^2"))
        statements.extend(_side_statements(ctx))
        return ConclusionsReport(ctx, False, regime, tuple(statements))

    kappa_zero = _verdict(ctx, 2 * p - 2, Coefficients.MOD_I) is Verdict.ZERO
    complex_name = f"V({h - 2})"
    text = (f"H^{h * h}(G_{h}; pi_{2 * p - 2}(E_{h})/I_{h - 1}) = 0, so an exotic X in kappa_{h} "
            f"cannot be detected by {complex_name} whenever {complex_name} exists")
    if (p, h - 2) in KNOWN_SMITH_TODA:
        text += f"; {complex_name} exists at p = {p}: exotic X invisible to {complex_name}"
    statements.append(Statement("smith_toda_non_detection", kappa_zero, text))

    if (h, p) == (3, 5):
        rhvc_mod_I = _verdict(ctx, 0, Coefficients.MOD_I) is Verdict.NONZERO
        statements.append(Statement(
            "rhvc_implies_kappa_zero", kappa_zero and rhvc_mod_I,
            "mod I_2 endpoints: t = 0 nonzero, t = 8 zero; RHVC at (h, p) = (3, 5) implies kappa_3 = 0"))

    sweep_rhvc = theoremC_sweep(ctx, N_max, Variant.RHVC)
    sweep_kappa = theoremC_sweep(ctx, N_max, Variant.KAPPA)
    both = all(r.holds for r in sweep_rhvc) and all(r.holds for r in sweep_kappa)
    statements.append(Statement(
        "divisibility_bounds_mrw_shape", both,
        f"both divisibility bounds hold on MRW-shape ideals for N <= {N_max}; "
        "the hypothesis over all invariant ideals remains open, so RHVC and kappa_h = 0 are not concluded"))

    s = solve_family_I(ctx, 1)
    witness = Witness(Family.I, 1, {"s": str(s.representative), "s_modulus": str(s.modulus)}, s)
    statements.append(Statement(
        "family_I_t0", True,
        f"v_{h}^s/(p v_1...v_{h - 1}) with s = {s.representative} mod {s.modulus} "
        f"gives a copy of F_{p} in H^{h * h}(G_{h}; pi_0(E_{h})/p)"))
    statements.extend(_side_statements(ctx))
    return ConclusionsReport(ctx, True, regime, tuple(statements), witness)


def _side_statements(ctx: ChromaticContext) -> list[Statement]:
    """Consequences valid outside the 2p - 1 = h² case."""
    p, h = ctx.p, ctx.h
    out: list[Statement] = []
    if not ctx.coprime_height or h < 2:
        return out
    if h == 2 and p >= 5:
        holds = (_verdict(ctx, 0, Coefficients.MOD_P) is Verdict.NONZERO
                 and _verdict(ctx, 2 * p - 2, Coefficients.MOD_P) is Verdict.ZERO)
        out.append(Statement("rhvc_height_2", holds,
                             f"RHVC holds at h = 2, p = {p}: H^4(G_2; pi_0(E_2)/p) = F_p "
                             f"and H^4(G_2; pi_{2 * p - 2}(E_2)/p) = 0"))
    if h >= 3:
        holds = (_verdict(ctx, 0, Coefficients.MOD_I) is Verdict.NONZERO
                 and _verdict(ctx, 2 * p - 2, Coefficients.MOD_I) is Verdict.ZERO)
        out.append(Statement("rhvc_mod_I", holds,
                             f"homological vanishing holds modulo I_{h - 1}: "
                             f"H^{h * h}(G_{h}; pi_0(E_{h})/I_{h - 1}) = F_{p}"))
    if (h, p) == (3, 3):
        holds = _verdict(ctx, 8, Coefficients.MOD_I) is Verdict.ZERO
        out.append(Statement("ev3_p3", holds,
                             "H^9(G_3; pi_8(E_3)/(3, u_1)) = 0: an exotic X in ker ev_2 "
                             "cannot be detected by V(1) = S^0/(3, v_1)"))
    return out
