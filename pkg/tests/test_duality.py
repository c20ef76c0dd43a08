import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import SMALL_PRIMES
from duality import (Coefficients, PatternQuery, Variant, Verdict, conclusions, dual_degree,
                     family_II_window, h2_window_membership, mod_I_window_membership, pattern,
                     pattern_range, solve_family_I, termination_index, theoremC_bound,
                     theoremC_sweep)
from errors import DomainError
from grading import ChromaticContext, det_shift, period, sparseness_ok
from greek import Family, degree, mrw_exponent_bound, mrw_generators_h2
from ideals import InvariantIdeal, TopPart, enumerate_invariant, ideal_degree_sum


# ── Residue equations ─────────────────────────────────────────────────────────
@pytest.mark.parametrize("p, h, t, N, expected", [
    (5, 3, 0, 1, 936), (5, 3, 8, 1, 928), (5, 2, 0, 0, 40),
])
def test_dual_degree(p, h, t, N, expected):
    residue = dual_degree(ChromaticContext(p, h), t, N)
    assert residue.representative == expected
    assert residue.modulus == p ** N * ChromaticContext(p, h).vh


@pytest.mark.parametrize("p, N, expected", [(5, 1, 4), (5, 2, 19), (3, 3, 14)])
def test_solve_family_I(p, N, expected):
    assert solve_family_I(ChromaticContext(p, 3), N).representative == expected


@given(p=st.sampled_from(SMALL_PRIMES), N=st.integers(1, 30))
def test_solve_family_I_is_a_unit(p, N):
    s = solve_family_I(ChromaticContext(p, 3), N)
    assert s.representative % p != 0
    assert s.modulus == p ** N


def test_solve_family_I_needs_positive_N():
    with pytest.raises(DomainError):
        solve_family_I(ChromaticContext(5, 3), 0)


@pytest.mark.parametrize("p, h, N, expected", [
    (5, 3, 1, (-248, -24)), (5, 2, 1, (-48, -16)), (3, 2, 1, (-16, -8)),
])
def test_family_II_window(p, h, N, expected):
    assert family_II_window(ChromaticContext(p, h), N) == expected


@pytest.mark.parametrize("p", SMALL_PRIMES)
def test_window_never_holds_endpoints(p):
    for h in (2, 3, 4):
        ctx = ChromaticContext(p, h)
        for N in range(1, 21):
            lower, upper = family_II_window(ctx, N)
            assert upper < 0
            for t in (0, 2 * p - 2):
                assert dual_degree(ctx, t, N).representative >= 0
                lift = (t - lower) % period(ctx, N) + lower
                assert not lower <= lift <= upper


@pytest.mark.parametrize("t, N, expected", [(-48, 1, 1), (-16, 1, 5), (8, 1, None)])
def test_h2_window_membership(t, N, expected):
    assert h2_window_membership(5, t, N) == expected


@given(p=st.sampled_from((3, 5, 7)), N=st.integers(1, 6), t=st.integers(-10**6, 10**6))
def test_h2_membership_reconstructs_congruence(p, N, t):
    ctx = ChromaticContext(p, 2)
    e = h2_window_membership(p, t, N)
    if e is None:
        return
    assert 1 <= e <= p ** N + p ** (N - 1) - 1
    lower = -(p ** N - 1) * ctx.vh // (p - 1)
    assert (t - lower - (e - 1) * 2 * (p - 1)) % period(ctx, N) == 0


def test_mod_I_membership(ctx53):
    # family III x_{3,1}/(p v_1 v_2^e) reaches t = lo + (e-1)|v_2|
    assert mod_I_window_membership(ctx53, -248, 1) == 1
    assert mod_I_window_membership(ctx53, -248 + 4 * 48, 1) == 5
    assert mod_I_window_membership(ctx53, -248 + 5 * 48, 1) is None


# ── Pattern ───────────────────────────────────────────────────────────────────
def test_pattern_height_two_endpoints(ctx52):
    r0 = pattern(PatternQuery(ctx52, 0))
    assert r0.verdict is Verdict.NONZERO
    assert r0.witnesses[0].family is Family.I
    assert r0.witnesses[0].params["s"] == "4"
    assert pattern(PatternQuery(ctx52, 8)).verdict is Verdict.ZERO


def test_pattern_mod_I_endpoints(ctx53):
    assert pattern(PatternQuery(ctx53, 8, Coefficients.MOD_I)).verdict is Verdict.ZERO
    r0 = pattern(PatternQuery(ctx53, 0, Coefficients.MOD_I))
    assert r0.verdict is Verdict.NONZERO
    assert r0.witnesses[0].family is Family.I


def test_pattern_sparseness(ctx53):
    r = pattern(PatternQuery(ctx53, 4))
    assert r.verdict is Verdict.ZERO
    assert r.reason == "sparseness"
    assert pattern(PatternQuery(ctx53, 7)).reason == "sparseness"


def test_pattern_rejects_bad_queries():
    with pytest.raises(DomainError):
        PatternQuery(ChromaticContext(5, 4), 0)
    with pytest.raises(DomainError):
        PatternQuery(ChromaticContext(5, 1), 0)
    with pytest.raises(DomainError):
        PatternQuery(ChromaticContext(5, 3), 0, N_max=0)


def test_family_one_at_unit_multiple_uses_N_zero(ctx52):
    # k = -t/|v_2| = 1 forces p | s for every N >= 1
    r = pattern(PatternQuery(ctx52, -48))
    first = r.witnesses[0]
    assert first.family is Family.I and first.N == 0


def test_pattern_family_two_witness(ctx52):
    r = pattern(PatternQuery(ctx52, -16))
    families = {w.family for w in r.witnesses}
    assert Family.II in families and Family.III in families


def test_pattern_mod_p_higher_height_is_bound_level(ctx53):
    r = pattern(PatternQuery(ctx53, -24))
    assert r.verdict is Verdict.NONZERO
    assert [w.params["d"] for w in r.witnesses] == ["5,5"]
    assert r.potential_witnesses
    assert all(w.level.value == "bound" for w in r.potential_witnesses)


def test_pattern_mod_p_needs_a_baird_box_hit(ctx53):
    # -64 lifts into the N = 1 window but no box ideal has degree sum 240
    r = pattern(PatternQuery(ctx53, -64))
    assert r.verdict is Verdict.ZERO
    assert not r.potential_witnesses
    assert r.reason == "no witness; family III checked at bound level"


def _baird_box_hits(ctx, lo_t, hi_t):
    """Every box ideal at N = 1..N* pushed through the duality shift."""
    n_star = max(termination_index(ctx, Coefficients.MOD_P, t) for t in (lo_t, hi_t))
    hits = {}
    for N in range(1, n_star + 1):
        hits[N] = {(2 * ctx.h + ideal_degree_sum(ideal) - det_shift(ctx, N)) % period(ctx, N)
                   for ideal in enumerate_invariant(ctx, N, ctx.p ** N)}
    return {t for t in range(lo_t, hi_t + 1)
            if sparseness_ok(ctx, t)
            and (t % ctx.vh == 0 or any(t % period(ctx, N) in hits[N] for N in hits))}


def test_pattern_mod_p_matches_baird_box(ctx53):
    reports = pattern_range(ctx53, -1500, 0)
    assert all(r.verdict is not Verdict.INCONCLUSIVE for r in reports)
    got = {r.query.t for r in reports if r.verdict is Verdict.NONZERO}
    assert got == _baird_box_hits(ctx53, -1500, 0)


def test_pattern_N_max_cap(ctx52):
    r = pattern(PatternQuery(ctx52, -1992, N_max=1))
    assert termination_index(ctx52, Coefficients.MOD_P, -1992) > 1
    assert r.checked_N_range == (1, 1)
    assert r.verdict in (Verdict.NONZERO, Verdict.INCONCLUSIVE)


@given(t=st.integers(-5000, 5000).map(lambda t: 8 * t))
def test_verdict_matches_witnesses(t):
    r = pattern(PatternQuery(ChromaticContext(5, 2), t))
    assert (r.verdict is Verdict.NONZERO) == bool(r.witnesses)


def test_termination_index_height_two_formula():
    ctx = ChromaticContext(5, 2)
    for t in (0, 8, -2000, 2000):
        n = termination_index(ctx, Coefficients.MOD_P, t)
        assert 2 * 5 ** n + 2 * 5 ** (n - 1) - 6 > abs(t) + 4 + 10
        assert n == 1 or 2 * 5 ** (n - 1) + 2 * 5 ** (n - 2) - 6 <= abs(t) + 4 + 10


def _oracle_hits(p, lo_t, hi_t):
    """Pushes every height-2 generator through the duality shift, N = 0..N*."""
    ctx = ChromaticContext(p, 2)
    n_star = max(termination_index(ctx, Coefficients.MOD_P, t) for t in (lo_t, hi_t))
    reach = max(abs(lo_t), abs(hi_t)) + period(ctx, n_star)
    table = mrw_generators_h2(p, (-reach, reach))
    hits = {N: set() for N in range(n_star + 1)}
    for e in table:
        g = degree(e)
        if e.family is Family.I:
            levels = range(0, n_star + 1)
        elif e.family is Family.II:
            levels = [N for N in range(1, n_star + 1) if e.denominators[0] <= p ** N]
        else:
            levels = [e.N] if e.N <= n_star else []
        for N in levels:
            hits[N].add((2 * 2 - det_shift(ctx, N) - g) % period(ctx, N))
    return {t for t in range(lo_t, hi_t + 1)
            if any(t % period(ctx, N) in hits[N] for N in hits)}


def test_pattern_matches_generator_oracle():
    ctx = ChromaticContext(5, 2)
    expected = _oracle_hits(5, -2000, 0)
    got = {r.query.t for r in pattern_range(ctx, -2000, 0) if r.verdict is Verdict.NONZERO}
    assert got == expected
    assert 0 in got and -48 in got


def test_pattern_range_is_ascending(ctx52):
    reports = pattern_range(ctx52, -16, 16)
    assert [r.query.t for r in reports] == list(range(-16, 17))
    with pytest.raises(DomainError):
        pattern_range(ctx52, 5, 4)


# ── Divisibility bounds ───────────────────────────────────────────────────────
@pytest.mark.parametrize("d, N, expected", [((1, 5), 1, True), ((5, 5), 1, True), ((1, 1), 0, False)])
def test_theoremC_bound(ctx53, d, N, expected):
    assert theoremC_bound(InvariantIdeal(ctx53, d, TopPart(1, N)), Variant.RHVC) is expected


def test_theoremC_bound_kappa_is_looser(ctx53):
    ideal = InvariantIdeal(ctx53, (1, 1), TopPart(1, 0))
    assert theoremC_bound(ideal, Variant.KAPPA)


def test_theoremC_bound_needs_top(ctx53):
    with pytest.raises(DomainError):
        theoremC_bound(InvariantIdeal(ctx53, (1, 1)), Variant.RHVC)


@pytest.mark.parametrize("p, h", [(5, 3), (13, 5)])
def test_theoremC_sweep_holds(p, h):
    ctx = ChromaticContext(p, h)
    for variant in Variant:
        rows = theoremC_sweep(ctx, 20, variant)
        assert len(rows) == 20 and all(r.holds for r in rows)
        assert [r.e_max for r in rows] == [mrw_exponent_bound(ctx, N) for N in range(1, 21)]


def test_theoremC_sweep_wide():
    for h in range(3, 9):
        for p in (5, 7, 11, 13):
            assert all(r.holds for r in theoremC_sweep(ChromaticContext(p, h), 20, Variant.RHVC))


# ── Conclusions ───────────────────────────────────────────────────────────────
def _statement(report, key):
    return next(s for s in report.statements if s.key == key)


def test_conclusions_height_three():
    report = conclusions(ChromaticContext(5, 3))
    assert report.applicable
    statement = _statement(report, "smith_toda_non_detection")
    assert statement.holds and "exotic X invisible to V(1)" in statement.text
    assert _statement(report, "rhvc_implies_kappa_zero").holds
    assert _statement(report, "divisibility_bounds_mrw_shape").holds
    assert report.family_I_witness.params["s"] == "4"


def test_conclusions_height_five():
    report = conclusions(ChromaticContext(13, 5))
    statement = _statement(report, "smith_toda_non_detection")
    assert statement.holds and "V(3)" in statement.text


def test_conclusions_inapplicable():
    report = conclusions(ChromaticContext(7, 4))
    assert not report.applicable
    assert "2p-1 = 13 != 16" in _statement(report, "applicability").text


def test_conclusions_side_statements():
    assert _statement(conclusions(ChromaticContext(5, 2)), "rhvc_height_2").holds
    assert _statement(conclusions(ChromaticContext(3, 3)), "ev3_p3").holds
