import json
from math import lcm

import pytest

from christol.algebra import fq_ctx_new
from christol.algebra import poly as P
from christol.automaton import build_reverse_dfao, minimize
from christol.complexity import (algebraize, algebraize_kernel, base_compare, bounds_report,
                                 ceil_log, default_caps, landau)
from christol.errors import NoRelationError, UserInputError
from christol.function_field import curve_new
from christol.kernel import enumerate_kernel
from christol.series import TruncSeries, eval_curve, hensel_expand

from helpers import curve_from, random_poly, thue_morse

F2, F3, F4, F5, F7 = (fq_ctx_new(2), fq_ctx_new(3), fq_ctx_new(2, 2), fq_ctx_new(5),
                      fq_ctx_new(7))


# -- Landau's function ------------------------------------------------------------------------


def partitions(n, largest=None):
    largest = n if largest is None else largest
    if n == 0:
        yield []
        return
    for k in range(min(n, largest), 0, -1):
        for rest in partitions(n - k, k):
            yield [k] + rest


def brute_landau(n):
    return max(lcm(*parts) if parts else 1 for parts in partitions(n))


def test_landau_examples():
    assert landau(0) == 1 and landau(1) == 1
    assert landau(5) == 6
    assert landau(7) == 12


def test_landau_matches_brute_force():
    for n in range(41):
        assert landau(n) == brute_landau(n), n


def test_landau_range():
    assert landau(200) > landau(199) // 2
    with pytest.raises(UserInputError):
        landau(201)
    with pytest.raises(UserInputError):
        landau(-1)


def test_ceil_log():
    assert [ceil_log(2, t) for t in (1, 2, 3, 4, 5)] == [0, 1, 2, 2, 3]


# -- bound report ---------------------------------------------------------------------------------


def test_bounds_examples():
    ell = curve_from(F5, "(1-4*x^3)*T^2 - 1")
    r = bounds_report(ell, 1, 9, 9)
    assert r.bounds["main"] == 3125 and r.verdicts["main"] == "PASS"
    lin = curve_new(F2, {(0, 1): 1, (1, 1): 1, (1, 0): 1})  # (1 + x) T + x
    r = bounds_report(lin, 0, 2, 2)
    assert r.bounds["main"] == 2 and r.verdicts["main"] == "PASS"
    binom = curve_from(F5, "(1-4*x)*T^2 - 1")
    r = bounds_report(binom, 0, 5, 5)
    assert r.bounds["genus_free"] == 25 and r.verdicts["genus_free"] == "PASS"


def test_refined_bound_formula():
    ell = curve_from(F5, "(1-4*x^3)*T^2 - 1")
    r = bounds_report(ell, 1, 9, 9)
    # 1 + ceil(log_5 3) + 1 * L(7) * 5 + 5^5
    assert r.bounds["refined"] == 1 + 1 + 12 * 5 + 3125
    assert r.bounds["easy"] == 5 ** 9
    assert r.bounds["forward"] == 5 ** 7


def test_castelnuovo_fallback_is_flagged():
    ell = curve_from(F5, "(1-4*x^3)*T^2 - 1")
    r = bounds_report(ell, None, 9, 9)
    assert r.genus_substituted and r.g == 2
    assert "fallback" in r.to_text()
    d = json.loads(r.to_json())
    assert d["genus_substituted"] is True and d["genus_used"] == 2
    given = bounds_report(ell, 1, 9, 9)
    assert not given.genus_substituted and "user supplied" in given.to_text()


def test_verdicts_follow_numbers():
    ell = curve_from(F5, "(1-4*x^3)*T^2 - 1")
    r = bounds_report(ell, 0, 10 ** 9, None)
    assert r.verdicts["main"] == "FAIL"
    assert r.verdicts["forward"] == "N/A"
    for name, verdict in r.verdicts.items():
        obs = r.observed[name]
        if obs is not None:
            assert (verdict == "PASS") == (obs <= r.bounds[name])
    with pytest.raises(UserInputError):
        bounds_report(ell, -1, 1, 1)


# -- base p versus base q -----------------------------------------------------------------------------


def test_base_compare_examples():
    geo = curve_new(F4, {(1, 1): 1, (0, 1): 1, (0, 0): 1})  # (1 + x) T + 1
    c = base_compare(geo, 1)
    assert (c.n_q, c.n_p, c.verdict) == (1, 1, "PASS")
    art = curve_new(F4, {(0, 4): 1, (0, 1): 1, (1, 0): 1})
    c = base_compare(art, 0)
    assert c.n_q == 3 and c.verdict == "PASS"
    assert c.n_q <= c.n_p <= 3 * c.n_q
    g7 = curve_from(F7, "(1-2*x)*T - 1")
    c = base_compare(g7, 1)
    assert c.n_p == c.n_q == 3


@pytest.mark.parametrize("table,a0", [
    ({(0, 4): 1, (0, 1): 1, (1, 0): 1}, 0),
    ({(1, 1): 2, (0, 1): 1, (0, 0): 1}, 1),
    ({(0, 2): 1, (0, 1): 1, (1, 0): 2}, 0),
    ({(0, 2): 1, (0, 1): 1, (3, 0): 3, (1, 0): 1}, 0),
])
def test_base_compare_routes_agree(table, a0):
    curve = curve_new(F4, table)
    exact = base_compare(curve, a0)
    series = base_compare(series=hensel_expand(curve, a0, 512))
    assert (exact.n_p, exact.n_q) == (series.n_p, series.n_q)
    assert exact.verdict == "PASS"


def test_base_compare_needs_input():
    with pytest.raises(UserInputError):
        base_compare()


# -- the one-word height example --------------------------------------------------------------------


def test_monomial_machine_size():
    # y = x^19 over F_3; 19 = 201 in base 3
    curve = curve_from(F3, "T - x^19")
    k = enumerate_kernel(curve, 0)
    assert minimize(build_reverse_dfao(k)).n_states == len(k) == 5


# -- annihilating polynomials ----------------------------------------------------------------------


def test_default_caps():
    assert default_caps(2, 2) == (3, 16)
    assert default_caps(7, 3) == (32, 256)


def test_algebraize_constant_sequence():
    rel = algebraize(TruncSeries(F2, [1] * 128))
    assert rel.table == {(1, 1): 1, (0, 1): 1, (0, 0): 1}  # (1 + x) T + 1


def test_algebraize_thue_morse():
    s = TruncSeries(F2, thue_morse(512))
    rel = algebraize(s)
    assert rel.degree <= 3 and rel.height <= 16
    curve = curve_new(F2, rel.table)
    assert not any(eval_curve(curve, s.truncate(500)))


def test_algebraize_powers_of_two():
    k = enumerate_kernel(curve_from(F7, "(1-2*x)*T - 1"), 1)
    rel = algebraize_kernel(k)
    assert rel.degree == 1
    target = {(1, 1): F7.from_int(-2), (0, 1): 1, (0, 0): F7.from_int(-1)}
    scale = F7.div(rel.table[(0, 1)], target[(0, 1)])
    assert rel.table == {key: F7.mul(scale, v) for key, v in target.items()}


def test_algebraize_respects_caps():
    s = TruncSeries(F2, thue_morse(512))
    with pytest.raises(NoRelationError):
        algebraize(s, degree_cap=1, height_cap=4)


@pytest.mark.parametrize("ctx", [F3, F4, F5], ids=lambda c: f"F_{c.q}")
def test_algebraize_rational_series(ctx, rng):
    """Random rational a/b: the found relation annihilates at full precision."""
    for _ in range(5):
        a = P.trim(random_poly(ctx, rng, 3))
        b = P.trim(random_poly(ctx, rng, 3, nonzero_at_0=True))
        curve = curve_new(ctx, {**{(i, 1): c for i, c in enumerate(b) if c},
                                **{(i, 0): ctx.neg(c) for i, c in enumerate(a) if c}})
        a0 = ctx.div(a[0], b[0]) if a else 0
        s = hensel_expand(curve, a0, 256)
        rel = algebraize(s)
        assert rel.degree == 1 and rel.height <= max(len(a), len(b))
        assert not any(eval_curve(curve_new(ctx, rel.table), s))
