from math import comb

import pytest

from christol.algebra import fq_ctx_new
from christol.automaton import build_reverse_dfao, isomorphic, minimize
from christol.errors import PrecisionError, StateLimitError
from christol.kernel import enumerate_kernel, extract_representation, kernel_truncated
from christol.series import TruncSeries, constant_term, hensel_expand

from helpers import all_cases, brute_kernel_size, curve_from, elliptic_oracle, thue_morse

F2, F5, F7 = fq_ctx_new(2), fq_ctx_new(5), fq_ctx_new(7)

CASES = all_cases()


@pytest.fixture(scope="module")
def computed():
    """Both kernels and branch series for every worked curve, computed once."""
    out = {}
    for case in CASES:
        s = hensel_expand(case.curve, case.a0, 512)
        out[case.name] = (enumerate_kernel(case.curve, case.a0), kernel_truncated(s), s)
    return out


def test_exact_kernel_examples():
    c = curve_from(F7, "(1-2*x)*T - 1")
    k = enumerate_kernel(c, 1)
    y = c.y()
    assert set(k.elements) == {y, y * 2, y * 4}
    assert k.elements[0] == y
    assert len(enumerate_kernel(curve_from(F5, "(1-4*x)*T^2 - 1"), 1)) == 5
    assert len(enumerate_kernel(curve_from(F2, "T^4 - T - x"), 0)) == 4


def test_truncated_kernel_examples():
    assert len(kernel_truncated(TruncSeries(F2, thue_morse(512)))) == 2
    assert len(kernel_truncated(TruncSeries(F2, [1] * 256))) == 1
    assert len(kernel_truncated(TruncSeries(F7, [pow(2, n, 7) for n in range(512)]))) == 3


def test_representation_examples():
    rep = extract_representation(enumerate_kernel(curve_from(F7, "(1-2*x)*T - 1"), 1))
    assert rep.dim == 1
    assert [m[0][0] for m in rep.matrices] == [pow(2, i, 7) for i in range(7)]
    # v and lambda are dual up to a common scalar; normalise so that v = [1]
    v = rep.start[0]
    assert F7.mul(rep.functional[0], v) == 1
    rep = extract_representation(enumerate_kernel(curve_from(F5, "(1-4*x)*T^2 - 1"), 1))
    assert rep.dim == 1
    assert [m[0][0] for m in rep.matrices] == [comb(2 * i, i) % 5 for i in range(5)]
    rep = extract_representation(enumerate_kernel(curve_from(F5, "(1-4*x^3)*T^2 - 1"), 1))
    assert rep.dim == 2


@pytest.mark.parametrize("case", CASES, ids=repr)
def test_pathways_agree(case, computed):
    exact, trunc, _ = computed[case.name]
    assert len(exact) == len(trunc)
    assert isomorphic(build_reverse_dfao(exact), build_reverse_dfao(trunc))


@pytest.mark.parametrize("case", CASES, ids=repr)
def test_kernel_size_is_minimal_state_count(case, computed):
    exact, _, _ = computed[case.name]
    assert minimize(build_reverse_dfao(exact)).n_states == len(exact)


@pytest.mark.parametrize("case", CASES, ids=repr)
def test_representations_generate_series(case, computed):
    exact, trunc, s = computed[case.name]
    for kernel in (exact, trunc):
        rep = extract_representation(kernel)
        assert rep.dim <= len(kernel)
        assert [rep.evaluate(n) for n in range(200)] == list(s.coeffs[:200])


@pytest.mark.parametrize("case", CASES, ids=repr)
def test_zero_digit_keeps_constant_term(case, computed):
    exact, _, s = computed[case.name]
    curve = case.curve
    for u in exact.elements:
        a = constant_term(curve, u, case.a0, s)
        b = constant_term(curve, curve.lambda_q(0, u), case.a0, s)
        assert a == b


@pytest.mark.parametrize("case", [c for c in CASES if c.ctx.q <= 3], ids=repr)
def test_kernel_size_against_naive_decimation(case, computed):
    """Count distinct decimations of a long oracle prefix directly."""
    exact, _, _ = computed[case.name]
    q = case.ctx.q
    depth = 1
    while q ** depth < 4 * len(exact):
        depth += 1
    seq = case.oracle(q ** depth * 128)
    assert brute_kernel_size(seq, q, depth) == len(exact)


def test_short_prefix_is_refused():
    with pytest.raises(PrecisionError):
        kernel_truncated(TruncSeries(F7, elliptic_oracle(7, 16)))


def test_state_limit():
    c = curve_from(F5, "(1-4*x^3)*T^2 - 1")
    with pytest.raises(StateLimitError):
        enumerate_kernel(c, 1, max_states=4)


def test_dump_lists_states_and_representatives():
    k = enumerate_kernel(curve_from(F7, "(1-2*x)*T - 1"), 1)
    text = k.dump()
    assert text.splitlines()[0].startswith("state |")
    assert "output" in text.splitlines()[0]
    assert len([ln for ln in text.splitlines() if "|" in ln]) == 4
