import json

import pytest
from hypothesis import given, strategies as st

from christol.algebra import fq_ctx_new
from christol.automaton import (FORWARD, REVERSE, Dfao, build_forward_dfao, build_reverse_dfao,
                                canonical, check_generates, check_leading_zero_invariance,
                                dfao_eval, isomorphic, minimize, parse_json, serialize, to_digits)
from christol.errors import InvariantBreach, UserInputError
from christol.kernel import Representation, enumerate_kernel, extract_representation
from christol.series import hensel_expand

from helpers import all_cases, curve_from, thue_morse_case

F5, F7 = fq_ctx_new(5), fq_ctx_new(7)

CASES = all_cases()


@pytest.fixture(scope="module")
def automata():
    out = {}
    for case in CASES:
        k = enumerate_kernel(case.curve, case.a0)
        rev = build_reverse_dfao(k)
        fwd = build_forward_dfao(extract_representation(k))
        out[case.name] = (rev, fwd, hensel_expand(case.curve, case.a0, 500))
    return out


def geometric7():
    return enumerate_kernel(curve_from(F7, "(1-2*x)*T - 1"), 1)


# -- evaluation ---------------------------------------------------------------------------


def test_eval_examples():
    tm = build_reverse_dfao(enumerate_kernel(thue_morse_case().curve, 0))
    assert dfao_eval(tm, 3) == 0
    assert [dfao_eval(tm, n) for n in range(8)] == [0, 1, 1, 0, 1, 0, 0, 1]
    g = build_reverse_dfao(geometric7())
    assert dfao_eval(g, 3) == 1
    assert dfao_eval(g, 0) == g.tau[g.initial]


def test_digits():
    assert to_digits(0, 3) == []
    assert to_digits(19, 3) == [1, 0, 2]
    with pytest.raises(UserInputError):
        to_digits(-1, 2)


@pytest.mark.parametrize("case", CASES, ids=repr)
def test_both_conventions_generate_series(case, automata):
    rev, fwd, s = automata[case.name]
    assert rev.convention == REVERSE and fwd.convention == FORWARD
    check_generates(rev, s.coeffs)
    check_generates(fwd, s.coeffs)


def test_check_generates_reports_mismatch():
    d = Dfao(2, [[0, 0]], [1])
    with pytest.raises(InvariantBreach):
        check_generates(d, [1, 1, 0])


# -- forward construction and minimality -----------------------------------------------------


def test_forward_examples():
    k = geometric7()
    fwd = build_forward_dfao(extract_representation(k))
    rev = build_reverse_dfao(k)
    assert fwd.n_states == 3
    # the one-dimensional representation commutes, so both machines have the same graph
    assert canonical(fwd).delta == canonical(rev).delta
    assert canonical(fwd).tau == canonical(rev).tau
    binom = enumerate_kernel(curve_from(F5, "(1-4*x)*T^2 - 1"), 1)
    assert build_forward_dfao(extract_representation(binom)).n_states == 5
    zero = Representation(F5, 5, [[[0]] for _ in range(5)], (1,), (0,))
    assert build_forward_dfao(zero).n_states == 1


@pytest.mark.parametrize("case", CASES, ids=repr)
def test_forward_machine_is_minimal(case, automata):
    rev, fwd, _ = automata[case.name]
    assert minimize(fwd).n_states == fwd.n_states
    assert minimize(rev).n_states == rev.n_states


@pytest.mark.parametrize("case", CASES, ids=repr)
def test_leading_zero_invariance(case, automata):
    rev, fwd, _ = automata[case.name]
    assert check_leading_zero_invariance(rev, limit=2000)
    assert check_leading_zero_invariance(fwd, limit=2000)


def test_leading_zero_counterexample():
    # reverse reading: a trailing 0 in the word (a leading zero of n) flips the output
    d = Dfao(2, [[1, 0], [1, 1]], [0, 1])
    assert not check_leading_zero_invariance(d, limit=16)
    d = Dfao(2, [[1, 0], [1, 1]], [0, 1], convention=FORWARD)
    assert not check_leading_zero_invariance(d, limit=16)


# -- minimization ---------------------------------------------------------------------------------


def test_minimize_removes_spliced_duplicate():
    g = build_reverse_dfao(geometric7())
    n = g.n_states
    # copy state 1 to a new state n and send one edge there
    delta = [list(row) for row in g.delta] + [list(g.delta[1])]
    tau = list(g.tau) + [g.tau[1]]
    for s in range(n):
        for c in range(g.q):
            if delta[s][c] == 1:
                delta[s][c] = n
                break
        else:
            continue
        break
    bigger = Dfao(g.q, delta, tau, g.initial, g.convention)
    assert bigger.n_states == n + 1
    small = minimize(bigger)
    assert small.n_states == n
    assert isomorphic(small, minimize(g))


@st.composite
def dfaos(draw):
    q = draw(st.integers(2, 3))
    n = draw(st.integers(1, 7))
    delta = [[draw(st.integers(0, n - 1)) for _ in range(q)] for _ in range(n)]
    tau = [draw(st.integers(0, 2)) for _ in range(n)]
    conv = draw(st.sampled_from([REVERSE, FORWARD]))
    return Dfao(q, delta, tau, 0, conv)


@given(dfaos())
def test_minimize_preserves_function(d):
    m = minimize(d)
    assert m.n_states <= d.n_states
    assert minimize(m) == m
    for n in range(200):
        assert dfao_eval(m, n) == dfao_eval(d, n)


@given(dfaos(), st.randoms(use_true_random=False))
def test_relabelling_is_isomorphic(d, rnd):
    perm = list(range(d.n_states))
    rest = perm[1:]
    rnd.shuffle(rest)
    perm = [0] + rest
    inv = {s: perm[s] for s in range(d.n_states)}
    delta = [None] * d.n_states
    tau = [None] * d.n_states
    for s in range(d.n_states):
        delta[inv[s]] = [inv[t] for t in d.delta[s]]
        tau[inv[s]] = d.tau[s]
    relabelled = Dfao(d.q, delta, tau, inv[d.initial], d.convention)
    assert isomorphic(d, relabelled)


# -- serialization ----------------------------------------------------------------------------


@pytest.mark.parametrize("case", CASES, ids=repr)
def test_json_round_trip(case, automata):
    rev, fwd, _ = automata[case.name]
    for d in (rev, fwd):
        text = serialize(d, "json")
        assert parse_json(text) == d
        assert serialize(parse_json(text), "json") == text
        assert json.loads(text)["n_states"] == d.n_states


def test_parse_json_rejects_garbage():
    with pytest.raises(UserInputError):
        parse_json("{")
    with pytest.raises(UserInputError):
        parse_json('{"q": 2, "delta": [[0, 5]], "tau": [0], "initial": 0, "convention": "reverse"}')
    with pytest.raises(UserInputError):
        parse_json('{"q": 2, "delta": [[0, 0]], "tau": [0], "initial": 0, '
                   '"convention": "reverse", "n_states": 3}')


def test_dot_examples():
    zero = Dfao(2, [[0, 0]], [0])
    dot = serialize(zero, "dot")
    assert dot.count("[label=\"q0/0\"]") == 1
    assert dot.startswith("digraph")
    tm = build_reverse_dfao(enumerate_kernel(thue_morse_case().curve, 0))
    dot = serialize(tm, "dot")
    nodes = [ln for ln in dot.splitlines() if "label=\"q" in ln]
    edges = [ln for ln in dot.splitlines() if "->" in ln and not ln.strip().startswith("start")]
    assert len(nodes) == 2 and len(edges) == 4


def test_text_format_and_unknown_format():
    g = build_reverse_dfao(geometric7())
    text = serialize(g, "text")
    assert text.splitlines()[0].startswith("reverse-reading DFAO, base 7, 3 states")
    with pytest.raises(UserInputError):
        serialize(g, "xml")


def test_dfao_validation():
    with pytest.raises(UserInputError):
        Dfao(2, [[0]], [0])
    with pytest.raises(UserInputError):
        Dfao(2, [[0, 0]], [0, 1])
    with pytest.raises(UserInputError):
        Dfao(2, [[0, 0]], [0], convention="sideways")
