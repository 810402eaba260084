import itertools
from functools import lru_cache

import pytest

from wkl.chains import (
    Multichain,
    chain_report,
    coeff_p,
    coeff_q,
    degree_window,
    enum_chains,
    enum_multichains,
    p_via_chains,
    p_via_multichains,
    q_via_chains,
    q_via_multichains,
    reduced_multichains,
    script_r,
    script_r_star,
    script_r_tilde_star,
)
from wkl.coxeter import all_subsets, new_system, parse_element
from wkl.errors import NotComparable
from wkl.heckemod import get_module
from wkl.klcore import comparable_pairs, p_poly, q_poly, r_poly
from wkl.laurent import ONE, ZERO, LaurentPoly
from wkl.verify import check_chain_laws, check_chain_expansions

from conftest import SMALL, sysid

q = LaurentPoly.q


def E(sys, text):
    return parse_element(sys, text)


def subword_order(sys, elems):
    """x <= y by brute-force subwords of one reduced word of y."""
    below = {}
    for y in elems:
        word = sys.reduced_word(y)
        ideal = set()
        for mask in itertools.product((0, 1), repeat=len(word)):
            ideal.add(sys.from_word(s for s, k in zip(word, mask) if k))
        below[y] = ideal
    return lambda a, b: a in below[b]


def count_chains(elems, leq, x, y, weak=False, max_steps=None):
    """Chains x = x_0 < ... < x_k = y (or <= with at most max_steps steps), by dynamic programming."""

    @lru_cache(maxsize=None)
    def count(a, steps_left):
        total = 1 if a == y and (not weak or steps_left < max_steps) else 0
        if steps_left == 0:
            return total
        for t in elems:
            if leq(a, t) and leq(t, y) and (weak or t != a):
                total += count(t, steps_left - 1)
        return total

    if not weak:
        return count(x, len(elems))
    return count(x, max_steps)


def test_enum_chain_examples(a2):
    e = a2.identity
    assert list(enum_chains(a2, "", e, e)) == [Multichain((e, e))]
    got = {tuple(phi.text(a2)) for phi in enum_chains(a2, "", e, E(a2, "s1.s2"), 2)}
    assert got == {("e", "s1.s2"), ("e", "s1", "s1.s2"), ("e", "s2", "s1.s2")}
    with pytest.raises(NotComparable):
        list(enum_chains(a2, "", E(a2, "s1"), E(a2, "s2")))
    with pytest.raises(ValueError):
        Multichain((e,))


@pytest.mark.parametrize("case", [("A2", (1, 1)), ("B2", (1, 1)), ("I2(5)", (1, 1)), ("A3", (1, 1, 1))], ids=sysid)
def test_chain_counts_match_poset_counter(case):
    sys = new_system(*case)
    for J in all_subsets(sys):
        ctx = get_module(sys, J)
        leq = subword_order(sys, ctx.dj)
        elems = tuple(ctx.dj)
        for x, y in comparable_pairs(ctx):
            if x == y:
                continue
            strict = list(enum_chains(ctx, None, x, y))
            assert all(phi.strict for phi in strict)
            assert len(strict) == count_chains(elems, leq, x, y)
            if y.length - x.length <= 2:
                k = y.length - x.length + 1
                weak = list(enum_multichains(ctx, None, x, y, k))
                assert len(weak) == len(set(weak)) == count_chains(elems, leq, x, y, weak=True, max_steps=k)


def test_script_r_examples(a2):
    e, s1 = a2.identity, E(a2, "s1")
    assert script_r(a2, "", (s1, s1)) == ONE
    assert script_r(a2, "", (s1, s1, s1)) == ZERO
    assert script_r_star(a2, "", (s1, s1, s1)) == ZERO
    assert script_r(a2, "", (e, s1)) == ONE - q(1)
    for y in a2.elements():
        for x in get_module(a2, "").below(y):
            assert script_r_star(a2, "", (x, y)) == script_r(a2, "", (x, y))


def test_p_via_chains_examples(a3, b2w):
    a2 = new_system("A2")
    assert p_via_chains(a2, "", a2.identity, E(a2, "s1")) == ONE
    assert p_via_chains(a3, "", E(a3, "s2"), E(a3, "s2.s1.s3.s2")) == LaurentPoly.parse("1 + q")
    assert p_via_multichains(a3, "", E(a3, "s2"), E(a3, "s2")) == ONE
    ctx = get_module(b2w, "s1")
    for x, y in comparable_pairs(ctx):
        assert p_via_multichains(ctx, None, x, y) == p_poly(ctx, None, x, y)


def test_q_via_chains_examples(b2w):
    for J in ("", "s2"):
        ctx = get_module(b2w, J)
        for x, y in comparable_pairs(ctx):
            assert q_via_multichains(ctx, None, x, y) == q_poly(ctx, None, x, y)
            if x != y:
                assert q_via_chains(ctx, None, x, y) == q_poly(ctx, None, x, y)


@pytest.mark.parametrize("case", SMALL, ids=sysid)
def test_dual_paths(case):
    sys = new_system(*case)
    for J in all_subsets(sys):
        ctx = get_module(sys, J)
        for x, y in comparable_pairs(ctx):
            P, Q = p_poly(ctx, None, x, y), q_poly(ctx, None, x, y)
            assert p_via_multichains(ctx, None, x, y) == P == p_via_chains(ctx, None, x, y)
            assert q_via_multichains(ctx, None, x, y) == Q == q_via_chains(ctx, None, x, y)


@pytest.mark.parametrize("case", [("A3", (1, 1, 1)), ("B2", (1, 2)), ("I2(6)", (1, 3))], ids=sysid)
def test_exhaustive_multichains_agree_with_reduced(case):
    sys = new_system(*case)
    for J in all_subsets(sys):
        ctx = get_module(sys, J)
        for x, y in comparable_pairs(ctx, max_gap=3):
            assert p_via_multichains(ctx, None, x, y, exhaustive=True) == p_poly(ctx, None, x, y)
            assert q_via_multichains(ctx, None, x, y, exhaustive=True) == q_poly(ctx, None, x, y)


@pytest.mark.parametrize("case", SMALL, ids=sysid)
def test_chain_laws_and_lemmas(case):
    sys = new_system(*case)
    for J in all_subsets(sys):
        ctx = get_module(sys, J)
        for res in [check_chain_laws(ctx, 3), *check_chain_expansions(ctx)]:
            assert res.passed, res.line()


def test_doubled_families(a2):
    e, y = a2.identity, E(a2, "s1.s2")
    ini = reduced_multichains(a2, "", e, y, "initial")
    fin = reduced_multichains(a2, "", e, y, "final")
    assert len(ini) == len(fin) == 6
    assert sum(1 for phi in ini if not phi.strict and phi.entries[0] == phi.entries[1]) == 3
    assert sum(1 for phi in fin if not phi.strict and phi.entries[-1] == phi.entries[-2]) == 3
    with pytest.raises(ValueError):
        reduced_multichains(a2, "", e, y, "middle")


def test_coeff_examples(a3):
    s2, y = E(a3, "s2"), E(a3, "s2.s1.s3.s2")
    assert coeff_p(a3, "", s2, s2, 0) == 1 and coeff_q(a3, "", s2, s2, 0) == 1
    assert coeff_p(a3, "", s2, y, 1) == 1
    assert coeff_p(a3, "", s2, y, 0) == 1
    assert coeff_p(a3, "", s2, y, 2) == 0
    assert coeff_p(a3, "", s2, y, "1/2") == 0
    assert degree_window(a3, "", s2, y) == [0, 1]


@pytest.mark.parametrize("case", [("A2", (1, 1)), ("A3", (1, 1, 1)), ("B2", (1, 2)), ("I2(6)", (1, 3)), ("I2(5)", (1, 1))], ids=sysid)
def test_coefficients_match_polynomials(case):
    sys = new_system(*case)
    for J in all_subsets(sys):
        ctx = get_module(sys, J)
        for x, y in comparable_pairs(ctx):
            P, Q = p_poly(ctx, None, x, y), q_poly(ctx, None, x, y)
            window = degree_window(ctx, None, x, y)
            for gamma in range(-1, (window[-1] + 3)):
                assert coeff_p(ctx, None, x, y, gamma) == P.coeff(gamma)
                assert coeff_q(ctx, None, x, y, gamma) == Q.coeff(gamma)


def test_coeff_single_step_terms(b2w):
    # for a covering pair only the single-step chain contributes
    ctx = get_module(b2w, "")
    x, y = b2w.identity, E(b2w, "s2")
    R = r_poly(ctx, None, x, y)
    assert R == q(2) - 1
    assert coeff_p(ctx, None, x, y, 0) == R.coeff(2) == 1
    # the tilde-star base case is eps_x eps_y R
    assert script_r_tilde_star(ctx, None, (x, y)) == -R


def test_chain_report(a3):
    rep = chain_report(a3, "", E(a3, "s2"), E(a3, "s2.s1.s3.s2"), "P")
    assert rep["x"] == "s2" and rep["y"] == "s2.s1.s3.s2"
    assert LaurentPoly.from_json(rep["sum"]) == LaurentPoly.parse("1 + q")
    total = ZERO
    for row in rep["chains"]:
        total = total + LaurentPoly.from_json(row["scriptR"])
        assert row["entries"][0] == "s2" and row["entries"][-1] == "s2.s1.s3.s2"
    assert total == LaurentPoly.from_json(rep["sum"])
    with pytest.raises(ValueError):
        chain_report(a3, "", E(a3, "s2"), E(a3, "s2"), "R")
