from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dolab.errors import IndexOutOfRange, InvalidFamily
from dolab.families import (
    FAMILIES,
    bigger_number_matrix,
    bigger_number_posg,
    decode_policy,
    encode_policy,
    encode_policy_for,
    family_matrix,
    guess_the_string,
    guess_the_string_matrix,
    incrementing_matrix,
    incrementing_posg,
    init_for_theorem,
    make_game,
    matching_pennies_chain,
    schedule_for_theorem,
    state_count,
    trailing_run,
    weak_bigger_number_matrix,
    weak_bigger_number_posg,
)
from dolab.posg import (
    delta,
    evaluate_profile,
    induced_normal_form,
    is_fully_observable,
    is_tree_form,
    policy_count,
    policy_index,
    reduce_dominated,
)


def test_matrix_rule_examples():
    bm = bigger_number_matrix(4)
    assert bm.v1[2][1] == 2 and bm.v1[3][1] == 1
    assert bm.v1[1][1] == 0 and bm.v1[1][2] == -2
    wm = weak_bigger_number_matrix(4)
    assert wm.v1[2][1] == 1 and wm.v1[1][2] == -1 and wm.v1[3][3] == 0
    assert all(bm.v1[a][a] == 0 for a in range(4))


def test_guess_the_string_normal_form():
    nf = induced_normal_form(guess_the_string(3))
    assert nf.v1 == guess_the_string_matrix(8).v1


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_bigger_number_equivalence(k):
    assert induced_normal_form(bigger_number_posg(k)).v1 == \
        bigger_number_matrix(2 ** k).v1


@pytest.mark.parametrize("k", [1, 2, 3])
def test_weak_bigger_number_equivalence(k):
    assert induced_normal_form(weak_bigger_number_posg(k)).v1 == \
        weak_bigger_number_matrix(2 ** k).v1


def test_weak_bigger_number_unique_pure_equilibrium():
    for n in (4, 8, 16):
        nfg = weak_bigger_number_matrix(n)
        # (n-1, n-1) is an equilibrium and no other pure profile is
        for i in range(n):
            for j in range(n):
                is_eq = all(nfg.v1[x][j] <= nfg.v1[i][j] for x in range(n)) \
                    and all(nfg.v2[i][y] <= nfg.v2[i][j] for y in range(n))
                assert is_eq == (i == n - 1 and j == n - 1)


def test_incrementing_rules():
    k = 3
    n = 8
    im = incrementing_matrix(n, k)
    alpha = F(1, 2 * k)
    for a in range(n):
        assert im.payoff(a, a) == (F(0), F(0))
        for b in range(n):
            u1, u2 = im.payoff(a, b)
            if a == b + 1:
                assert (u1, u2) == (alpha, F(-1))
            elif b == a + 1:
                assert (u1, u2) == (F(-1), alpha)
            elif a != b:
                assert u1 < 0 and u2 < 0
            assert im.payoff(b, a) == (u2, u1)  # symmetric game


def test_incrementing_profile_example():
    g = weak_bigger_number_posg(2)
    del g
    g = incrementing_posg(2)
    e = lambda pl, x: encode_policy_for("Incrementing", 2, pl, x, game=g)
    im = incrementing_matrix(4, 2)
    for x in range(4):
        for y in range(4):
            assert evaluate_profile(g, e(1, x), e(2, y)) == im.payoff(x, y)


def test_incrementing_reduction_counts():
    g = incrementing_posg(3)
    nf = induced_normal_form(g, cap=2_000)
    red, (rows, cols) = reduce_dominated(nf, weak=True)
    assert red.shape == (8, 8)
    enc = {policy_index(g, encode_policy("Incrementing", 3, x, game=g)): x
           for x in range(8)}
    assert set(rows) == set(enc) and set(cols) == set(enc)
    im = incrementing_matrix(8, 3)
    for a, r in enumerate(rows):
        for b, c in enumerate(cols):
            assert red.payoff(a, b) == im.payoff(enc[r], enc[c])


def test_incrementing_strict_reduction_insufficient():
    # strict-pure dominance cannot remove the escape twins (they tie against
    # clashing root pairs), which is why the reduction uses weak dominance
    g = incrementing_posg(3)
    nf = induced_normal_form(g, cap=2_000)
    red, _ = reduce_dominated(nf, weak=False)
    assert red.shape == (36, 36)


def test_matching_pennies_chain_values():
    g = matching_pennies_chain(3)
    e = lambda pl, x: encode_policy_for("MatchingPenniesChain", 3, pl, x, game=g)
    assert evaluate_profile(g, e(1, 7), e(2, 0)) == (F(1, 3), F(-1, 3))
    assert evaluate_profile(g, e(1, 0), e(2, 7)) == (F(-1), F(1))


def test_structural_flags_match_summary_table():
    expected = {
        "GuessTheString": (True, True, False),
        "BiggerNumber": (True, False, False),
        "WeakBiggerNumber": (True, True, False),
        "Incrementing": (False, False, True),
        "MatchingPenniesChain": (True, True, True),
    }
    for family, flags in expected.items():
        g = make_game(family, 3)
        assert (g.zero_sum, is_fully_observable(g), is_tree_form(g)) == flags


@pytest.mark.parametrize("family", FAMILIES)
def test_state_counts_closed_form(family):
    lo = 2
    hi = 12 if family != "Incrementing" else 9
    for k in range(lo, hi + 1):
        assert make_game(family, k).num_states == state_count(family, k)


def test_incrementing_state_count_large():
    # poly(k) growth spot check at the top of the desk-scale range
    for k in (10, 12):
        assert incrementing_posg(k).num_states == state_count("Incrementing", k)


def test_min_k_validation():
    with pytest.raises(InvalidFamily):
        make_game("MatchingPenniesChain", 1)
    with pytest.raises(InvalidFamily):
        make_game("Incrementing", 1)
    with pytest.raises(InvalidFamily):
        make_game("NoSuchFamily", 3)


def test_policy_space_sizes():
    for family in FAMILIES:
        g = make_game(family, 3)
        if family == "Incrementing":
            assert policy_count(g, 1) == 36
        else:
            assert policy_count(g, 1) == 8


def test_encoding_bit_example():
    g = bigger_number_posg(3)
    p = encode_policy("BiggerNumber", 3, 5, game=g)
    assert p.actions == (1, 0, 1)


@pytest.mark.parametrize("family,k", [
    ("GuessTheString", 5), ("BiggerNumber", 5), ("WeakBiggerNumber", 5),
    ("MatchingPenniesChain", 5), ("Incrementing", 4),
])
def test_encode_decode_bijection(family, k):
    g = make_game(family, k)
    seen = set()
    for x in range(2 ** k):
        p = encode_policy(family, k, x, game=g)
        assert decode_policy(family, k, p, game=g) == x
        seen.add(p.actions)
    assert len(seen) == 2 ** k


def test_encode_out_of_range():
    g = bigger_number_posg(3)
    with pytest.raises(IndexOutOfRange):
        encode_policy("BiggerNumber", 3, 8, game=g)
    with pytest.raises(IndexOutOfRange):
        encode_policy("Incrementing", 3, -1, game=incrementing_posg(3))


def test_decode_rejects_noncanonical_incrementing():
    from dolab.posg import policy_from_index
    g = incrementing_posg(3)
    # root declares run "00" but the forced bit node disagrees
    bad = policy_from_index(g, 1, 0)  # actions (0, 0): run "0", node bit 0
    target = encode_policy("Incrementing", 3, 4, game=g)  # run "00", bit 1
    wrong = type(target)(1, target.domain, (target.actions[0], 0))
    with pytest.raises(IndexOutOfRange):
        decode_policy("Incrementing", 3, wrong, game=g)
    escape = type(target)(1, target.domain, (target.actions[0], 4))
    with pytest.raises(IndexOutOfRange):
        decode_policy("Incrementing", 3, escape, game=g)
    del bad


def test_trailing_run():
    assert trailing_run((0, 1, 1)) == (1, 2)
    assert trailing_run((0, 0, 0)) == (0, 3)
    assert trailing_run((1, 0, 1)) == (1, 1)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 31))
def test_incrementing_payoff_matches_posg(x):
    k = 5
    y = (x * 7 + 3) % 32
    g = test_incrementing_payoff_matches_posg.game
    e = lambda pl, v: encode_policy_for("Incrementing", k, pl, v, game=g)
    from dolab.families import incrementing_payoffs
    assert evaluate_profile(g, e(1, x), e(2, y)) == incrementing_payoffs(x, y, k)


test_incrementing_payoff_matches_posg.game = incrementing_posg(5)


def test_family_matrix_dispatch():
    assert family_matrix("BiggerNumber", 2).v1 == bigger_number_matrix(4).v1
    with pytest.raises(InvalidFamily):
        family_matrix("MatchingPenniesChain", 3)


def test_schedule_factories():
    g = matching_pennies_chain(3)
    sched = schedule_for_theorem("T5", 3, g)
    assert sched.length == 4
    init = init_for_theorem("T5", 3, g)
    assert policy_index(g, init[0]) == 7 and policy_index(g, init[1]) == 0
    g2 = weak_bigger_number_posg(3)
    sched = schedule_for_theorem("T3", 3, g2)
    cand = sched.response(1, 1, [(encode_policy_for(
        "WeakBiggerNumber", 3, 2, 4, game=g2), F(1))], None)
    assert policy_index(g2, cand) == 5
    assert sched.response(1, 1, [(encode_policy_for(
        "WeakBiggerNumber", 3, 2, 7, game=g2), F(1))], None) is None
    with pytest.raises(InvalidFamily):
        schedule_for_theorem("T9", 3)
