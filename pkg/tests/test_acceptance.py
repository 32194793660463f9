"""Acceptance suite: one test per criterion, each printing a pass/fail line.

All equality checks are exact-rational (zero tolerance) unless a criterion
states an explicit band.  Run with `pytest tests/test_acceptance.py -s` to
see the per-criterion lines.
"""

import random
from contextlib import contextmanager
from fractions import Fraction as F

import pytest

from conftest import brute_force_best_responses, random_mixture
from dolab import gameio, traces
from dolab.best_response import best_response, is_best_response
from dolab.dynamics import TiebreakPolicy, run_alpha_double_oracle, run_double_oracle
from dolab.families import (
    FAMILIES,
    bigger_number_matrix,
    bigger_number_posg,
    encode_policy_for,
    init_for_theorem,
    make_game,
    matching_pennies_chain,
    schedule_for_theorem,
    weak_bigger_number_matrix,
    weak_bigger_number_posg,
)
from dolab.harness import (
    sweep_double_oracle,
    verify_t1,
    verify_t2,
    verify_t3,
    verify_t4,
    verify_t5,
)
from dolab.posg import (
    induced_normal_form,
    policy_count,
    policy_index,
)


@contextmanager
def criterion(number, title):
    try:
        yield
    except BaseException:
        print(f"ACCEPTANCE {number} [{title}]: FAIL")
        raise
    print(f"ACCEPTANCE {number} [{title}]: PASS")


def test_criterion_1_strategic_equivalence():
    with criterion(1, "strategic equivalence (Thm 2/3 proofs)"):
        for k in (1, 2, 3, 4):
            g = bigger_number_posg(k)
            assert induced_normal_form(g).v1 == bigger_number_matrix(2 ** k).v1
            g = weak_bigger_number_posg(k)
            assert induced_normal_form(g).v1 == \
                weak_bigger_number_matrix(2 ** k).v1


def test_criterion_2_guess_the_string():
    with criterion(2, "Thm 1: exact equilibrium needs full supports"):
        for k in (2, 3, 4):
            verdict, _ = verify_t1(k)
            assert verdict.passed, verdict.first_violation


def test_criterion_3_bigger_number_uniqueness_and_sweep():
    with criterion(3, "Thm 2: uniqueness and Theta(2^k) expectation"):
        means = {}
        for k in (2, 3, 4, 5):
            verdict, _ = verify_t2(k)
            assert verdict.passed, (k, verdict.first_violation)
            stats, _, _ = sweep_double_oracle("BiggerNumber", k, range(100))
            assert not stats["failed"]
            mean = stats["mean_iterations"]
            assert F(2 ** (k - 2)) <= mean <= F(2 ** (k + 1)), (k, mean)
            means[k] = mean
        for k in (2, 3, 4):
            ratio = means[k + 1] / means[k]
            assert F(17, 10) <= ratio <= F(23, 10), (k, ratio)


def test_criterion_4_weak_bigger_number_schedule():
    with criterion(4, "Thm 3: 2^k - 1 iterations under adversarial responses"):
        for k in (2, 3, 4, 5, 6):
            verdict, _ = verify_t3(k)
            assert verdict.passed, (k, verdict.first_violation)


def test_criterion_5_incrementing_game():
    with criterion(5, "Thm 4: incrementing game"):
        verdict, _ = verify_t4(3)
        assert verdict.passed, verdict.first_violation


def test_criterion_6_matching_pennies_chain_schedule():
    with criterion(6, "Thm 5: gap 2/k through 2^(k-1) iterations"):
        for k in (2, 3, 4, 5, 6):
            verdict, _ = verify_t5(k)
            assert verdict.passed, (k, verdict.first_violation)


def test_criterion_7_alpha_double_oracle():
    with criterion(7, "alpha-double oracle gating"):
        # T5: P2's scripted addition is gated at its first occurrence.
        k = 3
        g = matching_pennies_chain(k)
        for alpha in (F(1, 100), F(1, 10)):
            tb = TiebreakPolicy(meta_nash_mode="scripted",
                                best_response_mode="scripted",
                                schedule=schedule_for_theorem("T5", k, g))
            tr = run_alpha_double_oracle(g, F(1, k), alpha, tb,
                                         init=init_for_theorem("T5", k, g))
            assert tr.status == "schedule_blocked"
            assert tr.iterations[0].gated == (False, True)
            assert tr.iterations[0].improvements[1] == 0
        # T3 configuration: trace identical to plain double oracle.
        g = weak_bigger_number_posg(3)
        tb = TiebreakPolicy(best_response_mode="scripted",
                            schedule=schedule_for_theorem("T3", 3, g))
        init = init_for_theorem("T3", 3, g)
        plain = run_double_oracle(g, F(1), tb, init=init)
        gated = run_alpha_double_oracle(g, F(1), F(1, 100), tb, init=init)
        assert plain.iteration_count == gated.iteration_count == 7
        for a, b in zip(plain.iterations, gated.iterations):
            assert (a.sets, a.responses, a.gap) == (b.sets, b.responses, b.gap)
            assert b.gated == (False, False)
        # T2 configuration: improvements equal the per-player gap terms,
        # so any alpha below them leaves the trace unchanged.
        g = bigger_number_posg(3)
        tb = TiebreakPolicy(meta_nash_mode="unique-or-fail",
                            best_response_mode="unique-or-fail")
        init = (encode_policy_for("BiggerNumber", 3, 1, 0, game=g),
                encode_policy_for("BiggerNumber", 3, 2, 0, game=g))
        plain = run_double_oracle(g, F(1, 100), tb, init=init)
        gated = run_alpha_double_oracle(g, F(1, 100), F(1, 100), tb, init=init)
        assert plain.iteration_count == gated.iteration_count == 7
        for a, b in zip(plain.iterations, gated.iterations):
            assert (a.sets, a.responses, a.gap) == (b.sets, b.responses, b.gap)
            assert b.gated == (False, False)


def test_criterion_8_oracle_equivalence():
    with criterion(8, "best responses match exhaustive enumeration"):
        rng = random.Random(8)
        cases = [("GuessTheString", 4), ("BiggerNumber", 4),
                 ("WeakBiggerNumber", 4), ("MatchingPenniesChain", 4),
                 ("Incrementing", 4)]
        for family, k in cases:
            g = make_game(family, k)
            for trial in range(50):
                player = 1 if trial % 2 == 0 else 2
                opp = random_mixture(g, 3 - player, rng)
                res = best_response(g, player, opp)
                value, opt = brute_force_best_responses(g, player, opp)
                assert res.value == value, (family, trial)
                assert res.count == len(opt), (family, trial)
                assert policy_index(g, res.witness) in opt
                # the optimal set itself: spot-check membership both ways
                inside = rng.sample(sorted(opt), min(3, len(opt)))
                n = policy_count(g, player)
                outside = [i for i in rng.sample(range(n), min(6, n))
                           if i not in opt][:3]
                from dolab.posg import policy_from_index
                for i in inside:
                    assert is_best_response(
                        g, player, policy_from_index(g, player, i), opp)
                for i in outside:
                    assert not is_best_response(
                        g, player, policy_from_index(g, player, i), opp)


def test_criterion_9_representation_independence():
    with criterion(9, "representation independence on the chain game"):
        k = 3
        g = matching_pennies_chain(k)
        init = (encode_policy_for("MatchingPenniesChain", k, 1, 0, game=g),
                encode_policy_for("MatchingPenniesChain", k, 2, 0, game=g))
        tr_posg = run_double_oracle(g, F(0), TiebreakPolicy(), init=init)
        tr_matrix = run_double_oracle(induced_normal_form(g), F(0),
                                      TiebreakPolicy(), init=(0, 0))
        assert tr_posg.iteration_count == tr_matrix.iteration_count
        assert tr_posg.final_sets == tr_matrix.final_sets
        for a, b in zip(tr_posg.iterations, tr_matrix.iterations):
            assert a.sets == b.sets
            assert a.responses == b.responses
            assert a.meta_nash == b.meta_nash
            assert a.gap == b.gap


def test_criterion_10_determinism_and_round_trip(tmp_path):
    with criterion(10, "determinism and round-trip"):
        # identical config + seeds give byte-identical trace files
        g = bigger_number_posg(3)
        tb = TiebreakPolicy(best_response_mode="seeded-random",
                            init_mode="seeded-random-pure", seed=7)
        paths = []
        for name in ("a", "b"):
            tr = run_double_oracle(g, F(0), tb)
            p = tmp_path / f"{name}.trace"
            traces.write_trace(p, tr, header_extra={
                "game": {"family": "BiggerNumber", "k": 3}})
            paths.append(p)
        assert paths[0].read_bytes() == paths[1].read_bytes()
        # game files round-trip exactly for every family
        for family in FAMILIES:
            game = make_game(family, 3)
            p = tmp_path / f"{family}.json"
            gameio.write_game(p, game)
            assert gameio.dumps_game(gameio.read_game(p)) == p.read_text()
