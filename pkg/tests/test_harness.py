from fractions import Fraction as F
from itertools import combinations

import pytest

from dolab.cli import main
from dolab.dynamics import TiebreakPolicy, run_double_oracle
from dolab.equilibrium import solve_zero_sum
from dolab.families import (
    guess_the_string_matrix,
    init_for_theorem,
    schedule_for_theorem,
    weak_bigger_number_posg,
)
from dolab.harness import (
    min_nash_support,
    structure_flags,
    sweep_double_oracle,
    verify_theorem,
)
from dolab.posg import normal_form


def test_weak_bigger_number_scripted_sweep():
    # every trial count is 2^5 - 1 minus a start-dependent offset; the
    # worst case (0, 0) reaches the full 31
    k = 5
    stats, summaries, _ = sweep_double_oracle(
        "WeakBiggerNumber", k, range(20), eps=F(1), schedule_name="T3")
    assert not stats["failed"]
    for s in summaries:
        assert s["iterations"] == 2 ** k - 1 - s["m0"]
    g = weak_bigger_number_posg(k)
    tb = TiebreakPolicy(best_response_mode="scripted",
                        schedule=schedule_for_theorem("T3", k, g))
    tr = run_double_oracle(g, F(1), tb, init=init_for_theorem("T3", k, g))
    assert tr.iteration_count == 2 ** k - 1


def test_sweep_itemizes_failed_trials():
    stats, summaries, _ = sweep_double_oracle(
        "GuessTheString", 3, range(4), max_iters=1)
    assert len(stats["failed"]) == 4
    assert all(s["status"] == "error:MaxItersExceeded"
               for s in stats["failed"])
    assert stats["mean_iterations"] is None


def test_sweep_failed_trials_exit_code():
    rc = main(["sweep", "--family", "GuessTheString", "--k", "3",
               "--eps", "0/1", "--seeds", "4", "--max-iters", "1"])
    assert rc == 3


def test_verify_theorem_default_ranges():
    results = verify_theorem("T4")
    assert len(results) == 1
    assert results[0][0].passed


def test_min_nash_support_matches_summary_table():
    assert min_nash_support("GuessTheString", 2) == 4
    assert min_nash_support("BiggerNumber", 2) == 1
    assert min_nash_support("WeakBiggerNumber", 2) == 1
    assert min_nash_support("Incrementing", 2) == 1
    assert min_nash_support("MatchingPenniesChain", 2) == 2
    assert min_nash_support("MatchingPenniesChain", 3) == 2


def test_guess_the_string_has_no_small_support_equilibrium():
    # LP values of restricted supports: any proper row subset guarantees
    # strictly less than the full game value, so every equilibrium strategy
    # has full support (checked exhaustively at k=2, by size at k=3)
    for k, exhaustive in ((2, True), (3, False)):
        n = 2 ** k
        nfg = guess_the_string_matrix(n)
        full_value = solve_zero_sum(nfg).value
        assert full_value == F(n - 2, n)
        sizes = range(1, n)
        for size in sizes:
            subsets = combinations(range(n), size) if exhaustive \
                else [tuple(range(size))]
            for rows in subsets:
                sub = normal_form([nfg.v1[i] for i in rows])
                assert solve_zero_sum(sub).value < full_value, (k, rows)


def test_structure_flags_helper():
    assert structure_flags("Incrementing", 3) == (False, False, True)
