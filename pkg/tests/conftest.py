"""Shared test helpers: brute-force oracles kept independent of the
implementation paths they check."""

import random
from fractions import Fraction

import pytest

from dolab.posg import evaluate_profile, mixed, policy_count, policy_from_index


def brute_force_best_responses(g, player, opp):
    """Enumerate all pure policies; returns (value, argmax index set)."""
    n = policy_count(g, player)
    values = []
    for i in range(n):
        p = policy_from_index(g, player, i)
        v = Fraction(0)
        for q, w in opp.support:
            pair = evaluate_profile(g, p, q) if player == 1 \
                else evaluate_profile(g, q, p)
            v += w * pair[player - 1]
        values.append(v)
    best = max(values)
    return best, {i for i, v in enumerate(values) if v == best}


def random_mixture(g, player, rng, max_support=3):
    """Random rational mixture over pure policies of the given player."""
    n = policy_count(g, player)
    size = rng.randint(1, min(max_support, n))
    support = rng.sample(range(n), size)
    weights = [Fraction(rng.randint(1, 6)) for _ in support]
    total = sum(weights)
    return mixed(player, [(policy_from_index(g, player, i), w / total)
                          for i, w in zip(support, weights)])


@pytest.fixture
def rng():
    return random.Random(20240811)
