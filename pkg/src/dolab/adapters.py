"""Uniform view over the two game representations.

Dynamics and gap computations run unchanged on a Posg (policies are
PurePolicy values, best responses come from the information-tree DP) or on
a NormalFormGame (policies are strategy indices).  Policy keys are the
canonical integer encodings, which makes traces comparable across the two
representations of the same game.
"""

import random
from fractions import Fraction

from . import best_response as br
from .errors import ScriptedCandidateSuboptimal
from .posg import (
    MixedPolicy,
    NormalFormGame,
    Posg,
    evaluate_profile,
    mixed,
    policy_count,
    policy_from_index,
    policy_index,
)


class PosgAdapter:
    kind = "posg"

    def __init__(self, game):
        self.game = game
        self.zero_sum = game.zero_sum
        self._pair_cache = {}

    def policy_count(self, player):
        return policy_count(self.game, player)

    def policy_key(self, player, policy):
        return policy_index(self.game, policy)

    def policy_by_key(self, player, key):
        return policy_from_index(self.game, player, key)

    def random_policy(self, player, rng):
        return policy_from_index(
            self.game, player, rng.randrange(self.policy_count(player)))

    def evaluate(self, p1, p2):
        key = (p1.actions, p2.actions)
        hit = self._pair_cache.get(key)
        if hit is None:
            hit = evaluate_profile(self.game, p1, p2)
            self._pair_cache[key] = hit
        return hit

    def mixture(self, player, support):
        return mixed(player, support)

    def best_response(self, player, opp_support, mode="lexicographic",
                      seed=None, candidate=None):
        opp = mixed(3 - player, opp_support)
        if mode == "unique-or-fail":
            return br.best_response(self.game, player, opp, "lexicographic")
        return br.best_response(self.game, player, opp, mode,
                                seed=seed, candidate=candidate)


class MatrixAdapter:
    kind = "matrix"

    def __init__(self, nfg):
        self.nfg = nfg
        self.zero_sum = nfg.zero_sum

    def policy_count(self, player):
        return self.nfg.shape[player - 1]

    def policy_key(self, player, policy):
        return policy

    def policy_by_key(self, player, key):
        return key

    def random_policy(self, player, rng):
        return rng.randrange(self.policy_count(player))

    def evaluate(self, p1, p2):
        return self.nfg.payoff(p1, p2)

    def best_response(self, player, opp_support, mode="lexicographic",
                      seed=None, candidate=None):
        n = self.policy_count(player)
        values = []
        for own in range(n):
            total = Fraction(0)
            for opp, w in opp_support:
                pay = self.nfg.payoff(own, opp) if player == 1 \
                    else self.nfg.payoff(opp, own)
                total += w * pay[player - 1]
            values.append(total)
        best = max(values)
        opt = [a for a in range(n) if values[a] == best]
        if mode == "scripted":
            if candidate is None or values[candidate] != best:
                raise ScriptedCandidateSuboptimal(
                    f"scripted strategy scores "
                    f"{values[candidate] if candidate is not None else None}, "
                    f"best response scores {best}")
            witness = candidate
        elif mode == "seeded-random":
            witness = opt[random.Random(seed).randrange(len(opt))]
        else:
            witness = opt[0]
        return br.BestResponseResult(best, witness, len(opt))


def as_adapter(game):
    if isinstance(game, (PosgAdapter, MatrixAdapter)):
        return game
    if isinstance(game, Posg):
        return PosgAdapter(game)
    if isinstance(game, NormalFormGame):
        return MatrixAdapter(game)
    raise TypeError(f"not a game: {game!r}")


def as_support(adapter, player, mixture):
    """Normalize a mixture argument to a [(policy, weight)] list."""
    if isinstance(mixture, MixedPolicy):
        return list(mixture.support)
    pairs = list(mixture)
    if pairs and not isinstance(pairs[0], tuple):
        # plain weight vector over strategy indices
        return [(i, Fraction(w)) for i, w in enumerate(pairs) if w != 0]
    return [(p, Fraction(w)) for p, w in pairs]
