"""Canonical textual game format.

A game file is a single canonical JSON document: states, transitions,
observations, rewards and the start distribution as explicit records, all
rationals serialized as "num/den".  Serialization is deterministic
(sorted keys, fixed separators, trailing newline) so generate/load/dump
round-trips are byte-identical.
"""

import json

from .errors import GameValidationError
from .posg import build_posg
from .rationals import fmt, parse

FORMAT = "dolab-posg-v1"


def game_to_dict(g):
    states = []
    for s in range(g.num_states):
        rec = {"name": g.names[s]}
        if g.is_terminal(s):
            rec["reward"] = [fmt(g.rewards[s][0]), fmt(g.rewards[s][1])]
        else:
            rec["obs"] = [g.obs[0][s], g.obs[1][s]]
        states.append(rec)
    transitions = []
    for s in range(g.num_states):
        if g.transitions[s] is None:
            continue
        for a1 in range(g.action_counts[0]):
            for a2 in range(g.action_counts[1]):
                dist = g.transition(s, a1, a2)
                transitions.append(
                    [s, a1, a2, [[nxt, fmt(p)] for nxt, p in dist]])
    return {
        "format": FORMAT,
        "name": g.name,
        "zero_sum": g.zero_sum,
        "action_counts": list(g.action_counts),
        "states": states,
        "start": [[s, fmt(p)] for s, p in g.start],
        "transitions": transitions,
        "notes": [list(kv) for kv in g.notes],
    }


def game_from_dict(data):
    if data.get("format") != FORMAT:
        raise GameValidationError(f"unknown game format {data.get('format')!r}")
    states = []
    obs1 = {}
    obs2 = {}
    for s, rec in enumerate(data["states"]):
        if "reward" in rec:
            states.append((rec["name"], (parse(rec["reward"][0]),
                                         parse(rec["reward"][1]))))
        else:
            states.append((rec["name"], None))
            obs1[s] = rec["obs"][0]
            obs2[s] = rec["obs"][1]
    transitions = {}
    for s, a1, a2, dist in data["transitions"]:
        transitions[(s, a1, a2)] = {nxt: parse(p) for nxt, p in dist}
    return build_posg(
        states=states,
        start={s: parse(p) for s, p in data["start"]},
        action_counts=tuple(data["action_counts"]),
        transitions=transitions,
        observations=(obs1, obs2),
        zero_sum=data["zero_sum"],
        name=data["name"],
        notes=tuple(tuple(kv) for kv in data.get("notes", [])),
    )


def dumps_game(g):
    return json.dumps(game_to_dict(g), sort_keys=True,
                      separators=(",", ":")) + "\n"


def loads_game(text):
    return game_from_dict(json.loads(text))


def write_game(path, g):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_game(g))


def read_game(path):
    with open(path, "r", encoding="utf-8") as fh:
        return loads_game(fh.read())
