"""Seeded game generator and a brute-force cross-check for the solver.

The generator turns a parameter record and a seed into a game document,
deterministically: the same inputs serialize to byte-identical text.  It
exists to mass-produce small instances for differential testing.

The brute-force check answers one question only, by sheer enumeration:
does the agent have *any* belief-uniform multi-strategy that completes
the task almost surely from the start?  It tries every assignment of a
nonempty move subset to every belief class and applies the plain
Markov-chain certificate (completion stays reachable everywhere the
chain can go) to each induced chain.  Classes no move sequence can reach
from the start are skipped: their assignment cannot touch the chain.
The combination count is checked against a hard cap first, so a blow-up
is an explicit refusal rather than a silent week of CPU time.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations, product

from .belief import FINAL, BeliefMDP, BeliefNode, belief_key
from .game import Game, validate_game
from .planner import certify_almost_sure_reach
from .specfile import (
    ActionDecl,
    GameSpecDocument,
    SelectionDecl,
    SensorDecl,
    StateDecl,
    TransitionDecl,
)


@dataclass(frozen=True)
class GeneratorParams:
    n_states: int
    n_actions: int
    n_sensors: int
    n_queries: int
    n_attacks: int  # includes the always-present empty attack
    max_support: int
    goal_fraction: float
    seed: int

    def __post_init__(self) -> None:
        for name in ("n_states", "n_actions", "n_sensors", "n_queries", "n_attacks"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be at least 1")
        if not (1 <= self.max_support <= self.n_states):
            raise ValueError("max_support must be between 1 and n_states")
        if not (0.0 <= self.goal_fraction <= 1.0):
            raise ValueError("goal_fraction must lie in [0, 1]")


def generate_spec(params: GeneratorParams) -> GameSpecDocument:
    """Draw a game document; identical params give identical documents."""
    rng = random.Random(params.seed)
    states = [f"s{i}" for i in range(params.n_states)]
    actions = [f"a{i}" for i in range(params.n_actions)]
    sensors = [f"g{i}" for i in range(params.n_sensors)]

    n_goal = round(params.goal_fraction * params.n_states)
    goal = set(rng.sample(states, n_goal))
    state_decls = tuple(
        StateDecl(name, initial=(i == 0), goal=(name in goal))
        for i, name in enumerate(states))

    transitions = []
    for s in states:
        if s in goal:
            # Goal states are absorbing under every action: arrival
            # completes the task, so nothing may lead back out.
            for a in actions:
                transitions.append(TransitionDecl(s, a, ((s, None),)))
            continue
        enabled = [a for a in actions if rng.random() < 0.75]
        if not enabled:
            enabled = [rng.choice(actions)]
        for a in actions:
            if a not in enabled:
                continue
            size = rng.randint(1, params.max_support)
            support = rng.sample(states, size)
            transitions.append(TransitionDecl(
                s, a, tuple((succ, None) for succ in support)))

    sensor_decls = tuple(
        SensorDecl(name, tuple(s for s in states if rng.random() < 0.5))
        for name in sensors)
    query_decls = tuple(
        SelectionDecl(f"q{i}", tuple(g for g in sensors if rng.random() < 0.5))
        for i in range(params.n_queries))
    attack_decls = [SelectionDecl("none", ())]
    for i in range(1, params.n_attacks):
        attack_decls.append(SelectionDecl(
            f"b{i}", tuple(g for g in sensors if rng.random() < 0.5)))

    return GameSpecDocument(
        states=state_decls,
        actions=tuple(ActionDecl(a) for a in actions),
        transitions=tuple(transitions),
        sensors=sensor_decls,
        queries=query_decls,
        attacks=tuple(attack_decls),
    )


def generate_game(params: GeneratorParams) -> Game:
    return validate_game(generate_spec(params))


class CapExceededError(Exception):
    """The enumeration would be too large; carries the estimate."""

    def __init__(self, estimate: int, cap: int):
        self.estimate = estimate
        self.cap = cap
        super().__init__(
            f"brute force would try about {estimate} assignments, cap is {cap}")


@dataclass(frozen=True)
class OracleResult:
    initial_winning: bool
    assignments_checked: int
    class_count: int


def brute_force_win1(mdp: BeliefMDP, cap: int = 1_000_000) -> OracleResult:
    """Exhaustive answer to "is the start node winning for the agent?".

    Enumerates every belief-uniform assignment of nonempty move subsets
    and certifies each induced chain independently of the solver.  Only
    classes with a node reachable from the start (under any moves) are
    enumerated; whatever is assigned elsewhere can never alter the chain
    the start node sees.  Classes offering no move at all are kept as
    dead ends and fail the certificate if the chain can touch them.
    """
    start = mdp.initial
    reach: set[BeliefNode] = {start}
    stack = [start]
    while stack:
        node = stack.pop()
        for succs in mdp.trans[node].values():
            for succ in succs:
                if succ is not FINAL and succ not in reach:
                    reach.add(succ)
                    stack.append(succ)

    beliefs = sorted({q.belief for q in reach}, key=belief_key)
    per_class: list[list[tuple]] = []
    estimate = 1
    for belief in beliefs:
        offered = sorted(mdp.trans[mdp.classes[belief][0]])
        if not offered:
            per_class.append([()])
            continue
        subsets = [
            combo
            for size in range(len(offered), 0, -1)
            for combo in combinations(offered, size)
        ]
        estimate *= len(subsets)
        if estimate > cap:
            raise CapExceededError(estimate, cap)
        per_class.append(subsets)

    class_of = {belief: idx for idx, belief in enumerate(beliefs)}
    checked = 0
    for assignment in product(*per_class):
        checked += 1

        def induced(node):
            if node is FINAL:
                return ()
            moves = assignment[class_of[node.belief]]
            return [s for move in moves for s in mdp.trans[node][move]]

        ok, _ = certify_almost_sure_reach(start, induced, FINAL)
        if ok:
            return OracleResult(True, checked, len(beliefs))
    return OracleResult(False, checked, len(beliefs))
