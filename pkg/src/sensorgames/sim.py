"""Play engine: runs the real arena against a strategy pair.

A play alternates arena moves and sensing rounds.  The agent, driven
only by her belief, samples uniformly among the moves her multi-strategy
keeps available; the arena samples a successor from the declared weights
(uniformly when none are given); the attack policy, which may peek at
everything including the true successor, picks a jam; the belief then
shrinks by the resulting observation.

A play ends when the agent *knows* the task is complete -- her belief
sits entirely inside the goal -- or when the step budget runs out.  If
the play wanders to a belief her strategy never covered, that is a
strategy gap: a hard error carrying the offending node, never a silent
default move.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from typing import Callable

from .attacker import AttackStrategy
from .belief import BeliefNode
from .game import AttackId, Game, Observation, StateId, get_observation, post_belief
from .planner import MultiStrategy


class Outcome(enum.Enum):
    TASK_KNOWN_COMPLETE = "task-known-complete"
    STEP_LIMIT = "step-limit"


@dataclass(frozen=True)
class Step:
    state: StateId          # where the move was taken
    action: int
    query: int
    attack: AttackId
    observation: Observation  # readings produced at the successor state
    belief_after: frozenset[StateId]


@dataclass(frozen=True)
class PlayTrace:
    steps: tuple[Step, ...]
    outcome: Outcome
    final_state: StateId
    seed: int


class StrategyGapError(Exception):
    """The play reached a belief the agent's strategy does not cover."""

    def __init__(self, node: BeliefNode):
        self.node = node
        super().__init__(f"no move available at {node}")


class FixedAttack:
    """Always launch the same attack (it must be enabled where used)."""

    def __init__(self, attack: AttackId):
        self.attack = attack

    def choose(self, rng, game, node, move, next_state) -> AttackId:
        return self.attack


class UniformRandomAttack:
    """Sample uniformly among the attacks enabled at the successor."""

    def choose(self, rng, game, node, move, next_state) -> AttackId:
        return rng.choice(sorted(game.enabled_attacks[next_state]))


class TableAttack:
    """Follow a computed attack strategy, keyed by the pre-move node.

    Off the table (the play left the jammer's winning region) it falls
    back to the lowest-id attack enabled at the successor, so the policy
    stays total.
    """

    def __init__(self, strategy: AttackStrategy):
        self.strategy = strategy

    def choose(self, rng, game, node, move, next_state) -> AttackId:
        att = self.strategy.choice.get(node)
        if att is not None:
            return att
        return min(game.enabled_attacks[next_state])


class PromptAttack:
    """Ask a callable (by default, standard input) for the attack name."""

    def __init__(self, game: Game, ask: Callable[[str], str] | None = None):
        self.game = game
        self.ask = ask

    def choose(self, rng, game, node, move, next_state) -> AttackId:
        ask = self.ask if self.ask is not None else input
        names = sorted(game.attacks[a].name for a in game.enabled_attacks[next_state])
        while True:
            answer = ask(f"attack ({'/'.join(names)}): ").strip()
            if answer in names:
                return game.attack(answer)


def _sample_successor(rng: random.Random, game: Game, state: StateId, action: int) -> StateId:
    support = game.trans[(state, action)]
    succs = sorted(support)
    weights = [support[s] for s in succs]
    if any(w is not None for w in weights):
        return rng.choices(succs, weights=[float(w) for w in weights])[0]
    return succs[rng.randrange(len(succs))]


def simulate(
    game: Game,
    p1: MultiStrategy,
    p2,
    max_steps: int,
    seed: int,
) -> PlayTrace:
    """Run one play.  Same inputs and seed, same trace, step for step."""
    rng = random.Random(seed)
    state = game.initial
    belief: frozenset[StateId] = frozenset({state})
    steps: list[Step] = []

    if belief <= game.goal:
        return PlayTrace((), Outcome.TASK_KNOWN_COMPLETE, state, seed)

    while len(steps) < max_steps:
        node = BeliefNode(state, belief)
        moves = p1.for_belief(belief)
        if not moves:
            raise StrategyGapError(node)
        action, query = sorted(moves)[rng.randrange(len(moves))]
        next_state = _sample_successor(rng, game, state, action)
        attack = p2.choose(rng, game, node, (action, query), next_state)
        obs = get_observation(game, next_state, query, attack)
        belief = post_belief(game, belief, action) & obs
        steps.append(Step(state, action, query, attack, obs, belief))
        state = next_state
        if belief <= game.goal:
            return PlayTrace(tuple(steps), Outcome.TASK_KNOWN_COMPLETE, state, seed)

    return PlayTrace(tuple(steps), Outcome.STEP_LIMIT, state, seed)
