"""Attacker-side solver: keeping the naive agent away from her goal.

Once the agent commits to the maximal multi-strategy computed by the
agent-side solver, her behaviour at every winning node is fixed up to
uniform choice among kept moves.  The jammer, who sees the true state
and the agent's belief, then faces an ordinary MDP: at each winning node
it picks one attack, nature resolves the agent's move and the arena's
successor, and the next node follows from the jammed observation.

The jammer wants to keep the play away from task completion forever.
That is a safety objective, and almost-sure safety against stochastic
opposition coincides with sure safety on supports, so a greatest
fixpoint over one-step support containment settles it.  Any kept move
that can surely or possibly finish the task contributes a special
``TASK_COMPLETE`` successor, which no safe attack may allow.

The *deception gap* is the outcome: nodes where the agent believes she
is sure to finish while the jammer is sure she never will.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .belief import (
    ActionPair,
    BeliefMDP,
    BeliefNode,
    node_key,
)
from .game import AttackId, Game, StateId, get_observation, post_belief, post_state
from .planner import SolveReport


class _TaskComplete:
    """Pseudo-successor: the agent's task just finished."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "TASK_COMPLETE"


TASK_COMPLETE = _TaskComplete()

# Successor annotations: the (action, query, successor-state) triples
# that produce the edge; the state is None on TASK_COMPLETE edges.
Inducers = frozenset[tuple[int, int, StateId | None]]


class EmptyWin1Error(Exception):
    """The agent wins nowhere, so there is no attacker game to build."""


@dataclass(frozen=True)
class AttackerMDP:
    game: Game
    mdp: BeliefMDP
    nodes: tuple[BeliefNode, ...]
    trans: Mapping[BeliefNode, Mapping[AttackId, Mapping["BeliefNode | _TaskComplete", Inducers]]]
    safe: frozenset[BeliefNode]  # nodes whose true state is not a goal

    def available(self, node: BeliefNode) -> tuple[AttackId, ...]:
        return tuple(sorted(self.trans[node]))


@dataclass(frozen=True)
class AttackStrategy:
    """One attack per node of the jammer's winning region."""

    choice: Mapping[BeliefNode, AttackId]


def build_attacker_mdp(game: Game, mdp: BeliefMDP, report: SolveReport) -> AttackerMDP:
    """The jammer's one-player game over the agent's winning region.

    At node (s, B) an attack is offered only if it is enabled at every
    non-goal state the kept moves can reach, so the jammer never commits
    to an attack the arena forbids where the play actually lands.
    Successor beliefs are recomputed from the observation rule; by the
    closure property of the agent's solution they all lie back inside
    the winning region.
    """
    win = report.win
    if not win:
        raise EmptyWin1Error("the agent has no winning node to be deceived at")

    all_attacks = range(len(game.attacks))
    trans: dict[BeliefNode, dict[AttackId, dict]] = {}
    for node in sorted(win, key=node_key):
        moves = sorted(report.strategy.allowed[node])
        landing: set[StateId] = set()
        for action, _query in moves:
            landing |= post_state(game, node.state, action) - game.goal
        offered = [
            att for att in all_attacks
            if all(att in game.enabled_attacks[s] for s in landing)
        ]
        per_attack: dict[AttackId, dict] = {}
        for att in offered:
            succs: dict = {}
            for action, query in moves:
                support = post_state(game, node.state, action)
                image = post_belief(game, node.belief, action)
                if support & game.goal:
                    succs.setdefault(TASK_COMPLETE, set()).add((action, query, None))
                for s2 in sorted(support - game.goal):
                    obs = get_observation(game, s2, query, att)
                    succ = BeliefNode(s2, image & obs)
                    succs.setdefault(succ, set()).add((action, query, s2))
            per_attack[att] = {s: frozenset(v) for s, v in succs.items()}
        trans[node] = per_attack

    nodes = tuple(sorted(win, key=node_key))
    safe = frozenset(q for q in nodes if q.state not in game.goal)
    return AttackerMDP(game=game, mdp=mdp, nodes=nodes, trans=trans, safe=safe)


def solve_p2_safety(attacker: AttackerMDP) -> tuple[frozenset[BeliefNode], AttackStrategy]:
    """Greatest fixpoint of one-step safe containment.

    Start from all nodes whose true state is outside the goal and shrink:
    a node survives a round only if some offered attack keeps the whole
    successor support inside the surviving set and fires no
    TASK_COMPLETE edge.  The witness attack (lowest id) at each
    surviving node forms the jammer's stationary strategy.
    """
    safe = set(attacker.safe)
    while True:
        keep = set()
        for node in safe:
            for att in attacker.available(node):
                succs = attacker.trans[node][att]
                if TASK_COMPLETE in succs:
                    continue
                if all(s in safe for s in succs):
                    keep.add(node)
                    break
        if keep == safe:
            break
        safe = keep

    choice: dict[BeliefNode, AttackId] = {}
    for node in sorted(safe, key=node_key):
        for att in attacker.available(node):
            succs = attacker.trans[node][att]
            if TASK_COMPLETE not in succs and all(s in safe for s in succs):
                choice[node] = att
                break
    return frozenset(safe), AttackStrategy(choice=choice)


def deception_gap(
    report: SolveReport,
    win2: frozenset[BeliefNode],
    strategy: AttackStrategy | None = None,
) -> dict[BeliefNode, AttackId | None]:
    """Nodes where the agent is sure she wins and the jammer is sure she
    does not, each mapped to the jammer's chosen attack there."""
    gap = report.win & win2
    out: dict[BeliefNode, AttackId | None] = {}
    for node in sorted(gap, key=node_key):
        out[node] = strategy.choice.get(node) if strategy is not None else None
    return out
