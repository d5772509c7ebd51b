"""Belief-space expansion of the arena under jam-induced sensor failures.

The agent tracks a belief: the set of states consistent with the play so
far.  She does not model a hostile jammer; each possible jamming outcome
is treated as an ordinary stochastic sensor fault.  Under that reading
the perceived dynamics form a perfect-information MDP over (state,
belief) pairs plus one absorbing node, `FINAL`, entered exactly when the
task is surely complete.

A move from node (s, B) under the pair (a, q) -- control action a, query
q -- resolves in three steps: nature picks a successor s' of s under a;
nature picks a jamming outcome allowed at s'; the next belief is the
action image of B filtered by the resulting observation.  Moves whose
whole successor support lies in the goal jump straight to `FINAL`; a
support that merely touches the goal contributes `FINAL` alongside the
ordinary successors.

Two nodes with the same belief are indistinguishable to the agent, so
node-level analyses must treat each belief's nodes as one equivalence
class.  Construction materializes every (s', B) with s' in B for each
discovered belief, which keeps those classes whole.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping

from .game import (
    ActionId,
    AttackId,
    Game,
    QueryId,
    StateId,
    get_observation,
    post_belief,
    post_state,
)


@dataclass(frozen=True)
class BeliefNode:
    """A perceived-game node: true state plus the agent's belief."""

    state: StateId
    belief: frozenset[StateId]


class _Final:
    """The absorbing task-complete node."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "FINAL"


FINAL = _Final()

# A perceived-game move: control action paired with a sensor query.
ActionPair = tuple[ActionId, QueryId]
# Successors of one move, each annotated with the attacks that produce it.
# The FINAL successor is attack-independent and carries an empty set.
SuccessorMap = Mapping["BeliefNode | _Final", frozenset[AttackId]]


class FinalHasNoClassError(Exception):
    """The absorbing node carries no belief, hence no equivalence class."""


def belief_key(belief: frozenset[StateId]) -> tuple[StateId, ...]:
    return tuple(sorted(belief))


def node_key(node: BeliefNode) -> tuple[StateId, tuple[StateId, ...]]:
    """Canonical ordering key: state id first, then the sorted belief."""
    return (node.state, belief_key(node.belief))


def node_label(game: Game, node: BeliefNode) -> str:
    inner = ",".join(game.state_names[s] for s in sorted(node.belief))
    return f"({game.state_names[node.state]},{{{inner}}})"


@dataclass(frozen=True)
class BeliefMDP:
    """The perceived game, fully expanded and immutable.

    ``nodes`` lists every (state, belief) node in canonical order; the
    absorbing `FINAL` node is kept separate.  ``trans[q][(a, qr)]`` maps
    each successor to the set of attacks that produce it.  ``classes``
    groups nodes by belief.
    """

    game: Game
    initial: BeliefNode
    nodes: tuple[BeliefNode, ...]
    trans: Mapping[BeliefNode, Mapping[ActionPair, SuccessorMap]]
    classes: Mapping[frozenset[StateId], tuple[BeliefNode, ...]]

    def offered(self, node: BeliefNode) -> tuple[ActionPair, ...]:
        """Moves available at a node, in canonical order.

        Availability depends only on the belief: the control action must
        be enabled at every state the agent considers possible.
        """
        return tuple(sorted(self.trans[node]))

    def predecessors(self) -> Mapping["BeliefNode | _Final", tuple[tuple[BeliefNode, ActionPair], ...]]:
        """Reverse index: node -> (predecessor, move) pairs, canonical order."""
        back: dict = {q: [] for q in self.nodes}
        back[FINAL] = []
        for q in self.nodes:
            for pair, succs in self.trans[q].items():
                for succ in succs:
                    back[succ].append((q, pair))
        return {
            node: tuple(sorted(entries, key=lambda e: (node_key(e[0]), e[1])))
            for node, entries in back.items()
        }


def build_belief_mdp(game: Game) -> BeliefMDP:
    """Expand the perceived game reachable from the known start.

    Exploration is a worklist sweep from (s0, {s0}).  Whenever a new
    belief appears, every (s', belief) node with s' in the belief is
    materialized and explored too, so equivalence classes are never
    split.  All iteration is in sorted order, making the result
    reproducible node for node.
    """
    start = BeliefNode(game.initial, frozenset({game.initial}))
    seen: set[BeliefNode] = set()
    seen_beliefs: set[frozenset[StateId]] = set()
    queue: deque[BeliefNode] = deque()
    trans: dict[BeliefNode, dict[ActionPair, dict]] = {}

    def discover_belief(belief: frozenset[StateId]) -> None:
        if belief in seen_beliefs:
            return
        seen_beliefs.add(belief)
        for s in sorted(belief):
            node = BeliefNode(s, belief)
            seen.add(node)
            queue.append(node)

    discover_belief(start.belief)

    while queue:
        node = queue.popleft()
        moves: dict[ActionPair, dict] = {}
        trans[node] = moves
        for action in game.common_enabled_actions(node.belief):
            support = post_state(game, node.state, action)
            image = post_belief(game, node.belief, action)
            outside = sorted(support - game.goal)
            for query in range(len(game.queries)):
                succs: dict = {}
                if not outside or (support & game.goal):
                    succs[FINAL] = frozenset()
                for s2 in outside:
                    for attack in sorted(game.enabled_attacks[s2]):
                        obs = get_observation(game, s2, query, attack)
                        b2 = image & obs
                        succ = BeliefNode(s2, b2)
                        succs.setdefault(succ, set()).add(attack)
                        discover_belief(b2)
                moves[(action, query)] = {
                    succ: (att if isinstance(att, frozenset) else frozenset(att))
                    for succ, att in succs.items()
                }

    nodes = tuple(sorted(seen, key=node_key))
    classes: dict[frozenset[StateId], tuple[BeliefNode, ...]] = {}
    for belief in sorted(seen_beliefs, key=belief_key):
        classes[belief] = tuple(
            BeliefNode(s, belief) for s in sorted(belief))
    return BeliefMDP(game=game, initial=start, nodes=nodes, trans=trans, classes=classes)


def equivalence_class(mdp: BeliefMDP, node: "BeliefNode | _Final") -> tuple[BeliefNode, ...]:
    """All nodes the agent cannot tell apart from this one."""
    if isinstance(node, _Final):
        raise FinalHasNoClassError("the absorbing node has no equivalence class")
    return mdp.classes[node.belief]


def restricted(mdp: BeliefMDP, keep: Iterable[BeliefNode]) -> BeliefMDP:
    """Sub-MDP on ``keep``: moves whose successors all stay inside.

    `FINAL` is always retained.  Beliefs whose class gets split by the
    restriction keep only the surviving members.
    """
    kept = set(keep)
    trans: dict[BeliefNode, dict[ActionPair, SuccessorMap]] = {}
    for node in sorted(kept, key=node_key):
        moves = {}
        for pair, succs in mdp.trans[node].items():
            if all(isinstance(s, _Final) or s in kept for s in succs):
                moves[pair] = succs
        trans[node] = moves
    classes: dict[frozenset[StateId], tuple[BeliefNode, ...]] = {}
    for node in sorted(kept, key=node_key):
        classes.setdefault(node.belief, ())
    for belief in classes:
        classes[belief] = tuple(
            n for n in mdp.classes[belief] if n in kept)
    return BeliefMDP(
        game=mdp.game,
        initial=mdp.initial,
        nodes=tuple(sorted(kept, key=node_key)),
        trans=trans,
        classes=classes,
    )
