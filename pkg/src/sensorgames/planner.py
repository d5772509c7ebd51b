"""Agent-side solver: almost-sure task completion in the perceived game.

Because the perceived game treats jamming as a memoryless fault, the
question "can the agent be sure to finish?" becomes almost-sure
reachability of the absorbing `FINAL` node, under one extra constraint:
the agent only sees beliefs, so whatever moves she keeps available must
be identical across every node of a belief's equivalence class.

The solver interleaves two phases until stable.  First the *losing
core*: nodes from which `FINAL` is not even graph-reachable can never
complete, whatever the strategy.  Then an elimination sweep: any move
that can land in an already-doomed node is unsafe and is withdrawn from
the whole equivalence class of its source; a node whose move set
empties out joins the doomed set.  Whenever the sweep stalls, every
node whose surviving moves no longer connect it to `FINAL` is stranded:
it can loop forever without completing, so its entire class is doomed
and the sweep resumes.  What survives is the winning region together
with the maximal permissive move sets, and every run of the induced
chain from a winning node completes with probability one.

Each withdrawal is logged, so the result can be audited move by move.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Mapping

from .belief import (
    FINAL,
    ActionPair,
    BeliefMDP,
    BeliefNode,
    _Final,
    node_key,
)


@dataclass(frozen=True)
class MultiStrategy:
    """Per-node sets of moves the agent keeps available.

    The map covers every node of the perceived game; the set is empty
    exactly at nodes outside the winning region.  Sets agree across each
    equivalence class, so `for_belief` is well defined and is what an
    observation-driven player actually uses.
    """

    allowed: Mapping[BeliefNode, frozenset[ActionPair]]

    def winning(self) -> frozenset[BeliefNode]:
        return frozenset(q for q, moves in self.allowed.items() if moves)

    def for_belief(self, belief: frozenset[int]) -> frozenset[ActionPair] | None:
        for node in sorted(belief):
            moves = self.allowed.get(BeliefNode(node, belief))
            if moves:
                return moves
        return None


@dataclass(frozen=True)
class Removal:
    """One elimination event in round ``iteration``: ``move`` withdrawn
    at ``node`` on account of ``cause`` -- either a doomed node the move
    could land in, or a stranded class member whose doom took the whole
    class (and its remaining moves) down with it."""

    iteration: int
    node: BeliefNode
    move: ActionPair
    cause: BeliefNode


@dataclass(frozen=True)
class SolveReport:
    mdp: BeliefMDP
    win: frozenset[BeliefNode]
    strategy: MultiStrategy
    levels: tuple[tuple[BeliefNode, ...], ...]  # doomed nodes, by round found
    trace: tuple[Removal, ...]

    @property
    def initial_winning(self) -> bool:
        """The headline verdict: can the agent, from the start, be sure
        (in her own model) of completing the task?"""
        return self.mdp.initial in self.win


def losing_core(mdp: BeliefMDP) -> frozenset[BeliefNode]:
    """Nodes from which the absorbing node is not graph-reachable."""
    back = mdp.predecessors()
    alive: set[BeliefNode] = set()
    queue: deque = deque([FINAL])
    while queue:
        node = queue.popleft()
        for pred, _move in back[node]:
            if pred not in alive:
                alive.add(pred)
                queue.append(pred)
    return frozenset(q for q in mdp.nodes if q not in alive)


def pre_image(
    mdp: BeliefMDP, target: "BeliefNode | _Final"
) -> frozenset[tuple[BeliefNode, ActionPair]]:
    """All (node, move) pairs whose successor support contains ``target``."""
    return frozenset(mdp.predecessors()[target])


def solve_p1(mdp: BeliefMDP) -> SolveReport:
    """Maximal belief-uniform multi-strategy for almost-sure completion."""
    back = mdp.predecessors()
    core = losing_core(mdp)

    allowed: dict[BeliefNode, set[ActionPair]] = {}
    for q in mdp.nodes:
        allowed[q] = set() if q in core else set(mdp.trans[q])

    doomed: set[BeliefNode] = set(core)
    levels: list[tuple[BeliefNode, ...]] = [tuple(sorted(core, key=node_key))]
    trace: list[Removal] = []
    iteration = 0

    def connected_to_final() -> set[BeliefNode]:
        """Nodes that can still reach FINAL through surviving moves."""
        rev: dict = {}
        for q in mdp.nodes:
            if q in doomed:
                continue
            for move in allowed[q]:
                for succ in mdp.trans[q][move]:
                    rev.setdefault(succ, []).append(q)
        alive: set[BeliefNode] = set()
        queue: deque = deque([FINAL])
        while queue:
            node = queue.popleft()
            for pred in rev.get(node, ()):
                if pred not in alive:
                    alive.add(pred)
                    queue.append(pred)
        return alive

    current = levels[0]
    while True:
        if current:
            next_level: list[BeliefNode] = []
            for cause in current:
                for source, move in back[cause]:
                    for peer in mdp.classes[source.belief]:
                        if move in allowed[peer]:
                            allowed[peer].discard(move)
                            trace.append(Removal(iteration, peer, move, cause))
                            if not allowed[peer] and peer not in doomed:
                                doomed.add(peer)
                                next_level.append(peer)
            iteration += 1
            current = tuple(sorted(set(next_level), key=node_key))
            if current:
                levels.append(current)
            continue
        # The sweep stalled.  A node may keep moves yet have lost every
        # route to FINAL (only loops remain); playing there never
        # completes, so the node -- and, since the agent cannot tell the
        # members apart, its whole class -- is doomed as well.
        alive = connected_to_final()
        stranded = [q for q in mdp.nodes
                    if q not in doomed and q not in alive]
        if not stranded:
            break
        fresh: list[BeliefNode] = []
        for node in sorted(stranded, key=node_key):
            for member in mdp.classes[node.belief]:
                if member in doomed:
                    continue
                for move in sorted(allowed[member]):
                    allowed[member].discard(move)
                    trace.append(Removal(iteration, member, move, node))
                doomed.add(member)
                fresh.append(member)
        iteration += 1
        current = tuple(sorted(set(fresh), key=node_key))
        levels.append(current)

    win = frozenset(q for q in mdp.nodes if q not in doomed)
    strategy = MultiStrategy(
        allowed={q: frozenset(moves) for q, moves in allowed.items()})
    return SolveReport(
        mdp=mdp, win=win, strategy=strategy,
        levels=tuple(levels),
        trace=tuple(trace))


@dataclass(frozen=True)
class SoundnessVerdict:
    ok: bool
    reason: str
    witness: tuple | None = None  # offending (node, move, successor) or node

    def __bool__(self) -> bool:
        return self.ok


def certify_almost_sure_reach(
    start: Hashable,
    successors: Callable[[Hashable], Iterable[Hashable]],
    target: Hashable,
) -> tuple[bool, Hashable | None]:
    """Certificate that a finite chain from ``start`` reaches ``target``
    with probability one: the target must stay graph-reachable from
    every node the chain can visit.  Returns (ok, offending node).
    """
    reach: set = {start}
    queue: deque = deque([start])
    while queue:
        node = queue.popleft()
        if node == target:
            continue
        for succ in successors(node):
            if succ not in reach:
                reach.add(succ)
                queue.append(succ)

    # Backward sweep from the target, restricted to the reachable part.
    back: dict = {node: [] for node in reach}
    for node in reach:
        if node == target:
            continue
        for succ in successors(node):
            back[succ].append(node)
    can_finish: set = {target} if target in reach else set()
    queue = deque(can_finish)
    while queue:
        node = queue.popleft()
        for pred in back[node]:
            if pred not in can_finish:
                can_finish.add(pred)
                queue.append(pred)

    def stable(node) -> tuple:
        if isinstance(node, BeliefNode):
            return (0, node_key(node))
        return (1, repr(node))

    for node in sorted(reach, key=stable):
        if node not in can_finish:
            return False, node
    return True, None


def check_soundness(mdp: BeliefMDP, strategy: MultiStrategy) -> SoundnessVerdict:
    """Independent audit of a claimed winning multi-strategy.

    Two checks.  Closure: from any node with moves left, every successor
    of every kept move either has moves left too or is the absorbing
    node.  Completion: from the start node (when it has moves), the
    absorbing node stays reachable everywhere the induced chain can go.
    A failed verdict carries a concrete witness.
    """
    win = {q for q, moves in strategy.allowed.items() if moves}
    for q in sorted(win, key=node_key):
        for move in sorted(strategy.allowed[q]):
            if move not in mdp.trans[q]:
                return SoundnessVerdict(
                    False, f"move {move} kept at {q} but never offered there",
                    witness=(q, move, None))
            for succ in mdp.trans[q][move]:
                if not isinstance(succ, _Final) and succ not in win:
                    return SoundnessVerdict(
                        False,
                        f"kept move {move} at {q} can land outside the "
                        f"winning region, at {succ}",
                        witness=(q, move, succ))

    if mdp.initial in win:
        def induced(node):
            if isinstance(node, _Final):
                return ()
            return [s for move in strategy.allowed[node]
                    for s in mdp.trans[node][move]]

        ok, stuck = certify_almost_sure_reach(mdp.initial, induced, FINAL)
        if not ok:
            return SoundnessVerdict(
                False,
                f"induced chain can reach {stuck}, from which completion "
                f"is impossible",
                witness=(stuck,))
    return SoundnessVerdict(True, "closure and completion certificates hold")
