"""Arena model: states, actions, Boolean sensors, queries, and attacks.

The arena is an explicit-state nondeterministic transition system with a
designated initial state and a set of goal states.  The planning agent
cannot see the state directly.  Each round she picks a *query*, a subset
of the sensor bank to read; each sensor answers whether the current
state lies in its coverage set.  The attacker simultaneously picks an
*attack*, a subset of sensors to jam.  A jammed sensor returns a failure
value that carries no information, so the round's information content is
exactly the sensors in ``query minus attack``.

Everything downstream (belief tracking, both solvers, the simulator)
consumes the immutable `Game` built here by `validate_game`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .specfile import GameSpecDocument

StateId = int
ActionId = int
SensorId = int
QueryId = int
AttackId = int

# An observation is the set of states consistent with one round of
# sensor readings.
Observation = frozenset[StateId]


@dataclass(frozen=True)
class Sensor:
    """A Boolean sensor: reports whether the current state is covered."""

    name: str
    coverage: frozenset[StateId]


@dataclass(frozen=True)
class SensorSelection:
    """A named subset of the sensor bank: a query or an attack."""

    name: str
    sensors: frozenset[SensorId]


@dataclass(frozen=True)
class ValidationIssue:
    kind: str  # "unknown-id" | "empty-support" | "no-enabled-action"
    #            | "empty-attack-set" | "duplicate-name"
    message: str
    line: int | None = None

    def __str__(self) -> str:
        where = f"line {self.line}: " if self.line else ""
        return f"{where}{self.message}"


class GameValidationError(Exception):
    """Raised by `validate_game`; carries every violation found."""

    def __init__(self, issues: list[ValidationIssue]):
        self.issues = tuple(issues)
        first = self.issues[0]
        rest = len(self.issues) - 1
        tail = f" (and {rest} more)" if rest else ""
        super().__init__(f"{first}{tail}")


class DisabledActionError(Exception):
    """An operation asked for an action at a state where it is disabled."""

    def __init__(self, state: StateId, action: ActionId, message: str):
        self.state = state
        self.action = action
        super().__init__(message)


@dataclass(frozen=True)
class Game:
    """A validated arena.  All identifiers are dense indices.

    ``trans`` maps an enabled (state, action) pair to its successor
    support; each successor optionally carries a positive weight used
    only by the simulator.  ``enabled_attacks`` gives, per state, the
    attacks the attacker may launch while the agent is there.
    """

    state_names: tuple[str, ...]
    action_names: tuple[str, ...]
    initial: StateId
    goal: frozenset[StateId]
    trans: Mapping[tuple[StateId, ActionId], Mapping[StateId, float | None]]
    sensors: tuple[Sensor, ...]
    queries: tuple[SensorSelection, ...]
    attacks: tuple[SensorSelection, ...]
    enabled_attacks: tuple[frozenset[AttackId], ...]
    warnings: tuple[str, ...] = field(default=(), compare=False, repr=False)

    @property
    def n_states(self) -> int:
        return len(self.state_names)

    @property
    def all_states(self) -> frozenset[StateId]:
        return frozenset(range(self.n_states))

    @property
    def has_weights(self) -> bool:
        return any(w is not None for support in self.trans.values() for w in support.values())

    def enabled_actions(self, state: StateId) -> tuple[ActionId, ...]:
        return tuple(a for a in range(len(self.action_names)) if (state, a) in self.trans)

    def common_enabled_actions(self, belief: Iterable[StateId]) -> tuple[ActionId, ...]:
        """Actions enabled at every state of the belief."""
        states = list(belief)
        return tuple(
            a for a in range(len(self.action_names))
            if all((s, a) in self.trans for s in states)
        )

    # Name lookups, mostly for tests and the command line.
    def state(self, name: str) -> StateId:
        return self.state_names.index(name)

    def action(self, name: str) -> ActionId:
        return self.action_names.index(name)

    def query(self, name: str) -> QueryId:
        return [q.name for q in self.queries].index(name)

    def attack(self, name: str) -> AttackId:
        return [a.name for a in self.attacks].index(name)

    def state_set(self, names: Iterable[str]) -> frozenset[StateId]:
        return frozenset(self.state(n) for n in names)


def post_state(game: Game, state: StateId, action: ActionId) -> frozenset[StateId]:
    """Successor support of one state under one action."""
    support = game.trans.get((state, action))
    if support is None:
        if not (0 <= state < game.n_states):
            raise ValueError(f"unknown state id {state}")
        if not (0 <= action < len(game.action_names)):
            raise ValueError(f"unknown action id {action}")
        raise DisabledActionError(
            state, action,
            f"action '{game.action_names[action]}' is disabled at "
            f"state '{game.state_names[state]}'")
    return frozenset(support)


def post_belief(game: Game, belief: Iterable[StateId], action: ActionId) -> frozenset[StateId]:
    """Image of a belief under one action, before any observation.

    The action must be enabled at every state of the belief; the error
    names the first (lowest-id) state where it is not.
    """
    states = sorted(set(belief))
    for s in states:
        if (s, action) not in game.trans:
            raise DisabledActionError(
                s, action,
                f"action '{game.action_names[action]}' is disabled at "
                f"state '{game.state_names[s]}' in the belief")
    out: set[StateId] = set()
    for s in states:
        out.update(game.trans[(s, action)])
    return frozenset(out)


def observation_for_sensors(
    game: Game, state: StateId, sensors: Iterable[SensorId]
) -> Observation:
    """States indistinguishable from ``state`` given the sensors read.

    Start from the whole state space and intersect, for each readable
    sensor, either its coverage or the complement, depending on which
    side the true state is on.  Reading nothing yields the whole space.
    """
    view = set(range(game.n_states))
    for i in sorted(set(sensors)):
        coverage = game.sensors[i].coverage
        if state in coverage:
            view &= coverage
        else:
            view -= coverage
    return frozenset(view)


def get_observation(
    game: Game, state: StateId, query: QueryId, attack: AttackId
) -> Observation:
    """One round of readings at ``state`` under a query and an attack.

    Jammed sensors are skipped outright: a failure value rules nothing
    out, so only sensors in the query but not the attack contribute.
    """
    if not (0 <= query < len(game.queries)):
        raise ValueError(f"unknown query id {query}")
    if not (0 <= attack < len(game.attacks)):
        raise ValueError(f"unknown attack id {attack}")
    readable = game.queries[query].sensors - game.attacks[attack].sensors
    return observation_for_sensors(game, state, readable)


def enumerate_observations(game: Game) -> frozenset[Observation]:
    """Every observation the channel can produce.

    Sweeps all (state, query, attack) combinations and adds the initial
    observation, which pins the known start state exactly.
    """
    out: set[Observation] = {frozenset({game.initial})}
    for s in range(game.n_states):
        for q in range(len(game.queries)):
            for a in range(len(game.attacks)):
                out.add(get_observation(game, s, q, a))
    return frozenset(out)


def _resolve(
    names: Mapping[str, int], name: str, what: str, line: int,
    issues: list[ValidationIssue],
) -> int | None:
    idx = names.get(name)
    if idx is None:
        issues.append(ValidationIssue(
            "unknown-id", f"unknown {what} '{name}'", line))
    return idx


def _index_names(decls, what: str, issues: list[ValidationIssue]) -> dict[str, int]:
    names: dict[str, int] = {}
    for decl, _idx in zip(decls, range(len(decls))):
        if decl.name in names:
            issues.append(ValidationIssue(
                "duplicate-name", f"duplicate {what} name '{decl.name}'", decl.line))
            continue
        names[decl.name] = len(names)
    return names


def validate_game(doc: GameSpecDocument) -> Game:
    """Resolve names, check every semantic invariant, and build a `Game`.

    All violations are collected before raising, so one failed run
    reports everything wrong with the file.  Non-fatal oddities (a
    sensor that covers nothing) become warnings on the returned game.
    """
    issues: list[ValidationIssue] = []
    warnings: list[str] = []

    state_ids = _index_names(doc.states, "state", issues)
    action_ids = _index_names(doc.actions, "action", issues)
    sensor_ids = _index_names(doc.sensors, "sensor", issues)
    query_ids = _index_names(doc.queries, "query", issues)
    attack_ids = _index_names(doc.attacks, "attack", issues)

    initial = next((state_ids.get(s.name) for s in doc.states if s.initial), None)
    goal = frozenset(
        state_ids[s.name] for s in doc.states if s.goal and s.name in state_ids)

    trans: dict[tuple[StateId, ActionId], dict[StateId, float | None]] = {}
    for t in doc.transitions:
        s = _resolve(state_ids, t.state, "state", t.line, issues)
        a = _resolve(action_ids, t.action, "action", t.line, issues)
        if not t.successors:
            issues.append(ValidationIssue(
                "empty-support",
                f"transition '{t.state} {t.action}' has an empty successor set",
                t.line))
            continue
        support: dict[StateId, float | None] = {}
        for name, weight in t.successors:
            succ = _resolve(state_ids, name, "state", t.line, issues)
            if succ is not None:
                support[succ] = weight
        if s is not None and a is not None and support:
            trans[(s, a)] = support

    for decl in doc.states:
        sid = state_ids.get(decl.name)
        if sid is None or sid not in goal:
            continue
        if any((sid, a) in trans and any(s2 not in goal for s2 in trans[(sid, a)])
               for a in range(len(action_ids))):
            warnings.append(
                f"goal state '{decl.name}' has a transition leaving the goal "
                f"set; solver guarantees assume absorbing goal states")

    sensors = []
    for decl in doc.sensors:
        if decl.name not in sensor_ids:
            continue  # duplicate, already reported
        covered = frozenset(
            sid for name in decl.covers
            if (sid := _resolve(state_ids, name, "state", decl.line, issues)) is not None)
        if not covered:
            warnings.append(f"sensor '{decl.name}' covers no state")
        sensors.append(Sensor(decl.name, covered))

    def build_selection(decls, ids, what: str) -> list[SensorSelection]:
        out = []
        for decl in decls:
            if decl.name not in ids:
                continue
            members = frozenset(
                sid for name in decl.sensors
                if (sid := _resolve(sensor_ids, name, "sensor", decl.line, issues)) is not None)
            out.append(SensorSelection(decl.name, members))
        return out

    queries = build_selection(doc.queries, query_ids, "query")
    attacks = build_selection(doc.attacks, attack_ids, "attack")

    n_states = len(state_ids)
    for name, sid in state_ids.items():
        if not any((sid, a) in trans for a in range(len(action_ids))):
            line = next(s.line for s in doc.states if s.name == name)
            issues.append(ValidationIssue(
                "no-enabled-action", f"state '{name}' has no enabled action", line))

    enabled: list[frozenset[AttackId]] = [
        frozenset(range(len(attack_ids))) for _ in range(n_states)]
    for decl in doc.enabled_attacks:
        sid = _resolve(state_ids, decl.state, "state", decl.line, issues)
        listed = frozenset(
            aid for name in decl.attacks
            if (aid := _resolve(attack_ids, name, "attack", decl.line, issues)) is not None)
        if sid is not None:
            enabled[sid] = listed
    for name, sid in state_ids.items():
        if not enabled[sid]:
            line = next(
                (e.line for e in doc.enabled_attacks if e.state == name),
                next(s.line for s in doc.states if s.name == name))
            issues.append(ValidationIssue(
                "empty-attack-set", f"state '{name}' has no enabled attack", line))

    if initial is None and doc.states:
        issues.append(ValidationIssue(
            "unknown-id", "no resolvable initial state", doc.states[0].line))

    if issues:
        raise GameValidationError(issues)
    assert initial is not None

    return Game(
        state_names=tuple(s.name for s in doc.states),
        action_names=tuple(a.name for a in doc.actions),
        initial=initial,
        goal=goal,
        trans=trans,
        sensors=tuple(sensors),
        queries=tuple(queries),
        attacks=tuple(attacks),
        enabled_attacks=tuple(enabled),
        warnings=tuple(warnings),
    )
