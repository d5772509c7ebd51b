"""End-to-end analysis: text in, one reproducible result document out.

The stages run in a fixed order: parse, validate, expand the perceived
game, solve the agent side, and -- whenever the agent wins anywhere --
build the jammer's game, solve it, and intersect into the deception
gap.  Failures carry the stage they came from.

The document is plain data with one canonical JSON rendering.  Ordering
is canonical throughout and nothing run-dependent is included unless
explicitly requested (timings), so the same input yields byte-identical
output every run.
"""

from __future__ import annotations

import hashlib
import json
import time
from dataclasses import dataclass

from . import attacker as attacker_mod
from .belief import BeliefMDP, build_belief_mdp, node_key, node_label
from .game import Game, validate_game
from .planner import SolveReport, solve_p1
from .specfile import parse_spec, serialize_spec


class PipelineError(Exception):
    """A stage failed; ``stage`` names it, the cause is chained."""

    def __init__(self, stage: str, cause: Exception):
        self.stage = stage
        self.cause = cause
        super().__init__(f"{stage}: {cause}")


@dataclass
class PipelineRun:
    """Everything the pipeline computed, in object form."""

    doc: object
    game: Game
    mdp: BeliefMDP
    report: SolveReport
    attacker: "attacker_mod.AttackerMDP | None"
    win2: frozenset | None
    attack_strategy: "attacker_mod.AttackStrategy | None"
    gap: dict | None


@dataclass
class ResultDocument:
    """Canonical, JSON-ready summary of one pipeline run."""

    source: str
    digest: str
    counts: dict
    weighted: bool
    warnings: list[str]
    initial_winning: bool
    win1: list[str]
    strategy: dict[str, list[str]]
    win2: list[str] | None
    attack_strategy: dict[str, str] | None
    gap: list[dict] | None
    trace: list[dict] | None
    timings_ms: dict[str, float] | None
    version: int = 1

    def to_json(self) -> str:
        payload = {
            "version": self.version,
            "source": self.source,
            "digest": self.digest,
            "counts": self.counts,
            "weighted": self.weighted,
            "warnings": self.warnings,
            "initial_winning": self.initial_winning,
            "win1": self.win1,
            "strategy": self.strategy,
            "win2": self.win2,
            "attack_strategy": self.attack_strategy,
            "gap": self.gap,
            "trace": self.trace,
            "timings_ms": self.timings_ms,
        }
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _move_label(game: Game, move: tuple[int, int]) -> str:
    action, query = move
    return f"({game.action_names[action]},{game.queries[query].name})"


def run_stages(text: str) -> PipelineRun:
    """Run the analysis and keep the intermediate objects."""
    try:
        doc = parse_spec(text)
    except Exception as e:
        raise PipelineError("parse", e) from e
    try:
        game = validate_game(doc)
    except Exception as e:
        raise PipelineError("validate", e) from e
    try:
        mdp = build_belief_mdp(game)
    except Exception as e:
        raise PipelineError("expand", e) from e
    try:
        report = solve_p1(mdp)
    except Exception as e:
        raise PipelineError("solve-agent", e) from e

    adversary = None
    win2 = None
    strategy = None
    gap = None
    if report.win:
        try:
            adversary = attacker_mod.build_attacker_mdp(game, mdp, report)
            win2, strategy = attacker_mod.solve_p2_safety(adversary)
            gap = attacker_mod.deception_gap(report, win2, strategy)
        except Exception as e:
            raise PipelineError("solve-jammer", e) from e
    return PipelineRun(
        doc=doc, game=game, mdp=mdp, report=report,
        attacker=adversary, win2=win2, attack_strategy=strategy, gap=gap)


def run_pipeline(
    text: str,
    source: str = "<memory>",
    include_trace: bool = False,
    include_timings: bool = False,
) -> ResultDocument:
    started = time.perf_counter()
    run = run_stages(text)
    digest = hashlib.sha256(serialize_spec(run.doc).encode()).hexdigest()
    elapsed_ms = (time.perf_counter() - started) * 1000.0

    game, report = run.game, run.report
    win1_sorted = sorted(report.win, key=node_key)
    strategy = {
        node_label(game, q): [_move_label(game, m)
                              for m in sorted(report.strategy.allowed[q])]
        for q in win1_sorted
    }
    trace = None
    if include_trace:
        trace = [
            {
                "round": r.iteration,
                "node": node_label(game, r.node),
                "move": _move_label(game, r.move),
                "cause": node_label(game, r.cause),
            }
            for r in report.trace
        ]
    win2 = None
    attack_strategy = None
    gap = None
    if run.win2 is not None:
        win2 = [node_label(game, q) for q in sorted(run.win2, key=node_key)]
        attack_strategy = {
            node_label(game, q): game.attacks[a].name
            for q, a in sorted(run.attack_strategy.choice.items(),
                               key=lambda kv: node_key(kv[0]))
        }
        gap = [
            {"node": node_label(game, q),
             "attack": None if a is None else game.attacks[a].name}
            for q, a in run.gap.items()
        ]

    counts = {
        "states": game.n_states,
        "actions": len(game.action_names),
        "sensors": len(game.sensors),
        "queries": len(game.queries),
        "attacks": len(game.attacks),
        "belief_nodes": len(run.mdp.nodes),
        "belief_classes": len(run.mdp.classes),
        "win1": len(report.win),
        "win2": None if run.win2 is None else len(run.win2),
        "gap": None if run.gap is None else len(run.gap),
    }
    return ResultDocument(
        source=source,
        digest=digest,
        counts=counts,
        weighted=game.has_weights,
        warnings=list(game.warnings),
        initial_winning=report.initial_winning,
        win1=[node_label(game, q) for q in win1_sorted],
        strategy=strategy,
        win2=win2,
        attack_strategy=attack_strategy,
        gap=gap,
        trace=trace,
        timings_ms={"total": round(elapsed_ms, 3)} if include_timings else None,
    )
