"""Shared fixtures: bundled games solved once per session."""

from __future__ import annotations

import json
from importlib import resources

import pytest

from sensorgames import bundled_game_text, run_stages
from sensorgames.belief import BeliefNode


def load_corpus():
    path = resources.files("sensorgames.specs") / "corpus.json"
    return json.loads(path.read_text())


@pytest.fixture(scope="session")
def corpus():
    return load_corpus()


@pytest.fixture(scope="session")
def fig1_text():
    return bundled_game_text("fig1")


@pytest.fixture(scope="session")
def fig1(fig1_text):
    return run_stages(fig1_text)


@pytest.fixture(scope="session")
def fig1_nosense():
    return run_stages(bundled_game_text("fig1_nosense"))


@pytest.fixture(scope="session")
def fig1_noattack():
    return run_stages(bundled_game_text("fig1_noattack"))


@pytest.fixture(scope="session")
def fig4_text():
    return bundled_game_text("fig4")


@pytest.fixture(scope="session")
def fig4(fig4_text):
    return run_stages(fig4_text)


def bnode(game, state: str, belief: list[str]) -> BeliefNode:
    """Build a belief node from state names."""
    return BeliefNode(game.state(state), game.state_set(belief))
