"""Validation and the observation channel."""

from dataclasses import replace

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sensorgames import (
    DisabledActionError,
    GameValidationError,
    enumerate_observations,
    get_observation,
    observation_for_sensors,
    parse_spec,
    post_belief,
    post_state,
    validate_game,
)
from sensorgames.oracle import GeneratorParams, generate_game

from .test_specfile import MINI


def issues_of(text):
    with pytest.raises(GameValidationError) as err:
        validate_game(parse_spec(text))
    return err.value.issues


def small_games():
    return st.integers(min_value=0, max_value=10_000).map(
        lambda seed: generate_game(GeneratorParams(
            n_states=5, n_actions=3, n_sensors=3, n_queries=3, n_attacks=3,
            max_support=2, goal_fraction=0.25, seed=seed)))


# --- validation ---------------------------------------------------------

def test_validate_mini():
    game = validate_game(parse_spec(MINI))
    assert game.state_names == ("s0", "s1")
    assert game.initial == 0
    assert game.goal == frozenset({1})
    assert not game.has_weights
    assert game.warnings == ()
    # No enabled-attacks section: every attack is available everywhere.
    assert game.enabled_attacks == (frozenset({0}), frozenset({0}))


def test_unknown_identifiers_reported():
    text = MINI.replace("s0 a0 -> s0 s1", "s0 a0 -> s0 ghost")
    issues = issues_of(text)
    assert any(i.kind == "unknown-id" and "ghost" in i.message for i in issues)


def test_empty_support():
    issues = issues_of(MINI.replace("s1 a0 -> s1", "s1 a0 ->"))
    assert any(i.kind == "empty-support" for i in issues)
    # The state also ends up with no enabled action; both are reported.
    assert any(i.kind == "no-enabled-action" and "'s1'" in i.message for i in issues)


def test_no_enabled_action():
    issues = issues_of(MINI.replace("s1 a0 -> s1\n", ""))
    assert any(i.kind == "no-enabled-action" for i in issues)


def test_empty_attack_set():
    issues = issues_of(MINI + "\n[enabled-attacks]\ns1:\n")
    assert [i.kind for i in issues] == ["empty-attack-set"]
    assert "'s1'" in issues[0].message


def test_duplicate_names_in_programmatic_document():
    # The parser refuses textual duplicates; a document assembled in
    # code can still carry them and must be caught here.
    doc = parse_spec(MINI)
    doc = replace(doc, sensors=doc.sensors + doc.sensors)
    with pytest.raises(GameValidationError) as err:
        validate_game(doc)
    assert any(i.kind == "duplicate-name" and "'g0'" in i.message
               for i in err.value.issues)


def test_no_initial_state_in_programmatic_document():
    doc = parse_spec(MINI)
    doc = replace(doc, states=tuple(replace(s, initial=False) for s in doc.states))
    with pytest.raises(GameValidationError) as err:
        validate_game(doc)
    assert any("initial" in i.message for i in err.value.issues)


def test_all_issues_collected_at_once():
    text = (MINI
            .replace("s0 a0 -> s0 s1", "s0 a0 -> ghost")
            .replace("s1 a0 -> s1", "s1 a0 ->"))
    issues = issues_of(text)
    assert len(issues) >= 3
    kinds = {i.kind for i in issues}
    assert {"unknown-id", "empty-support"} <= kinds


def test_nonabsorbing_goal_warns():
    text = MINI.replace("s1 a0 -> s1", "s1 a0 -> s0")
    game = validate_game(parse_spec(text))
    assert any("absorbing" in w for w in game.warnings)


def test_coverage_free_sensor_warns():
    text = MINI.replace("g0: s1", "g0: s1\nidle:").replace(
        "q0: g0", "q0: g0 idle")
    game = validate_game(parse_spec(text))
    assert any("covers no state" in w for w in game.warnings)


# --- name lookups and post operators ------------------------------------

def test_lookups_and_enabled_actions(fig1):
    g = fig1.game
    assert g.n_states == 6
    assert g.state("s4") == 4 and g.action("a2") == 2
    assert g.query("sigma1") == 1 and g.attack("none") == 3
    assert g.enabled_actions(g.state("s0")) == (0, 1, 2)
    assert g.common_enabled_actions(g.state_set(["s1", "s2"])) == (0, 1)
    assert g.common_enabled_actions(g.state_set(["s0", "s1"])) == (0, 1)


def test_post_state(fig1):
    g = fig1.game
    assert post_state(g, g.state("s0"), g.action("a2")) == g.state_set(["s2", "s3"])
    with pytest.raises(ValueError):
        post_state(g, 99, 0)
    with pytest.raises(ValueError):
        post_state(g, 0, 99)


def test_post_state_disabled():
    mini = validate_game(parse_spec(MINI.replace(
        "[actions]\na0", "[actions]\na0\na1").replace(
        "s1 a0 -> s1", "s1 a0 -> s1\ns1 a1 -> s1")))
    with pytest.raises(DisabledActionError) as err:
        post_state(mini, mini.state("s0"), mini.action("a1"))
    assert err.value.state == mini.state("s0")


def test_post_belief(fig1):
    g = fig1.game
    belief = g.state_set(["s1", "s2"])
    assert post_belief(g, belief, g.action("a0")) == g.state_set(["s4", "s5"])
    assert post_belief(g, belief, g.action("a1")) == g.state_set(["s4", "s5"])
    with pytest.raises(DisabledActionError):
        post_belief(g, g.state_set(["s0", "s1"]), g.action("a2"))


def test_post_belief_distributes_over_union(fig1):
    g = fig1.game
    belief = g.state_set(["s0", "s1", "s2"])
    for a in g.common_enabled_actions(belief):
        whole = post_belief(g, belief, a)
        pieces = frozenset().union(*(post_state(g, s, a) for s in belief))
        assert whole == pieces


# --- the observation channel --------------------------------------------

def test_observation_frozen_facts(fig1):
    g = fig1.game
    s1 = g.state("s1")
    assert get_observation(g, s1, g.query("sigma0"), g.attack("beta0")) == \
        g.state_set(["s1", "s2"])
    assert get_observation(g, s1, g.query("sigma0"), g.attack("none")) == \
        g.state_set(["s1"])
    # Reading every sensor pins s1 exactly.
    assert observation_for_sensors(g, s1, range(len(g.sensors))) == \
        g.state_set(["s1"])
    # Reading nothing reveals nothing.
    assert observation_for_sensors(g, s1, ()) == g.all_states


def test_observation_contains_true_state(fig1):
    g = fig1.game
    for s in range(g.n_states):
        for q in range(len(g.queries)):
            for a in range(len(g.attacks)):
                assert s in get_observation(g, s, q, a)


def test_observation_bad_ids(fig1):
    g = fig1.game
    with pytest.raises(ValueError):
        get_observation(g, 0, 99, 0)
    with pytest.raises(ValueError):
        get_observation(g, 0, 0, 99)


def test_enumerate_observations(fig4):
    g = fig4.game
    obs = enumerate_observations(g)
    assert frozenset({g.initial}) in obs
    assert all(isinstance(o, frozenset) for o in obs)
    union = frozenset().union(*obs)
    assert union == g.all_states


@settings(max_examples=60, deadline=None)
@given(small_games())
def test_observation_classes_partition(game):
    # Under any fixed query and attack, "same observation" is an
    # equivalence: each state's observation is exactly the set of
    # states producing that same observation.
    for q in range(len(game.queries)):
        for a in range(len(game.attacks)):
            views = [get_observation(game, s, q, a) for s in range(game.n_states)]
            for s, view in enumerate(views):
                assert view == frozenset(
                    t for t in range(game.n_states) if views[t] == view)


@settings(max_examples=60, deadline=None)
@given(small_games(), st.data())
def test_more_sensors_refine_the_view(game, data):
    n = len(game.sensors)
    smaller = data.draw(st.sets(st.integers(0, n - 1)))
    extra = data.draw(st.sets(st.integers(0, n - 1)))
    for s in range(game.n_states):
        wide = observation_for_sensors(game, s, smaller)
        narrow = observation_for_sensors(game, s, smaller | extra)
        assert narrow <= wide


@settings(max_examples=60, deadline=None)
@given(small_games())
def test_jamming_never_sharpens(game):
    # An attack can only blunt a query: the jammed view is a superset
    # of the unjammed one.
    for q in range(len(game.queries)):
        for a in range(len(game.attacks)):
            for s in range(game.n_states):
                jammed = get_observation(game, s, q, a)
                clear = observation_for_sensors(game, s, game.queries[q].sensors)
                assert clear <= jammed
