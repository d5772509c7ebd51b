"""What the agent sees, and what jamming does to it.

The arena carries a bank of Boolean sensors.  Each round the agent
reads one named query (a subset of the bank) and the jammer may launch
one attack (another subset); jammed sensors return a failure value and
contribute nothing.  The observation is the set of states consistent
with the surviving readings.

This script walks the six-room patrol arena and prints, for one state,
how each query/attack combination blurs or sharpens the view.
"""

from sensorgames import bundled_game_text, get_observation, parse_spec, validate_game

game = validate_game(parse_spec(bundled_game_text("fig1")))

print("sensor bank:")
for sensor in game.sensors:
    covered = ", ".join(sorted(game.state_names[s] for s in sensor.coverage))
    print(f"  {sensor.name:7s} covers {{{covered}}}")
print()

print("queries (what the agent may read) and attacks (what the jammer may kill):")
for query in game.queries:
    members = ", ".join(sorted(game.sensors[i].name for i in query.sensors))
    print(f"  query  {query.name}: {members}")
for attack in game.attacks:
    members = ", ".join(sorted(game.sensors[i].name for i in attack.sensors))
    print(f"  attack {attack.name}: {members or '(nothing)'}")
print()

# Stand at s1 and try every combination.  Reading red and blue with no
# interference pins s1 exactly; killing red merges it with s2, which is
# precisely the distinction the agent needs to act safely from {s1, s2}.
state = game.state("s1")
print(f"the view from {game.state_names[state]}:")
rows = []
for qid, query in enumerate(game.queries):
    cells = []
    for aid in range(len(game.attacks)):
        view = get_observation(game, state, qid, aid)
        cells.append("{" + ",".join(sorted(game.state_names[s] for s in view)) + "}")
    rows.append((query.name, cells))
width = max(len(c) for _, cells in rows for c in cells)
width = max(width, max(len(a.name) for a in game.attacks)) + 2
header = "".join(f"{a.name:>{width}s}" for a in game.attacks)
print(f"  {'':8s}{header}")
for name, cells in rows:
    line = "".join(f"{cell:>{width}s}" for cell in cells)
    print(f"  {name:8s}{line}")
print()
print("note how beta0 (kill red) turns the sigma0 reading into {s1,s2}:")
print("the agent can no longer tell the two rooms apart.")
