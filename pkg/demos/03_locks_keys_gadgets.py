"""Lock & Key games and their compilation into grabbing games.

Edges may carry locks (a closed lock blocks the edge) and keys (crossing
toggles the lock).  These games compile into optional-grabbing pawn games:
every lock becomes a small gadget whose shared blue/green/red pawns encode
the open/closed state, and a relay skeleton keeps each player glued to the
vertices they must answer for.
"""

from pawngames import (
    LockConfig,
    LockKeyGame,
    lockkey_to_optional,
    solve_explicit,
    solve_lockkey,
    split_labels,
    to_always_grabbing,
)

# A three-vertex chain: crossing the first edge turns key 0, the second
# edge is barred by lock 0.
chain = LockKeyGame(
    n=3,
    p1_vertices=frozenset({0, 1}),
    edges=((0, 1), (1, 2), (2, 2)),
    targets=frozenset({2}),
    num_locks=1,
    locks=(frozenset(), frozenset({0}), frozenset()),
    keys=(frozenset({0}), frozenset(), frozenset()),
    names=("start", "mid", "goal"),
)

# Closed lock: the forced key toggle opens it on the way, Player 1 wins.
print("lock starts closed:", solve_lockkey(chain, LockConfig(0, frozenset({0}))))
# Open lock: the same toggle slams it shut and the play stalls, Player 2 wins.
print("lock starts open:  ", solve_lockkey(chain, LockConfig(0, frozenset())))

# The same two verdicts survive the compilation into a pawn game.  The
# compiled game tracks the lock purely through who holds three pawns.
for closed in (frozenset({0}), frozenset()):
    game, config, embedding = lockkey_to_optional(chain, LockConfig(0, closed))
    winner = solve_explicit(game, config).winner
    print(f"compiled ({'closed' if closed else 'open'}): winner {winner}, "
          f"{game.n} vertices, {game.d} pawns")

# Multi-label edges can be pre-split so each edge carries one label.
fat = LockKeyGame(
    n=2,
    p1_vertices=frozenset({0}),
    edges=((0, 1), (1, 1)),
    targets=frozenset({1}),
    num_locks=2,
    locks=(frozenset(), frozenset()),
    keys=(frozenset({0, 1}), frozenset()),
    names=("a", "b"),
)
thin = split_labels(fat)
print("\nsplit edges:", [(thin.names[u], thin.names[v]) for u, v in thin.edges])

# Finally, padding with isolated vertices turns an optional-grabbing game
# into an equivalent always-grabbing one: a player obliged to grab can
# always take a pawn that owns nothing of consequence.
game, config, _ = lockkey_to_optional(chain, LockConfig(0, frozenset({0})))
padded, padded_config = to_always_grabbing(game, config)
print(f"\npadded: {game.n} -> {padded.n} vertices, "
      f"{game.d} -> {padded.d} pawns, "
      f"player 1 gains {len(padded_config.p1_pawns - config.p1_pawns)} pawns")
