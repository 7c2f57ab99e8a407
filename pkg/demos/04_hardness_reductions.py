"""Classic decision problems embedded into grabbing games.

Three generators turn instances of SET-COVER, quantified Boolean formulas
and alternating-machine acceptance into games, and each ships with an
exhaustive evaluator of the source problem so the embedding can be checked
end to end.
"""

from pawngames import solve_kgrab_dfs, solve_lockkey
from pawngames.generators import (
    AtmSpec,
    atm_accepts_bruteforce,
    gen_atm_lockkey,
    gen_setcover,
    gen_tqbf,
    parse_qbf,
    qbf_eval,
    set_cover_exists,
)

# SET-COVER: crossing the element chain commits, via grabs, to one
# covering set per element; k grabs buy exactly a size-k cover.
universe = 3
sets = [frozenset({1}), frozenset({1, 2}), frozenset({2, 3})]
for k in (2, 1):
    game, config = gen_setcover(universe, sets, k)
    winner = solve_kgrab_dfs(game, config).winner
    print(f"cover of size <= {k} exists: {set_cover_exists(universe, sets, k)}"
          f" / game winner with {k} grabs: {winner}")

# TQBF: grabbing a literal pawn assigns the variable; clause vertices are
# owned by every satisfying literal's pawn, so they can be crossed exactly
# when the assignment satisfies them.
for formula in ("Ex1.Ax2.(x1|~x2)&(x2)", "Ax1.Ex2.(x1|x2)&(~x1|~x2)"):
    qbf = parse_qbf(formula)
    game, config = gen_tqbf(qbf)
    winner = solve_kgrab_dfs(game, config).winner
    print(f"{formula}: true={qbf_eval(qbf)} / game winner: {winner}")

# Alternating machines: tape contents live in locks (cell i holds letter a
# iff lock (i, a) is open); transitions turn the two keys of the rewritten
# cell, and the move into the next control state must pass the lock of the
# claimed cell contents.
machine = AtmSpec(
    states=("q0", "q1", "qA", "qR"),
    owner={"q0": 1, "q1": 2, "qA": 1, "qR": 2},
    alphabet=("a", "b"),
    accept="qA",
    reject="qR",
    cells=2,
    trans={
        ("q0", "a"): (("q1", "b", "R"),),
        ("q1", "a"): (("qA", "a", "L"), ("qR", "b", "L")),
        ("q1", "b"): (("qA", "b", "L"),),
    },
)
for word in ("aa", "ab"):
    lk, lc = gen_atm_lockkey(machine, word)
    accepted = atm_accepts_bruteforce(machine, word)
    winner = solve_lockkey(lk, lc)
    print(f"machine on {word!r}: accepts={accepted} / game winner: {winner} "
          f"({lk.n} vertices, {lk.num_locks} locks)")
