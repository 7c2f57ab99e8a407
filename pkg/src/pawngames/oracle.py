"""Reference solver: expand a pawn game into its explicit turn-based
configuration graph and run attractor computation on it.

The expansion has two kinds of vertices.  A *configuration* vertex carries
the token position and Player 1's pawn set (plus the remaining grab count
under k-grabbing); an *intermediate* vertex represents the pending pawn
exchange right after a token move.  Targets are exactly the configuration
vertices whose token position is a target of the pawn game.

States are materialized lazily by forward reachability from the requested
roots, guarded by an explicit node budget.  Exceeding the budget is an
error, never a silent approximation.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BudgetExceededError, ValidationError
from .model import Configuration, GrabRule, PawnGame, validate_configuration
from .turnbased import TurnBasedGame

DEFAULT_BUDGET = 50_000_000

_NO_R = -1


def _owner_masks(g: PawnGame) -> list[int]:
    masks = []
    for v in range(g.n):
        m = 0
        for j in g.owners[v]:
            m |= 1 << j
        masks.append(m)
    return masks


def _estimate_states(g: PawnGame, c: Configuration | None) -> int:
    from math import comb

    maxdeg = max(len(s) for s in g.succ)
    if g.mechanism.rule is GrabRule.K_GRABBING:
        if c is None:
            configs = g.n * (2 ** g.d) * (g.mechanism.k + 1)
        else:
            # pawn sets only grow from the initial one, one pawn per grab
            free = g.d - len(c.p1_pawns)
            r = c.grabs_left if c.grabs_left is not None else g.mechanism.k
            configs = g.n * (r + 1) * sum(
                comb(free, j) for j in range(min(r, free) + 1)
            )
    else:
        configs = g.n * (2 ** g.d)
    return configs * (1 + maxdeg)


class _StateGraph:
    """Interned expansion states with side, target and successor tables."""

    def __init__(self):
        self.states: list[tuple] = []
        self.side: list[int] = []
        self.target: list[bool] = []
        self.succ: list[list[int]] = []
        self.live_mask: list[int] | None = None

    def add(self, state: tuple, side: int, target: bool) -> int:
        sid = len(self.states)
        self.states.append(state)
        self.side.append(side)
        self.target.append(target)
        self.succ.append([])
        return sid

    def __len__(self) -> int:
        return len(self.states)


def _graph_reach_masks(g: PawnGame, hopeful: set[int]) -> list[int]:
    """live_mask[v]: pawns whose control can still decide a future move.

    A pawn's side is read only at configurations sitting on one of its
    vertices; configurations on targets are terminal and configurations on
    hopeless vertices are collapsed.  So only pawns owning a non-target
    hopeful vertex graph-reachable from the token can matter, and bits
    outside that set can be projected away without changing any winner
    (exact for mechanisms with a no-exchange option; see ``_expand``).
    """
    omask = _owner_masks(g)
    interior = [w in hopeful and w not in g.targets for w in range(g.n)]
    # closure over interior vertices only: plays end on targets and hopeless
    # configurations collapse, so neither is passed through
    reach = [1 << v for v in range(g.n)]
    changed = True
    while changed:
        changed = False
        for v in range(g.n):
            if not interior[v]:
                continue
            acc = reach[v]
            for u in g.succ[v]:
                acc |= reach[u]
            if acc != reach[v]:
                reach[v] = acc
                changed = True
    live = []
    for v in range(g.n):
        m = 0
        bits = reach[v]
        while bits:
            low = bits & -bits
            w = low.bit_length() - 1
            if interior[w]:
                m |= omask[w]
            bits ^= low
        live.append(m)
    return live


def _expand(
    g: PawnGame,
    roots: list[tuple[int, int, int]],
    budget: int,
    prune_hopeless: bool,
    terminal_targets: bool,
) -> tuple[_StateGraph, list[int]]:
    """Build the reachable slice of the configuration graph from ``roots``.

    Roots are (vertex, pawn mask, grabs-left) triples.  With
    ``prune_hopeless`` every configuration whose vertex has no graph path to
    a target collapses into one losing sink, target configurations become
    terminal when ``terminal_targets`` is set, and under mechanisms with a
    no-exchange option (optional grabbing, k-grabbing) pawn bits that can
    no longer decide any future move are projected away: exchanging such a
    pawn is equivalent to the always-available no-exchange move, so the
    quotient preserves every winner.  None of this applies to the faithful
    expansion (both flags off).
    """
    rule = g.mechanism.rule
    omask = _owner_masks(g)
    full = (1 << g.d) - 1
    pawn_bits = [1 << j for j in range(g.d)]
    n = g.n
    succ_of = g.succ
    targets = g.targets
    kgrab = rule is GrabRule.K_GRABBING
    optional = rule is GrabRule.OPTIONAL
    gog = rule is GrabRule.GRAB_OR_GIVE

    hopeful = set(range(n))
    if prune_hopeless:
        hopeful = set(targets)
        pred: list[list[int]] = [[] for _ in range(n)]
        for u, v in g.edges:
            pred[v].append(u)
        stack = list(targets)
        while stack:
            v = stack.pop()
            for u in pred[v]:
                if u not in hopeful:
                    hopeful.add(u)
                    stack.append(u)

    project = prune_hopeless and terminal_targets and (optional or kgrab)
    if project:
        live = _graph_reach_masks(g, hopeful)
    else:
        live = [full] * n

    sg = _StateGraph()
    sg.live_mask = live
    states = sg.states
    side = sg.side
    succ = sg.succ
    cindex: dict[int, int] = {}
    iindex: dict[tuple[int, int], int] = {}
    loss_id = None
    work: list[int] = []
    span = g.mechanism.k + 2 if kgrab else 1

    def config_id(v: int, pmask: int, r: int) -> int:
        nonlocal loss_id
        if v not in hopeful:
            if loss_id is None:
                loss_id = sg.add(("loss",), 1, False)
                succ[loss_id].append(loss_id)
            return loss_id
        pmask &= live[v]
        key = (pmask * n + v) * span + r + 1
        sid = cindex.get(key)
        if sid is not None:
            return sid
        tgt = v in targets
        sid = sg.add(("c", v, pmask, r), 1 if omask[v] & pmask else 2, tgt)
        cindex[key] = sid
        if not (tgt and terminal_targets):
            work.append(sid)
        return sid

    root_ids = [config_id(v, p, r) for v, p, r in roots]

    while work:
        sid = work.pop()
        if len(states) > budget:
            raise BudgetExceededError(len(states), budget)
        state = states[sid]
        if state[0] == "c":
            _, v, pmask, r = state
            iside = 1 if kgrab else 3 - side[sid]
            out = succ[sid]
            for u in succ_of[v]:
                key = (sid, u)
                iid = iindex.get(key)
                if iid is None:
                    iid = sg.add(("i", u, sid), iside, False)
                    iindex[key] = iid
                    work.append(iid)
                out.append(iid)
        else:
            _, u, parent = state
            _, v, pmask, r = states[parent]
            out = succ[sid]
            if kgrab:
                out.append(config_id(u, pmask, r))
                if r > 0:
                    rest = (live[u] if project else full) & ~pmask
                    while rest:
                        bit = rest & -rest
                        out.append(config_id(u, pmask | bit, r - 1))
                        rest ^= bit
            elif gog:
                for bit in pawn_bits:
                    if pmask & bit:
                        out.append(config_id(u, pmask & ~bit, r))
                    else:
                        out.append(config_id(u, pmask | bit, r))
            else:
                if optional:
                    out.append(config_id(u, pmask, r))
                if side[parent] == 1:
                    grabbable = pmask
                else:
                    grabbable = full & ~pmask
                if project:
                    grabbable &= live[u]
                taking = side[parent] == 1
                while grabbable:
                    bit = grabbable & -grabbable
                    out.append(config_id(
                        u, pmask & ~bit if taking else pmask | bit, r
                    ))
                    grabbable ^= bit
                if not out:
                    raise ValidationError(
                        "always-grabbing intermediate with no exchange option"
                    )
    return sg, root_ids


def _attract_arrays(sg: _StateGraph) -> tuple[list[bool], list[int]]:
    """Attractor over the state graph; returns membership and entry stage."""
    n = len(sg)
    pred: list[list[int]] = [[] for _ in range(n)]
    remaining = [0] * n
    for v in range(n):
        remaining[v] = len(sg.succ[v])
        for u in sg.succ[v]:
            pred[u].append(v)

    in_region = [False] * n
    level = [-1] * n
    frontier = []
    for v in range(n):
        if sg.target[v]:
            in_region[v] = True
            level[v] = 0
            frontier.append(v)
    deadends = [
        v
        for v in range(n)
        if not in_region[v] and sg.side[v] == 2 and remaining[v] == 0
    ]

    stage = 0
    while frontier or deadends:
        stage += 1
        nxt = []
        for v in deadends:
            in_region[v] = True
            level[v] = stage
            nxt.append(v)
        deadends = []
        for v in frontier:
            for u in pred[v]:
                if in_region[u]:
                    continue
                if sg.side[u] == 1:
                    in_region[u] = True
                    level[u] = stage
                    nxt.append(u)
                else:
                    remaining[u] -= 1
                    if remaining[u] == 0:
                        in_region[u] = True
                        level[u] = stage
                        nxt.append(u)
        frontier = nxt
    return in_region, level


@dataclass
class ExplicitResult:
    """Winner plus enough of the solved expansion to replay a witness."""

    winner: int
    num_states: int
    _sg: _StateGraph
    _init: int
    _in_region: list[bool]
    _level: list[int]


def solve_explicit(
    g: PawnGame, c: Configuration, budget: int = DEFAULT_BUDGET
) -> ExplicitResult:
    """Decide the winner from ``c`` via the explicit configuration graph."""
    validate_configuration(g, c)
    estimate = _estimate_states(g, c)
    if estimate > budget:
        raise BudgetExceededError(estimate, budget)
    pmask = _mask(c.p1_pawns)
    r = c.grabs_left if c.grabs_left is not None else _NO_R
    sg, roots = _expand(g, [(c.vertex, pmask, r)], budget,
                        prune_hopeless=True, terminal_targets=True)
    in_region, level = _attract_arrays(sg)
    winner = 1 if in_region[roots[0]] else 2
    return ExplicitResult(winner, len(sg), sg, roots[0], in_region, level)


class AllConfigurations:
    """Winner lookup for every configuration of a small pawn game."""

    def __init__(self, g: PawnGame, budget: int = DEFAULT_BUDGET):
        self.game = g
        rule = g.mechanism.rule
        estimate = _estimate_states(g, None)
        if estimate > budget:
            raise BudgetExceededError(estimate, budget)
        rs = range(g.mechanism.k + 1) if rule is GrabRule.K_GRABBING else [_NO_R]
        roots = [
            (v, p, r)
            for v in range(g.n)
            for p in range(1 << g.d)
            for r in rs
        ]
        sg, ids = _expand(g, roots, budget,
                          prune_hopeless=True, terminal_targets=True)
        in_region, _ = _attract_arrays(sg)
        self._win: dict[tuple[int, int, int], bool] = {}
        for (v, p, r), sid in zip(roots, ids):
            self._win[(v, p, r)] = in_region[sid]

    def winner(self, v: int, p1_pawns: frozenset[int], grabs_left: int | None = None) -> int:
        r = grabs_left if grabs_left is not None else _NO_R
        return 1 if self._win[(v, _mask(p1_pawns), r)] else 2


def _mask(pawns: frozenset[int]) -> int:
    m = 0
    for j in pawns:
        m |= 1 << j
    return m


def _unmask(m: int) -> frozenset[int]:
    out = set()
    j = 0
    while m:
        if m & 1:
            out.add(j)
        m >>= 1
        j += 1
    return frozenset(out)


def witness_play(g: PawnGame, result: ExplicitResult, max_rounds: int | None = None):
    """Replay the winner's strategy against a worst-case (delaying) adversary.

    Yields ``("move", v)``, ``("grab", j)``, ``("give", j)`` and
    ``("nograb",)`` steps; stops on reaching a target (Player 1 wins), on
    the first repeated state (``("cycle",)``: Player 2 has locked the play
    into a safe loop) or on leaving the part of the graph from which the
    targets are reachable at all (``("trapped",)``).
    """
    sg, in_region, level = result._sg, result._in_region, result._level
    winner = result.winner

    def pick(sid: int) -> int:
        options = sg.succ[sid]
        deciding = sg.side[sid]
        if winner == 1:
            if deciding == 1:
                best = [u for u in options if in_region[u]]
                return min(best, key=lambda u: (level[u], u))
            return max(options, key=lambda u: (level[u], -u))
        if deciding == 2:
            best = [u for u in options if not in_region[u]]
            return min(best)
        return min(options)

    # stored pawn masks are projected, but they agree with the real sets on
    # every live bit and only live bits are ever exchanged, so comparing
    # against the parent's mask re-projected at the new vertex recovers the
    # exchange exactly
    live = sg.live_mask

    steps = []
    seen = {result._init}
    sid = result._init
    rounds = 0
    while not sg.target[sid] and sg.states[sid][0] != "loss":
        if max_rounds is not None and rounds >= max_rounds:
            break
        iid = pick(sid)
        _, u, _ = sg.states[iid]
        steps.append(("move", u))
        nid = pick(iid)
        _, _, pmask, _ = sg.states[sid]
        npmask = pmask
        if sg.states[nid][0] == "c":
            kept = pmask & live[u]
            stored = sg.states[nid][2]
            if stored != kept:
                bit = stored ^ kept
                npmask = pmask | bit if stored & bit else pmask & ~bit
        elif g.mechanism.rule in (GrabRule.ALWAYS, GrabRule.GRAB_OR_GIVE):
            # the collapsed trap state forgot the mandatory exchange;
            # restore a concrete legal one (take the mover's lowest pawn)
            full = (1 << g.d) - 1
            if sg.side[sid] == 1:
                bit = pmask & -pmask
                npmask = pmask & ~bit
            else:
                rest = full & ~pmask
                bit = rest & -rest
                npmask = pmask | bit
        steps.append(_exchange_step(g, sg.side[sid], pmask, npmask))
        sid = nid
        rounds += 1
        if sg.states[sid][0] == "loss":
            steps.append(("trapped",))
            break
        if sid in seen:
            steps.append(("cycle",))
            break
        seen.add(sid)
    return steps


def _exchange_step(g: PawnGame, moved_by: int, pmask: int, npmask: int):
    if npmask == pmask:
        return ("nograb",)
    diff = pmask ^ npmask
    j = diff.bit_length() - 1
    holder = 1 if (g.mechanism.rule is GrabRule.K_GRABBING or moved_by == 2) else 2
    gained_p1 = bool(npmask & diff)
    if (gained_p1 and holder == 1) or (not gained_p1 and holder == 2):
        return ("grab", j)
    return ("give", j)


@dataclass(frozen=True)
class ExpandedGame:
    """Faithful expansion with a bijection between descriptors and ids."""

    tb: TurnBasedGame
    descriptors: tuple[str, ...]
    index: dict[str, int]


def describe_state(g: PawnGame, state: tuple, states: list[tuple]) -> str:
    if state[0] == "c":
        _, v, pmask, r = state
        pawns = ",".join(str(j) for j in sorted(_unmask(pmask)))
        core = f"c v={g.names[v]} p1={{{pawns}}}"
        return core + (f" r={r}" if r != _NO_R else "")
    _, u, parent = state
    return f"i to={g.names[u]} after[{describe_state(g, states[parent], states)}]"


def expand_game(
    g: PawnGame, c: Configuration, budget: int = DEFAULT_BUDGET
) -> ExpandedGame:
    """The unpruned reachable expansion from ``c`` with canonical vertex ids."""
    validate_configuration(g, c)
    estimate = _estimate_states(g, c)
    if estimate > budget:
        raise BudgetExceededError(estimate, budget)
    r = c.grabs_left if c.grabs_left is not None else _NO_R
    sg, _ = _expand(g, [(c.vertex, _mask(c.p1_pawns), r)], budget,
                    prune_hopeless=False, terminal_targets=False)
    descs = [describe_state(g, s, sg.states) for s in sg.states]
    order = sorted(range(len(sg)), key=lambda i: descs[i])
    canon = {old: new for new, old in enumerate(order)}
    succ: list[tuple[int, ...]] = [()] * len(sg)
    for old in range(len(sg)):
        succ[canon[old]] = tuple(sorted(canon[x] for x in sg.succ[old]))
    tb = TurnBasedGame(
        n=len(sg),
        p1_vertices=frozenset(canon[i] for i in range(len(sg)) if sg.side[i] == 1),
        succ=tuple(succ),
        targets=frozenset(canon[i] for i in range(len(sg)) if sg.target[i]),
    )
    descriptors = tuple(descs[i] for i in order)
    return ExpandedGame(tb=tb, descriptors=descriptors,
                        index={d: i for i, d in enumerate(descriptors)})
