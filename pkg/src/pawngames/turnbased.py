"""Turn-based reachability games: attractor levels, regions, strategies.

Vertices are split between the players; Player 1 tries to reach the target
set, Player 2 tries to avoid it forever.  Dead ends are permitted and follow
the literal attractor rule: a Player-2 dead end outside the targets is
Player-1-winning (the universal condition holds vacuously), a Player-1 dead
end is Player-2-winning.  Layers that need "stuck means the play ends"
semantics insert self-loops before calling in here.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ValidationError


@dataclass(frozen=True)
class TurnBasedGame:
    n: int
    p1_vertices: frozenset[int]
    succ: tuple[tuple[int, ...], ...]
    targets: frozenset[int]

    def __post_init__(self):
        if len(self.succ) != self.n:
            raise ValidationError("successor table must cover every vertex")
        for v, out in enumerate(self.succ):
            for u in out:
                if not 0 <= u < self.n:
                    raise ValidationError(f"edge ({v}, {u}) leaves the vertex range")
        for v in self.p1_vertices | self.targets:
            if not 0 <= v < self.n:
                raise ValidationError(f"vertex {v} out of range")


@dataclass(frozen=True)
class SolveResult:
    """Winning region of Player 1 with witnesses for both players.

    ``levels`` is the monotone chain of attractor stages starting at the
    target set; ``level`` maps each region vertex to the stage it entered.
    ``p1_strategy`` maps Player-1 region vertices to a successor one stage
    down; ``p2_strategy`` keeps Player-2 vertices outside the region.
    """

    region: frozenset[int]
    levels: tuple[frozenset[int], ...]
    level: dict[int, int]
    p1_strategy: dict[int, int]
    p2_strategy: dict[int, int]


def attractor_levels(tb: TurnBasedGame) -> list[frozenset[int]]:
    """The stages W_0 = T, W_{i+1} = W_i + forced vertices, to fixed point.

    Runs in time linear in the number of vertices plus edges.
    """
    return _attract(tb)[0]


def _attract(tb: TurnBasedGame) -> tuple[list[frozenset[int]], dict[int, int]]:
    pred: list[list[int]] = [[] for _ in range(tb.n)]
    out_count = [0] * tb.n
    for v, out in enumerate(tb.succ):
        out_count[v] = len(out)
        for u in out:
            pred[u].append(v)

    level = {v: 0 for v in tb.targets}
    # Player-2 dead ends outside T are forced into the region at stage 1
    frontier = sorted(tb.targets)
    remaining = out_count[:]
    stages = [frozenset(tb.targets)]
    in_region = set(tb.targets)
    pending_deadends = [
        v
        for v in range(tb.n)
        if v not in tb.p1_vertices and out_count[v] == 0 and v not in in_region
    ]

    stage = 0
    while frontier or pending_deadends:
        stage += 1
        nxt: list[int] = []
        if pending_deadends:
            nxt.extend(pending_deadends)
            pending_deadends = []
        for v in frontier:
            for u in pred[v]:
                if u in in_region:
                    continue
                if u in tb.p1_vertices:
                    nxt.append(u)
                    in_region.add(u)
                else:
                    remaining[u] -= 1
                    if remaining[u] == 0:
                        nxt.append(u)
                        in_region.add(u)
        nxt = [v for v in nxt if level.setdefault(v, stage) == stage]
        in_region.update(nxt)
        if not nxt:
            break
        stages.append(frozenset(stages[-1] | set(nxt)))
        frontier = nxt
    return stages, level


def solve_turnbased(tb: TurnBasedGame) -> SolveResult:
    """Regions and memoryless witness strategies for both players.

    Player 1's strategy steps to the lowest-numbered successor in the lowest
    attractor stage, so witnesses are deterministic across runs.
    """
    stages, level = _attract(tb)
    region = stages[-1]

    p1_strategy: dict[int, int] = {}
    for v in tb.p1_vertices & region:
        options = [u for u in tb.succ[v] if u in region]
        if options:
            p1_strategy[v] = min(options, key=lambda u: (level[u], u))

    p2_strategy: dict[int, int] = {}
    for v in range(tb.n):
        if v in tb.p1_vertices or v in region:
            continue
        options = [u for u in tb.succ[v] if u not in region]
        if options:
            p2_strategy[v] = min(options)

    return SolveResult(
        region=region,
        levels=tuple(stages),
        level=level,
        p1_strategy=p1_strategy,
        p2_strategy=p2_strategy,
    )


def parse_tbgame(text: str | bytes) -> TurnBasedGame:
    """Parse the ``tb``/``tbedge`` text form emitted by the reductions."""
    from .errors import GameFormatError

    if isinstance(text, bytes):
        text = text.decode("utf-8")
    p1: set[int] = set()
    targets: set[int] = set()
    declared: set[int] = set()
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if tokens[0] == "tb":
            if len(tokens) not in (3, 4):
                raise GameFormatError("tb <id> player=1|2 [target]", lineno)
            v = int(tokens[1])
            declared.add(v)
            if tokens[2] == "player=1":
                p1.add(v)
            elif tokens[2] != "player=2":
                raise GameFormatError(f"bad player token {tokens[2]!r}", lineno)
            if len(tokens) == 4:
                if tokens[3] != "target":
                    raise GameFormatError(f"unexpected token {tokens[3]!r}", lineno)
                targets.add(v)
        elif tokens[0] == "tbedge":
            if len(tokens) != 3:
                raise GameFormatError("tbedge <id> <id>", lineno)
            edges.append((int(tokens[1]), int(tokens[2])))
        else:
            raise GameFormatError(f"unknown directive {tokens[0]!r}", lineno)
    n = max(declared) + 1 if declared else 0
    if declared != set(range(n)):
        raise GameFormatError("tb vertex ids must be dense 0..n-1")
    succ: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        succ[u].append(v)
    return TurnBasedGame(
        n=n,
        p1_vertices=frozenset(p1),
        succ=tuple(tuple(sorted(set(s))) for s in succ),
        targets=frozenset(targets),
    )


def serialize_tbgame(tb: TurnBasedGame) -> str:
    """Canonical ``tb``/``tbedge`` text: vertices and edges in sorted order."""
    lines = []
    for v in range(tb.n):
        player = 1 if v in tb.p1_vertices else 2
        target = " target" if v in tb.targets else ""
        lines.append(f"tb {v} player={player}{target}")
    for u in range(tb.n):
        for v in tb.succ[u]:
            lines.append(f"tbedge {u} {v}")
    return "\n".join(lines) + "\n"
