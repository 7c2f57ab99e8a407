"""Line-oriented text format for pawn games.

::

    pawngame <name>
    mechanism optional-grabbing | always-grabbing | grab-or-give | k-grabbing <k>
    pawns <d>
    vertex <vname> owners=<p0,p1,...> [target]
    edge <vname> <vname>
    init vertex=<vname> p1pawns=<comma-list-or-empty> [grabs-left=<r>]

``#`` starts a comment, tokens are whitespace-separated, pawn ids are
0-based integers.  ``serialize_game`` emits a canonical form (vertices and
edges sorted by name) that ``parse_game`` inverts.
"""

from __future__ import annotations

from .errors import GameFormatError
from .model import (
    Configuration,
    GrabRule,
    Mechanism,
    PawnGame,
    validate_configuration,
)

_MECH_WORDS = {
    "optional-grabbing": GrabRule.OPTIONAL,
    "always-grabbing": GrabRule.ALWAYS,
    "grab-or-give": GrabRule.GRAB_OR_GIVE,
    "k-grabbing": GrabRule.K_GRABBING,
}


def _int(token: str, what: str, line: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise GameFormatError(f"{what}: expected an integer, got {token!r}", line)


def _int_list(value: str, what: str, line: int) -> list[int]:
    if value == "":
        return []
    return [_int(part, what, line) for part in value.split(",")]


def _keyed(token: str, key: str, line: int) -> str:
    prefix = key + "="
    if not token.startswith(prefix):
        raise GameFormatError(f"expected {prefix}..., got {token!r}", line)
    return token[len(prefix):]


def parse_game(text: str | bytes) -> tuple[PawnGame, Configuration]:
    """Parse one pawn game plus its declared initial configuration."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")

    name = None
    mechanism: Mechanism | None = None
    d: int | None = None
    vertex_names: list[str] = []
    vertex_ids: dict[str, int] = {}
    owners: list[frozenset[int]] = []
    targets: set[int] = set()
    edges: set[tuple[int, int]] = set()
    init: tuple[int, frozenset[int], int | None] | None = None

    def vertex_id(vname: str, line: int) -> int:
        if vname not in vertex_ids:
            raise GameFormatError(f"unknown vertex {vname!r}", line)
        return vertex_ids[vname]

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        head, rest = tokens[0], tokens[1:]

        if head == "pawngame":
            if name is not None:
                raise GameFormatError("duplicate pawngame line", lineno)
            if len(rest) != 1:
                raise GameFormatError("pawngame takes exactly one name", lineno)
            name = rest[0]
        elif head == "mechanism":
            if not rest or rest[0] not in _MECH_WORDS:
                raise GameFormatError(
                    f"unknown mechanism {' '.join(rest)!r}", lineno
                )
            rule = _MECH_WORDS[rest[0]]
            if rule is GrabRule.K_GRABBING:
                if len(rest) != 2:
                    raise GameFormatError("k-grabbing takes a grab budget", lineno)
                mechanism = Mechanism(rule, _int(rest[1], "grab budget", lineno))
            else:
                if len(rest) != 1:
                    raise GameFormatError("mechanism takes no extra tokens", lineno)
                mechanism = Mechanism(rule)
        elif head == "pawns":
            if len(rest) != 1:
                raise GameFormatError("pawns takes one count", lineno)
            d = _int(rest[0], "pawn count", lineno)
        elif head == "vertex":
            if len(rest) not in (2, 3):
                raise GameFormatError("vertex <name> owners=... [target]", lineno)
            vname = rest[0]
            if vname in vertex_ids:
                raise GameFormatError(f"duplicate vertex {vname!r}", lineno)
            pawns = frozenset(_int_list(_keyed(rest[1], "owners", lineno),
                                        "owner pawn", lineno))
            is_target = False
            if len(rest) == 3:
                if rest[2] != "target":
                    raise GameFormatError(f"unexpected token {rest[2]!r}", lineno)
                is_target = True
            vertex_ids[vname] = len(vertex_names)
            vertex_names.append(vname)
            owners.append(pawns)
            if is_target:
                targets.add(vertex_ids[vname])
        elif head == "edge":
            if len(rest) != 2:
                raise GameFormatError("edge takes two vertex names", lineno)
            edges.add((vertex_id(rest[0], lineno), vertex_id(rest[1], lineno)))
        elif head == "init":
            if init is not None:
                raise GameFormatError("duplicate init line", lineno)
            if len(rest) not in (2, 3):
                raise GameFormatError(
                    "init vertex=<v> p1pawns=<list> [grabs-left=<r>]", lineno
                )
            v = vertex_id(_keyed(rest[0], "vertex", lineno), lineno)
            pawns = frozenset(_int_list(_keyed(rest[1], "p1pawns", lineno),
                                        "pawn id", lineno))
            grabs = None
            if len(rest) == 3:
                grabs = _int(_keyed(rest[2], "grabs-left", lineno),
                             "grabs-left", lineno)
            init = (v, pawns, grabs)
        else:
            raise GameFormatError(f"unknown directive {head!r}", lineno)

    if name is None:
        raise GameFormatError("missing pawngame line")
    if mechanism is None:
        raise GameFormatError("missing mechanism line")
    if d is None:
        raise GameFormatError("missing pawns line")
    if not vertex_names:
        raise GameFormatError("no vertices declared")
    if init is None:
        raise GameFormatError("missing init line")

    game = PawnGame(
        n=len(vertex_names),
        edges=frozenset(edges),
        targets=frozenset(targets),
        d=d,
        owners=tuple(owners),
        mechanism=mechanism,
        names=tuple(vertex_names),
        name=name,
    )
    v, pawns, grabs = init
    if grabs is None and mechanism.rule is GrabRule.K_GRABBING:
        grabs = mechanism.k
    config = Configuration(v, pawns, grabs)
    validate_configuration(game, config)
    return game, config


def serialize_game(g: PawnGame, c: Configuration) -> str:
    """Canonical text for ``g`` and ``c``: stable across declaration order."""
    validate_configuration(g, c)
    lines = [f"pawngame {g.name}"]
    lines.append(f"mechanism {g.mechanism.describe()}")
    lines.append(f"pawns {g.d}")
    order = sorted(range(g.n), key=lambda v: g.names[v])
    for v in order:
        pawns = ",".join(str(j) for j in sorted(g.owners[v]))
        target = " target" if v in g.targets else ""
        lines.append(f"vertex {g.names[v]} owners={pawns}{target}")
    for u, v in sorted(g.edges, key=lambda e: (g.names[e[0]], g.names[e[1]])):
        lines.append(f"edge {g.names[u]} {g.names[v]}")
    pawns = ",".join(str(j) for j in sorted(c.p1_pawns))
    init = f"init vertex={g.names[c.vertex]} p1pawns={pawns}"
    if c.grabs_left is not None:
        init += f" grabs-left={c.grabs_left}"
    lines.append(init)
    return "\n".join(lines) + "\n"
