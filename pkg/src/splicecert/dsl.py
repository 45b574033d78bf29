"""Line-oriented text format for splice diagrams.

One statement per line; ``#`` starts a comment.  Grammar::

    node NAME
    leaf NAME
    edge A B WA WB          # WA/WB: positive integer at a node endpoint,
                            # the literal '-' at a leaf endpoint
    arrow LEAF [mult=N] [colour=N]

Names are letters, digits and underscores.  Parsing reports located
diagnostics (:class:`ParseError` with line and column); an edge set that is
not a tree raises :class:`StructureError` naming the offending edge.
``serialize`` writes a canonical form (sorted statements) and
``parse(serialize(d))`` reproduces the diagram with names preserved.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .diagram import Arrowhead, SpliceDiagram, edge_label

__all__ = [
    "ParseError",
    "StructureError",
    "DiagramDocument",
    "parse",
    "serialize",
]


class ParseError(ValueError):
    """Malformed statement, with 1-based line and column."""

    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class StructureError(ValueError):
    """The edge set is not a tree."""

    def __init__(self, message: str, line: int = 0, edge: Optional[Tuple[str, str]] = None):
        super().__init__(message)
        self.line = line
        self.edge = edge


Location = Tuple[int, int]


@dataclass(frozen=True)
class DiagramDocument:
    """Parsed source with its diagram and per-statement source locations."""

    source: str
    diagram: SpliceDiagram
    vertex_locations: Dict[str, Location]
    edge_locations: Dict[Tuple[str, str], Location]


def _tokens_with_columns(line: str) -> List[Tuple[str, int]]:
    out = []
    col = 0
    i = 0
    while i < len(line):
        if line[i].isspace():
            i += 1
            continue
        start = i
        while i < len(line) and not line[i].isspace():
            i += 1
        out.append((line[start:i], start + 1))
    return out


def _parse_weight(token: str, lineno: int, column: int) -> Optional[int]:
    if token == "-":
        return None
    try:
        value = int(token)
    except ValueError:
        raise ParseError(f"weight must be a positive integer or '-', got {token!r}", lineno, column)
    if value < 1:
        raise ParseError(f"weight must be >= 1, got {value}", lineno, column)
    return value


def parse(text: str) -> DiagramDocument:
    """Parse DSL text into a DiagramDocument.

    Raises ParseError for malformed statements and StructureError when the
    edges do not form a tree.
    """
    kinds: Dict[str, str] = {}
    vertex_loc: Dict[str, Location] = {}
    edges: List[Tuple[str, str, Optional[int], Optional[int]]] = []
    edge_loc: Dict[Tuple[str, str], Location] = {}
    arrows: Dict[str, Arrowhead] = {}

    # Union-find for cycle detection, so the offending edge is reported with
    # its own source line.
    up: Dict[str, str] = {}

    def find(x: str) -> str:
        while up.get(x, x) != x:
            up[x] = up.get(up[x], up[x])
            x = up[x]
        return x

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        tokens = _tokens_with_columns(line)
        if not tokens:
            continue
        (word, col0), args = tokens[0], tokens[1:]

        if word in ("node", "leaf"):
            if len(args) != 1:
                raise ParseError(f"'{word}' takes exactly one name", lineno, col0)
            name, col = args[0]
            if name in kinds:
                raise ParseError(f"duplicate vertex name {name!r}", lineno, col)
            kinds[name] = word
            vertex_loc[name] = (lineno, col)
            up[name] = name

        elif word == "edge":
            if len(args) != 4:
                raise ParseError("'edge' takes: edge A B WA WB", lineno, col0)
            (a, ca), (b, cb), (wa_tok, cwa), (wb_tok, cwb) = args
            for name, col in ((a, ca), (b, cb)):
                if name not in kinds:
                    raise ParseError(f"unknown vertex {name!r}", lineno, col)
            if a == b:
                raise ParseError(f"self-loop at {a!r}", lineno, ca)
            if any({a, b} == {x, y} for x, y, _, _ in edges):
                raise ParseError(f"duplicate edge {edge_label(a, b)}", lineno, ca)
            wa = _parse_weight(wa_tok, lineno, cwa)
            wb = _parse_weight(wb_tok, lineno, cwb)
            for name, w, col in ((a, wa, cwa), (b, wb, cwb)):
                if kinds[name] == "node" and w is None:
                    raise ParseError(f"node {name!r} needs a weight, not '-'", lineno, col)
                if kinds[name] == "leaf" and w is not None:
                    raise ParseError(f"leaf {name!r} must carry '-', not a weight", lineno, col)
            ra, rb = find(a), find(b)
            if ra == rb:
                raise StructureError(
                    f"line {lineno}: edge {edge_label(a, b)} closes a cycle",
                    line=lineno,
                    edge=(a, b),
                )
            up[ra] = rb
            edges.append((a, b, wa, wb))
            key = (a, b) if a < b else (b, a)
            edge_loc[key] = (lineno, ca)

        elif word == "arrow":
            if not args:
                raise ParseError("'arrow' takes a leaf name", lineno, col0)
            name, col = args[0]
            if name not in kinds:
                raise ParseError(f"unknown vertex {name!r}", lineno, col)
            if kinds[name] != "leaf":
                raise ParseError(f"arrow must sit on a leaf, {name!r} is a node", lineno, col)
            if name in arrows:
                raise ParseError(f"duplicate arrow on {name!r}", lineno, col)
            mult, colour = 1, 0
            for token, tcol in args[1:]:
                if "=" not in token:
                    raise ParseError(f"expected mult=N or colour=N, got {token!r}", lineno, tcol)
                key, _, value = token.partition("=")
                if key not in ("mult", "colour"):
                    raise ParseError(f"unknown arrow option {key!r}", lineno, tcol)
                try:
                    number = int(value)
                except ValueError:
                    raise ParseError(f"{key} must be an integer, got {value!r}", lineno, tcol)
                if key == "mult":
                    if number < 0:
                        raise ParseError("mult must be >= 0", lineno, tcol)
                    mult = number
                else:
                    colour = number
            arrows[name] = Arrowhead(mult, colour)

        else:
            raise ParseError(f"unknown statement {word!r}", lineno, col0)

    if not kinds:
        raise ParseError("empty input: no vertices declared", 1)

    roots = {find(v) for v in kinds}
    if len(roots) > 1:
        raise StructureError(
            f"edges do not connect the diagram ({len(roots)} components)"
        )

    try:
        diagram = SpliceDiagram(
            [v for v, k in kinds.items() if k == "node"],
            [v for v, k in kinds.items() if k == "leaf"],
            edges,
            arrows,
        )
    except ValueError as exc:
        raise ParseError(str(exc), 1)
    return DiagramDocument(text, diagram, vertex_loc, edge_loc)


def serialize(d: SpliceDiagram) -> str:
    """Canonical DSL text: nodes, leaves, edges, arrows, each sorted."""
    lines: List[str] = []
    for v in d.nodes:
        lines.append(f"node {v}")
    for v in d.leaves:
        lines.append(f"leaf {v}")
    for a, b in d.edges:
        wa = d.near_weight(a, b)
        wb = d.near_weight(b, a)
        lines.append(
            f"edge {a} {b} {'-' if wa is None else wa} {'-' if wb is None else wb}"
        )
    for leaf in d.arrowheads():
        mark = d.arrowhead(leaf)
        lines.append(f"arrow {leaf} mult={mark.multiplicity} colour={mark.colour}")
    return "\n".join(lines) + "\n"
