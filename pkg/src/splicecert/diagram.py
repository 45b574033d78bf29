"""Splice diagrams: weighted trees encoding homology-sphere singularity links.

A splice diagram is a finite tree whose vertices are *nodes* (Seifert pieces
of a graph manifold) or *leaves* (exceptional fibres / link components).
Every edge carries an exact positive integer weight at each node endpoint;
leaf endpoints carry no weight.  Leaves may be decorated with arrowheads to
mark link components, each with a multiplicity and a colour.

Validity for a homology-sphere singularity link means: the edge set is a
tree, leaves have valence 1 and nodes valence >= 3, the near-weights at each
node are pairwise coprime, and every internal (node-node) edge has strictly
positive edge determinant.  ``validate`` reports violations as data rather
than raising, so invalid diagrams can be inspected and explained.

All arithmetic is exact: weights are unbounded Python integers (products
along long paths overflow fixed-width types quickly).  Diagrams are
immutable after construction and may be shared freely across threads.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping, Optional, Sequence, Tuple, Union

__all__ = [
    "Arrowhead",
    "SpliceDiagram",
    "Violation",
    "ValidationReport",
    "MinimalityReport",
    "OneNode",
    "MultiNode",
    "Shape",
    "Arm",
    "CablingSpec",
    "UnknownEdge",
    "EdgeNotInternal",
    "InvalidDiagram",
    "validate",
    "edge_determinant",
    "classify",
    "end_nodes",
    "subdivide_edge",
    "exceptional_type",
    "is_minimal",
    "edge_label",
]

_NAME_RE = re.compile(r"^[A-Za-z0-9_]+$")


class UnknownEdge(LookupError):
    """An operation named an edge that is not present in the diagram."""


class EdgeNotInternal(ValueError):
    """An edge determinant was requested for an edge with a leaf endpoint."""


class InvalidDiagram(ValueError):
    """An operation that requires a valid diagram received violations."""

    def __init__(self, message: str, report: "ValidationReport" = None):
        super().__init__(message)
        self.report = report


@dataclass(frozen=True)
class Arrowhead:
    """Marks a leaf as a link component with a multiplicity and a colour."""

    multiplicity: int = 1
    colour: int = 0

    def __post_init__(self):
        if not isinstance(self.multiplicity, int) or self.multiplicity < 0:
            raise ValueError("arrowhead multiplicity must be a nonnegative integer")
        if not isinstance(self.colour, int):
            raise ValueError("arrowhead colour must be an integer")


def _check_name(name) -> str:
    if not isinstance(name, str) or not _NAME_RE.match(name):
        raise ValueError(
            f"vertex name {name!r} must be a nonempty string of letters, digits or '_'"
        )
    return name


def edge_label(a: str, b: str) -> str:
    """Canonical human-readable label for the edge between a and b."""
    return f"{a}-{b}" if a <= b else f"{b}-{a}"


EdgeSpec = Tuple[str, str, Optional[int], Optional[int]]


class SpliceDiagram:
    """Immutable splice diagram.

    Construct from explicit vertex kinds and weighted edges::

        SpliceDiagram(
            nodes=["v"],
            leaves=["K1", "K2", "K3"],
            edges=[("v", "K1", 2, None), ("v", "K2", 3, None), ("v", "K3", 13, None)],
            arrows={"K3": Arrowhead(1, 0)},
        )

    Each edge is ``(a, b, weight_at_a, weight_at_b)``; the weight on a side
    must be a positive integer when that endpoint is a node and ``None`` when
    it is a leaf.  The constructor enforces this data-model consistency (and
    rejects self-loops, duplicate edges and duplicate names) but does *not*
    enforce the singularity-link invariants; see :func:`validate`.
    """

    __slots__ = ("_kind", "_adj", "_near", "_arrows", "_nodes", "_leaves", "_edges")

    def __init__(
        self,
        nodes: Iterable[str],
        leaves: Iterable[str],
        edges: Iterable[EdgeSpec],
        arrows: Optional[Mapping[str, Union[Arrowhead, Tuple[int, int]]]] = None,
    ):
        kind = {}
        for name in nodes:
            name = _check_name(name)
            if name in kind:
                raise ValueError(f"duplicate vertex name {name!r}")
            kind[name] = "node"
        for name in leaves:
            name = _check_name(name)
            if name in kind:
                raise ValueError(f"duplicate vertex name {name!r}")
            kind[name] = "leaf"
        if not kind:
            raise ValueError("a splice diagram needs at least one vertex")

        adj = {v: [] for v in kind}
        near = {}
        for spec in edges:
            a, b, wa, wb = spec
            for end in (a, b):
                if end not in kind:
                    raise ValueError(f"edge {a!r}-{b!r} references unknown vertex {end!r}")
            if a == b:
                raise ValueError(f"self-loop at {a!r} is not allowed")
            if b in adj[a]:
                raise ValueError(f"duplicate edge {a!r}-{b!r}")
            for end, weight in ((a, wa), (b, wb)):
                if kind[end] == "node":
                    if not isinstance(weight, int) or weight < 1:
                        raise ValueError(
                            f"edge {edge_label(a, b)} needs a positive integer "
                            f"weight at node {end!r}, got {weight!r}"
                        )
                    near[(end, b if end == a else a)] = weight
                elif weight is not None:
                    raise ValueError(
                        f"leaf {end!r} cannot carry a weight on edge {edge_label(a, b)}"
                    )
            adj[a].append(b)
            adj[b].append(a)

        arrow_map = {}
        for name, mark in (arrows or {}).items():
            if name not in kind:
                raise ValueError(f"arrowhead on unknown vertex {name!r}")
            if kind[name] != "leaf":
                raise ValueError(f"arrowhead on non-leaf vertex {name!r}")
            if not isinstance(mark, Arrowhead):
                mult, colour = mark
                mark = Arrowhead(mult, colour)
            arrow_map[name] = mark

        self._kind = kind
        self._adj = {v: tuple(sorted(nbrs)) for v, nbrs in adj.items()}
        self._near = near
        self._arrows = arrow_map
        self._nodes = tuple(sorted(v for v, k in kind.items() if k == "node"))
        self._leaves = tuple(sorted(v for v, k in kind.items() if k == "leaf"))
        self._edges = tuple(
            sorted((a, b) if a < b else (b, a) for a in adj for b in adj[a] if a < b)
        )

    # -- basic queries ------------------------------------------------------

    @property
    def nodes(self) -> Tuple[str, ...]:
        return self._nodes

    @property
    def leaves(self) -> Tuple[str, ...]:
        return self._leaves

    @property
    def vertices(self) -> Tuple[str, ...]:
        return tuple(sorted(self._kind))

    @property
    def edges(self) -> Tuple[Tuple[str, str], ...]:
        return self._edges

    @property
    def arrows(self) -> Mapping[str, Arrowhead]:
        return dict(self._arrows)

    def is_node(self, v: str) -> bool:
        return self._kind.get(v) == "node"

    def is_leaf(self, v: str) -> bool:
        return self._kind.get(v) == "leaf"

    def __contains__(self, v: str) -> bool:
        return v in self._kind

    def neighbours(self, v: str) -> Tuple[str, ...]:
        if v not in self._adj:
            raise KeyError(f"unknown vertex {v!r}")
        return self._adj[v]

    def valence(self, v: str) -> int:
        return len(self.neighbours(v))

    def has_edge(self, a: str, b: str) -> bool:
        return a in self._adj and b in self._adj[a]

    def near_weight(self, v: str, w: str) -> Optional[int]:
        """Weight written next to ``v`` on the edge v-w (None on a leaf side)."""
        if not self.has_edge(v, w):
            raise UnknownEdge(f"no edge {edge_label(v, w)}")
        return self._near.get((v, w))

    def weights_at(self, v: str) -> "dict[str, int]":
        """Map neighbour -> near-weight at node ``v`` (empty for a leaf)."""
        return {w: self._near[(v, w)] for w in self.neighbours(v) if (v, w) in self._near}

    def arrowhead(self, v: str) -> Optional[Arrowhead]:
        return self._arrows.get(v)

    def arrowheads(self) -> Tuple[str, ...]:
        return tuple(sorted(self._arrows))

    @property
    def is_decorated(self) -> bool:
        return bool(self._arrows)

    # -- tree walks ---------------------------------------------------------

    def path(self, a: str, b: str) -> Tuple[str, ...]:
        """Vertex sequence of the unique tree path from a to b (inclusive)."""
        if a not in self._adj or b not in self._adj:
            raise KeyError(f"unknown vertex {a!r} or {b!r}")
        if a == b:
            return (a,)
        parent = {a: None}
        frontier = [a]
        while frontier:
            nxt = []
            for u in frontier:
                for w in self._adj[u]:
                    if w not in parent:
                        parent[w] = u
                        if w == b:
                            seq = [b]
                            while seq[-1] != a:
                                seq.append(parent[seq[-1]])
                            return tuple(reversed(seq))
                        nxt.append(w)
            frontier = nxt
        raise ValueError(f"{a!r} and {b!r} are not connected")

    def component_beyond(self, v: str, w: str) -> Tuple[str, ...]:
        """Vertices of the component of (diagram minus v) containing w."""
        if not self.has_edge(v, w):
            raise UnknownEdge(f"no edge {edge_label(v, w)}")
        seen = {v, w}
        frontier = [w]
        out = [w]
        while frontier:
            nxt = []
            for u in frontier:
                for x in self._adj[u]:
                    if x not in seen:
                        seen.add(x)
                        out.append(x)
                        nxt.append(x)
            frontier = nxt
        return tuple(sorted(out))

    def leaves_beyond(self, v: str, w: str) -> Tuple[str, ...]:
        """Leaves in the component of (diagram minus v) containing w."""
        return tuple(u for u in self.component_beyond(v, w) if self.is_leaf(u))

    # -- derived diagrams ---------------------------------------------------

    def _edge_specs(self) -> "list[EdgeSpec]":
        return [
            (a, b, self._near.get((a, b)), self._near.get((b, a))) for a, b in self._edges
        ]

    def with_arrows(self, arrows: Mapping[str, Union[Arrowhead, Tuple[int, int]]]) -> "SpliceDiagram":
        """New diagram with the decoration replaced wholesale."""
        return SpliceDiagram(self._nodes, self._leaves, self._edge_specs(), arrows)

    def without_arrows(self) -> "SpliceDiagram":
        return self.with_arrows({})

    def relabelled(self, mapping: Mapping[str, str]) -> "SpliceDiagram":
        """New diagram with vertices renamed via ``mapping`` (others kept)."""
        ren = lambda v: mapping.get(v, v)
        return SpliceDiagram(
            [ren(v) for v in self._nodes],
            [ren(v) for v in self._leaves],
            [(ren(a), ren(b), wa, wb) for a, b, wa, wb in self._edge_specs()],
            {ren(v): mark for v, mark in self._arrows.items()},
        )

    def fresh_name(self, base: str) -> str:
        """First of base, base2, base3, ... that is not a vertex name."""
        if base not in self._kind:
            return base
        i = 2
        while f"{base}{i}" in self._kind:
            i += 1
        return f"{base}{i}"

    @classmethod
    def one_node(
        cls,
        weights: Sequence[int],
        node: str = "v",
        leaf_prefix: str = "K",
        arrows: Optional[Mapping[str, Union[Arrowhead, Tuple[int, int]]]] = None,
    ) -> "SpliceDiagram":
        """Star diagram: one node with leaves ``K1..Kn`` of the given weights."""
        leaves = [f"{leaf_prefix}{i}" for i in range(1, len(weights) + 1)]
        edges = [(node, leaf, w, None) for leaf, w in zip(leaves, weights)]
        return cls([node], leaves, edges, arrows)

    # -- dunder helpers -----------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, SpliceDiagram):
            return NotImplemented
        return (
            self._kind == other._kind
            and self._adj == other._adj
            and self._near == other._near
            and self._arrows == other._arrows
        )

    def __repr__(self) -> str:
        return (
            f"SpliceDiagram(nodes={len(self._nodes)}, leaves={len(self._leaves)}, "
            f"edges={len(self._edges)}, arrows={len(self._arrows)})"
        )

    def to_dict(self) -> dict:
        """Plain-data form used by the JSON emitter (fully sorted)."""
        return {
            "nodes": list(self._nodes),
            "leaves": list(self._leaves),
            "edges": [list(spec) for spec in self._edge_specs()],
            "arrows": {
                v: {"multiplicity": m.multiplicity, "colour": m.colour}
                for v, m in sorted(self._arrows.items())
            },
        }


# -- validation --------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    code: str
    where: str
    detail: str

    def __str__(self) -> str:
        return f"{self.code} at {self.where}: {self.detail}"


@dataclass(frozen=True)
class ValidationReport:
    violations: Tuple[Violation, ...]

    @property
    def is_valid(self) -> bool:
        return not self.violations

    def __iter__(self):
        return iter(self.violations)

    def to_dict(self) -> dict:
        return {
            "valid": self.is_valid,
            "violations": [
                {"code": v.code, "where": v.where, "detail": v.detail}
                for v in self.violations
            ],
        }


def _tree_violations(d: SpliceDiagram) -> "list[Violation]":
    out = []
    parent = {}
    rank = {}

    def find(x):
        root = x
        while parent.get(root, root) != root:
            root = parent[root]
        while parent.get(x, x) != x:
            parent[x], x = root, parent[x]
        return root

    for v in d.vertices:
        parent[v] = v
        rank[v] = 0
    for a, b in d.edges:
        ra, rb = find(a), find(b)
        if ra == rb:
            out.append(
                Violation("not-a-tree", edge_label(a, b), "edge closes a cycle")
            )
            continue
        if rank[ra] < rank[rb]:
            ra, rb = rb, ra
        parent[rb] = ra
        if rank[ra] == rank[rb]:
            rank[ra] += 1
    roots = sorted({find(v) for v in d.vertices})
    if len(roots) > 1:
        out.append(
            Violation(
                "not-a-tree",
                roots[1],
                f"diagram is disconnected ({len(roots)} components)",
            )
        )
    return out


def validate(d: SpliceDiagram) -> ValidationReport:
    """Check every singularity-link invariant; an empty report means valid.

    Violations are data, not faults: the report lists the code, the location
    (vertex or edge) and a human-readable detail for each broken invariant.
    """
    violations = _tree_violations(d)

    for leaf in d.leaves:
        if d.valence(leaf) != 1:
            violations.append(
                Violation("leaf-valence", leaf, f"leaf has {d.valence(leaf)} incident edges")
            )
    for node in d.nodes:
        if d.valence(node) < 3:
            violations.append(
                Violation("node-valence", node, f"node has {d.valence(node)} incident edges")
            )

    for node in d.nodes:
        weights = d.weights_at(node)
        for (w1, a1), (w2, a2) in combinations(sorted(weights.items()), 2):
            g = math.gcd(a1, a2)
            if g > 1:
                violations.append(
                    Violation(
                        "coprimality",
                        node,
                        f"weights {a1} (towards {w1}) and {a2} (towards {w2}) "
                        f"share factor {g}",
                    )
                )

    for a, b in d.edges:
        if d.is_node(a) and d.is_node(b):
            det = edge_determinant(d, (a, b))
            if det <= 0:
                violations.append(
                    Violation("edge-determinant", edge_label(a, b), f"determinant {det} <= 0")
                )

    violations.sort(key=lambda v: (v.code, v.where, v.detail))
    return ValidationReport(tuple(violations))


def require_valid(d: SpliceDiagram) -> None:
    """Raise InvalidDiagram unless ``d`` passes validate."""
    report = validate(d)
    if not report.is_valid:
        raise InvalidDiagram(
            "; ".join(str(v) for v in report.violations), report=report
        )


def edge_determinant(d: SpliceDiagram, e: Tuple[str, str]) -> int:
    """Determinant of an internal edge: product of its two near-weights minus
    the product of all other near-weights at its endpoints."""
    a, b = e
    if not d.has_edge(a, b):
        raise UnknownEdge(f"no edge {edge_label(a, b)}")
    if not (d.is_node(a) and d.is_node(b)):
        raise EdgeNotInternal(f"edge {edge_label(a, b)} has a leaf endpoint")
    wa = d.near_weight(a, b)
    wb = d.near_weight(b, a)
    rest_a = math.prod(w for x, w in d.weights_at(a).items() if x != b)
    rest_b = math.prod(w for x, w in d.weights_at(b).items() if x != a)
    return wa * wb - rest_a * rest_b


# -- shape --------------------------------------------------------------------


@dataclass(frozen=True)
class OneNode:
    leaf_weights: Tuple[int, ...]


@dataclass(frozen=True)
class MultiNode:
    end_nodes: Tuple[str, ...]


Shape = Union[OneNode, MultiNode]


def end_nodes(d: SpliceDiagram) -> Tuple[str, ...]:
    """Nodes with at most one non-leaf incident edge, in sorted-id order."""
    out = []
    for node in d.nodes:
        internal = sum(1 for w in d.neighbours(node) if d.is_node(w))
        if internal <= 1:
            out.append(node)
    return tuple(out)


def classify(d: SpliceDiagram) -> Shape:
    """OneNode(sorted leaf weights) when the diagram has a single node,
    otherwise MultiNode(end-node ids)."""
    if len(d.nodes) == 1:
        node = d.nodes[0]
        return OneNode(tuple(sorted(d.weights_at(node).values())))
    return MultiNode(end_nodes(d))


def exceptional_type(d: SpliceDiagram) -> Optional[str]:
    """Tag for the three excluded manifolds, or None.

    Matches one-node diagrams with leaf weights exactly {2,3,5}, {2,3,7} or
    {2,3,11}; these are the links whose analytic structure leaves no room for
    an obstruction.
    """
    if len(d.nodes) != 1:
        return None
    weights = tuple(sorted(d.weights_at(d.nodes[0]).values()))
    return {(2, 3, 5): "M235", (2, 3, 7): "M237", (2, 3, 11): "M2311"}.get(weights)


@dataclass(frozen=True)
class MinimalityReport:
    is_minimal: bool
    violations: Tuple[Violation, ...]


def is_minimal(d: SpliceDiagram) -> MinimalityReport:
    """No valence-2 vertices, and every plain (non-arrowhead) leaf carries
    weight >= 2 at its node.  Weight-1 arrowheads are always legal."""
    violations = []
    for v in d.vertices:
        if d.valence(v) == 2:
            violations.append(Violation("valence-two", v, "vertex is removable"))
    for leaf in d.leaves:
        if d.arrowhead(leaf) is not None or d.valence(leaf) != 1:
            continue
        (node,) = d.neighbours(leaf)
        if d.is_node(node) and d.near_weight(node, leaf) == 1:
            violations.append(
                Violation("weight-one-leaf", leaf, f"plain leaf of weight 1 at {node}")
            )
    violations.sort(key=lambda v: (v.code, v.where))
    return MinimalityReport(not violations, tuple(violations))


# -- cabling / subdivision -----------------------------------------------------


@dataclass(frozen=True)
class Arm:
    """New leaf attached at the fresh node: its weight there, its name, and
    an optional arrowhead."""

    weight: int
    label: str
    arrow: Optional[Arrowhead] = None

    def __post_init__(self):
        if not isinstance(self.weight, int) or self.weight < 1:
            raise ValueError("arm weight must be a positive integer")
        _check_name(self.label)


@dataclass(frozen=True)
class CablingSpec:
    """Description of a cabling surgery: subdivide ``target_edge`` with a
    fresh node and attach new arms.

    ``target_edge`` is ordered (old-node end, far end).  The old node keeps
    its near-weight on the edge; the fresh node carries
    ``weight_toward_old_node`` on that side.  When the far end is a node, the
    fresh node carries ``weight_toward_far_side`` towards it and the far node
    keeps its own weight.  When the far end is a leaf it is removed and may
    be re-attached by listing an arm with the same label.
    """

    target_edge: Tuple[str, str]
    weight_toward_old_node: int
    weight_toward_far_side: Optional[int] = None
    new_arms: Tuple[Arm, ...] = ()
    node_name: Optional[str] = None

    def __post_init__(self):
        if not isinstance(self.weight_toward_old_node, int) or self.weight_toward_old_node < 1:
            raise ValueError("weight_toward_old_node must be a positive integer")
        if self.weight_toward_far_side is not None and (
            not isinstance(self.weight_toward_far_side, int) or self.weight_toward_far_side < 1
        ):
            raise ValueError("weight_toward_far_side must be a positive integer or None")
        labels = [arm.label for arm in self.new_arms]
        if len(labels) != len(set(labels)):
            raise ValueError("new arm labels must be distinct")

    def to_dict(self) -> dict:
        return {
            "target_edge": list(self.target_edge),
            "weight_toward_old_node": self.weight_toward_old_node,
            "weight_toward_far_side": self.weight_toward_far_side,
            "new_arms": [
                {
                    "weight": arm.weight,
                    "label": arm.label,
                    "arrow": None
                    if arm.arrow is None
                    else {"multiplicity": arm.arrow.multiplicity, "colour": arm.arrow.colour},
                }
                for arm in self.new_arms
            ],
            "node_name": self.node_name,
        }


def subdivide_edge(d: SpliceDiagram, spec: CablingSpec) -> Tuple[SpliceDiagram, ValidationReport]:
    """Apply a cabling surgery and return (new diagram, validation report).

    The input diagram is never mutated.  The fresh node is named
    ``spec.node_name`` when given (must be unused), otherwise the first free
    name among c1, c2, ...
    """
    v, w = spec.target_edge
    if not d.has_edge(v, w):
        raise UnknownEdge(f"no edge {edge_label(v, w)}")
    if not d.is_node(v):
        raise ValueError(f"old-node end {v!r} of the target edge must be a node")

    if spec.node_name is not None:
        if spec.node_name in d:
            raise ValueError(f"node name {spec.node_name!r} already in use")
        fresh = spec.node_name
    else:
        i = 1
        while f"c{i}" in d:
            i += 1
        fresh = f"c{i}"

    far_is_leaf = d.is_leaf(w)
    removed = {w} if far_is_leaf else set()

    nodes = list(d.nodes) + [fresh]
    leaves = [x for x in d.leaves if x not in removed]
    edges = [e for e in d._edge_specs() if {e[0], e[1]} != {v, w}]
    arrows = {x: m for x, m in d.arrows.items() if x not in removed}

    edges.append((v, fresh, d.near_weight(v, w), spec.weight_toward_old_node))
    if not far_is_leaf:
        if spec.weight_toward_far_side is None:
            raise ValueError(
                "weight_toward_far_side is required when the far end is a node"
            )
        edges.append((fresh, w, spec.weight_toward_far_side, d.near_weight(w, v)))

    for arm in spec.new_arms:
        if arm.label in nodes or (arm.label in leaves):
            raise ValueError(f"arm label {arm.label!r} already in use")
        leaves.append(arm.label)
        edges.append((fresh, arm.label, arm.weight, None))
        if arm.arrow is not None:
            arrows[arm.label] = arm.arrow

    new_d = SpliceDiagram(nodes, leaves, edges, arrows)
    return new_d, validate(new_d)
