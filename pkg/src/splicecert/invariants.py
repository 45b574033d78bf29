"""Topological invariants read off a splice diagram.

Everything here is a path product.  The linking number of two end-knots is
the product, over the nodes on the tree path between their leaves, of the
near-weights on the edges *not* on the path.  The degree of one knot's open
book on a vertex (``vertex_linking``) and the truncated products ``ell_prime``
used by the semigroup condition are variations of the same walk, differing
only in which endpoint's weights are counted.

The Euler characteristic of the open-book fibre of a knot K is assembled
from these degrees vertex by vertex:

    chi  =  sum over vertices v != K of (2 - valence(v)) * degree_v(K)

and the Milnor number is mu(K) = 1 - chi.  The test suite pins this formula
against the closed form mu = (p-1)(q-1) for end-knots of one-node diagrams
and against worked multi-node examples.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, Iterable, Optional, Sequence, Tuple

from .diagram import SpliceDiagram

__all__ = [
    "SameLeaf",
    "MultipleArrowheads",
    "NoArrowhead",
    "NonUnitMultiplicity",
    "LinkingTable",
    "linking",
    "linking_table",
    "vertex_linking",
    "ell_prime",
    "fiber_euler",
    "milnor",
    "gamma_generators",
]


class SameLeaf(ValueError):
    """Linking number requested for a leaf with itself."""


class MultipleArrowheads(ValueError):
    """A unique arrowhead was required but several are present."""


class NoArrowhead(ValueError):
    """A unique arrowhead was required but none is present."""


class NonUnitMultiplicity(ValueError):
    """The requested knot carries a multiplicity other than 1."""


def _offpath_product(d: SpliceDiagram, path: Sequence[str], skip_first: bool) -> int:
    """Product of near-weights hanging off ``path`` at its node vertices.

    At each node on the path, multiply the weights on incident edges that are
    not path edges.  ``skip_first`` drops the contribution of the first path
    vertex (used by ell_prime, which excludes the base node's own weights).
    """
    total = 1
    for i, u in enumerate(path):
        if not d.is_node(u):
            continue
        if skip_first and i == 0:
            continue
        on_path = set()
        if i > 0:
            on_path.add(path[i - 1])
        if i + 1 < len(path):
            on_path.add(path[i + 1])
        for x, w in d.weights_at(u).items():
            if x not in on_path:
                total *= w
    return total


def linking(d: SpliceDiagram, a: str, b: str) -> int:
    """Linking number of the end-knots at leaves ``a`` and ``b``.

    Product over the nodes on the path a..b of the near-weights on edges not
    on the path.
    """
    if a == b:
        raise SameLeaf(f"linking number of {a!r} with itself is undefined")
    for leaf in (a, b):
        if not d.is_leaf(leaf):
            raise ValueError(f"{leaf!r} is not a leaf")
    return _offpath_product(d, d.path(a, b), skip_first=False)


@dataclass(frozen=True)
class LinkingTable:
    """Symmetric table of pairwise linking numbers over a leaf set."""

    entries: "Tuple[Tuple[Tuple[str, str], int], ...]"

    def value(self, a: str, b: str) -> int:
        key = (a, b) if a < b else (b, a)
        for pair, v in self.entries:
            if pair == key:
                return v
        raise KeyError(f"no linking entry for {a!r}, {b!r}")

    def __getitem__(self, pair: Tuple[str, str]) -> int:
        return self.value(*pair)

    def to_dict(self) -> dict:
        return {f"{a}-{b}": v for (a, b), v in self.entries}


def linking_table(d: SpliceDiagram, leaves: Optional[Iterable[str]] = None) -> LinkingTable:
    """All pairwise linking numbers over ``leaves`` (default: every leaf)."""
    names = sorted(leaves) if leaves is not None else list(d.leaves)
    entries = []
    for i, a in enumerate(names):
        for b in names[i + 1 :]:
            entries.append(((a, b), linking(d, a, b)))
    return LinkingTable(tuple(entries))


def vertex_linking(d: SpliceDiagram, knot: str, v: str) -> int:
    """Degree of the open book of ``knot`` at the virtual fibre of ``v``.

    1 for the knot's own leaf; the plain linking number for any other leaf;
    for a node, the off-path product along the path v..knot including the
    weights at v itself.
    """
    if not d.is_leaf(knot):
        raise ValueError(f"{knot!r} is not a leaf")
    if v == knot:
        return 1
    if d.is_leaf(v):
        return linking(d, v, knot)
    return _offpath_product(d, d.path(v, knot), skip_first=False)


def ell_prime(d: SpliceDiagram, v: str, w: str) -> int:
    """Off-path product from node ``v`` to leaf ``w``, excluding weights at v.

    These are the generators tested by the semigroup condition: for an
    internal edge at v, the semigroup is generated by ell_prime(v, w) over
    the leaves w beyond that edge.
    """
    if not d.is_node(v):
        raise ValueError(f"{v!r} is not a node")
    if not d.is_leaf(w):
        raise ValueError(f"{w!r} is not a leaf")
    return _offpath_product(d, d.path(v, w), skip_first=True)


def _resolve_knot(d: SpliceDiagram, knot: Optional[str]) -> str:
    if knot is None:
        marked = d.arrowheads()
        if not marked:
            raise NoArrowhead("diagram has no arrowhead to take as the knot")
        if len(marked) > 1:
            raise MultipleArrowheads(
                f"diagram has {len(marked)} arrowheads; name the knot explicitly"
            )
        knot = marked[0]
    if not d.is_leaf(knot):
        raise ValueError(f"{knot!r} is not a leaf")
    mark = d.arrowhead(knot)
    if mark is not None and mark.multiplicity != 1:
        raise NonUnitMultiplicity(
            f"knot {knot!r} has multiplicity {mark.multiplicity}; need 1"
        )
    return knot


def fiber_euler(d: SpliceDiagram, knot: Optional[str] = None) -> int:
    """Euler characteristic of the open-book fibre of ``knot``.

    When ``knot`` is omitted the diagram must carry exactly one arrowhead.
    Other arrowheads play no role in this knot's open book and are treated
    as plain leaves.  Valence counts every incident edge, the knot's own
    edge included.
    """
    knot = _resolve_knot(d, knot)
    chi = 0
    for v in d.vertices:
        if v == knot:
            continue
        chi += (2 - d.valence(v)) * vertex_linking(d, knot, v)
    return chi


def milnor(d: SpliceDiagram, knot: Optional[str] = None) -> int:
    """Milnor number of the fibred knot at a leaf: 1 - fiber_euler."""
    return 1 - fiber_euler(d, knot)


def gamma_generators(d: SpliceDiagram, target: str, others: Iterable[str]) -> Tuple[int, ...]:
    """Linking numbers of ``others`` with ``target``, in the order given.

    These degrees generate the semigroup whose gap count bounds the Milnor
    number of a principal analytic knot (mu <= 2 * gaps).
    """
    others = list(others)
    if target in others:
        raise ValueError(f"target {target!r} may not appear among the other knots")
    if len(set(others)) != len(others):
        raise ValueError("duplicate knots in the generator list")
    return tuple(linking(d, o, target) for o in others)
