"""Certificate engines for non-realizability of coloured links.

Two independent obstructions are implemented, each returning a machine
checkable :class:`Certificate`.

*Semigroup condition* (the end-curve obstruction).  At every node and every
incident edge leading to another node, the edge weight must lie in the
numerical semigroup generated by the ``ell_prime`` path products towards the
leaves beyond that edge.  A single failure certifies that the coloured link
of all end-knots is not realizable by a compatible family of analytic germs.

*Gap-count inequality*.  For a knot K with multiplicity 1, realizability of
the coloured link forces mu(K) <= 2 * delta, where delta is the gap count of
the semigroup generated by the linking numbers of the other components with
K.  A violation mu > 2*delta is again a certificate.

Certificates carry the diagram they speak about and can be re-verified from
scratch with :func:`recheck`; the witness constructions rely on this to
guarantee soundness by construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, List, Optional, Tuple, Union

from .diagram import Arrowhead, SpliceDiagram, edge_label, validate
from .invariants import ell_prime, gamma_generators, linking, milnor
from .semigroup import NumericalSemigroup

__all__ = [
    "SemigroupConditionFailure",
    "DeltaObstruction",
    "Certificate",
    "semigroup_condition_failures",
    "method2_certificate",
    "delta_gap_count",
    "method1_certificate",
    "colour_end_knots",
    "recheck",
]

INFINITE = math.inf


@dataclass(frozen=True)
class SemigroupConditionFailure:
    """The weight of ``node`` on ``edge`` misses the semigroup generated by
    the path products towards the leaves beyond the edge."""

    node: str
    edge: Tuple[str, str]
    weight: int
    generators: Tuple[int, ...]

    def describe(self) -> str:
        gens = ", ".join(map(str, self.generators))
        return (
            f"semigroup condition fails at node {self.node} on edge "
            f"{edge_label(*self.edge)}: {self.weight} is not in <{gens}>"
        )

    def to_dict(self) -> dict:
        return {
            "kind": "semigroup_condition_failure",
            "node": self.node,
            "edge": edge_label(*self.edge),
            "weight": self.weight,
            "generators": list(self.generators),
        }


@dataclass(frozen=True)
class DeltaObstruction:
    """mu(target) exceeds twice the gap count of the linking-number semigroup.

    ``others`` records which knots produced the generators so the certificate
    can be re-derived from the diagram alone; it is not part of the canonical
    JSON rendering.
    """

    target: str
    mu: int
    delta: int
    generators: Tuple[int, ...]
    others: Tuple[str, ...] = ()

    def describe(self) -> str:
        gens = ", ".join(map(str, self.generators))
        return (
            f"gap-count obstruction at knot {self.target}: mu = {self.mu} > "
            f"2 * {self.delta}, gaps of <{gens}>"
        )

    def to_dict(self) -> dict:
        return {
            "kind": "delta_obstruction",
            "target": self.target,
            "mu": self.mu,
            "delta": self.delta,
            "generators": list(self.generators),
        }


Finding = Union[SemigroupConditionFailure, DeltaObstruction]


@dataclass(frozen=True)
class Certificate:
    """A finding together with the (coloured) diagram it certifies."""

    diagram: SpliceDiagram
    finding: Finding

    def describe(self) -> str:
        return self.finding.describe()

    def to_dict(self) -> dict:
        return self.finding.to_dict()


def colour_end_knots(d: SpliceDiagram) -> SpliceDiagram:
    """Arrow every leaf with multiplicity 1, each its own colour.

    An existing decoration is kept verbatim when it already covers every
    leaf with multiplicity 1; otherwise the canonical colouring (colour =
    index in sorted leaf order) replaces it.
    """
    marks = d.arrows
    if len(marks) == len(d.leaves) and all(m.multiplicity == 1 for m in marks.values()):
        return d
    return d.with_arrows({leaf: Arrowhead(1, i) for i, leaf in enumerate(d.leaves)})


def semigroup_condition_failures(d: SpliceDiagram) -> List[SemigroupConditionFailure]:
    """Every (node, internal edge) pair where the semigroup condition fails.

    Deterministic order: nodes sorted, then neighbour nodes sorted.  Leaf
    edges are never tested; arrowheads count as ordinary leaves.
    """
    failures = []
    for v in d.nodes:
        for w in d.neighbours(v):
            if not d.is_node(w):
                continue
            weight = d.near_weight(v, w)
            gens = tuple(sorted({ell_prime(d, v, leaf) for leaf in d.leaves_beyond(v, w)}))
            if gens and NumericalSemigroup(gens).contains(weight):
                continue
            failures.append(SemigroupConditionFailure(v, (v, w), weight, gens))
    return failures


def method2_certificate(d: SpliceDiagram) -> Optional[Certificate]:
    """First semigroup-condition failure, wrapped with the all-end-knots
    colouring attached; None when the condition holds everywhere."""
    failures = semigroup_condition_failures(d)
    if not failures:
        return None
    return Certificate(colour_end_knots(d), failures[0])


def delta_gap_count(d: SpliceDiagram, target: str, others: Iterable[str]):
    """Gap count of the semigroup generated by the linking numbers of
    ``others`` with ``target``; +inf when their gcd exceeds 1 (or no others).
    """
    gens = gamma_generators(d, target, others)
    if not gens:
        return INFINITE
    semigroup = NumericalSemigroup(gens)
    if semigroup.gcd != 1:
        return INFINITE
    return semigroup.genus()


def _check_unit_multiplicity(d: SpliceDiagram, knots: Iterable[str]) -> None:
    from .invariants import NonUnitMultiplicity

    for k in knots:
        mark = d.arrowhead(k)
        if mark is not None and mark.multiplicity != 1:
            raise NonUnitMultiplicity(
                f"knot {k!r} has multiplicity {mark.multiplicity}; need 1"
            )


def method1_certificate(
    d: SpliceDiagram, target: str, others: Iterable[str]
) -> Optional[Certificate]:
    """Gap-count certificate for ``target`` against ``others``; None when the
    inequality mu <= 2*delta holds (including delta = +inf)."""
    others = list(others)
    _check_unit_multiplicity(d, [target, *others])
    mu = milnor(d, target)
    delta = delta_gap_count(d, target, others)
    if not mu > 2 * delta:
        return None
    gens = tuple(sorted(set(gamma_generators(d, target, others))))
    return Certificate(
        d, DeltaObstruction(target, mu, int(delta), gens, tuple(others))
    )


def recheck(cert: Certificate) -> bool:
    """Re-verify a certificate from scratch, using only the diagram it
    carries.  Returns False rather than raising on any mismatch."""
    try:
        d = cert.diagram
        if not validate(d).is_valid:
            return False
        f = cert.finding
        if isinstance(f, SemigroupConditionFailure):
            v, w = f.edge
            if f.node not in (v, w):
                return False
            other = w if f.node == v else v
            if not (d.is_node(f.node) and d.is_node(other)):
                return False
            if d.near_weight(f.node, other) != f.weight:
                return False
            gens = tuple(
                sorted({ell_prime(d, f.node, leaf) for leaf in d.leaves_beyond(f.node, other)})
            )
            if gens != f.generators:
                return False
            return not (gens and NumericalSemigroup(gens).contains(f.weight))
        if isinstance(f, DeltaObstruction):
            if not f.others:
                return False
            gens = tuple(sorted(set(gamma_generators(d, f.target, f.others))))
            if gens != f.generators:
                return False
            if milnor(d, f.target) != f.mu:
                return False
            delta = delta_gap_count(d, f.target, f.others)
            if delta != f.delta:
                return False
            return f.mu > 2 * delta
        return False
    except Exception:
        return False
