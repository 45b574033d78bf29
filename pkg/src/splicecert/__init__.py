"""Obstruction certificates for coloured links in homology-sphere
singularity links.

The package decides and certifies *non*-realizability: given a splice
diagram, it can check the semigroup condition, evaluate the gap-count
inequality for a marked knot, and construct cabled coloured links whose
non-realizability is certified and independently re-checkable.  Absence of
a certificate proves nothing; the engines are deliberately one-sided.
"""

from .diagram import (
    Arm,
    Arrowhead,
    CablingSpec,
    EdgeNotInternal,
    InvalidDiagram,
    MinimalityReport,
    MultiNode,
    OneNode,
    Shape,
    SpliceDiagram,
    UnknownEdge,
    ValidationReport,
    Violation,
    classify,
    edge_determinant,
    end_nodes,
    exceptional_type,
    is_minimal,
    subdivide_edge,
    validate,
)
from .semigroup import InfiniteGaps, NumericalSemigroup
from .invariants import (
    LinkingTable,
    MultipleArrowheads,
    NoArrowhead,
    NonUnitMultiplicity,
    SameLeaf,
    ell_prime,
    fiber_euler,
    gamma_generators,
    linking,
    linking_table,
    milnor,
    vertex_linking,
)
from .obstruction import (
    Certificate,
    DeltaObstruction,
    SemigroupConditionFailure,
    colour_end_knots,
    delta_gap_count,
    method1_certificate,
    method2_certificate,
    recheck,
    semigroup_condition_failures,
)
from .witness import (
    CaseExhausted,
    ExceptionalManifold,
    NotMinimal,
    WitnessResult,
    distinct_knot_check,
    main_witness,
    weak_witness,
)
from .dsl import DiagramDocument, ParseError, StructureError, parse, serialize
from .cli import emit_json, run

__version__ = "0.1.0"

__all__ = [
    "Arm",
    "Arrowhead",
    "CablingSpec",
    "CaseExhausted",
    "Certificate",
    "DeltaObstruction",
    "DiagramDocument",
    "EdgeNotInternal",
    "ExceptionalManifold",
    "InfiniteGaps",
    "InvalidDiagram",
    "LinkingTable",
    "MinimalityReport",
    "MultiNode",
    "MultipleArrowheads",
    "NoArrowhead",
    "NonUnitMultiplicity",
    "NotMinimal",
    "NumericalSemigroup",
    "OneNode",
    "ParseError",
    "SameLeaf",
    "SemigroupConditionFailure",
    "Shape",
    "SpliceDiagram",
    "StructureError",
    "UnknownEdge",
    "ValidationReport",
    "Violation",
    "WitnessResult",
    "classify",
    "colour_end_knots",
    "delta_gap_count",
    "distinct_knot_check",
    "edge_determinant",
    "ell_prime",
    "emit_json",
    "end_nodes",
    "exceptional_type",
    "fiber_euler",
    "gamma_generators",
    "is_minimal",
    "linking",
    "linking_table",
    "main_witness",
    "method1_certificate",
    "method2_certificate",
    "milnor",
    "parse",
    "recheck",
    "run",
    "semigroup_condition_failures",
    "serialize",
    "subdivide_edge",
    "validate",
    "vertex_linking",
    "weak_witness",
]
