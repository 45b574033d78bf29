"""Command-line driver and canonical JSON rendering.

Exit codes: 0 success (including "certificate found"); 1 usage or parse
error; 2 invalid input diagram; 3 no certificate or witness applicable
(e.g. an exceptional manifold); 4 internal search exhaustion.  Every exit
code >= 2 comes with at least one diagnostic line on stderr.

JSON output is canonical: object keys sorted, compact separators, integers
rendered as decimal strings once they exceed 53-bit magnitude, and no
timestamps or other run-dependent data, so identical inputs produce
byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Iterable, List, Optional, Sequence

from .diagram import (
    InvalidDiagram,
    SpliceDiagram,
    ValidationReport,
    validate,
)
from .dsl import DiagramDocument, ParseError, StructureError, parse, serialize
from .invariants import (
    LinkingTable,
    MultipleArrowheads,
    NoArrowhead,
    NonUnitMultiplicity,
    SameLeaf,
    linking,
    linking_table,
    milnor,
)
from .obstruction import (
    Certificate,
    method1_certificate,
    method2_certificate,
    semigroup_condition_failures,
)
from .semigroup import InfiniteGaps, NumericalSemigroup
from .witness import (
    CaseExhausted,
    ExceptionalManifold,
    NotMinimal,
    WitnessResult,
    main_witness,
    weak_witness,
)

__all__ = ["emit_json", "run", "main"]

_JSON_INT_LIMIT = 1 << 53


def _jsonable(value):
    """Recursively convert to JSON-safe data; big integers become strings."""
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, int):
        return str(value) if abs(value) >= _JSON_INT_LIMIT else value
    if isinstance(value, (ValidationReport, Certificate, WitnessResult, LinkingTable)):
        return _jsonable(value.to_dict())
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, str):
        return value
    raise TypeError(f"cannot render {type(value).__name__} as JSON")


def emit_json(value) -> str:
    """Canonical JSON text for reports, tables, certificates and witnesses."""
    return json.dumps(_jsonable(value), sort_keys=True, separators=(",", ":"))


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # pragma: no cover - exercised via run()
        raise _UsageError(message)


def _read_source(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _load(path: str) -> DiagramDocument:
    return parse(_read_source(path))


def _require_valid_diagram(doc: DiagramDocument, as_json: bool) -> Optional[int]:
    report = validate(doc.diagram)
    if report.is_valid:
        return None
    for violation in report.violations:
        print(f"invalid diagram: {violation}", file=sys.stderr)
    if as_json:
        print(emit_json(report))
    return 2


def _parse_knot_list(raw: str) -> List[str]:
    return [item for item in (part.strip() for part in raw.split(",")) if item]


def _cmd_validate(args, as_json: bool) -> int:
    doc = _load(args.file)
    report = validate(doc.diagram)
    if as_json:
        print(emit_json(report))
    else:
        if report.is_valid:
            print("valid")
        else:
            for violation in report.violations:
                print(str(violation))
    if not report.is_valid:
        print(f"{len(report.violations)} invariant violation(s)", file=sys.stderr)
        return 2
    return 0


def _cmd_invariants(args, as_json: bool) -> int:
    doc = _load(args.file)
    failure = _require_valid_diagram(doc, as_json)
    if failure is not None:
        return failure
    d = doc.diagram
    table = linking_table(d)
    mu = {}
    for knot in d.arrowheads():
        if d.arrowhead(knot).multiplicity == 1:
            mu[knot] = milnor(d, knot)
    if as_json:
        print(emit_json({"kind": "invariants", "linking": table.to_dict(), "milnor": mu}))
    else:
        for (a, b), value in table.entries:
            print(f"linking {a} {b} = {value}")
        for knot, value in sorted(mu.items()):
            print(f"milnor {knot} = {value}")
    return 0


def _cmd_linking(args, as_json: bool) -> int:
    doc = _load(args.file)
    failure = _require_valid_diagram(doc, as_json)
    if failure is not None:
        return failure
    value = linking(doc.diagram, args.a, args.b)
    if as_json:
        print(emit_json({"a": args.a, "b": args.b, "linking": value}))
    else:
        print(value)
    return 0


def _cmd_milnor(args, as_json: bool) -> int:
    doc = _load(args.file)
    failure = _require_valid_diagram(doc, as_json)
    if failure is not None:
        return failure
    value = milnor(doc.diagram, args.knot)
    if as_json:
        print(emit_json({"knot": args.knot, "milnor": value}))
    else:
        print(value)
    return 0


def _cmd_check(args, as_json: bool) -> int:
    doc = _load(args.file)
    failure = _require_valid_diagram(doc, as_json)
    if failure is not None:
        return failure
    certificate = method2_certificate(doc.diagram)
    if certificate is None:
        print("semigroup condition holds at every node; no obstruction", file=sys.stderr)
        if as_json:
            print(emit_json({"certificate": None}))
        return 3
    if as_json:
        print(emit_json(certificate))
    else:
        print(certificate.describe())
        extra = semigroup_condition_failures(doc.diagram)[1:]
        for other in extra:
            print(f"also: {other.describe()}")
    return 0


def _cmd_method1(args, as_json: bool) -> int:
    doc = _load(args.file)
    failure = _require_valid_diagram(doc, as_json)
    if failure is not None:
        return failure
    d = doc.diagram
    if args.others is not None:
        others = _parse_knot_list(args.others)
    else:
        marked = d.arrowheads()
        pool = marked if marked else d.leaves
        others = [leaf for leaf in pool if leaf != args.target]
    certificate = method1_certificate(d, args.target, others)
    if certificate is None:
        print(
            "gap-count inequality is satisfiable; no obstruction for "
            f"{args.target}",
            file=sys.stderr,
        )
        if as_json:
            print(emit_json({"certificate": None}))
        return 3
    if as_json:
        print(emit_json(certificate))
    else:
        print(certificate.describe())
    return 0


def _run_witness(args, as_json: bool, engine) -> int:
    doc = _load(args.file)
    failure = _require_valid_diagram(doc, as_json)
    if failure is not None:
        return failure
    if doc.diagram.is_decorated:
        print("witness constructions take undecorated diagrams", file=sys.stderr)
        return 2
    try:
        result = engine(doc.diagram)
    except ExceptionalManifold as exc:
        print(f"exceptional manifold {exc.tag}: no witness exists", file=sys.stderr)
        return 3
    except NotMinimal as exc:
        print(f"diagram is not minimal: {exc}", file=sys.stderr)
        return 2
    except CaseExhausted as exc:
        print(f"internal error, search exhausted: {exc}", file=sys.stderr)
        return 4
    if as_json:
        print(emit_json(result))
    else:
        print(f"case: {result.case_tag}")
        print(serialize(result.cabled_diagram), end="")
        print(result.certificate.describe())
    return 0


def _cmd_witness(args, as_json: bool) -> int:
    return _run_witness(args, as_json, main_witness)


def _cmd_weak_witness(args, as_json: bool) -> int:
    return _run_witness(args, as_json, weak_witness)


def _cmd_semigroup(args, as_json: bool) -> int:
    try:
        generators = [int(part) for part in _parse_knot_list(args.gens)]
    except ValueError:
        raise _UsageError(f"--gens takes a comma-separated integer list, got {args.gens!r}")
    if not generators or any(g < 1 for g in generators):
        raise _UsageError("--gens needs positive integers")
    chosen = [
        name
        for name, active in (
            ("contains", args.contains is not None),
            ("gaps", args.gaps),
            ("frobenius", args.frobenius),
        )
        if active
    ]
    if len(chosen) != 1:
        raise _UsageError("choose exactly one of --contains N, --gaps, --frobenius")
    semigroup = NumericalSemigroup(generators)
    payload = {"kind": "semigroup", "generators": list(semigroup.generators)}
    try:
        if args.contains is not None:
            result = semigroup.contains(args.contains)
            payload["contains"] = {"n": args.contains, "result": result}
            text = "yes" if result else "no"
        elif args.gaps:
            count = semigroup.genus()
            payload["gaps"] = count
            text = str(count)
        else:
            value = semigroup.frobenius()
            payload["frobenius"] = value
            text = str(value)
    except InfiniteGaps as exc:
        print(str(exc), file=sys.stderr)
        return 1
    if as_json:
        print(emit_json(payload))
    else:
        print(text)
    return 0


def _build_parser() -> _Parser:
    parser = _Parser(prog="splicecert", description=__doc__)
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    def add(name, func, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(func=func)
        return p

    p = add("validate", _cmd_validate, help="check the singularity-link invariants")
    p.add_argument("file")
    p = add("invariants", _cmd_invariants, help="linking table and Milnor numbers")
    p.add_argument("file")
    p = add("linking", _cmd_linking, help="linking number of two end-knots")
    p.add_argument("file")
    p.add_argument("a")
    p.add_argument("b")
    p = add("milnor", _cmd_milnor, help="Milnor number of a knot")
    p.add_argument("file")
    p.add_argument("knot", nargs="?", default=None)
    p = add("check", _cmd_check, help="semigroup-condition obstruction")
    p.add_argument("file")
    p = add("method1", _cmd_method1, help="gap-count obstruction for a target knot")
    p.add_argument("file")
    p.add_argument("--target", required=True)
    p.add_argument("--others", default=None)
    p = add("witness", _cmd_witness, help="construct a certified non-realizable coloured link")
    p.add_argument("file")
    p = add("weak-witness", _cmd_weak_witness, help="parallel-cable witness (isotopic pair)")
    p.add_argument("file")
    p = add("semigroup", _cmd_semigroup, help="numerical semigroup queries")
    p.add_argument("--gens", required=True)
    p.add_argument("--contains", type=int, default=None)
    p.add_argument("--gaps", action="store_true")
    p.add_argument("--frobenius", action="store_true")
    return parser


def run(argv: Sequence[str]) -> int:
    """Entry point; returns the process exit code."""
    argv = list(argv)
    as_json = "--json" in argv
    argv = [token for token in argv if token != "--json"]
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "func", None) is None:
            raise _UsageError("a command is required (see --help)")
        return args.func(args, as_json)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except (ParseError, StructureError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"cannot read input: {exc}", file=sys.stderr)
        return 1
    except (SameLeaf, NoArrowhead, MultipleArrowheads, NonUnitMultiplicity) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except InvalidDiagram as exc:
        print(f"invalid diagram: {exc}", file=sys.stderr)
        return 2
    except (KeyError, ValueError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1


def main() -> None:  # pragma: no cover - console script shim
    sys.exit(run(sys.argv[1:]))
