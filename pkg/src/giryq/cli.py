"""Command-line front end: scenario execution and the standalone law runner.

Exit codes: 0 on success, 2 when the scenario fails to parse or validate,
3 when a law suite reports a failure.  Every reported value is an exact
rational string; the decimal column is display-only and never feeds back
into any computation.
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Any, Optional

from . import laws
from .errors import ScenarioError
from .kernels import compose, extract_point_function, is_deterministic
from .measures import Dist, format_rational, tv_metric
from .predicates import expectation
from .quantifiers import (
    QuantifierResult,
    exists_composite,
    exists_fiber,
    exists_lifted,
    forall_composite,
    forall_fiber,
    forall_lifted,
)
from .scenario import Query, Scenario, load_scenario

_QUANTIFIER_OPS = {
    "EXISTS_COUNTABLE": exists_fiber,
    "FORALL_COUNTABLE": forall_fiber,
    "EXISTS_LP": exists_lifted,
    "FORALL_LP": forall_lifted,
}


def _decimal(value: Optional[Fraction]) -> Optional[float]:
    return None if value is None else float(value)


def _witness_doc(witness: Any) -> Any:
    if witness is None:
        return None
    if isinstance(witness, Dist):
        return [format_rational(w) for w in witness.weights]
    return witness


def _quantifier_record(kind: str, inputs: dict, result: QuantifierResult) -> dict:
    return {
        "kind": kind,
        "inputs": inputs,
        "value": format_rational(result.value),
        "value_decimal": _decimal(result.value),
        "witness": _witness_doc(result.witness),
        "feasible": result.feasible,
        "regime": result.regime.value,
    }


def _plain_record(kind: str, inputs: dict, value: Fraction, witness: Any = None) -> dict:
    return {
        "kind": kind,
        "inputs": inputs,
        "value": format_rational(value),
        "value_decimal": _decimal(value),
        "witness": witness,
        "feasible": None,
        "regime": None,
    }


def evaluate_query(scenario: Scenario, query: Query, seed: int, cases: int) -> dict:
    """Evaluate one query to its result record (a JSON-ready dict)."""
    kind = query.kind
    if kind in _QUANTIFIER_OPS:
        kernel = scenario.kernels[query.kernel]
        pred = scenario.predicates[query.predicate]
        result = _QUANTIFIER_OPS[kind](kernel, pred, query.dist)
        inputs = {
            "kernel": query.kernel,
            "predicate": query.predicate,
            "dist": _witness_doc(query.dist),
        }
        return _quantifier_record(kind, inputs, result)

    if kind == "COMPOSE":
        inner = scenario.kernels[query.inner]
        outer = scenario.kernels[query.outer]
        pred = scenario.predicates[query.predicate]
        staged_fn, direct_fn = (
            (exists_composite, exists_fiber)
            if query.quantifier == "EXISTS"
            else (forall_composite, forall_fiber)
        )
        result = staged_fn(inner, outer, pred, query.dist)
        direct = direct_fn(compose(outer, inner), pred, query.dist)
        inputs = {
            "inner": query.inner,
            "outer": query.outer,
            "predicate": query.predicate,
            "quantifier": query.quantifier,
            "dist": _witness_doc(query.dist),
        }
        record = _quantifier_record(kind, inputs, result)
        record["agrees_with_direct"] = (
            result.value == direct.value and result.feasible == direct.feasible
        )
        return record

    if kind == "METRIC":
        inputs = {
            "space": query.space,
            "left": _witness_doc(query.left),
            "right": _witness_doc(query.right),
        }
        return _plain_record(kind, inputs, tv_metric(query.left, query.right))

    if kind == "DETERMINISM":
        kernel = scenario.kernels[query.kernel]
        deterministic = is_deterministic(kernel)
        witness = None
        if deterministic:
            fn = extract_point_function(kernel)
            witness = dict(zip(fn.source.points, fn.assignment))
        return _plain_record(
            kind,
            {"kernel": query.kernel},
            Fraction(1 if deterministic else 0),
            witness,
        )

    if kind == "EXPECTATION":
        pred = scenario.predicates[query.predicate]
        inputs = {"predicate": query.predicate, "dist": _witness_doc(query.dist)}
        return _plain_record(kind, inputs, expectation(pred, query.dist))

    assert kind == "CHECK_LAWS"
    reports = laws.run_suites(query.suites, seed=seed, cases=cases)
    passed = all(r.passed for r in reports)
    record = _plain_record(
        kind,
        {
            "seed": seed,
            "cases": cases,
            "suites": list(query.suites) if query.suites else list(laws.SUITES),
        },
        Fraction(1 if passed else 0),
        [r.line() for r in reports],
    )
    record["passed"] = passed
    return record


def evaluate_scenario(
    scenario: Scenario, seed: int = 0, cases: int = 200, parallel: bool = False
) -> list[dict]:
    """Evaluate all queries in order; `parallel` keeps the output order."""
    if parallel and len(scenario.queries) > 1:
        with ThreadPoolExecutor(max_workers=min(8, len(scenario.queries))) as pool:
            return list(
                pool.map(
                    lambda q: evaluate_query(scenario, q, seed, cases),
                    scenario.queries,
                )
            )
    return [evaluate_query(scenario, q, seed, cases) for q in scenario.queries]


def _format_inputs(inputs: dict) -> str:
    parts = []
    for key, value in inputs.items():
        if isinstance(value, list) and all(isinstance(v, str) for v in value):
            parts.append(f"{key}=({', '.join(value)})")
        else:
            parts.append(f"{key}={value}")
    return " ".join(parts)


def render_text(records: list[dict]) -> str:
    lines = []
    for i, record in enumerate(records, start=1):
        lines.append(f"query {i}: {record['kind']} {_format_inputs(record['inputs'])}")
        decimal = record["value_decimal"]
        lines.append(f"  value: {record['value']} (approx {decimal:.10g})")
        if record["regime"] is not None:
            feasible = "yes" if record["feasible"] else "no"
            lines.append(f"  regime: {record['regime']}  feasible: {feasible}")
        witness = record["witness"]
        if record["kind"] == "CHECK_LAWS":
            lines.append("  suites:")
            lines.extend(f"    {line}" for line in witness)
        elif isinstance(witness, list):
            lines.append(f"  witness: ({', '.join(witness)})")
        elif isinstance(witness, dict):
            mapping = ", ".join(f"{k} -> {v}" for k, v in witness.items())
            lines.append(f"  witness: {mapping}")
        elif witness is not None:
            lines.append(f"  witness: {witness}")
        if "agrees_with_direct" in record:
            agrees = "yes" if record["agrees_with_direct"] else "no"
            lines.append(f"  agrees with direct evaluation: {agrees}")
    return "\n".join(lines) + "\n"


def _cmd_run(args: argparse.Namespace) -> int:
    try:
        scenario = load_scenario(args.scenario)
    except ScenarioError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: cannot read {args.scenario}: {exc}", file=sys.stderr)
        return 2
    records = evaluate_scenario(
        scenario, seed=args.seed, cases=args.cases, parallel=args.parallel
    )
    if args.format == "json":
        print(json.dumps(records, indent=2))
    else:
        print(render_text(records), end="")
    laws_failed = any(
        record["kind"] == "CHECK_LAWS" and not record["passed"] for record in records
    )
    return 3 if laws_failed else 0


def _cmd_laws(args: argparse.Namespace) -> int:
    reports = laws.run_suites(seed=args.seed, cases=args.cases)
    for report in reports:
        print(report.line())
    return 0 if all(r.passed for r in reports) else 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="giryq",
        description=(
            "Exact quantifier queries over finite Markov kernels, plus a "
            "random-instance law checker."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="evaluate the queries of a scenario file")
    run.add_argument("scenario", help="path to a scenario JSON document")
    run.add_argument("--seed", type=int, default=0, help="seed for law suites")
    run.add_argument(
        "--cases", type=int, default=200, help="random instances per law suite"
    )
    run.add_argument("--format", choices=("text", "json"), default="text")
    run.add_argument(
        "--parallel",
        action="store_true",
        help="evaluate independent queries concurrently (output order preserved)",
    )
    run.set_defaults(handler=_cmd_run)

    lawsp = sub.add_parser("laws", help="run the full law suite without a scenario")
    lawsp.add_argument("--seed", type=int, default=0)
    lawsp.add_argument("--cases", type=int, default=200)
    lawsp.set_defaults(handler=_cmd_laws)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.handler(args)


if __name__ == "__main__":
    sys.exit(main())
