"""Command-line front end.

Reads a model file (JSON with fields "A", "B", optional "name"; numbers may
use scientific notation), runs the partitioning engine or the brute-force
enumerator, prints the grouping matrices in canonical form, and optionally
writes a machine-readable report.

Exit codes: 0 when a controllable partitioning is found, 2 when none
exists for the requested group count, 3 when a limit aborted the search,
1 for input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from .engine import (
    OUTCOME_ABORTED,
    OUTCOME_CONTROLLABLE,
    OUTCOME_NO_PARTITION,
    PartitionOptions,
    SolveReport,
    partition,
)
from .model import (
    GroupingPair,
    StateSpaceModel,
    interaction_cost_blocks,
    validate_problem,
)
from .oracle import brute_force_optimum

REPORT_SCHEMA_VERSION = 1

_EXIT_BY_OUTCOME = {
    OUTCOME_CONTROLLABLE: 0,
    OUTCOME_NO_PARTITION: 2,
    OUTCOME_ABORTED: 3,
}


class ModelFileError(ValueError):
    """Problem reading or validating a model file."""


def load_model(path: str) -> StateSpaceModel:
    """Load a state-space model from a JSON document."""
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ModelFileError(f"{path}: {exc.strerror or exc}") from exc
    except json.JSONDecodeError as exc:
        raise ModelFileError(
            f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    if not isinstance(doc, dict):
        raise ModelFileError(f"{path}: top-level value must be an object")
    for field in ("A", "B"):
        if field not in doc:
            raise ModelFileError(f"{path}: missing required field {field!r}")
    name = doc.get("name", "")
    if not isinstance(name, str):
        raise ModelFileError(f"{path}: field 'name' must be a string")
    A = _field_to_matrix(doc["A"], "A", path)
    B = _field_to_matrix(doc["B"], "B", path)
    try:
        return StateSpaceModel(A=A, B=B, name=name)
    except ValueError as exc:
        raise ModelFileError(f"{path}: {exc}") from exc


def _field_to_matrix(rows, field: str, path: str) -> np.ndarray:
    if not isinstance(rows, list) or not rows:
        raise ModelFileError(f"{path}: field {field!r} must be a non-empty array of rows")
    width = None
    for r, row in enumerate(rows):
        if not isinstance(row, list) or not row:
            raise ModelFileError(
                f"{path}: field {field!r} row {r + 1} must be a non-empty array"
            )
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise ModelFileError(
                f"{path}: field {field!r} row {r + 1} has {len(row)} entries, "
                f"expected {width}"
            )
        for c, value in enumerate(row):
            if not isinstance(value, (int, float)) or isinstance(value, bool):
                raise ModelFileError(
                    f"{path}: field {field!r} row {r + 1} column {c + 1} "
                    f"is not a number"
                )
    return np.array(rows, dtype=float)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="partition",
        description=(
            "Partition an LTI state-space model (A, B) into P non-overlapping "
            "subsystems with minimal coupling, keeping every subsystem "
            "controllable."
        ),
    )
    parser.add_argument("--model", required=True, help="path to the model JSON file")
    parser.add_argument(
        "--groups", type=int, required=True, metavar="P", help="number of subsystems"
    )
    parser.add_argument(
        "--rank-tol",
        type=float,
        default=None,
        help="absolute singular-value threshold for the rank test "
        "(default: max(rows, cols) * eps * sigma_max)",
    )
    parser.add_argument(
        "--zero-tol",
        type=float,
        default=1e-15,
        help="entries with magnitude at or below this are structural zeros "
        "(default: 1e-15)",
    )
    parser.add_argument(
        "--max-iterations",
        type=int,
        default=None,
        help="cap on solve/cut rounds (default: the number of distinct partitionings)",
    )
    parser.add_argument(
        "--node-limit", type=int, default=None, help="branch-and-bound node cap"
    )
    parser.add_argument(
        "--time-limit-s", type=float, default=None, help="per-solve time cap in seconds"
    )
    parser.add_argument(
        "--int-tol",
        type=float,
        default=1e-9,
        help="relaxation values this close to 0 or 1 count as integral "
        "(default: 1e-9)",
    )
    parser.add_argument(
        "--oracle",
        action="store_true",
        help="use exhaustive enumeration instead of the solver (small models only)",
    )
    parser.add_argument(
        "--report", metavar="PATH", help="write a machine-readable JSON report"
    )
    parser.add_argument(
        "--quiet", action="store_true", help="suppress all non-error output"
    )
    return parser


def _print_grouping(grouping: GroupingPair, out) -> None:
    print("alpha (groups x states):", file=out)
    for row in grouping.alpha:
        print("  [" + " ".join(str(int(v)) for v in row) + "]", file=out)
    print("beta (groups x inputs):", file=out)
    for row in grouping.beta:
        print("  [" + " ".join(str(int(v)) for v in row) + "]", file=out)


def _subsystem_lines(report: SolveReport):
    record = report.per_iteration[-1]
    for sub in record.subsystems:
        states = [i + 1 for i in sub.state_indices]
        inputs = [k + 1 for k in sub.input_indices]
        yield (
            f"  group {sub.group_index + 1}: states {states} inputs {inputs} "
            f"rank {sub.rank}/{sub.dimension}"
        )


def _grouping_to_lists(grouping: GroupingPair):
    return (
        [[int(v) for v in row] for row in grouping.alpha],
        [[int(v) for v in row] for row in grouping.beta],
    )


def _report_document(model: StateSpaceModel, n_groups: int, report: SolveReport, args):
    doc = {
        "schema_version": REPORT_SCHEMA_VERSION,
        "model": {
            "name": model.name,
            "n_states": model.n_states,
            "n_inputs": model.n_inputs,
            "A": [[float(v) for v in row] for row in model.A],
            "B": [[float(v) for v in row] for row in model.B],
        },
        "groups": n_groups,
        "options": {
            "rank_tol": args.rank_tol,
            "zero_tol": args.zero_tol,
            "max_iterations": args.max_iterations,
            "node_limit": args.node_limit,
            "time_limit_s": args.time_limit_s,
            "int_tol": args.int_tol,
        },
        "outcome": report.outcome,
        "objective": report.objective,
        "iterations": report.iterations,
        "cuts_added": report.cuts_added,
        "wall_time_s": report.wall_time,
        "abort_reason": report.abort_reason,
        "alpha": None,
        "beta": None,
        "per_iteration": [],
    }
    if report.grouping is not None:
        doc["alpha"], doc["beta"] = _grouping_to_lists(report.grouping)
    for record in report.per_iteration:
        alpha, beta = _grouping_to_lists(record.grouping)
        doc["per_iteration"].append(
            {
                "objective": record.objective,
                "controllable": record.controllable,
                "alpha": alpha,
                "beta": beta,
                "subsystems": [
                    {
                        "group": sub.group_index + 1,
                        "states": [i + 1 for i in sub.state_indices],
                        "inputs": [k + 1 for k in sub.input_indices],
                        "rank": sub.rank,
                        "dimension": sub.dimension,
                    }
                    for sub in record.subsystems
                ],
            }
        )
    return doc


def _run_engine(model: StateSpaceModel, args, out) -> int:
    options = PartitionOptions(
        rank_tol=args.rank_tol,
        zero_tol=args.zero_tol,
        max_iterations=args.max_iterations,
        node_limit=args.node_limit,
        time_limit_s=args.time_limit_s,
        int_tol=args.int_tol,
    )
    report = partition(model, args.groups, options)

    if not args.quiet:
        name = model.name or args.model
        print(
            f"model: {name} (N={model.n_states} states, M={model.n_inputs} inputs), "
            f"groups: {args.groups}",
            file=out,
        )
        print(f"outcome: {report.outcome}", file=out)
        if report.outcome == OUTCOME_ABORTED:
            print(f"reason: {report.abort_reason}", file=out)
        if report.grouping is not None:
            objective = interaction_cost_blocks(model, report.grouping)
            print(f"objective: {objective:.6f}", file=out)
            _print_grouping(report.grouping, out)
            print("subsystems:", file=out)
            for line in _subsystem_lines(report):
                print(line, file=out)
        if report.per_iteration:
            print("iteration log:", file=out)
            for number, record in enumerate(report.per_iteration, start=1):
                if record.controllable:
                    verdict = "controllable"
                else:
                    failing = [
                        f"group {sub.group_index + 1} rank {sub.rank}/{sub.dimension}"
                        for sub in record.subsystems
                        if sub.rank < sub.dimension
                    ]
                    verdict = "not controllable (" + ", ".join(failing) + ")"
                print(
                    f"  {number}: objective {record.objective:.6f}, {verdict}",
                    file=out,
                )
        print(
            f"iterations: {report.iterations}, cuts added: {report.cuts_added}, "
            f"wall time: {report.wall_time:.2f}s",
            file=out,
        )

    if args.report:
        doc = _report_document(model, args.groups, report, args)
        with open(args.report, "w") as fh:
            json.dump(doc, fh, indent=2)
            fh.write("\n")

    return _EXIT_BY_OUTCOME[report.outcome]


def _run_oracle(model: StateSpaceModel, args, out) -> int:
    started = time.perf_counter()
    result = brute_force_optimum(model, args.groups, tol=args.rank_tol)
    wall = time.perf_counter() - started
    total = len(result.ranking)
    controllable = sum(1 for _, ok, _ in result.ranking if ok)

    if not args.quiet:
        name = model.name or args.model
        print(
            f"model: {name} (N={model.n_states} states, M={model.n_inputs} inputs), "
            f"groups: {args.groups} [oracle mode]",
            file=out,
        )
        print(
            f"enumerated {total} partitionings, {controllable} controllable, "
            f"{wall:.2f}s",
            file=out,
        )
    if result.best_controllable is None:
        if not args.quiet:
            print("outcome: no_controllable_partition", file=out)
        return 2
    grouping, cost = result.best_controllable
    if not args.quiet:
        print("outcome: controllable", file=out)
        print(f"objective: {cost:.6f}", file=out)
        _print_grouping(grouping, out)
    if args.report:
        alpha, beta = _grouping_to_lists(grouping)
        doc = {
            "schema_version": REPORT_SCHEMA_VERSION,
            "mode": "oracle",
            "model": {"name": model.name},
            "groups": args.groups,
            "outcome": "controllable",
            "objective": cost,
            "alpha": alpha,
            "beta": beta,
            "enumerated": total,
            "controllable_count": controllable,
        }
        with open(args.report, "w") as fh:
            json.dump(doc, fh, indent=2)
            fh.write("\n")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = sys.stdout

    try:
        model = load_model(args.model)
        validate_problem(model, args.groups)
    except (ModelFileError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    try:
        if args.oracle:
            return _run_oracle(model, args, out)
        return _run_engine(model, args, out)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
