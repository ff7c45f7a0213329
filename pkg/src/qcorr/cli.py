"""Command-line front end.

Commands
--------
measure         one row per requested measure of a state file
monogamy        run one relation checker against a state file
sweep           run a relation checker over a random-state ensemble
counterexample  recompute a named benchmark state's expected table

Outputs are CSV (flat rows) or JSON; sweeps additionally write a
``*.summary.json`` next to the row file. ``--timestamp fixed`` freezes
the timestamp and wall-time fields so reruns are byte-identical.
``QCORR_THREADS`` caps the sweep worker pool (default 1); rows are
sorted by sample index, so the pool size never changes file content.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

from . import io as qio
from .canonical import CanonicalParams, canonical_state
from .measures import (Direction, Measure, geometric_discord_closed,
                       geometric_discord_oracle, horodecki_M, min_hs_closed,
                       min_hs_oracle, min_trace_norm_oracle, negativity,
                       quantum_discord)
from .monogamy import (Relation, averages, check_bell_monogamy,
                       check_chain_mixed, check_min_pure, counterexample,
                       evaluate_counterexample, multiqubit_bell_sum,
                       nosignaling_sum)
from .sampling import SampleSpec, StateFamily, generate
from .states import DensityMatrix, PureState

EXIT_OK = 0
EXIT_UNSATISFIED = 1
EXIT_BAD_STATE = 2
EXIT_BAD_MEASURE = 3
EXIT_ARITY = 4

FIXED_TIMESTAMP = "1970-01-01T00:00:00Z"


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


@dataclass
class RunConfig:
    command: str
    state_path: str | None = None
    measures: list[str] | None = None
    relation: str | None = None
    sample_spec: SampleSpec | None = None
    grid_points: int = 1000
    refine_iters: int = 200
    tolerance: float | None = None
    out_path: str = "-"
    format: str = "json"
    timestamp: str = "now"

    def __post_init__(self):
        if self.grid_points < 8:
            raise CliError(EXIT_BAD_MEASURE, "grid-points must be >= 8")


def _timestamp(config: RunConfig) -> str:
    if config.timestamp == "fixed":
        return FIXED_TIMESTAMP
    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def _load_state(path: str):
    if path is None:
        raise CliError(EXIT_BAD_STATE, "--state is required for this command")
    try:
        return qio.load_state(path)
    except qio.StateFormatError as exc:
        raise CliError(EXIT_BAD_STATE, f"bad state file: {exc}") from exc


def _write_output(config: RunConfig, payload: dict, rows: list[dict]) -> None:
    if config.format == "csv":
        if config.out_path == "-":
            raise CliError(EXIT_BAD_MEASURE, "csv output requires --out")
        qio.write_csv(config.out_path, rows)
    elif config.out_path == "-":
        json.dump(payload, sys.stdout, indent=2)
        sys.stdout.write("\n")
    else:
        qio.write_json(config.out_path, payload)


def _axis_list(value):
    if value.optimizer_direction is None:
        return None
    return [float(x) for x in value.optimizer_direction]


# ---------------------------------------------------------------------------
# measure
# ---------------------------------------------------------------------------

_ALL_MEASURES = [m.value for m in Measure]


def _measure_rows(state: DensityMatrix, names: list[str],
                  grid_points: int, refine_iters: int) -> list[dict]:
    rows = []
    explicit = names != _ALL_MEASURES
    two_qubit = state.qubit_count == 2

    def emit(mv):
        rows.append({"measure": mv.name.value, "direction": mv.direction.value,
                     "method": mv.method.value, "value": mv.value,
                     "axis": _axis_list(mv)})

    for name in names:
        if name not in _ALL_MEASURES:
            raise CliError(EXIT_BAD_MEASURE, f"unknown measure {name!r}")
        measure = Measure(name)
        if measure == Measure.MIN_HS:
            if two_qubit:
                emit(min_hs_closed(state, Direction.A_TO_B))
            emit(min_hs_oracle(state, 0, grid_points, refine_iters))
        elif measure == Measure.MIN_TRACE:
            emit(min_trace_norm_oracle(state, 0, grid_points, refine_iters))
        elif measure == Measure.HORODECKI:
            if not two_qubit:
                if explicit:
                    raise CliError(EXIT_BAD_MEASURE,
                                   "HORODECKI requires a two-qubit state")
                continue
            emit(horodecki_M(state)[0])
        elif measure == Measure.GEOM_DISCORD:
            if two_qubit:
                emit(geometric_discord_closed(state, Direction.A_TO_B))
            emit(geometric_discord_oracle(state, 0, grid_points, refine_iters))
        elif measure == Measure.NEGATIVITY:
            emit(negativity(state, (0,)))
        elif measure == Measure.DISCORD:
            emit(quantum_discord(state, 0, grid_points, refine_iters))
    return rows


def cmd_measure(config: RunConfig) -> int:
    state = _load_state(config.state_path)
    if isinstance(state, PureState):
        state = state.to_density()
    names = config.measures or _ALL_MEASURES
    results = _measure_rows(state, names, config.grid_points,
                            config.refine_iters)
    state_id = f"file:{Path(config.state_path).name}"
    payload = {
        "command": "measure",
        "state_id": state_id,
        "timestamp": _timestamp(config),
        "results": results,
    }
    rows = [{"state_id": state_id, "relation": r["measure"],
             "term": r["direction"], "value": r["value"],
             "method": r["method"], "residual": "", "satisfied": ""}
            for r in results]
    _write_output(config, payload, rows)
    return EXIT_OK


# ---------------------------------------------------------------------------
# monogamy
# ---------------------------------------------------------------------------

def _run_relation(relation: Relation, sample, state_id: str,
                  tolerance: float | None, grid_points: int,
                  refine_iters: int):
    kwargs = {} if tolerance is None else {"tolerance": tolerance}
    if relation == Relation.MIN_PURE:
        if not isinstance(sample, PureState):
            raise CliError(EXIT_ARITY, "MIN_PURE requires a pure state")
        if sample.qubit_count != 3:
            raise CliError(EXIT_ARITY, "MIN_PURE requires 3 qubits")
        return check_min_pure(sample, state_id, **kwargs)
    state = sample.to_density() if isinstance(sample, PureState) else sample
    if relation in (Relation.BELL_PAIR, Relation.CHAIN_MIXED):
        if state.qubit_count != 3:
            raise CliError(EXIT_ARITY, f"{relation.value} requires 3 qubits")
    elif state.qubit_count < 3:
        raise CliError(EXIT_ARITY, f"{relation.value} requires >= 3 qubits")
    if relation == Relation.BELL_PAIR:
        return check_bell_monogamy(state, state_id, **kwargs)
    if relation == Relation.CHAIN_MIXED:
        return check_chain_mixed(state, state_id,
                                 grid_points=grid_points,
                                 refine_iters=refine_iters, **kwargs)
    if relation == Relation.MULTI_BELL:
        return multiqubit_bell_sum(state, 0, state_id, **kwargs)
    if relation == Relation.NOSIGNALING:
        return nosignaling_sum(state, 0, state_id, **kwargs)
    if relation == Relation.AVERAGES:
        return averages(state, 0, state_id, grid_points=grid_points,
                        refine_iters=refine_iters, **kwargs)
    raise CliError(EXIT_BAD_MEASURE, f"unknown relation {relation}")


def _parse_relation(name: str | None) -> Relation:
    if name is None:
        raise CliError(EXIT_BAD_MEASURE, "--relation is required")
    try:
        return Relation(name)
    except ValueError as exc:
        raise CliError(EXIT_BAD_MEASURE, f"unknown relation {name!r}") from exc


def _report_rows(report) -> list[dict]:
    rows = [{"state_id": report.state_id, "relation": report.relation.value,
             "term": term, "value": value,
             "method": report.methods.get(term, ""),
             "residual": report.residual, "satisfied": report.satisfied}
            for term, value in report.terms.items()]
    return rows


def cmd_monogamy(config: RunConfig) -> int:
    relation = _parse_relation(config.relation)
    state = _load_state(config.state_path)
    state_id = f"file:{Path(config.state_path).name}"
    report = _run_relation(relation, state, state_id, config.tolerance,
                           config.grid_points, config.refine_iters)
    payload = qio.report_to_dict(report)
    payload["timestamp"] = _timestamp(config)
    _write_output(config, payload, _report_rows(report))
    return EXIT_OK if report.satisfied else EXIT_UNSATISFIED


# ---------------------------------------------------------------------------
# sweep
# ---------------------------------------------------------------------------

def _sweep_one(args) -> tuple[int, float, bool]:
    relation_name, spec, index, tolerance, grid_points, refine_iters = args
    relation = Relation(relation_name)
    sample = generate(spec, index)
    if isinstance(sample, CanonicalParams):
        sample = canonical_state(sample)
    state_id = _sample_id(spec, index)
    report = _run_relation(relation, sample, state_id, tolerance,
                           grid_points, refine_iters)
    return index, report.residual, report.satisfied


def _sample_id(spec: SampleSpec, index: int) -> str:
    return f"{spec.family.value}-n{spec.qubit_count}-seed{spec.seed}-{index:06d}"


def _worker_count() -> int:
    value = os.environ.get("QCORR_THREADS", "1")
    try:
        return max(1, int(value))
    except ValueError:
        return 1


def cmd_sweep(config: RunConfig) -> int:
    relation = _parse_relation(config.relation)
    spec = config.sample_spec
    if spec is None:
        raise CliError(EXIT_BAD_MEASURE, "sweep requires --family and --samples")
    jobs = [(relation.value, spec, index, config.tolerance,
             config.grid_points, config.refine_iters)
            for index in range(spec.count)]
    start = time.perf_counter()
    workers = _worker_count()
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_sweep_one, jobs, chunksize=16))
    else:
        results = [_sweep_one(job) for job in jobs]
    wall = time.perf_counter() - start
    results.sort(key=lambda item: item[0])

    rows = [{"state_id": _sample_id(spec, index), "relation": relation.value,
             "term": "residual", "value": residual, "method": "",
             "residual": residual, "satisfied": satisfied}
            for index, residual, satisfied in results]
    violations = sum(1 for _, _, ok in results if not ok)
    summary = {
        "command": "sweep",
        "relation": relation.value,
        "sample_spec": qio.sample_spec_to_dict(spec),
        "count": spec.count,
        "max_residual": max(r for _, r, _ in results),
        "violations": violations,
        "wall_time_s": 0.0 if config.timestamp == "fixed" else round(wall, 3),
        "grid_points": config.grid_points,
        "refine_iters": config.refine_iters,
        "tolerance": config.tolerance,
        "timestamp": _timestamp(config),
    }
    if config.out_path == "-":
        raise CliError(EXIT_BAD_MEASURE, "sweep requires --out")
    if config.format == "csv":
        qio.write_csv(config.out_path, rows)
    else:
        qio.write_json(config.out_path, {"rows": rows, **summary})
    qio.write_json(Path(config.out_path).with_suffix(".summary.json"), summary)
    return EXIT_OK if violations == 0 else EXIT_UNSATISFIED


# ---------------------------------------------------------------------------
# counterexample
# ---------------------------------------------------------------------------

def cmd_counterexample(config: RunConfig, name: str, alpha: float | None,
                       qubits: int | None) -> int:
    try:
        ce = counterexample(name, alpha=alpha, qubits=qubits)
    except ValueError as exc:
        raise CliError(EXIT_BAD_MEASURE, str(exc)) from exc
    computed, worst, ok = evaluate_counterexample(ce, config.grid_points,
                                                  config.refine_iters)
    table = [{"term": item.term, "expected": item.value,
              "computed": computed[item.term],
              "deviation": abs(computed[item.term] - item.value),
              "method": item.method.value, "tolerance": item.tolerance,
              "satisfied": abs(computed[item.term] - item.value) <= item.tolerance}
             for item in ce.expected]
    payload = {
        "command": "counterexample",
        "name": name,
        "timestamp": _timestamp(config),
        "rows": table,
        "max_deviation": worst,
        "satisfied": ok,
    }
    pair_terms = [t for t in computed if t.startswith("D_M(A->")]
    joint_terms = [t for t in pair_terms if len(t) > len("D_M(A->X)")]
    if joint_terms and len(pair_terms) > len(joint_terms):
        joint = computed[joint_terms[0]]
        pair_sum = sum(computed[t] for t in pair_terms if t not in joint_terms)
        payload["min_sum_exceeds_joint"] = bool(pair_sum > joint + 1e-9)
    rows = [{"state_id": name, "relation": "counterexample", "term": r["term"],
             "value": r["computed"], "method": r["method"],
             "residual": r["deviation"], "satisfied": r["satisfied"]}
            for r in table]
    _write_output(config, payload, rows)
    return EXIT_OK if ok else EXIT_UNSATISFIED


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qcorr",
        description="Nonclassical-correlation measures and monogamy checks "
                    "for multi-qubit states")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--grid-points", type=int, default=1000)
        p.add_argument("--refine-iters", type=int, default=200)
        p.add_argument("--tolerance", type=float, default=None)
        p.add_argument("--out", default="-")
        p.add_argument("--format", choices=("csv", "json"), default="json")
        p.add_argument("--timestamp", choices=("now", "fixed"), default="now")

    p = sub.add_parser("measure", help="compute measures of a state file")
    p.add_argument("--state", required=True)
    p.add_argument("--measures", default="all",
                   help="comma-separated measure names or 'all'")
    common(p)

    p = sub.add_parser("monogamy", help="check one relation on a state file")
    p.add_argument("--state", required=True)
    p.add_argument("--relation", required=True)
    common(p)

    p = sub.add_parser("sweep", help="check a relation over random states")
    p.add_argument("--relation", required=True)
    p.add_argument("--family", required=True,
                   choices=[f.value for f in StateFamily])
    p.add_argument("--qubits", type=int, default=3)
    p.add_argument("--rank", type=int, default=None)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    common(p)

    p = sub.add_parser("counterexample", help="recompute a named state's table")
    p.add_argument("--name", required=True)
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--qubits", type=int, default=None)
    common(p)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        config = RunConfig(
            command=args.command,
            state_path=getattr(args, "state", None),
            relation=getattr(args, "relation", None),
            grid_points=args.grid_points,
            refine_iters=args.refine_iters,
            tolerance=args.tolerance,
            out_path=args.out,
            format=args.format,
            timestamp=args.timestamp,
        )
        if args.command == "measure":
            requested = args.measures.strip()
            config.measures = (_ALL_MEASURES if requested == "all"
                               else [m.strip() for m in requested.split(",")])
            return cmd_measure(config)
        if args.command == "monogamy":
            return cmd_monogamy(config)
        if args.command == "sweep":
            config.sample_spec = SampleSpec(
                family=StateFamily(args.family),
                qubit_count=args.qubits,
                seed=args.seed,
                count=args.samples,
                rank=args.rank,
            )
            return cmd_sweep(config)
        if args.command == "counterexample":
            return cmd_counterexample(config, args.name, args.alpha,
                                      args.qubits)
        raise CliError(EXIT_BAD_MEASURE, f"unknown command {args.command}")
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_MEASURE


if __name__ == "__main__":
    sys.exit(main())
