"""File formats: state JSON, canonical-parameter JSON, report JSON, CSV.

State files are ``{"qubits": n, "kind": "density"|"pure", "data":
[[re, im], ...]}`` with density entries row-major. Floats are written
with Python's shortest round-trip repr, so values representable in
double precision survive a save/load cycle bit-identically.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .canonical import CanonicalParams
from .monogamy import MonogamyReport
from .sampling import SampleSpec, StateFamily
from .states import DensityMatrix, PureState

CSV_COLUMNS = ("state_id", "relation", "term", "value", "method",
               "residual", "satisfied")


class StateFormatError(ValueError):
    """Raised when a state file cannot be parsed or validated."""


def state_to_dict(state: DensityMatrix | PureState) -> dict:
    if isinstance(state, DensityMatrix):
        flat = state.entries.reshape(-1)
        kind = "density"
    elif isinstance(state, PureState):
        flat = state.amplitudes
        kind = "pure"
    else:
        raise TypeError(f"cannot serialize {type(state).__name__}")
    data = [[float(z.real), float(z.imag)] for z in flat]
    return {"qubits": state.qubit_count, "kind": kind, "data": data}


def state_from_dict(payload: dict) -> DensityMatrix | PureState:
    try:
        qubits = int(payload["qubits"])
        kind = payload["kind"]
        pairs = payload["data"]
        flat = np.array([complex(re, im) for re, im in pairs])
    except (KeyError, TypeError, ValueError) as exc:
        raise StateFormatError(f"malformed state payload: {exc}") from exc
    d = 2 ** qubits
    try:
        if kind == "density":
            if flat.size != d * d:
                raise ValueError(f"expected {d * d} entries, got {flat.size}")
            return DensityMatrix(flat.reshape(d, d), qubits)
        if kind == "pure":
            if flat.size != d:
                raise ValueError(f"expected {d} amplitudes, got {flat.size}")
            return PureState(flat, qubits)
    except ValueError as exc:
        raise StateFormatError(str(exc)) from exc
    raise StateFormatError(f"unknown state kind {kind!r}")


def save_state(path, state: DensityMatrix | PureState) -> None:
    Path(path).write_text(json.dumps(state_to_dict(state)) + "\n")


def load_state(path) -> DensityMatrix | PureState:
    try:
        payload = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise StateFormatError(f"cannot read state file {path}: {exc}") from exc
    return state_from_dict(payload)


def canonical_params_to_dict(params: CanonicalParams) -> dict:
    return {"lambda": [float(v) for v in params.lambdas],
            "phi": float(params.phi)}


def canonical_params_from_dict(payload: dict) -> CanonicalParams:
    return CanonicalParams(np.asarray(payload["lambda"], dtype=float),
                           float(payload["phi"]))


def sample_spec_to_dict(spec: SampleSpec) -> dict:
    return {"family": spec.family.value, "qubit_count": spec.qubit_count,
            "seed": spec.seed, "count": spec.count, "rank": spec.rank}


def sample_spec_from_dict(payload: dict) -> SampleSpec:
    return SampleSpec(family=StateFamily(payload["family"]),
                      qubit_count=int(payload["qubit_count"]),
                      seed=int(payload["seed"]),
                      count=int(payload["count"]),
                      rank=None if payload.get("rank") is None
                      else int(payload["rank"]))


def report_to_dict(report: MonogamyReport) -> dict:
    return {
        "relation": report.relation.value,
        "state_id": report.state_id,
        "terms": report.terms,
        "bound": report.bound,
        "residual": report.residual,
        "satisfied": report.satisfied,
        "tolerance": report.tolerance,
    }


def write_json(path, payload: dict) -> None:
    Path(path).write_text(json.dumps(payload, indent=2, sort_keys=False) + "\n")


def write_csv(path, rows) -> None:
    """Rows are dicts keyed by CSV_COLUMNS; floats use round-trip repr."""
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(CSV_COLUMNS)
        for row in rows:
            writer.writerow([_format_cell(row.get(col, "")) for col in CSV_COLUMNS])


def _format_cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)
