"""JSON state files with explicit [re, im] entry pairs.

The decimal encoding uses Python's shortest round-trip float repr, so a
write/read cycle reproduces every entry exactly.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .dims import DEFAULT_DIM_CAP, SubsystemDims
from .states import DensityMatrix, PureState


class StateFileError(ValueError):
    """Raised when a state file cannot be parsed or fails validation."""


def state_to_dict(state: DensityMatrix | PureState, label: str | None = None) -> dict:
    out: dict = {"dims": list(state.dims.dims)}
    if isinstance(state, PureState):
        out["kind"] = "pure"
        out["data"] = [[z.real, z.imag] for z in state.vector]
    elif isinstance(state, DensityMatrix):
        out["kind"] = "mixed"
        out["data"] = [[[z.real, z.imag] for z in row] for row in state.matrix]
    else:
        raise TypeError(f"cannot serialize {type(state).__name__}")
    if label is not None:
        out["label"] = label
    return out


def state_from_dict(obj: dict, cap: int = DEFAULT_DIM_CAP) -> DensityMatrix | PureState:
    if not isinstance(obj, dict):
        raise StateFileError("state file must hold a JSON object")
    for key in ("dims", "kind", "data"):
        if key not in obj:
            raise StateFileError(f"state file is missing the {key!r} field")
    try:
        dims = SubsystemDims(tuple(int(d) for d in obj["dims"]), cap=cap)
    except (TypeError, ValueError) as exc:
        raise StateFileError(f"invalid dims: {exc}") from exc
    kind = obj["kind"]
    data = obj["data"]
    d = dims.total
    try:
        if kind == "pure":
            vec = np.array(
                [complex(re, im) for re, im in data], dtype=np.complex128
            )
            if vec.shape != (d,):
                raise StateFileError(
                    f"pure data length {vec.shape[0]} does not match dimension {d}"
                )
            return PureState(vec, dims)
        if kind == "mixed":
            mat = np.array(
                [[complex(re, im) for re, im in row] for row in data],
                dtype=np.complex128,
            )
            if mat.shape != (d, d):
                raise StateFileError(
                    f"mixed data shape {mat.shape} does not match dimension {d}"
                )
            return DensityMatrix(mat, dims)
    except StateFileError:
        raise
    except (TypeError, ValueError) as exc:
        raise StateFileError(f"invalid state data: {exc}") from exc
    raise StateFileError(f"unknown state kind {kind!r}")


def write_state_file(
    path: str | Path, state: DensityMatrix | PureState, label: str | None = None
) -> None:
    payload = state_to_dict(state, label=label)
    Path(path).write_text(json.dumps(payload) + "\n", encoding="utf-8")


def read_state_file(
    path: str | Path, cap: int = DEFAULT_DIM_CAP
) -> DensityMatrix | PureState:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise StateFileError(f"cannot read state file {path}: {exc}") from exc
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StateFileError(f"state file {path} is not valid JSON: {exc}") from exc
    return state_from_dict(obj, cap=cap)
