import json

import numpy as np
import pytest

from qinvert.dims import SubsystemDims
from qinvert.io import (
    StateFileError,
    read_state_file,
    state_from_dict,
    write_state_file,
)
from qinvert.states import DensityMatrix, PureState
from qinvert.zoo import ginibre_mixed, haar_pure


def test_pure_roundtrip_is_exact(tmp_path):
    dims = SubsystemDims((2, 3))
    psi = haar_pure(dims, 400)
    path = tmp_path / "psi.json"
    write_state_file(path, psi, label="sample")
    loaded = read_state_file(path)
    assert isinstance(loaded, PureState)
    assert loaded.dims.dims == (2, 3)
    assert np.array_equal(loaded.vector, psi.vector)


def test_mixed_roundtrip_is_exact(tmp_path):
    dims = SubsystemDims((2, 2))
    rho = ginibre_mixed(dims, 401)
    path = tmp_path / "rho.json"
    write_state_file(path, rho)
    loaded = read_state_file(path)
    assert isinstance(loaded, DensityMatrix)
    assert np.array_equal(loaded.matrix, rho.matrix)


def test_label_preserved(tmp_path):
    rho = ginibre_mixed(SubsystemDims((2,)), 402)
    path = tmp_path / "rho.json"
    write_state_file(path, rho, label="noisy source")
    obj = json.loads(path.read_text())
    assert obj["label"] == "noisy source"


def test_missing_field():
    with pytest.raises(StateFileError, match="missing"):
        state_from_dict({"dims": [2], "kind": "pure"})


def test_invalid_json_file(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{"dims": [2, 2], "kind": "pure", "data": [[1.0')
    with pytest.raises(StateFileError, match="JSON"):
        read_state_file(path)


def test_wrong_length_pure():
    with pytest.raises(StateFileError, match="length"):
        state_from_dict({"dims": [2, 2], "kind": "pure", "data": [[1.0, 0.0]]})


def test_invalid_state_fails_invariant():
    obj = {
        "dims": [2],
        "kind": "mixed",
        "data": [[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [1.0, 0.0]]],
    }
    with pytest.raises(ValueError, match="trace"):
        state_from_dict(obj)


def test_unknown_kind():
    with pytest.raises(StateFileError, match="kind"):
        state_from_dict({"dims": [2], "kind": "stabilizer", "data": []})


def test_dims_with_trivial_party_rejected():
    with pytest.raises(StateFileError, match="dims"):
        state_from_dict({"dims": [2, 1], "kind": "pure", "data": [[1.0, 0.0], [0.0, 0.0]]})


def test_missing_file():
    with pytest.raises(StateFileError, match="cannot read"):
        read_state_file("/nonexistent/state.json")
