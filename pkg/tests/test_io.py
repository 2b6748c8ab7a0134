import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from modwedge.errors import ValidationError
from modwedge.hilbert import real_form, subspace_distance
from modwedge.io import csv_text, decode_matrix, dumps, encode_matrix, frame_from_json, frame_to_json, read_json
from modwedge.modular import random_standard_subspace

finite = st.floats(allow_nan=False, allow_infinity=False)


@given(finite)
def test_float_round_trip_exact(x):
    assert json.loads(dumps([x]))[0] == x


def test_dumps_sorted_and_stable():
    a = dumps({"b": 1.0, "a": [0.1, 2], "c": {"z": True, "y": None}})
    assert a == dumps({"c": {"y": None, "z": True}, "a": [0.1, 2], "b": 1.0})
    assert a.index('"a"') < a.index('"b"') < a.index('"c"')
    assert a.endswith("\n")
    assert "1.0" in a  # integral floats keep a decimal point


def test_matrix_round_trip(rng):
    m = rng.standard_normal((3, 4)) + 1j * rng.standard_normal((3, 4))
    np.testing.assert_array_equal(decode_matrix(json.loads(dumps(encode_matrix(m)))), m)


def test_decode_rejects_bare_numbers():
    with pytest.raises(ValidationError):
        decode_matrix([1.0, 2.0, 3.0])


def test_frame_round_trip(rng):
    v = random_standard_subspace(4, rng)
    back = frame_from_json(json.loads(dumps(frame_to_json(v))))
    assert subspace_distance(back, v) < 1e-14
    assert frame_from_json(frame_to_json(real_form(2))).dim == 2


def test_frame_rejects_bad_lengths():
    with pytest.raises(ValidationError):
        frame_from_json({"ambient_dim": 3, "columns": [[[1, 0], [0, 0]]]})
    with pytest.raises(ValidationError):
        frame_from_json({"columns": []})


def test_read_json_invalid(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{nope")
    with pytest.raises(ValidationError):
        read_json(p)


def test_csv_text():
    assert csv_text(["a", "b"], [(1, 0.5), ("x", 2.0)]) == "a,b\n1,0.5\nx,2.0\n"


def test_numpy_scalars():
    assert dumps({"a": np.bool_(True), "b": np.int64(3), "c": np.float64(0.5)}) == (
        '{\n  "a": true,\n  "b": 3,\n  "c": 0.5\n}\n'
    )
