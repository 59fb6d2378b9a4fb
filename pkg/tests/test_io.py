import json
import math

import numpy as np
import pytest
from hypothesis import given
from numpy.testing import assert_allclose

from raywig import MatrixRayMap, Ray, haar_unitary, wigner_lift
from raywig import io as rio
from raywig.exceptions import InputError, ParseError

from conftest import complex_vectors


def test_state_form():
    assert rio.state_to_json([1, 1j]) == {"dim": 2, "amp": [[1.0, 0.0], [0.0, 1.0]]}


@given(complex_vectors())
def test_state_round_trip_is_byte_identical(v):
    text = rio.dumps(rio.state_to_json(v))
    again = rio.dumps(rio.state_to_json(rio.state_from_json(json.loads(text))))
    assert text == again
    assert_allclose(rio.state_from_json(json.loads(text)), v, rtol=0, atol=0)


def test_ray_serialized_as_canonical_rep():
    r = Ray([0, 3 - 4j])
    assert rio.ray_to_json(r) == {"dim": 2, "amp": [[0.0, 0.0], [1.0, 0.0]]}
    assert rio.ray_from_json(rio.ray_to_json(r)) == r


@pytest.mark.parametrize(
    "bad",
    [
        {"dim": 3, "amp": [[1, 0], [0, 1]]},
        {"amp": [[1, 0]]},
        {"dim": 1, "amp": [[1]]},
        {"dim": 1, "amp": [["x", 0]]},
        [1, 2],
    ],
)
def test_state_parse_errors(bad):
    with pytest.raises(ParseError):
        rio.state_from_json(bad)


def test_nan_state_rejected():
    with pytest.raises(InputError):
        rio.state_from_json({"dim": 2, "amp": [[math.nan, 0], [1, 0]]})


def test_oracle_round_trip():
    U = haar_unitary(3, rng=2)
    oracle = MatrixRayMap(U, antiunitary=True)
    obj = rio.oracle_to_json(oracle)
    assert obj["kind"] == "antiunitary" and obj["dim"] == 3
    back = rio.oracle_from_json(json.loads(rio.dumps(obj)))
    assert back.antiunitary and np.array_equal(back.matrix, U)
    assert rio.dumps(rio.oracle_to_json(back)) == rio.dumps(obj)


@pytest.mark.parametrize(
    "bad",
    [
        {"dim": 2, "kind": "projective", "matrix": [[[1, 0], [0, 0]], [[0, 0], [1, 0]]]},
        {"dim": 2, "kind": "unitary", "matrix": [[[1, 0], [0, 0]]]},
        {"dim": 2, "kind": "unitary"},
        {"dim": 0, "kind": "unitary", "matrix": []},
    ],
)
def test_oracle_parse_errors(bad):
    with pytest.raises(ParseError):
        rio.oracle_from_json(bad)


def test_lift_round_trip():
    lift = wigner_lift(MatrixRayMap(haar_unitary(3, rng=4), antiunitary=True), rng=0)
    obj = rio.lift_to_json(lift)
    assert obj["antiunitary"] is True and obj["chi"] == "conjugation"
    text = rio.dumps(obj)
    back = rio.lift_from_json(json.loads(text))
    assert rio.dumps(rio.lift_to_json(back)) == text
    assert np.array_equal(back.matrix, lift.matrix)


def test_load_missing_file(tmp_path):
    with pytest.raises(ParseError):
        rio.load_state(tmp_path / "nope.json")


def test_load_invalid_json(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    with pytest.raises(ParseError):
        rio.load_state(p)
