"""JSON forms of states, rays, oracles and lifted symmetries.

Complex numbers are ``[re, im]`` pairs.  Floats are written with Python's
shortest round-trip repr, so parse -> serialize reproduces the same bytes.
"""

import json
from pathlib import Path

import numpy as np

from ._validation import as_square_matrix, as_state
from .exceptions import DimensionError, InputError, ParseError
from .hilbert import Ray
from .isometry import LiftedSymmetry, MatrixRayMap

__all__ = [
    "dumps",
    "state_to_json",
    "state_from_json",
    "ray_to_json",
    "ray_from_json",
    "oracle_to_json",
    "oracle_from_json",
    "lift_to_json",
    "lift_from_json",
    "load_json",
    "load_state",
    "load_oracle",
]


def dumps(obj) -> str:
    return json.dumps(obj, allow_nan=False)


def _pairs(values):
    return [[float(z.real), float(z.imag)] for z in values]


def _complex_list(pairs, what):
    try:
        out = [complex(float(re), float(im)) for re, im in pairs]
    except (TypeError, ValueError) as exc:
        raise ParseError(f"{what}: expected a list of [re, im] pairs") from exc
    return out


def state_to_json(v) -> dict:
    v = as_state(v, allow_zero=True)
    return {"dim": int(v.shape[0]), "amp": _pairs(v)}


def state_from_json(obj) -> np.ndarray:
    if not isinstance(obj, dict) or "dim" not in obj or "amp" not in obj:
        raise ParseError('state JSON needs "dim" and "amp" keys')
    amp = _complex_list(obj["amp"], "amp")
    if not isinstance(obj["dim"], int) or obj["dim"] != len(amp):
        raise ParseError(f'"dim" is {obj["dim"]!r} but {len(amp)} amplitudes were given')
    return as_state(amp)


def ray_to_json(r: Ray) -> dict:
    return state_to_json(r.rep)


def ray_from_json(obj) -> Ray:
    return Ray(state_from_json(obj))


def _matrix_to_json(M):
    return [_pairs(row) for row in M]


def _matrix_from_json(rows, dim):
    if not isinstance(rows, list) or len(rows) != dim:
        raise ParseError(f'"matrix" must have {dim} rows')
    M = np.array([_complex_list(row, "matrix row") for row in rows], dtype=np.complex128)
    try:
        return as_square_matrix(M, dim)
    except (DimensionError, InputError) as exc:
        raise ParseError(str(exc)) from exc


def oracle_to_json(oracle: MatrixRayMap) -> dict:
    return {"dim": oracle.dim, "kind": oracle.kind, "matrix": _matrix_to_json(oracle.matrix)}


def oracle_from_json(obj) -> MatrixRayMap:
    if not isinstance(obj, dict) or not {"dim", "kind", "matrix"} <= obj.keys():
        raise ParseError('oracle JSON needs "dim", "kind" and "matrix" keys')
    if obj["kind"] not in ("unitary", "antiunitary"):
        raise ParseError(f'unknown oracle kind {obj["kind"]!r}')
    dim = obj["dim"]
    if not isinstance(dim, int) or dim < 1:
        raise ParseError(f'"dim" must be a positive integer, got {dim!r}')
    M = _matrix_from_json(obj["matrix"], dim)
    return MatrixRayMap(M, antiunitary=obj["kind"] == "antiunitary")


def lift_to_json(lift: LiftedSymmetry) -> dict:
    return {
        "dim": lift.dim,
        "kind": "antiunitary" if lift.antiunitary else "unitary",
        "matrix": _matrix_to_json(lift.matrix),
        "antiunitary": lift.antiunitary,
        "chi": lift.chi.value,
        "reference": state_to_json(lift.reference),
        "reference_image": state_to_json(lift.reference_image),
    }


def lift_from_json(obj) -> LiftedSymmetry:
    oracle = oracle_from_json(obj)
    try:
        reference = state_from_json(obj["reference"])
        reference_image = state_from_json(obj["reference_image"])
    except KeyError as exc:
        raise ParseError(f"lifted symmetry JSON is missing {exc}") from None
    return LiftedSymmetry(
        dim=oracle.dim,
        matrix=np.array(oracle.matrix),
        antiunitary=oracle.antiunitary,
        reference=reference,
        reference_image=reference_image,
    )


def load_json(path):
    try:
        with open(Path(path)) as fh:
            return json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path} is not valid JSON: {exc}") from exc


def load_state(path) -> np.ndarray:
    return state_from_json(load_json(path))


def load_oracle(path) -> MatrixRayMap:
    return oracle_from_json(load_json(path))
