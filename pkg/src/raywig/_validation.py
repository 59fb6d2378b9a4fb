"""Tolerances and input validation helpers shared by every module."""

import os
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from .exceptions import DimensionError, DomainError, InputError, ZeroVectorError

TOL_ENV_VAR = "RAYWIG_TOL"


@dataclass(frozen=True)
class Tolerances:
    """Numerical thresholds.

    eq_tol decides equality of reals and complex numbers, orth_tol is the
    modulus below which an inner product counts as exactly zero, and
    canon_tol is the modulus an amplitude must exceed to fix the canonical
    gauge of a ray.
    """

    eq_tol: float = 1e-10
    orth_tol: float = 1e-12
    canon_tol: float = 1e-12

    def __post_init__(self):
        for name in ("eq_tol", "orth_tol", "canon_tol"):
            value = getattr(self, name)
            if not (0.0 < value < 1e-3):
                raise DomainError(f"{name} must lie in (0, 1e-3), got {value!r}")


def default_tolerances() -> Tolerances:
    """Defaults, with eq_tol overridden by ``$RAYWIG_TOL`` when set."""
    env = os.environ.get(TOL_ENV_VAR)
    if env is None or env.strip() == "":
        return Tolerances()
    try:
        eq_tol = float(env)
    except ValueError:
        raise InputError(f"{TOL_ENV_VAR}={env!r} is not a number") from None
    return replace(Tolerances(), eq_tol=eq_tol)


def resolve_tol(tol: Optional[Tolerances]) -> Tolerances:
    return default_tolerances() if tol is None else tol


def as_state(v, *, allow_zero=False, tol=None) -> np.ndarray:
    """Validate ``v`` as a state vector and return it as a complex 1-D array."""
    try:
        arr = np.asarray(v, dtype=np.complex128)
    except (TypeError, ValueError) as exc:
        raise InputError(f"cannot interpret {v!r} as a complex vector") from exc
    if arr.ndim != 1 or arr.size == 0:
        raise DimensionError(f"state vector must be 1-D and non-empty, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InputError("state vector contains NaN or Inf")
    if not allow_zero:
        tol = resolve_tol(tol)
        if np.linalg.norm(arr) <= tol.orth_tol:
            raise ZeroVectorError("the zero vector does not lie on any ray")
    return arr


def as_states(X, *, tol=None) -> np.ndarray:
    """Validate a batch of state vectors, one per row."""
    arr = np.asarray(X, dtype=np.complex128)
    if arr.ndim == 1:
        arr = arr[np.newaxis, :]
    if arr.ndim != 2 or arr.shape[1] == 0:
        raise DimensionError(f"expected shape (n_states, dim), got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InputError("state batch contains NaN or Inf")
    return arr


def check_same_dim(*vectors):
    dims = {len(v) for v in vectors}
    if len(dims) != 1:
        raise DimensionError(f"dimension mismatch: {sorted(dims)}")
    return dims.pop()


def as_square_matrix(M, dim=None) -> np.ndarray:
    arr = np.asarray(M, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {arr.shape}")
    if dim is not None and arr.shape[0] != dim:
        raise DimensionError(f"matrix has size {arr.shape[0]}, expected {dim}")
    if not np.all(np.isfinite(arr)):
        raise InputError("matrix contains NaN or Inf")
    return arr


def check_random_state(seed) -> np.random.Generator:
    """Turn None, an int, or a Generator into a Generator."""
    if isinstance(seed, np.random.Generator):
        return seed
    if seed is None or isinstance(seed, (int, np.integer)):
        return np.random.default_rng(seed)
    raise InputError(f"{seed!r} cannot be used to seed a numpy Generator")
