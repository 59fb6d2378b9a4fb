"""Complex state vectors, rays, and the overlap metric on ray space.

A state vector is a plain 1-D complex numpy array.  A :class:`Ray` is the
one-dimensional subspace it spans, stored through a canonical unit
representative whose first significant amplitude is real and positive.
"""

import numpy as np
from scipy.stats import unitary_group

from ._validation import as_state, check_random_state, check_same_dim, resolve_tol
from .exceptions import DimensionError, ZeroVectorError

__all__ = [
    "Ray",
    "inner_product",
    "project_to_ray",
    "overlap",
    "ray_distance",
    "random_state",
    "random_states",
    "haar_unitary",
]


def _canonical_rep(v, canon_tol):
    unit = v / np.linalg.norm(v)
    significant = np.flatnonzero(np.abs(unit) > canon_tol)
    if significant.size == 0:
        raise ZeroVectorError("no amplitude exceeds the canonicalization threshold")
    k = significant[0]
    first = unit[k]
    rep = unit * (np.conj(first) / abs(first))
    rep[k] = abs(first)
    return rep


class Ray:
    """Equivalence class of nonzero vectors under complex rescaling.

    Parameters
    ----------
    v : array_like
        Any nonzero representative.
    tol : Tolerances, optional
        Thresholds used for canonicalization and equality.

    Two rays compare equal when their overlap is 1 within ``eq_tol``.
    Rays are immutable and deliberately unhashable, since tolerance-based
    equality is not transitive.
    """

    __slots__ = ("_rep", "_tol")
    __hash__ = None

    def __init__(self, v, tol=None):
        if isinstance(v, Ray):
            v = v.rep
        tol = resolve_tol(tol)
        rep = _canonical_rep(as_state(v, tol=tol), tol.canon_tol)
        rep.setflags(write=False)
        self._rep = rep
        self._tol = tol

    @property
    def rep(self) -> np.ndarray:
        return self._rep

    @property
    def dim(self) -> int:
        return self._rep.shape[0]

    def __eq__(self, other):
        if not isinstance(other, Ray):
            return NotImplemented
        if other.dim != self.dim:
            return False
        return 1.0 - overlap(self, other) <= self._tol.eq_tol

    def __repr__(self):
        amps = ", ".join(f"{a:.6g}" for a in self._rep)
        return f"Ray([{amps}])"


def _unit_rep(x):
    """Unit representative of a Ray or of a raw nonzero vector."""
    if isinstance(x, Ray):
        return x.rep
    v = as_state(x)
    return v / np.linalg.norm(v)


def inner_product(a, b) -> complex:
    """Hermitian inner product, conjugate-linear in the first argument."""
    a = as_state(a, allow_zero=True)
    b = as_state(b, allow_zero=True)
    check_same_dim(a, b)
    return complex(np.vdot(a, b))


def project_to_ray(v, tol=None) -> Ray:
    """Natural projection of a nonzero vector onto its ray."""
    return Ray(v, tol=tol)


def overlap(r1, r2) -> float:
    """Modulus of the normalized inner product, in [0, 1].

    The squared value is the transition probability between the two rays.
    Accepts rays or raw nonzero vectors.
    """
    u, w = _unit_rep(r1), _unit_rep(r2)
    check_same_dim(u, w)
    return float(min(1.0, abs(np.vdot(u, w))))


def ray_distance(r1, r2) -> float:
    """Fubini-Study distance ``delta`` with ``overlap = cos(delta / 2)``."""
    return 2.0 * float(np.arccos(np.clip(overlap(r1, r2), 0.0, 1.0)))


def random_state(dim, rng=None) -> np.ndarray:
    """Unit vector whose ray is uniform on ray space.

    Amplitudes are i.i.d. standard complex Gaussians before normalization.
    """
    if dim < 1:
        raise DimensionError(f"dim must be >= 1, got {dim}")
    rng = check_random_state(rng)
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return v / np.linalg.norm(v)


def random_states(n, dim, rng=None) -> np.ndarray:
    """``n`` independent :func:`random_state` draws stacked as rows."""
    if dim < 1:
        raise DimensionError(f"dim must be >= 1, got {dim}")
    rng = check_random_state(rng)
    V = rng.standard_normal((n, dim)) + 1j * rng.standard_normal((n, dim))
    return V / np.linalg.norm(V, axis=1, keepdims=True)


def haar_unitary(dim, rng=None) -> np.ndarray:
    """Haar-distributed ``dim x dim`` unitary."""
    if dim < 1:
        raise DimensionError(f"dim must be >= 1, got {dim}")
    rng = check_random_state(rng)
    if dim == 1:
        return np.exp(2j * np.pi * rng.random()).reshape(1, 1)
    return unitary_group.rvs(dim, random_state=rng)
