"""Pancharatnam connection on ray space.

In-phase comparison of states, Pancharatnam lifts of rays and of discrete
curves, the Bargmann invariant of a ray triple, horizontal lifts of
shortest geodesics, and the trigonometry of geodesic triangles that
expresses the cosine of the excess phase through isometry invariants.
"""

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from ._validation import as_state, check_same_dim, resolve_tol
from .exceptions import (
    DegenerateGeodesicError,
    DegenerateTriangleError,
    ConsistencyError,
    DomainError,
    InputError,
    OrthogonalityError,
)
from .hilbert import Ray, _unit_rep, overlap

__all__ = [
    "BargmannInvariant",
    "GeodesicSegment",
    "GeodesicTriangle",
    "in_phase",
    "pancharatnam_lift",
    "bargmann_invariant",
    "geodesic_segment",
    "horizontal_geodesic",
    "sample_geodesic",
    "discrete_lift",
    "loop_holonomy",
    "triangle_geometry",
    "cos_beta_from_triangle",
    "triangle_report",
]


@dataclass(frozen=True)
class BargmannInvariant:
    """Delta of a ray triple, with modulus ``rho`` and phase ``beta``.

    ``beta`` lies in (-pi, pi] and is ``None`` when ``rho`` does not exceed
    the orthogonality threshold, i.e. when the phase is undefined.
    """

    delta: complex
    rho: float
    beta: Optional[float]

    @property
    def defined(self) -> bool:
        return self.beta is not None


@dataclass(frozen=True)
class GeodesicSegment:
    """Horizontal lift of the shortest geodesic from ``start`` to ``end``.

    ``end == cos(length/2) * start + sin(length/2) * mu_hat`` with
    ``mu_hat`` the unit component of ``end`` orthogonal to ``start``.
    """

    start: np.ndarray
    end: np.ndarray
    mu_hat: np.ndarray
    length: float

    def tangent(self, lam=0.0):
        """Derivative of the lifted curve with respect to the parameter."""
        half = 0.5 * self.length * lam
        return 0.5 * self.length * (-math.sin(half) * self.start + math.cos(half) * self.mu_hat)


@dataclass(frozen=True)
class GeodesicTriangle:
    """Sides and vertex angle of a geodesic triangle in ray space.

    ``a``, ``b``, ``c`` are the distances between the ray pairs (B, C),
    (C, A), (A, B) and ``angleA`` the angle at vertex A, all in radians.
    """

    a: float
    b: float
    c: float
    angleA: float

    def __post_init__(self):
        for name in ("a", "b", "c"):
            side = getattr(self, name)
            if not (0.0 < side < math.pi):
                raise DegenerateTriangleError(f"side {name}={side!r} outside (0, pi)")
        if not (0.0 <= self.angleA <= math.pi):
            raise DomainError(f"angleA={self.angleA!r} outside [0, pi]")


def _check_non_orthogonal(z, scale, tol, what):
    if abs(z) <= tol.orth_tol * scale:
        raise OrthogonalityError(f"{what} are orthogonal; their relative phase is undefined")


def in_phase(a, b, tol=None) -> bool:
    """True when the inner product of ``a`` and ``b`` is real and positive."""
    tol = resolve_tol(tol)
    a, b = as_state(a, tol=tol), as_state(b, tol=tol)
    check_same_dim(a, b)
    z = np.vdot(a, b)
    _check_non_orthogonal(z, np.linalg.norm(a) * np.linalg.norm(b), tol, "the two states")
    return bool(abs(z.imag) <= tol.eq_tol * abs(z) and z.real > 0)


def pancharatnam_lift(reference, target, tol=None) -> np.ndarray:
    """Representative of ``target`` in phase with, and as long as, ``reference``.

    Parameters
    ----------
    reference : array_like
        Nonzero reference state.
    target : Ray or array_like
        Ray to lift; a raw vector stands for the ray it spans.

    Raises
    ------
    OrthogonalityError
        If the target ray is orthogonal to the reference.
    """
    tol = resolve_tol(tol)
    reference = as_state(reference, tol=tol)
    r = _unit_rep(target)
    check_same_dim(reference, r)
    norm = np.linalg.norm(reference)
    z = np.vdot(reference, r)
    _check_non_orthogonal(z, norm, tol, "reference and target")
    return norm * (np.conj(z) / abs(z)) * r


def bargmann_invariant(rA, rB, rC, tol=None) -> BargmannInvariant:
    """Bargmann invariant ``<A|B><B|C><C|A> / (<A|A><B|B><C|C>)``.

    Any representatives may be passed; the result depends only on the rays.
    """
    tol = resolve_tol(tol)
    u, v, w = _unit_rep(rA), _unit_rep(rB), _unit_rep(rC)
    check_same_dim(u, v, w)
    delta = complex(np.vdot(u, v) * np.vdot(v, w) * np.vdot(w, u))
    rho = abs(delta)
    beta = None
    if rho > tol.orth_tol:
        beta = math.atan2(delta.imag, delta.real)
        if beta == -math.pi:
            beta = math.pi
    return BargmannInvariant(delta=delta, rho=rho, beta=beta)


def geodesic_segment(A_vec, B_ray, tol=None) -> GeodesicSegment:
    """Frame of the horizontal shortest geodesic leaving the unit vector ``A_vec``."""
    tol = resolve_tol(tol)
    A = as_state(A_vec, tol=tol)
    if abs(np.linalg.norm(A) - 1.0) > tol.eq_tol:
        raise DomainError("the starting vector of a geodesic must have unit norm")
    ov = overlap(A, B_ray)
    if ov <= tol.orth_tol:
        raise DegenerateGeodesicError("rays are orthogonal; the shortest geodesic is not unique")
    if ov >= 1.0 - tol.orth_tol:
        raise DegenerateGeodesicError("rays coincide; the geodesic has zero length")
    end = pancharatnam_lift(A, B_ray, tol=tol)
    cos_half = np.vdot(A, end).real
    mu = end - cos_half * A
    sin_half = np.linalg.norm(mu)
    length = 2.0 * math.atan2(sin_half, cos_half)
    return GeodesicSegment(start=A, end=end, mu_hat=mu / sin_half, length=length)


def horizontal_geodesic(A_vec, B_ray, lam, tol=None) -> np.ndarray:
    """Point at parameter ``lam`` in [0, 1] on the horizontal geodesic lift.

    ``lam=0`` gives ``A_vec`` and ``lam=1`` the Pancharatnam lift of
    ``B_ray``.  An array of parameters returns one row per value.
    """
    lam_arr = np.asarray(lam, dtype=float)
    if np.any(lam_arr < 0.0) or np.any(lam_arr > 1.0):
        raise DomainError("geodesic parameter must lie in [0, 1]")
    seg = geodesic_segment(A_vec, B_ray, tol=tol)
    half = 0.5 * seg.length * lam_arr
    pts = np.multiply.outer(np.cos(half), seg.start) + np.multiply.outer(np.sin(half), seg.mu_hat)
    return pts


def sample_geodesic(A_vec, B_ray, n, tol=None):
    """``n >= 2`` rays equally spaced along the geodesic, endpoints included."""
    if n < 2:
        raise DomainError("need at least two samples to span a geodesic")
    pts = horizontal_geodesic(A_vec, B_ray, np.linspace(0.0, 1.0, n), tol=tol)
    return [Ray(p, tol=tol) for p in pts]


def discrete_lift(curve: Sequence, start, tol=None) -> np.ndarray:
    """Fold Pancharatnam lifts along ``curve`` beginning from ``start``.

    Each ray is lifted in phase with the lift of its predecessor; the
    returned vector is the lift of the last ray.  ``start`` must lie on
    ``curve[0]``.
    """
    tol = resolve_tol(tol)
    v = as_state(start, tol=tol)
    if len(curve) == 0:
        raise InputError("curve must contain at least one ray")
    if Ray(v, tol=tol) != Ray(curve[0], tol=tol):
        raise InputError("start vector does not lie on the first ray of the curve")
    for i in range(1, len(curve)):
        try:
            v = pancharatnam_lift(v, curve[i], tol=tol)
        except OrthogonalityError as exc:
            raise OrthogonalityError(
                f"rays {i - 1} and {i} of the curve are orthogonal", index=i
            ) from exc
    return v


def loop_holonomy(curve: Sequence, tol=None) -> float:
    """Phase acquired by Pancharatnam transport once around a closed loop.

    The loop visits ``curve`` in order and returns to ``curve[0]``.  The
    result is the argument of ``<start|end>``, in (-pi, pi]; for a triangle
    A, B, C it equals minus the excess phase of ``Delta_ABC``.
    """
    start = _unit_rep(curve[0])
    end = discrete_lift(list(curve) + [curve[0]], start, tol=tol)
    z = np.vdot(start, end)
    phase = math.atan2(z.imag, z.real)
    return math.pi if phase == -math.pi else phase


def triangle_geometry(rA, rB, rC, tol=None) -> GeodesicTriangle:
    """Sides and the angle at A of the geodesic triangle on three rays.

    Raises
    ------
    DegenerateTriangleError
        If two of the rays coincide or are orthogonal.
    ConsistencyError
        If the cosine of the angle leaves [-1, 1] by more than ``eq_tol``.
    """
    tol = resolve_tol(tol)
    u, v, w = _unit_rep(rA), _unit_rep(rB), _unit_rep(rC)
    check_same_dim(u, v, w)
    z_ab, z_bc, z_ca = np.vdot(u, v), np.vdot(v, w), np.vdot(w, u)
    overlaps = [min(1.0, abs(z)) for z in (z_ab, z_bc, z_ca)]
    for ov, label in zip(overlaps, ("AB", "BC", "CA")):
        if ov <= tol.orth_tol:
            raise DegenerateTriangleError(f"rays {label[0]} and {label[1]} are orthogonal")
        if ov >= 1.0 - tol.orth_tol:
            raise DegenerateTriangleError(f"rays {label[0]} and {label[1]} coincide")
    c, a, b = (2.0 * math.acos(ov) for ov in overlaps)
    # Lifting B and C in phase with A makes <B|C> = delta / |delta|.
    z = z_ab * z_bc * z_ca
    cos_beta = z.real / abs(z)
    cos_A = (math.cos(a / 2) * cos_beta - math.cos(b / 2) * math.cos(c / 2)) / (
        math.sin(c / 2) * math.sin(b / 2)
    )
    if abs(cos_A) > 1.0 + tol.eq_tol:
        raise ConsistencyError(f"cos(angleA)={cos_A!r} lies outside [-1, 1]")
    angleA = math.acos(min(1.0, max(-1.0, cos_A)))
    return GeodesicTriangle(a=a, b=b, c=c, angleA=angleA)


def cos_beta_from_triangle(tri: GeodesicTriangle) -> float:
    """Cosine of the excess phase from the sides and the angle at A."""
    a, b, c = tri.a, tri.b, tri.c
    return (
        math.cos(tri.angleA) * math.sin(c / 2) * math.sin(b / 2)
        + math.cos(b / 2) * math.cos(c / 2)
    ) / math.cos(a / 2)


def triangle_report(rA, rB, rC, tol=None) -> dict:
    tri = triangle_geometry(rA, rB, rC, tol=tol)
    inv = bargmann_invariant(rA, rB, rC, tol=tol)
    return {
        "a": tri.a,
        "b": tri.b,
        "c": tri.c,
        "angleA": tri.angleA,
        "rho": inv.rho,
        "beta": inv.beta,
        "cos_beta_formula": cos_beta_from_triangle(tri),
        "cos_beta_direct": math.cos(inv.beta),
    }
