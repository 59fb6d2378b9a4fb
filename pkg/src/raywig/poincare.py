"""Two-state rays on the Poincare (Bloch) sphere.

For a two-level system the excess phase of a ray triple equals half the
signed solid angle of the corresponding spherical triangle.  With the
component convention used by :func:`bloch_map` the sign relating the two
is ``ORIENTATION_SIGN = +1``; the octant triple pins it.
"""

import math

import numpy as np

from ._validation import check_random_state, resolve_tol
from .exceptions import DegenerateTriangleError, DimensionError, DomainError, InputError
from .geometry import bargmann_invariant, loop_holonomy
from .hilbert import Ray, _unit_rep

__all__ = [
    "ORIENTATION_SIGN",
    "bloch_map",
    "solid_angle",
    "monte_carlo_solid_angle",
    "check_half_solid_angle",
    "small_circle_rays",
    "small_circle_phase",
    "small_circle_limit",
]

ORIENTATION_SIGN = 1


def bloch_map(r) -> np.ndarray:
    """Unit 3-vector of a two-state ray.

    For a unit representative ``(alpha, beta)``::

        x = 2 Re(conj(alpha) beta)
        y = 2 Im(conj(alpha) beta)
        z = |alpha|**2 - |beta|**2
    """
    u = _unit_rep(r)
    if u.shape[0] != 2:
        raise DimensionError(f"the sphere map needs a two-state ray, got dim {u.shape[0]}")
    cross = np.conj(u[0]) * u[1]
    return np.array([2.0 * cross.real, 2.0 * cross.imag, abs(u[0]) ** 2 - abs(u[1]) ** 2])


def _as_sphere_point(p, tol):
    arr = np.asarray(p, dtype=float)
    if arr.shape != (3,) or not np.all(np.isfinite(arr)):
        raise InputError(f"expected a finite 3-vector, got {p!r}")
    if abs(np.dot(arr, arr) - 1.0) > tol.eq_tol:
        raise DomainError("sphere points must have unit length")
    return arr


def _vertex_angle(p, q, r):
    tq = q - np.dot(p, q) * p
    tr = r - np.dot(p, r) * p
    return math.atan2(np.linalg.norm(np.cross(tq, tr)), np.dot(tq, tr))


def solid_angle(p1, p2, p3, tol=None) -> float:
    """Signed solid angle of the geodesic triangle on three sphere points.

    The magnitude is the spherical excess; the sign is that of the scalar
    triple product ``p1 . (p2 x p3)``.

    Raises
    ------
    DegenerateTriangleError
        For coincident or antipodal vertices, or three vertices on one great
        circle that do not bound a unique triangle.
    """
    tol = resolve_tol(tol)
    pts = [_as_sphere_point(p, tol) for p in (p1, p2, p3)]
    for i, j in ((0, 1), (1, 2), (2, 0)):
        d = np.dot(pts[i], pts[j])
        if d >= 1.0 - tol.eq_tol:
            raise DegenerateTriangleError(f"vertices {i + 1} and {j + 1} coincide")
        if d <= -1.0 + tol.eq_tol:
            raise DegenerateTriangleError(f"vertices {i + 1} and {j + 1} are antipodal")
    a, b, c = pts
    excess = _vertex_angle(a, b, c) + _vertex_angle(b, c, a) + _vertex_angle(c, a, b) - math.pi
    triple = float(np.dot(a, np.cross(b, c)))
    if abs(triple) <= tol.eq_tol and excess > math.pi:
        raise DegenerateTriangleError("vertices wrap a great circle; orientation is ambiguous")
    return math.copysign(max(excess, 0.0), triple)


def monte_carlo_solid_angle(p1, p2, p3, n_samples=1_000_000, rng=None) -> float:
    """Unsigned solid angle estimated from uniform samples on the sphere.

    A sample lies inside the triangle when it is on the same side of each
    edge's great-circle plane as the opposite vertex.
    """
    rng = check_random_state(rng)
    pts = [np.asarray(p, dtype=float) for p in (p1, p2, p3)]
    X = rng.standard_normal((n_samples, 3))
    X /= np.linalg.norm(X, axis=1, keepdims=True)
    inside = np.ones(n_samples, dtype=bool)
    for i in range(3):
        p, q, r = pts[i], pts[(i + 1) % 3], pts[(i + 2) % 3]
        normal = np.cross(p, q)
        inside &= np.sign(X @ normal) == np.sign(np.dot(r, normal))
    return 4.0 * math.pi * inside.mean()


def _wrap(angle):
    return math.remainder(angle, 2.0 * math.pi)


def check_half_solid_angle(rA, rB, rC, tol=None) -> dict:
    """Compare the excess phase of a two-state triple with half its solid angle."""
    tol = resolve_tol(tol)
    inv = bargmann_invariant(rA, rB, rC, tol=tol)
    points = [bloch_map(r) for r in (rA, rB, rC)]
    omega = solid_angle(*points, tol=tol)
    if not inv.defined:
        raise DegenerateTriangleError("an orthogonal pair leaves the excess phase undefined")
    half = 0.5 * omega
    return {
        "beta": inv.beta,
        "solid_angle": omega,
        "half": half,
        "sign": ORIENTATION_SIGN,
        "residual": abs(_wrap(inv.beta - ORIENTATION_SIGN * half)),
    }


def small_circle_rays(theta, n):
    """``n`` rays equally spaced counterclockwise on the circle of polar angle ``theta``."""
    if not (0.0 < theta < math.pi):
        raise DomainError(f"polar angle must lie in (0, pi), got {theta!r}")
    if n < 3:
        raise DomainError(f"a closed loop needs at least 3 rays, got {n}")
    phi = 2.0 * math.pi * np.arange(n) / n
    return [Ray([math.cos(theta / 2), np.exp(1j * f) * math.sin(theta / 2)]) for f in phi]


def small_circle_phase(theta, n, tol=None) -> float:
    """Holonomy of discrete Pancharatnam transport around a circle of latitude.

    Tends to :func:`small_circle_limit` as ``n`` grows.
    """
    return loop_holonomy(small_circle_rays(theta, n), tol=tol)


def small_circle_limit(theta) -> float:
    """Continuum limit of :func:`small_circle_phase`.

    Transport returns with phase ``-beta``, and ``beta`` is the signed half
    solid angle ``ORIENTATION_SIGN * pi * (1 - cos(theta))`` of the cap.
    """
    return _wrap(-ORIENTATION_SIGN * math.pi * (1.0 - math.cos(theta)))
