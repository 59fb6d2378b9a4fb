"""Ray-space isometries and their Hilbert-space lifts.

A ray map is anything with ``dim`` and ``apply(ray) -> Ray``.  The
Bargmann invariant of every triple either survives an isometry unchanged
or comes out complex conjugated; :func:`determine_chi` reads off which.
The lift itself is built pointwise: the image of a state not orthogonal to
a fixed reference ``e`` is pinned in amplitude by its norm and in phase by
its overlap with the image ``e'`` of the reference.  States orthogonal to
``e`` are reached by superposition.
"""

import enum
import itertools
import math
from dataclasses import dataclass
from typing import Callable, List, NamedTuple, Sequence, Tuple

import numpy as np

from ._validation import (
    as_square_matrix,
    as_state,
    check_random_state,
    check_same_dim,
    resolve_tol,
)
from .exceptions import (
    ChiInconsistencyError,
    DegenerateTriangleError,
    DimensionError,
    InputError,
    NotInPcError,
    NotIsometryError,
    OnBoundaryError,
    SearchExhaustedError,
    UnsupportedQueryError,
)
from .geometry import bargmann_invariant, pancharatnam_lift
from .hilbert import Ray, _unit_rep, overlap, random_state, random_states
from .poincare import bloch_map

__all__ = [
    "ChiKind",
    "RayMap",
    "MatrixRayMap",
    "CallableRayMap",
    "TableRayMap",
    "CompositeRayMap",
    "IsometryCheck",
    "LiftedSymmetry",
    "PointwiseLift",
    "DeformationTrace",
    "is_isometry_sampled",
    "determine_chi",
    "pointwise_lift",
    "wigner_lift",
    "lift_fidelity",
    "verify_w1_w2",
    "imdelta_deformation_check",
]


class ChiKind(enum.Enum):
    IDENTITY = "identity"
    CONJUGATION = "conjugation"

    def __call__(self, z):
        return np.conj(z) if self is ChiKind.CONJUGATION else z

    @property
    def antiunitary(self) -> bool:
        return self is ChiKind.CONJUGATION


class RayMap:
    """Base class for black-box maps of ray space to itself."""

    dim: int

    def apply(self, ray) -> Ray:
        raise NotImplementedError

    def apply_many(self, V) -> np.ndarray:
        """Unit representatives, in no particular gauge, of the images of the rows of ``V``."""
        return np.array([self.apply(Ray(v)).rep for v in V]).reshape(len(V), self.dim)

    def __call__(self, ray) -> Ray:
        return self.apply(ray)


class MatrixRayMap(RayMap):
    """Ray map induced by ``v -> M v`` or, if antiunitary, ``v -> M conj(v)``.

    ``M`` need only be invertible; whether the induced map is an isometry is
    for :func:`is_isometry_sampled` to decide.
    """

    def __init__(self, matrix, antiunitary=False):
        M = as_square_matrix(matrix)
        if np.linalg.matrix_rank(M) < M.shape[0]:
            raise InputError("ray maps need an invertible matrix")
        M.setflags(write=False)
        self.matrix = M
        self.antiunitary = bool(antiunitary)
        self.dim = M.shape[0]

    @property
    def kind(self) -> str:
        return "antiunitary" if self.antiunitary else "unitary"

    def act(self, v):
        v = np.asarray(v, dtype=np.complex128)
        return self.matrix @ (np.conj(v) if self.antiunitary else v)

    def apply(self, ray) -> Ray:
        return Ray(self.act(_unit_rep(ray)))

    def apply_many(self, V) -> np.ndarray:
        V = np.asarray(V, dtype=np.complex128)
        W = (np.conj(V) if self.antiunitary else V) @ self.matrix.T
        return W / np.linalg.norm(W, axis=1, keepdims=True)

    def __repr__(self):
        return f"MatrixRayMap(dim={self.dim}, kind={self.kind!r})"


class CallableRayMap(RayMap):
    """Ray map given by any function on representatives.

    ``func`` must send different representatives of one ray into one ray.
    """

    def __init__(self, func: Callable, dim: int):
        self.func = func
        self.dim = int(dim)

    def apply(self, ray) -> Ray:
        return Ray(self.func(_unit_rep(ray)))


class TableRayMap(RayMap):
    """Ray map known only on a finite list of ``(ray, image)`` pairs."""

    def __init__(self, pairs: Sequence[Tuple]):
        if not pairs:
            raise InputError("a table ray map needs at least one pair")
        self.pairs = [(Ray(src), Ray(dst)) for src, dst in pairs]
        check_same_dim(*[r.rep for pair in self.pairs for r in pair])
        self.dim = self.pairs[0][0].dim

    @property
    def sources(self) -> List[Ray]:
        return [src for src, _ in self.pairs]

    def apply(self, ray) -> Ray:
        ray = Ray(ray)
        for src, dst in self.pairs:
            if src == ray:
                return dst
        raise UnsupportedQueryError(f"{ray!r} is not in the table")


class CompositeRayMap(RayMap):
    """Apply ``maps[0]`` first, then ``maps[1]``, and so on."""

    def __init__(self, *maps: RayMap):
        if not maps:
            raise InputError("composite needs at least one map")
        dims = {m.dim for m in maps}
        if len(dims) != 1:
            raise DimensionError(f"composed maps disagree on dimension: {sorted(dims)}")
        self.maps = maps
        self.dim = dims.pop()

    def apply(self, ray) -> Ray:
        for m in self.maps:
            ray = m.apply(ray)
        return ray


class IsometryCheck(NamedTuple):
    passed: bool
    max_deviation: float


def is_isometry_sampled(ray_map, trials=64, rng=None, tol=None) -> IsometryCheck:
    """Compare overlaps of random ray pairs before and after the map.

    Table maps are probed on pairs of their own entries instead.
    """
    tol = resolve_tol(tol)
    if trials < 1:
        raise InputError("trials must be >= 1")
    rng = check_random_state(rng)
    if isinstance(ray_map, TableRayMap):
        pairs = list(itertools.combinations(ray_map.pairs, 2))[:trials]
        devs = [abs(overlap(s1, s2) - overlap(d1, d2)) for (s1, d1), (s2, d2) in pairs]
    else:
        devs = []
        for _ in range(trials):
            r1 = Ray(random_state(ray_map.dim, rng))
            r2 = Ray(random_state(ray_map.dim, rng))
            devs.append(abs(overlap(r1, r2) - overlap(ray_map(r1), ray_map(r2))))
    max_dev = max(devs, default=0.0)
    return IsometryCheck(passed=max_dev < tol.eq_tol, max_deviation=max_dev)


def _classify_triple(ray_map, triple, mismatch_tol):
    delta = bargmann_invariant(*triple).delta
    image = bargmann_invariant(*(ray_map(r) for r in triple)).delta
    kept, conjugated = abs(image - delta), abs(image - np.conj(delta))
    if min(kept, conjugated) > mismatch_tol:
        raise NotIsometryError("the map changes a Bargmann invariant beyond conjugation")
    return ChiKind.IDENTITY if kept < conjugated else ChiKind.CONJUGATION


def determine_chi(ray_map, rng=None, n_checks=10, max_draws=1000, tol=None) -> ChiKind:
    """Decide whether the map preserves or conjugates Bargmann invariants.

    Classifies ``n_checks`` triples with ``|Im Delta| > 10 * orth_tol`` and
    requires them to agree.  An image invariant farther than
    ``1e4 * eq_tol`` from both candidates is a gross mismatch.

    Raises
    ------
    DimensionError
        For one-dimensional spaces, where every invariant is real.
    SearchExhaustedError
        If no triple with a usable imaginary part turns up.
    ChiInconsistencyError
        If different triples disagree, which no isometry allows.
    NotIsometryError
        On a gross mismatch.
    """
    tol = resolve_tol(tol)
    if ray_map.dim < 2:
        raise DimensionError("conjugation cannot be detected in dimension 1")
    threshold = 10.0 * tol.orth_tol

    def usable(triple):
        return abs(bargmann_invariant(*triple, tol=tol).delta.imag) > threshold

    if isinstance(ray_map, TableRayMap):
        candidates = itertools.combinations(ray_map.sources, 3)
    else:
        rng = check_random_state(rng)
        candidates = (
            tuple(Ray(random_state(ray_map.dim, rng)) for _ in range(3)) for _ in range(max_draws)
        )
    triples = list(itertools.islice(filter(usable, candidates), n_checks))
    if not triples:
        raise SearchExhaustedError("no ray triple with nonzero Im(Delta) was found")
    kinds = {_classify_triple(ray_map, t, 1e4 * tol.eq_tol) for t in triples}
    if len(kinds) > 1:
        raise ChiInconsistencyError("triples disagree on whether Delta is conjugated")
    return kinds.pop()


class PointwiseLift:
    """Lift of a ray map fixed by a reference pair ``e -> e_img`` and ``chi``.

    Calling it on a state not orthogonal to ``e`` returns the unique image
    with the same norm whose overlap with ``e_img`` is ``chi(<e|psi>)``.
    :meth:`extended` also handles states orthogonal to ``e``.
    """

    def __init__(self, ray_map, e, e_img, chi: ChiKind, tol=None):
        self.tol = resolve_tol(tol)
        self.ray_map = ray_map
        self.e = as_state(e, tol=self.tol)
        self.e_img = as_state(e_img, tol=self.tol)
        self.chi = ChiKind(chi)
        check_same_dim(self.e, self.e_img)
        e_norm = np.linalg.norm(self.e)
        if abs(np.linalg.norm(self.e_img) - e_norm) > self.tol.eq_tol * e_norm:
            raise InputError("the reference image must have the same norm as the reference")
        if ray_map(Ray(self.e)) != Ray(self.e_img):
            raise InputError("the reference image does not lie on the image ray of the reference")

    def __call__(self, psi) -> np.ndarray:
        psi = as_state(psi, tol=self.tol)
        norm = np.linalg.norm(psi)
        ep = np.vdot(self.e, psi)
        if abs(ep) <= self.tol.orth_tol * norm * np.linalg.norm(self.e):
            raise NotInPcError("state is orthogonal to the reference vector")
        r = self.ray_map(Ray(psi)).rep
        z = np.vdot(self.e_img, r)
        if abs(z) <= self.tol.orth_tol * np.linalg.norm(self.e_img):
            raise NotIsometryError("the map sent a non-orthogonal pair to an orthogonal one")
        u = self.chi(ep) * np.conj(z)
        return norm * (u / abs(u)) * r

    def extended(self, phi, shift=1.0) -> np.ndarray:
        """Image of any vector, including zero and states orthogonal to ``e``.

        Orthogonal states are split as ``(phi - shift*e) + shift*e``; both
        summands lie off the orthogonal complement of ``e``.
        """
        phi = as_state(phi, allow_zero=True)
        norm = np.linalg.norm(phi)
        if norm == 0.0:
            return np.zeros_like(phi)
        if abs(np.vdot(self.e, phi)) > self.tol.orth_tol * norm * np.linalg.norm(self.e):
            return self(phi)
        if shift == 0:
            raise InputError("shift must be nonzero")
        return self(phi - shift * self.e) + self(shift * self.e)


    def many(self, Psi) -> np.ndarray:
        """Row-wise :meth:`__call__` for a batch of states."""
        Psi = np.asarray(Psi, dtype=np.complex128)
        norms = np.linalg.norm(Psi, axis=1)
        ep = Psi @ np.conj(self.e)
        if np.any(np.abs(ep) <= self.tol.orth_tol * norms * np.linalg.norm(self.e)):
            raise NotInPcError("a state in the batch is orthogonal to the reference vector")
        R = self.ray_map.apply_many(Psi)
        z = R @ np.conj(self.e_img)
        if np.any(np.abs(z) <= self.tol.orth_tol * np.linalg.norm(self.e_img)):
            raise NotIsometryError("the map sent a non-orthogonal pair to an orthogonal one")
        u = self.chi(ep) * np.conj(z)
        return (norms * u / np.abs(u))[:, np.newaxis] * R

    def extended_many(self, Phi, shift=1.0) -> np.ndarray:
        """Row-wise :meth:`extended` for a batch of vectors."""
        Phi = np.asarray(Phi, dtype=np.complex128)
        out = np.zeros_like(Phi)
        norms = np.linalg.norm(Phi, axis=1)
        ep = np.abs(Phi @ np.conj(self.e))
        nonzero = norms > 0.0
        direct = nonzero & (ep > self.tol.orth_tol * norms * np.linalg.norm(self.e))
        split = nonzero & ~direct
        if np.any(direct):
            out[direct] = self.many(Phi[direct])
        if np.any(split):
            out[split] = self.many(Phi[split] - shift * self.e) + self(shift * self.e)
        return out


def pointwise_lift(ray_map, e, e_img, chi, psi, tol=None) -> np.ndarray:
    """One-shot version of :class:`PointwiseLift`."""
    return PointwiseLift(ray_map, e, e_img, chi, tol=tol)(psi)


@dataclass(frozen=True)
class LiftedSymmetry:
    """Unitary or antiunitary operator lifting a ray map.

    The action is ``v -> matrix @ v``, or ``v -> matrix @ conj(v)`` when
    ``antiunitary`` is set.
    """

    dim: int
    matrix: np.ndarray
    antiunitary: bool
    reference: np.ndarray
    reference_image: np.ndarray

    @property
    def chi(self) -> ChiKind:
        return ChiKind.CONJUGATION if self.antiunitary else ChiKind.IDENTITY

    def apply(self, v) -> np.ndarray:
        v = np.asarray(v, dtype=np.complex128)
        return self.matrix @ (np.conj(v) if self.antiunitary else v)

    def as_ray_map(self) -> MatrixRayMap:
        return MatrixRayMap(self.matrix, antiunitary=self.antiunitary)

    def pointwise(self, ray_map, tol=None) -> PointwiseLift:
        return PointwiseLift(ray_map, self.reference, self.reference_image, self.chi, tol=tol)


def wigner_lift(ray_map, e=None, rng=None, isometry_trials=64, tol=None) -> LiftedSymmetry:
    """Build the unitary or antiunitary lift of an isometric ray map.

    Parameters
    ----------
    ray_map : RayMap
        Isometry of ray space, queried on arbitrary rays.
    e : array_like, optional
        Reference vector; defaults to the first standard basis vector.
    rng : Generator or int, optional
        Draws the isometry probes, the classifying triples, and the
        arbitrary phase of the reference image, in that order.
    isometry_trials : int
        Ray pairs probed before construction starts.

    Raises
    ------
    NotIsometryError
        If sampling detects distorted overlaps or the assembled matrix is
        not unitary.
    """
    tol = resolve_tol(tol)
    dim = ray_map.dim
    if dim < 2:
        raise DimensionError("lifting needs dim >= 2")
    rng = check_random_state(rng)
    check = is_isometry_sampled(ray_map, isometry_trials, rng, tol=tol)
    if not check.passed:
        raise NotIsometryError(
            f"map distorts overlaps by up to {check.max_deviation:.3g}; it is not an isometry"
        )
    chi = determine_chi(ray_map, rng, tol=tol)
    if e is None:
        e = np.eye(dim, dtype=np.complex128)[0]
    e = as_state(e, tol=tol)
    if e.shape[0] != dim:
        raise DimensionError(f"reference has dim {e.shape[0]}, map has dim {dim}")
    phase = np.exp(1j * rng.uniform(0.0, 2.0 * math.pi))
    e_img = np.linalg.norm(e) * phase * ray_map(Ray(e)).rep
    lift = PointwiseLift(ray_map, e, e_img, chi, tol=tol)
    # For antiunitary lifts the basis vectors are real, so column i is T(b_i) either way.
    columns = [lift.extended(b) for b in np.eye(dim, dtype=np.complex128)]
    M = np.column_stack(columns)
    if np.max(np.abs(M.conj().T @ M - np.eye(dim))) > tol.eq_tol:
        raise NotIsometryError("assembled lift is not unitary")
    return LiftedSymmetry(
        dim=dim, matrix=M, antiunitary=chi.antiunitary, reference=e, reference_image=e_img
    )


def lift_fidelity(M, U) -> float:
    """``|tr(M^dagger U)| / dim``: 1 exactly when M and U agree up to a phase."""
    M, U = as_square_matrix(M), as_square_matrix(U)
    return float(abs(np.trace(M.conj().T @ U)) / M.shape[0])


def verify_w1_w2(ray_map, lift: LiftedSymmetry, trials=100, rng=None, tol=None) -> dict:
    """Maximum residuals of the lift's defining properties over random states.

    Keys: ``w1`` (norm preservation), ``w2`` (additivity), ``four_term``
    (A+B = C+D implies equal images), ``homogeneity`` (``T(aA) = chi(a) T(A)``),
    and ``matrix`` (matrix action against the pointwise construction).
    All residuals are relative to the norms involved.
    """
    if trials < 1:
        raise InputError("trials must be >= 1")
    rng = check_random_state(rng)
    T = lift.pointwise(ray_map, tol=tol)
    dim = lift.dim

    def draw():
        scales = np.exp(rng.uniform(-1.0, 1.0, size=(trials, 1)))
        return scales * random_states(trials, dim, rng)

    A, B, C = draw(), draw(), draw()
    D = A + B - C
    alpha = rng.standard_normal(trials) + 1j * rng.standard_normal(trials)
    TA, TB, TC, TD = (T.extended_many(X) for X in (A, B, C, D))

    def norms(X):
        return np.linalg.norm(X, axis=1)

    nA, nB = norms(A), norms(B)
    matrix_action = (np.conj(A) if lift.antiunitary else A) @ lift.matrix.T
    res = {
        "w1": np.abs(norms(TA) - nA) / nA,
        "w2": norms(T.extended_many(A + B) - TA - TB) / (nA + nB),
        "four_term": norms(TA + TB - TC - TD) / (nA + nB + norms(C) + norms(D)),
        "homogeneity": norms(
            T.extended_many(alpha[:, np.newaxis] * A) - lift.chi(alpha)[:, np.newaxis] * TA
        )
        / (np.abs(alpha) * nA),
        "matrix": norms(matrix_action - TA) / nA,
    }
    return {k: float(np.max(v)) for k, v in res.items()}


class DeformationTrace(NamedTuple):
    signs: List[int]
    im_delta: List[float]

    @property
    def constant(self) -> bool:
        return len(set(self.signs)) == 1 and 0 not in self.signs


def _bloch_to_pair(p):
    theta = math.acos(max(-1.0, min(1.0, p[2])))
    phi = math.atan2(p[1], p[0])
    return math.cos(theta / 2), np.exp(1j * phi) * math.sin(theta / 2)


def imdelta_deformation_check(rA, rB, rC, steps=50, tol=None) -> DeformationTrace:
    """Track the sign of Im(Delta_ABC) while C is deformed in two stages.

    Stage one shrinks the component of C orthogonal to the A-B plane to
    zero.  Stage two moves the remaining in-plane ray along a great circle
    of the Poincare sphere of that plane to the pole of its hemisphere.
    Each stage is sampled at ``steps`` points.

    Raises
    ------
    OnBoundaryError
        If Im(Delta) vanishes at the start, i.e. C sits on the great circle
        through A and B.
    """
    tol = resolve_tol(tol)
    if steps < 2:
        raise InputError("each stage needs at least 2 sample points")
    u, C = _unit_rep(rA), _unit_rep(rC)
    B = _unit_rep(rB)
    check_same_dim(u, B, C)
    start = bargmann_invariant(u, B, C, tol=tol)
    if abs(start.delta.imag) <= tol.orth_tol:
        raise OnBoundaryError("Im(Delta) vanishes: C lies on the great circle through A and B")
    B = pancharatnam_lift(u, B, tol=tol)
    mu = B - np.vdot(u, B) * u
    if np.linalg.norm(mu) <= tol.orth_tol:
        raise DegenerateTriangleError("A and B coincide; they span no plane")
    mu_hat = mu / np.linalg.norm(mu)

    signs, values = [], []

    def record(c):
        im = bargmann_invariant(u, B, c, tol=tol).delta.imag
        values.append(float(im))
        signs.append(int(np.sign(im)))

    coords = np.array([np.vdot(u, C), np.vdot(mu_hat, C)])
    C_par = coords[0] * u + coords[1] * mu_hat
    C_perp = C - C_par
    for t in np.linspace(0.0, 1.0, steps):
        record(C_par + (1.0 - t) * C_perp)

    p = bloch_map(coords)
    q = np.array([0.0, math.copysign(1.0, p[1]), 0.0])
    omega = math.acos(max(-1.0, min(1.0, float(np.dot(p, q)))))
    for s in np.linspace(0.0, 1.0, steps):
        if omega < 1e-12:
            point = q
        else:
            point = (math.sin((1.0 - s) * omega) * p + math.sin(s * omega) * q) / math.sin(omega)
        alpha, beta = _bloch_to_pair(point)
        record(alpha * u + beta * mu_hat)
    return DeformationTrace(signs=signs, im_delta=values)
