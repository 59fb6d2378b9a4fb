import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from numpy.testing import assert_allclose

from raywig import (
    GeodesicTriangle,
    Ray,
    bargmann_invariant,
    cos_beta_from_triangle,
    discrete_lift,
    geodesic_segment,
    horizontal_geodesic,
    in_phase,
    loop_holonomy,
    pancharatnam_lift,
    random_state,
    ray_distance,
    sample_geodesic,
    triangle_geometry,
    triangle_report,
)
from raywig.exceptions import (
    DegenerateGeodesicError,
    DegenerateTriangleError,
    DomainError,
    InputError,
    OrthogonalityError,
)

from conftest import OCTANT, SQ, complex_vectors, nonzero_scalars


def _in_phase_lift(ref, v):
    """Independent Pancharatnam lift: strip the phase of <ref|v>, keep unit norm."""
    v = v / np.linalg.norm(v)
    z = np.vdot(ref, v)
    return v * np.conj(z) / abs(z)


class TestInPhase:
    def test_real_positive(self):
        assert in_phase([1, 0], [SQ, SQ]) is True

    def test_imaginary(self):
        assert in_phase([1, 0], [1j * SQ, 1j * SQ]) is False

    def test_negative(self):
        assert in_phase([1, 0], [-1, 0]) is False

    def test_orthogonal(self):
        with pytest.raises(OrthogonalityError):
            in_phase([1, 0], [0, 1])


class TestPancharatnamLift:
    def test_already_in_phase(self):
        assert_allclose(pancharatnam_lift([1, 0], Ray([SQ, SQ])), [SQ, SQ], atol=1e-15)

    def test_phase_stripped(self):
        assert_allclose(pancharatnam_lift([1, 0], Ray([1j * SQ, 1j * SQ])), [SQ, SQ], atol=1e-15)
        assert_allclose(pancharatnam_lift([1, 0], [1j * SQ, 1j * SQ]), [SQ, SQ], atol=1e-15)

    def test_norm_follows_reference(self):
        assert_allclose(pancharatnam_lift([2, 0], Ray([SQ, SQ])), [math.sqrt(2), math.sqrt(2)])

    def test_orthogonal(self):
        with pytest.raises(OrthogonalityError):
            pancharatnam_lift([1, 0], Ray([0, 1]))

    @given(complex_vectors(dim=3), complex_vectors(dim=3))
    def test_postconditions(self, ref, target):
        if abs(np.vdot(ref, target)) < 1e-6 * np.linalg.norm(ref) * np.linalg.norm(target):
            return
        v = pancharatnam_lift(ref, target)
        assert Ray(v) == Ray(target)
        assert np.linalg.norm(v) == pytest.approx(np.linalg.norm(ref))
        assert in_phase(ref, v)
        # uniqueness: the hand-built lift agrees
        assert_allclose(v, np.linalg.norm(ref) * _in_phase_lift(ref, target), atol=1e-9)


class TestBargmannInvariant:
    def test_same_ray_thrice(self, rng):
        v = random_state(3, rng)
        inv = bargmann_invariant(v, v, v)
        assert inv.delta == pytest.approx(1.0)
        assert inv.beta == pytest.approx(0.0)

    def test_octant(self):
        # <A|B> = 1/sqrt2, <B|C> = (1+i)/2, <C|A> = 1/sqrt2
        inv = bargmann_invariant(*(Ray(v) for v in OCTANT))
        assert inv.delta == pytest.approx((1 + 1j) / 4)
        assert inv.rho == pytest.approx(math.sqrt(2) / 4)
        assert inv.beta == pytest.approx(math.pi / 4)

    def test_orthogonal_pair_leaves_beta_undefined(self, rng):
        inv = bargmann_invariant(Ray([1, 0]), Ray([0, 1]), random_state(2, rng))
        assert inv.rho == 0
        assert inv.beta is None and not inv.defined

    def test_beta_branch(self):
        # Delta = -1/8 exactly for three equator rays 120 degrees apart
        rays = [[1, cmath.exp(2j * math.pi * k / 3)] for k in range(3)]
        assert bargmann_invariant(*rays).beta == pytest.approx(math.pi)

    @settings(max_examples=50)
    @given(
        complex_vectors(dim=3), complex_vectors(dim=3), complex_vectors(dim=3),
        nonzero_scalars(), nonzero_scalars(), nonzero_scalars(),
    )
    def test_gauge_invariance(self, A, B, C, a, b, c):
        d0 = bargmann_invariant(A, B, C).delta
        d1 = bargmann_invariant(a * A, b * B, c * C).delta
        assert abs(d1 - d0) <= 1e-12 * max(1.0, abs(d0)) + 1e-14

    def test_cyclic_and_reversal(self, rng):
        for k in range(1000):
            A, B, C = (random_state(2 + k % 6, rng) for _ in range(3))
            d = bargmann_invariant(A, B, C).delta
            assert bargmann_invariant(B, C, A).delta == pytest.approx(d, abs=1e-14)
            assert bargmann_invariant(C, A, B).delta == pytest.approx(d, abs=1e-14)
            assert bargmann_invariant(A, C, B).delta == pytest.approx(np.conj(d), abs=1e-14)


class TestHorizontalGeodesic:
    A = np.array([1.0, 0.0], dtype=complex)
    B = Ray([SQ, SQ])

    def test_orthogonal_rejected(self):
        with pytest.raises(DegenerateGeodesicError):
            horizontal_geodesic(self.A, Ray([0, 1]), 0.5)

    def test_coincident_rejected(self):
        with pytest.raises(DegenerateGeodesicError):
            horizontal_geodesic(self.A, Ray([1, 0]), 0.5)

    def test_parameter_range(self):
        with pytest.raises(DomainError):
            horizontal_geodesic(self.A, self.B, 1.5)

    def test_non_unit_start(self):
        with pytest.raises(DomainError):
            horizontal_geodesic([2, 0], self.B, 0.5)

    def test_endpoints(self):
        assert_allclose(horizontal_geodesic(self.A, self.B, 0.0), self.A)
        assert_allclose(horizontal_geodesic(self.A, self.B, 1.0), [SQ, SQ], atol=1e-15)

    def test_midpoint(self):
        # c = pi/2, mu_hat = (0, 1): point = (cos(pi/8), sin(pi/8))
        assert_allclose(
            horizontal_geodesic(self.A, self.B, 0.5),
            [math.cos(math.pi / 8), math.sin(math.pi / 8)],
            atol=1e-15,
        )

    def test_vectorized_parameters(self):
        lam = np.linspace(0, 1, 5)
        pts = horizontal_geodesic(self.A, self.B, lam)
        assert pts.shape == (5, 2)
        for l, p in zip(lam, pts):
            assert_allclose(p, horizontal_geodesic(self.A, self.B, l))

    def test_horizontality_by_finite_differences(self, rng):
        h = 1e-5
        for dim in (2, 3, 5):
            A = random_state(dim, rng)
            B = Ray(random_state(dim, rng))
            for lam in np.linspace(0.02, 0.98, 50):
                g = horizontal_geodesic(A, B, lam)
                dg = (horizontal_geodesic(A, B, lam + h) - horizontal_geodesic(A, B, lam - h)) / (2 * h)
                assert abs(np.vdot(g, dg)) < 1e-6

    def test_tangent_norm_and_shortest_path(self, rng):
        A = random_state(4, rng)
        B = Ray(random_state(4, rng))
        c = ray_distance(A, B)
        h = 1e-6
        dg = (horizontal_geodesic(A, B, h) - horizontal_geodesic(A, B, 0.0)) / h
        assert np.linalg.norm(dg) == pytest.approx(c / 2, rel=1e-5)
        seg = geodesic_segment(A, B)
        assert np.linalg.norm(seg.tangent(0.0)) == pytest.approx(c / 2)
        # distance grows linearly along a shortest geodesic
        for lam in (0.1, 0.4, 0.7):
            assert ray_distance(A, horizontal_geodesic(A, B, lam)) == pytest.approx(lam * c, abs=1e-7)


class TestDiscreteLift:
    def test_single_ray(self):
        start = np.array([SQ, 1j * SQ])
        assert_allclose(discrete_lift([Ray(start)], start), start)

    def test_start_must_lie_on_first_ray(self):
        with pytest.raises(InputError):
            discrete_lift([Ray([1, 0]), Ray([SQ, SQ])], [0, 1])

    def test_orthogonal_step_reports_index(self):
        curve = [Ray([1, 0]), Ray([SQ, SQ]), Ray([SQ, -SQ])]
        with pytest.raises(OrthogonalityError) as info:
            discrete_lift(curve, [1, 0])
        assert info.value.index == 2

    def test_norm_preserved(self, rng):
        start = 3.0 * random_state(3, rng)
        curve = [Ray(start)] + [Ray(random_state(3, rng)) for _ in range(5)]
        assert np.linalg.norm(discrete_lift(curve, start)) == pytest.approx(3.0)

    @pytest.mark.parametrize("n", [2, 3, 10, 57])
    def test_geodesic_rule(self, rng, n):
        A = random_state(4, rng)
        B = Ray(random_state(4, rng))
        end = discrete_lift(sample_geodesic(A, B, n), A)
        assert_allclose(end, horizontal_geodesic(A, B, 1.0), atol=1e-10)

    def test_closed_octant_triangle(self):
        # Hand product of lift factors: C picks up exp(-i pi/4), A then exp(-i pi/4) overall.
        A, B, C = (Ray(v) for v in OCTANT)
        final = discrete_lift([A, B, C, A], OCTANT[0])
        assert_allclose(final, cmath.exp(-1j * math.pi / 4) * OCTANT[0], atol=1e-15)
        assert loop_holonomy([A, B, C]) == pytest.approx(-math.pi / 4)

    def test_holonomy_is_minus_beta(self, rng):
        for _ in range(200):
            rays = [Ray(random_state(3, rng)) for _ in range(3)]
            beta = bargmann_invariant(*rays).beta
            diff = math.remainder(loop_holonomy(rays) + beta, 2 * math.pi)
            assert abs(diff) < 1e-12


def _tangent_angle(A, B, C):
    """Angle at A from the orthogonal components of in-phase lifts of B and C."""
    A = A / np.linalg.norm(A)
    mus = []
    for V in (B, C):
        L = _in_phase_lift(A, V)
        mu = L - np.vdot(A, L) * A
        mus.append(mu / np.linalg.norm(mu))
    return math.acos(np.clip(np.vdot(mus[0], mus[1]).real, -1, 1))


class TestTriangle:
    def test_octant(self):
        tri = triangle_geometry(*OCTANT)
        for value in (tri.a, tri.b, tri.c, tri.angleA):
            assert value == pytest.approx(math.pi / 2)

    def test_coincident_rejected(self):
        with pytest.raises(DegenerateTriangleError):
            triangle_geometry(OCTANT[0], OCTANT[0], OCTANT[2])

    def test_orthogonal_rejected(self):
        with pytest.raises(DegenerateTriangleError):
            triangle_geometry([1, 0], [0, 1], [SQ, SQ])

    def test_angle_matches_tangent_oracle(self, rng):
        for dim in range(2, 9):
            for _ in range(100):
                A, B, C = (random_state(dim, rng) for _ in range(3))
                tri = triangle_geometry(A, B, C)
                assert 0 <= tri.angleA <= math.pi
                assert math.cos(tri.angleA) == pytest.approx(math.cos(_tangent_angle(A, B, C)), abs=1e-10)

    def test_side_labels(self, rng):
        A, B, C = (random_state(3, rng) for _ in range(3))
        tri = triangle_geometry(A, B, C)
        assert tri.a == pytest.approx(ray_distance(B, C))
        assert tri.b == pytest.approx(ray_distance(C, A))
        assert tri.c == pytest.approx(ray_distance(A, B))

    def test_triangle_type_rejects_bad_sides(self):
        with pytest.raises(DegenerateTriangleError):
            GeodesicTriangle(a=0.0, b=1.0, c=1.0, angleA=0.5)
        with pytest.raises(DegenerateTriangleError):
            GeodesicTriangle(a=1.0, b=math.pi, c=1.0, angleA=0.5)


class TestCosBeta:
    def test_octant(self):
        # (0 + 1/2) / (1/sqrt2)
        tri = GeodesicTriangle(a=math.pi / 2, b=math.pi / 2, c=math.pi / 2, angleA=math.pi / 2)
        assert cos_beta_from_triangle(tri) == pytest.approx(SQ)

    def test_collapsing_triangle(self):
        tri = GeodesicTriangle(a=1e-9, b=1.0, c=1.0, angleA=0.0)
        assert cos_beta_from_triangle(tri) == pytest.approx(1.0)

    def test_matches_direct_on_random_triples(self, rng):
        for dim in range(2, 9):
            for _ in range(100):
                A, B, C = (random_state(dim, rng) for _ in range(3))
                tri = triangle_geometry(A, B, C)
                beta = bargmann_invariant(A, B, C).beta
                assert abs(cos_beta_from_triangle(tri) - math.cos(beta)) < 1e-10

    def test_report_keys(self):
        rep = triangle_report(*OCTANT)
        assert list(rep) == [
            "a", "b", "c", "angleA", "rho", "beta", "cos_beta_formula", "cos_beta_direct",
        ]
        assert rep["cos_beta_formula"] == pytest.approx(rep["cos_beta_direct"])
