"""Seeded property suites behind ``raywig verify``.

Every suite draws from one Generator in a fixed order and returns a list of
property records ``{"suite", "property", "max_residual", "tolerance",
"pass"}``.  ``all`` runs the suites in the order of :data:`SUITES`.
"""

import math

import numpy as np

from .geometry import (
    bargmann_invariant,
    cos_beta_from_triangle,
    discrete_lift,
    horizontal_geodesic,
    sample_geodesic,
    triangle_geometry,
)
from .hilbert import Ray, haar_unitary, overlap, random_state
from .isometry import (
    ChiKind,
    MatrixRayMap,
    imdelta_deformation_check,
    lift_fidelity,
    verify_w1_w2,
    wigner_lift,
)
from .poincare import (
    check_half_solid_angle,
    small_circle_limit,
    small_circle_phase,
)

OCTANT = (
    np.array([1.0, 0.0]),
    np.array([1.0, 1.0]) / math.sqrt(2),
    np.array([1.0, 1.0j]) / math.sqrt(2),
)


def _record(suite, prop, residual, tolerance, passed=None):
    residual = float(residual)
    if passed is None:
        passed = residual < tolerance
    return {
        "suite": suite,
        "property": prop,
        "max_residual": residual,
        "tolerance": tolerance,
        "pass": bool(passed),
    }


def _random_scalar(rng):
    modulus = math.exp(rng.uniform(-2.0, 2.0))
    return modulus * np.exp(1j * rng.uniform(0.0, 2.0 * math.pi))


def random_triple(dim, rng):
    return [random_state(dim, rng) for _ in range(3)]


def suite_gauge(dim, trials, rng):
    worst_delta = worst_overlap = 0.0
    for _ in range(trials):
        A, B, C = random_triple(dim, rng)
        base = bargmann_invariant(A, B, C).delta
        a, b, c = (_random_scalar(rng) for _ in range(3))
        moved = bargmann_invariant(a * A, b * B, c * C).delta
        worst_delta = max(worst_delta, abs(moved - base) / abs(base))
        worst_overlap = max(worst_overlap, abs(overlap(a * A, b * B) - overlap(A, B)))
    return [
        _record("gauge", "delta_relative_change", worst_delta, 1e-12),
        _record("gauge", "overlap_change", worst_overlap, 1e-12),
    ]


def suite_triangle(dim, trials, rng):
    worst = 0.0
    for _ in range(trials):
        A, B, C = random_triple(dim, rng)
        tri = triangle_geometry(A, B, C)
        beta = bargmann_invariant(A, B, C).beta
        worst = max(worst, abs(cos_beta_from_triangle(tri) - math.cos(beta)))
    return [_record("triangle", "cos_beta_formula_vs_direct", worst, 1e-10)]


def suite_isometry(dim, trials, rng):
    records = []
    for anti in (False, True):
        worst_rho = worst_re = worst_im = 0.0
        for _ in range(trials):
            T = MatrixRayMap(haar_unitary(dim, rng), antiunitary=anti)
            triple = [Ray(v) for v in random_triple(dim, rng)]
            d = bargmann_invariant(*triple).delta
            dp = bargmann_invariant(*(T(r) for r in triple)).delta
            worst_rho = max(worst_rho, abs(abs(dp) - abs(d)))
            worst_re = max(worst_re, abs(dp.real - d.real))
            worst_im = max(worst_im, abs(dp.imag - (-d.imag if anti else d.imag)))
        label = "antiunitary" if anti else "unitary"
        records += [
            _record("isometry", f"{label}_rho", worst_rho, 1e-10),
            _record("isometry", f"{label}_re_delta", worst_re, 1e-10),
            _record("isometry", f"{label}_im_delta", worst_im, 1e-10),
        ]
    return records


def suite_geodesic_rule(dim, trials, rng):
    worst = 0.0
    for _ in range(trials):
        A = random_state(dim, rng)
        B = Ray(random_state(dim, rng))
        target = horizontal_geodesic(A, B, 1.0)
        for n in (2, 10, 100):
            end = discrete_lift(sample_geodesic(A, B, n), A)
            worst = max(worst, np.linalg.norm(end - target))
    return [_record("geodesic-rule", "discrete_vs_horizontal_endpoint", worst, 1e-10)]


def suite_solid_angle(dim, trials, rng):
    octant = check_half_solid_angle(*OCTANT)
    octant_err = max(
        abs(octant["beta"] - math.pi / 4), abs(octant["solid_angle"] - math.pi / 2)
    )
    worst = 0.0
    for _ in range(trials):
        A, B, C = random_triple(2, rng)
        worst = max(worst, check_half_solid_angle(A, B, C)["residual"])
    return [
        _record("solid-angle", "octant", octant_err, 1e-9),
        _record("solid-angle", "beta_vs_half_solid_angle", worst, 1e-8),
    ]


def suite_continuum(dim, trials, rng):
    theta = math.pi / 3
    errors = [
        abs(abs(small_circle_phase(theta, n)) - math.pi * (1 - math.cos(theta)))
        for n in (8, 32, 128, 512)
    ]
    monotone = all(e2 < e1 for e1, e2 in zip(errors, errors[1:]))
    limit_err = abs(small_circle_phase(theta, 512) - small_circle_limit(theta))
    return [
        _record("continuum", "n512_vs_cap", errors[-1], 1e-3),
        _record("continuum", "signed_n512_vs_limit", limit_err, 1e-3),
        _record("continuum", "monotone_error", 0.0 if monotone else 1.0, 0.5, monotone),
    ]


def suite_reconstruction(dim, trials, rng, w_checks=100):
    dims = list(range(2, max(dim, 2) + 1))
    misclassified = 0
    worst_fid = worst_w1 = worst_w2 = 0.0
    for k in range(trials):
        anti = bool(k % 2)
        d = dims[(k // 2) % len(dims)]
        U = haar_unitary(d, rng)
        T = MatrixRayMap(U, antiunitary=anti)
        lift = wigner_lift(T, rng=rng)
        expected = ChiKind.CONJUGATION if anti else ChiKind.IDENTITY
        misclassified += lift.chi is not expected
        worst_fid = max(worst_fid, 1.0 - lift_fidelity(lift.matrix, U))
        res = verify_w1_w2(T, lift, w_checks, rng)
        worst_w1 = max(worst_w1, res["w1"])
        worst_w2 = max(worst_w2, res["w2"], res["four_term"], res["homogeneity"])
    return [
        _record("reconstruction", "chi_misclassified", misclassified, 0.5),
        _record("reconstruction", "one_minus_fidelity", worst_fid, 1e-9),
        _record("reconstruction", "w1", worst_w1, 1e-9),
        _record("reconstruction", "w2", worst_w2, 1e-9),
    ]


def suite_appendix(dim, trials, rng, steps=50):
    d = max(dim, 3)
    failures = 0
    done = 0
    while done < trials:
        A, B, C = random_triple(d, rng)
        if abs(bargmann_invariant(A, B, C).delta.imag) <= 1e-6:
            continue
        done += 1
        failures += not imdelta_deformation_check(A, B, C, steps=steps).constant
    return [_record("appendix", "sign_changes", failures, 0.5)]


SUITES = {
    "gauge": suite_gauge,
    "triangle": suite_triangle,
    "isometry": suite_isometry,
    "geodesic-rule": suite_geodesic_rule,
    "solid-angle": suite_solid_angle,
    "continuum": suite_continuum,
    "reconstruction": suite_reconstruction,
    "appendix": suite_appendix,
}


def run_suite(name, dim=4, trials=100, seed=0):
    """Run one suite (or ``"all"``) and return the report dict."""
    if name != "all" and name not in SUITES:
        raise KeyError(name)
    rng = np.random.default_rng(seed)
    names = list(SUITES) if name == "all" else [name]
    properties = []
    for n in names:
        properties += SUITES[n](dim, trials, rng)
    return {
        "suite": name,
        "seed": seed,
        "dim": dim,
        "trials": trials,
        "properties": properties,
        "pass": all(p["pass"] for p in properties),
    }
