"""Shared helpers: random spectral data, wave fields, contour-integral oracle."""

import cmath
import math

import numpy as np
import pytest

from quadcr import SpectralData, dual_wave, generate_fixture, wave

#: Minimum angular separation of marked points in randomized data; keeps
#: every tangent/cotangent weight bounded and conditioning sane.
MIN_SEPARATION = 1e-3


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)


def random_half_circle_data(rng, d, C=1.0, sorted_order=True):
    """Marked points on |z| = C inside an open half-circle.

    Arguments are drawn with at least MIN_SEPARATION radians between any two
    and the whole spread kept below pi - 1e-2, so the data is orderable and
    no face is near-degenerate.
    """
    start = rng.uniform(-math.pi, math.pi)
    span = math.pi - 1e-2
    while True:
        offsets = np.sort(rng.uniform(0.0, span, d))
        if d == 1 or np.min(np.diff(offsets)) > MIN_SEPARATION:
            break
    if not sorted_order:
        rng.shuffle(offsets)
    alpha = tuple(C * cmath.exp(1j * _wrap(start + t)) for t in offsets)
    return SpectralData(alpha, C)


def _wrap(theta):
    return (theta + math.pi) % (2 * math.pi) - math.pi


def random_point(rng, scale=1.0):
    """A spectral variable away from the marked circle, zero and infinity."""
    r = scale * rng.uniform(1.3, 4.0)
    return r * cmath.exp(1j * rng.uniform(0.0, 2.0 * math.pi))


def random_lattice_vector(rng, d, span=4):
    return tuple(int(v) for v in rng.integers(-span, span + 1, d))


def wave_field(data, q, labeling, z):
    """The wave function as a vertex field on all of V(D)."""
    return {v: wave(data, labeling.coords[v], z) for v in q.parts}


def contour_residue(data, n_p, n_q, at, rho=1e-3, nodes=128):
    """Trapezoid quadrature of W(n_p; z) W(n_q; -z) (-dz/2z) around ``at``.

    Independent of the closed-form residue path; exponentially accurate for
    first-order poles at this node count.
    """
    acc = 0.0 + 0.0j
    for k in range(nodes):
        z = at + rho * cmath.exp(2j * math.pi * k / nodes)
        value = wave(data, n_p, z) * dual_wave(data, n_q, z) * (-1.0 / (2.0 * z))
        acc += value * (z - at)
    return acc / nodes


def broken_staircase(size):
    """Staircase labeling with left-half horizontal orientations reversed (d=3)."""
    cut = (size + 1) // 2
    cols = [(1 if i % 2 == 0 else 2, -1 if i < cut else 1) for i in range(size)]
    return generate_fixture("strip", size, col_specs=cols)
