"""Face coefficients and the weight function on the two diagonal graphs.

Every labeled face has a unique source corner p1 whose two face edges point
away from it; listing the face counterclockwise as (p1, p2, p4, p3) and
writing e_x for the axis of (p1, p2) and e_y for the axis of (p1, p3), the
wave function satisfies the four-point relation

    W(p4) + a1 W(p2) + a2 W(p3) + a3 W(p1) = 0,
    a1 = -(alpha_x + alpha_y)/(alpha_x - alpha_y),   a2 = -a1,   a3 = -1,

identically in the spectral variable.  The induced weight on the diagonal
through the source corner is

    nu(p1, p4) = 1 / (i a1) = i (alpha_x - alpha_y)/(alpha_x + alpha_y),

and the opposite diagonal carries the reciprocal, which is exactly the rule
extending a weight function from one diagonal graph to its dual.  The
Cauchy-Riemann identity (W(p3) - W(p2)) = i nu(p1, p4) (W(p4) - W(p1)) then
holds on every face, for every value of the spectral variable.

When all |alpha_j| = C the weights are real: on the circle
nu(p1, p4) = tan((theta_y - theta_x)/2) in terms of the marked-point
arguments.  The linear map P(p) = sum_j n_j(p) alpha_j embeds the quad-graph
with parallelogram faces whose diagonal ratio reproduces i*nu, giving an
independent geometric oracle for the whole construction.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import IO, Sequence

from .errors import DegenerateFaceError, DomainError
from .quadgraph import Edge, Part, QuadGraph, ZdLabeling, _edge
from .spectral import SpectralData

#: |alpha_x -+ alpha_y| below this fraction of the data scale is degenerate.
DEGENERACY_REL_TOL = 1e-10


@dataclass(frozen=True)
class CanonicalFace:
    """A face rotated to its source corner: counterclockwise (p1, p2, p4, p3)."""

    face_index: int
    p1: int
    p2: int
    p3: int
    p4: int
    x_axis: int
    y_axis: int


def canonical_face(q: QuadGraph, labeling: ZdLabeling, face_index: int) -> CanonicalFace:
    """Rotate a stored face so both edges at the first corner point outward.

    Exactly one corner of a coherent parallelogram face has both incident
    face edges directed away from it.  p2 is the counterclockwise neighbor of
    p1, p3 the clockwise one, p4 the opposite corner.
    """
    f = q.faces[face_index]
    for i in range(4):
        v = f[i]
        nxt, prv = f[(i + 1) % 4], f[(i - 1) % 4]
        if labeling.edge_tail[_edge(v, nxt)] == v and labeling.edge_tail[_edge(v, prv)] == v:
            x_axis = labeling.edge_axis[_edge(v, nxt)]
            y_axis = labeling.edge_axis[_edge(v, prv)]
            return CanonicalFace(face_index, v, nxt, prv, f[(i + 2) % 4], x_axis, y_axis)
    raise DomainError(f"face {face_index} has no source corner; labeling incoherent")


@dataclass(frozen=True)
class FaceCoefficients:
    """Coefficients of the four-point relation on one canonicalized face.

    Invariants: a1 + a2 + a3 = -1, and for centrally symmetric data a2 = -a1
    so a3 = -1 exactly.
    """

    face: CanonicalFace
    a1: complex
    a2: complex
    a3: complex

    @property
    def axes(self) -> tuple[int, int]:
        return (self.face.x_axis, self.face.y_axis)


def _face_alphas(data: SpectralData, face: CanonicalFace) -> tuple[complex, complex]:
    scale = data.C if data.C is not None else max(abs(a) for a in data.alpha)
    ax = data.alpha[face.x_axis - 1]
    ay = data.alpha[face.y_axis - 1]
    if abs(ax - ay) <= DEGENERACY_REL_TOL * scale or abs(ax + ay) <= DEGENERACY_REL_TOL * scale:
        raise DegenerateFaceError(
            face.face_index,
            f"axis directions {face.x_axis} and {face.y_axis} nearly collinear; "
            "weight would be 0 or infinite",
        )
    return ax, ay


def face_coefficients(
    data: SpectralData, q: QuadGraph, labeling: ZdLabeling, face_index: int
) -> FaceCoefficients:
    """Closed-form four-point coefficients of the given face."""
    face = canonical_face(q, labeling, face_index)
    ax, ay = _face_alphas(data, face)
    a1 = -(ax + ay) / (ax - ay)
    a2 = -(ay + ax) / (ay - ax)
    # a1 + a2 == 0 exactly (the two quotients are exact negations), so the
    # grouping keeps a3 = -1 exact as well.
    a3 = -1.0 - (a1 + a2)
    return FaceCoefficients(face, a1, a2, a3)


@dataclass(frozen=True)
class WeightFunction:
    """Weight values on the primal and dual diagonal edges.

    ``nu[frozenset((u, v))]`` is defined for every diagonal of every face;
    dual pairs multiply to 1.  ``real`` records whether all values are real
    to 1e-12 relative.
    """

    nu: dict[Edge, complex]
    real: bool

    def __call__(self, u: int, v: int) -> complex:
        try:
            return self.nu[_edge(u, v)]
        except KeyError:
            raise DomainError(f"no weight on edge ({u}, {v})") from None

    def sign(self) -> int:
        """+1 or -1 for sign-uniform real weights, 0 for mixed signs."""
        if not self.nu:
            return 0
        signs = {1 if w.real > 0 else -1 for w in self.nu.values()}
        return signs.pop() if len(signs) == 1 else 0


def weight_function(data: SpectralData, q: QuadGraph, labeling: ZdLabeling) -> WeightFunction:
    """Weights on both diagonals of every face, from the face coefficients."""
    nu: dict[Edge, complex] = {}
    for idx in range(len(q.faces)):
        co = face_coefficients(data, q, labeling, idx)
        value = 1.0 / (1j * co.a1)
        nu[_edge(co.face.p1, co.face.p4)] = value
        nu[_edge(co.face.p2, co.face.p3)] = 1.0 / value
    scale = max(abs(w) for w in nu.values()) if nu else 0.0
    real = all(abs(w.imag) <= 1e-12 * scale for w in nu.values())
    return WeightFunction(nu, real)


def embed_quasicrystal(
    data: SpectralData, q: QuadGraph, labeling: ZdLabeling
) -> dict[int, complex]:
    """Planar embedding P(p) = sum_j n_j(p) alpha_j.

    Every face maps to a parallelogram with sides among the +-alpha_j; the
    embedding is discrete holomorphic for the weight function built from the
    same data, with i*nu equal to the ratio of the face diagonals.
    """
    out = {}
    for v in q.parts:
        n = labeling.coords[v]
        out[v] = sum(nj * a for nj, a in zip(n, data.alpha)) + 0.0j
    return out


# ---------------------------------------------------------------------------
# CSV report
# ---------------------------------------------------------------------------

CSV_COLUMNS = [
    "face",
    "axis_x",
    "axis_y",
    "a1_re",
    "a1_im",
    "a2_re",
    "a2_im",
    "a3_re",
    "a3_im",
    "nu_primal_re",
    "nu_primal_im",
    "nu_dual_re",
    "nu_dual_im",
    "sign",
]


def write_weights_csv(
    fp: IO[str], data: SpectralData, q: QuadGraph, labeling: ZdLabeling
) -> None:
    """One row per face: coefficients, both diagonal weights, and the sign.

    The sign column is +1/-1 from the real part of the primal-diagonal
    weight, or 0 when the value is not real to 1e-12 relative.  Floats are
    written with shortest round-trip repr, so identical inputs produce
    byte-identical files.
    """
    writer = csv.writer(fp, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for idx in range(len(q.faces)):
        co = face_coefficients(data, q, labeling, idx)
        primal_first = q.parts[co.face.p1] is Part.PRIMAL
        v14 = 1.0 / (1j * co.a1)
        v23 = 1.0 / v14
        nu_primal, nu_dual = (v14, v23) if primal_first else (v23, v14)
        if abs(nu_primal.imag) <= 1e-12 * abs(nu_primal):
            sign = 1 if nu_primal.real > 0 else -1
        else:
            sign = 0
        writer.writerow(
            [
                idx,
                co.face.x_axis,
                co.face.y_axis,
                repr(co.a1.real),
                repr(co.a1.imag),
                repr(co.a2.real),
                repr(co.a2.imag),
                repr(co.a3.real),
                repr(co.a3.imag),
                repr(nu_primal.real),
                repr(nu_primal.imag),
                repr(nu_dual.real),
                repr(nu_dual.imag),
                sign,
            ]
        )


def read_weights_csv(fp: IO[str], q: QuadGraph) -> WeightFunction:
    """Rebuild a WeightFunction from a CSV produced by :func:`write_weights_csv`."""
    reader = csv.DictReader(fp)
    nu: dict[Edge, complex] = {}
    for row in reader:
        idx = int(row["face"])
        primal_diag, dual_diag = q.diagonals(idx)
        nu[primal_diag] = complex(float(row["nu_primal_re"]), float(row["nu_primal_im"]))
        nu[dual_diag] = complex(float(row["nu_dual_re"]), float(row["nu_dual_im"]))
    scale = max(abs(w) for w in nu.values()) if nu else 0.0
    real = all(abs(w.imag) <= 1e-12 * scale for w in nu.values())
    return WeightFunction(nu, real)
