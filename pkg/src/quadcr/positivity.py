"""Sign-uniformity of the weight function via a combinatorial criterion.

For reflection-symmetric data whose marked points fit in an open half-circle,
the 2d points +-alpha_j sit on the circle |z| = C in the block order
A_1..A_d, -A_1..-A_d after renumbering.  Cutting the circle inside the
antipodal block linearizes the A_j; "y between x and z" below always refers
to that linear order.

The criterion pairs this order with the edge directions of the labeled
quad-graph.  Two faces adjacent across an edge of axis y, with flanking
edges (the face edges sharing an endpoint with the common edge) of axes x
and z, carry weights of equal sign exactly when

    flanking edges point in different directions along the path through the
    shared vertex (common head or common tail)   <=>   y lies between x and z.

A labeling whose every adjacent pair satisfies this biconditional is
positively consistent with the edge orientation; the weight function built
from any admissibly ordered data is then sign-uniform, and conversely a
single failing pair forces mixed signs.  :func:`check_criterion` computes
both verdicts independently and reports any disagreement as a hard failure.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import AdjacencyError, PreconditionError
from .quadgraph import Edge, QuadGraph, ZdLabeling, _edge
from .spectral import SpectralData, half_circle_order
from .weights import weight_function


@dataclass(frozen=True)
class OvalOrder:
    """Linearized circular order of the marked points.

    ``permutation`` renumbers the axes so arguments increase along the
    half-circle; ``position[j]`` is the 0-based linear slot of axis j.  The
    full cyclic sequence on the circle is the permuted A block followed by
    the permuted antipodal block.
    """

    permutation: tuple[int, ...]
    position: dict[int, int]

    @property
    def d(self) -> int:
        return len(self.permutation)

    def cyclic_sequence(self) -> tuple[str, ...]:
        plus = [f"A+{j}" for j in self.permutation]
        minus = [f"A-{j}" for j in self.permutation]
        return tuple(plus + minus)


def oval_order(data: SpectralData) -> OvalOrder:
    """Sort the marked points along the circle; fail if no half-circle works.

    Raises NotMOrderedError when some antipode separates two marked points,
    i.e. the block structure A..A, -A..-A is unattainable; such data cannot
    satisfy the sign criterion's hypotheses.
    """
    if not data.tau_symmetric:
        raise PreconditionError("oval order needs tau symmetry (declared C)")
    perm = half_circle_order(data.alpha)
    position = {axis: slot for slot, axis in enumerate(perm)}
    return OvalOrder(perm, position)


def between(order: OvalOrder, y: int, x: int, z: int) -> bool:
    """True when axis y lies strictly between axes x and z in the linear order."""
    if len({x, y, z}) != 3:
        raise ValueError(f"axes must be distinct, got y={y}, x={x}, z={z}")
    px, py, pz = order.position[x], order.position[y], order.position[z]
    return min(px, pz) < py < max(px, pz)


class RelativeDirection(Enum):
    SAME = "same"  # flanking edges traverse the shared vertex coherently
    OPPOSITE = "opposite"  # common head or common tail at the shared vertex


@dataclass(frozen=True)
class AdjacencyCase:
    """How two faces meet across a shared edge.

    ``shared_axis`` labels the common edge; ``flank1``/``flank2`` are the
    face edges at ``shared_vertex`` with their axes.  ``direction`` is
    OPPOSITE when both flanking edges head into, or both out of, the shared
    vertex (``common`` records which), covering the mutual arrangements of
    two quads up to rotation.
    """

    faces: tuple[int, int]
    shared_edge: Edge
    shared_axis: int
    shared_vertex: int
    flank1: Edge
    flank2: Edge
    flank_axes: tuple[int, int]
    direction: RelativeDirection
    common: str | None  # "head" | "tail" | None


def _flanking_edge(q: QuadGraph, face_index: int, shared: Edge, w: int) -> Edge:
    face = q.faces[face_index]
    i = face.index(w)
    for u in (face[(i + 1) % 4], face[(i - 1) % 4]):
        e = _edge(w, u)
        if e != shared:
            return e
    raise AdjacencyError(f"face {face_index} has no flanking edge at {w}")


def classify_adjacent_faces(
    q: QuadGraph, labeling: ZdLabeling, face1: int, face2: int
) -> AdjacencyCase:
    """Identify the shared edge, flanking axes and relative direction.

    The two faces must share exactly one edge.  The verdict does not depend
    on which endpoint of the shared edge is used: labels on opposite face
    edges are direction-coherent, so both endpoints give the same relative
    direction.
    """
    shared = [
        e for e, fs in q.edge_faces.items() if set(fs) == {face1, face2}
    ]
    if face1 == face2 or len(shared) != 1:
        raise AdjacencyError(
            f"faces {face1} and {face2} share {len(shared)} edges; exactly one required"
        )
    (edge,) = shared
    w = min(edge)  # deterministic endpoint choice; verdict is endpoint-independent
    flank1 = _flanking_edge(q, face1, edge, w)
    flank2 = _flanking_edge(q, face2, edge, w)
    head1 = labeling.head(flank1) == w
    head2 = labeling.head(flank2) == w
    if head1 == head2:
        direction = RelativeDirection.OPPOSITE
        common = "head" if head1 else "tail"
    else:
        direction = RelativeDirection.SAME
        common = None
    return AdjacencyCase(
        (face1, face2),
        edge,
        labeling.edge_axis[edge],
        w,
        flank1,
        flank2,
        (labeling.edge_axis[flank1], labeling.edge_axis[flank2]),
        direction,
        common,
    )


@dataclass(frozen=True)
class Violation:
    """One adjacent pair breaking the biconditional."""

    faces: tuple[int, int]
    shared_axis: int
    flank_axes: tuple[int, int]
    expected_opposite: bool  # what the order demands of the directions
    found_opposite: bool

    def as_dict(self) -> dict:
        return {
            "faces": list(self.faces),
            "axes": {"shared": self.shared_axis, "flanking": list(self.flank_axes)},
            "expected": "opposite" if self.expected_opposite else "same",
            "found": "opposite" if self.found_opposite else "same",
        }


@dataclass(frozen=True)
class ConsistencyReport:
    consistent: bool
    violations: tuple[Violation, ...]
    pairs_checked: int


def check_positive_consistency(
    q: QuadGraph, labeling: ZdLabeling, order: OvalOrder
) -> ConsistencyReport:
    """Check every adjacent face pair against the order/orientation rule.

    For each pair: flanking edges OPPOSITE-directed must hold exactly when
    the shared axis lies between the two flanking axes.  Equal flanking axes
    make the betweenness vacuously false, so SAME direction is demanded.
    Violations are collected exhaustively, never fail-fast, so a breaking
    seam shows up in full.
    """
    violations = []
    pairs = q.adjacent_face_pairs()
    for f1, f2 in pairs:
        case = classify_adjacent_faces(q, labeling, f1, f2)
        a1, a2 = case.flank_axes
        required = False if a1 == a2 else between(order, case.shared_axis, a1, a2)
        found = case.direction is RelativeDirection.OPPOSITE
        if required != found:
            violations.append(
                Violation((f1, f2), case.shared_axis, case.flank_axes, required, found)
            )
    return ConsistencyReport(not violations, tuple(violations), len(pairs))


@dataclass(frozen=True)
class CriterionReport:
    """Both sides of the sign criterion, plus their agreement.

    ``sign`` is +1/-1 for sign-uniform weights and 0 for mixed signs;
    ``consistent`` is the combinatorial verdict.  ``agree`` asserts the
    biconditional between them, which is the content being validated:
    a False here is a hard failure of the construction, not of the data.
    """

    consistent: bool
    sign: int
    agree: bool
    consistency: ConsistencyReport
    weight_is_real: bool

    def as_dict(self) -> dict:
        return {
            "consistent": self.consistent,
            "sign": {1: "+1", -1: "-1", 0: "mixed"}[self.sign],
            "agree": self.agree,
            "violations": [v.as_dict() for v in self.consistency.violations],
        }


def check_criterion(
    data: SpectralData, q: QuadGraph, labeling: ZdLabeling
) -> CriterionReport:
    """Cross-validate the combinatorial verdict against direct signs.

    Builds the weight function, tests its sign-uniformity directly, runs the
    consistency check, and reports whether the two verdicts agree.  Requires
    reflection-symmetric, half-circle-orderable data; degenerate faces
    propagate their error.
    """
    order = oval_order(data)
    w = weight_function(data, q, labeling)
    sign = w.sign() if w.real else 0
    report = check_positive_consistency(q, labeling, order)
    agree = report.consistent == (sign != 0)
    return CriterionReport(report.consistent, sign, agree, report, w.real)
