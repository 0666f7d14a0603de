"""Quad-graphs: bipartite planar graphs whose bounded faces are quadrilaterals.

A quad-graph D splits into a primal part and a dual part.  Joining primal
vertices that share a face yields the primal graph G; the dual vertices give
G* the same way, so every face carries one diagonal from each.  An edge
labeling assigns a lattice axis and direction to every edge of D so that each
face becomes a combinatorial parallelogram in Z^d; integrating the labels
produces vertex coordinates n: V(D) -> Z^d with |n(p) - n(q)|_1 = 1 along
every edge.

Faces are stored explicitly as positively oriented (counterclockwise)
4-tuples alternating parts.  Instances are immutable after construction and
safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping, Sequence

from .errors import IncoherentFaceError, StructureError


class Part(Enum):
    PRIMAL = "primal"
    DUAL = "dual"

    def other(self) -> "Part":
        return Part.DUAL if self is Part.PRIMAL else Part.PRIMAL


Edge = frozenset  # frozenset({u, v}) identifies an undirected edge


def _edge(u: int, v: int) -> Edge:
    return frozenset((u, v))


@dataclass(frozen=True)
class QuadGraph:
    """Vertex parts, oriented quadrilateral faces, optional planar positions.

    ``faces[k]`` is the counterclockwise corner sequence of face k; corners
    alternate PRIMAL/DUAL.  Derived adjacency structures are built once in
    ``__post_init__`` and cached on the instance.
    """

    parts: dict[int, Part]
    faces: tuple[tuple[int, int, int, int], ...]
    pos: dict[int, complex] | None = None

    edges: frozenset[Edge] = field(init=False, repr=False)
    edge_faces: dict[Edge, tuple[int, ...]] = field(init=False, repr=False)
    primal_edges: frozenset[Edge] = field(init=False, repr=False)
    dual_edges: frozenset[Edge] = field(init=False, repr=False)

    def __post_init__(self):
        faces = tuple(tuple(int(v) for v in f) for f in self.faces)
        object.__setattr__(self, "faces", faces)
        for idx, f in enumerate(faces):
            if len(f) != 4 or len(set(f)) != 4:
                raise StructureError(f"face {idx} is not a quadrilateral: {f}")
            for v in f:
                if v not in self.parts:
                    raise StructureError(f"face {idx} uses unknown vertex {v}")
            ps = [self.parts[v] for v in f]
            if ps[0] == ps[1] or ps[1] == ps[2] or ps[0] != ps[2] or ps[1] != ps[3]:
                raise StructureError(f"face {idx} does not alternate parts: {f}")
        edge_faces: dict[Edge, list[int]] = {}
        for idx, f in enumerate(faces):
            for i in range(4):
                e = _edge(f[i], f[(i + 1) % 4])
                edge_faces.setdefault(e, []).append(idx)
        for e, fs in edge_faces.items():
            if len(fs) > 2:
                raise StructureError(f"edge {sorted(e)} bounds {len(fs)} faces")
        object.__setattr__(self, "edges", frozenset(edge_faces))
        object.__setattr__(
            self, "edge_faces", {e: tuple(fs) for e, fs in edge_faces.items()}
        )
        primal, dual = set(), set()
        for a, b, c, d in faces:
            (primal if self.parts[a] is Part.PRIMAL else dual).add(_edge(a, c))
            (primal if self.parts[b] is Part.PRIMAL else dual).add(_edge(b, d))
        object.__setattr__(self, "primal_edges", frozenset(primal))
        object.__setattr__(self, "dual_edges", frozenset(dual))

    # -- basic queries ---------------------------------------------------

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted(self.parts))

    def vertices_of(self, part: Part) -> tuple[int, ...]:
        return tuple(v for v in sorted(self.parts) if self.parts[v] is part)

    def part_edges(self, part: Part) -> frozenset[Edge]:
        return self.primal_edges if part is Part.PRIMAL else self.dual_edges

    def diagonals(self, face_index: int) -> tuple[Edge, Edge]:
        """(primal diagonal, dual diagonal) of the given face."""
        a, b, c, d = self.faces[face_index]
        first, second = _edge(a, c), _edge(b, d)
        if self.parts[a] is Part.PRIMAL:
            return first, second
        return second, first

    def neighbors(self, v: int) -> tuple[int, ...]:
        """Neighbors of v within its own part (via shared faces)."""
        part = self.parts[v]
        out = set()
        for e in self.part_edges(part):
            if v in e:
                (w,) = e - {v}
                out.add(w)
        return tuple(sorted(out))

    def faces_at(self, v: int) -> tuple[int, ...]:
        return tuple(
            idx for idx, f in enumerate(self.faces) if v in f
        )

    def interior_vertices(self) -> frozenset[int]:
        """Vertices whose incident faces close a full wheel.

        A vertex is interior iff each of its incident edges lies on exactly
        two of its incident faces and those faces form one closed cycle; only
        there does the face-wise Cauchy-Riemann structure telescope into the
        Laplacian identity.
        """
        return self._interior

    @property
    def _interior(self) -> frozenset[int]:
        cached = getattr(self, "_interior_cache", None)
        if cached is None:
            cached = frozenset(
                v for v in self.parts if self._has_closed_wheel(v)
            )
            object.__setattr__(self, "_interior_cache", cached)
        return cached

    def _has_closed_wheel(self, v: int) -> bool:
        incident = self.faces_at(v)
        if not incident:
            return False
        spokes: dict[Edge, list[int]] = {}
        for idx in incident:
            f = self.faces[idx]
            i = f.index(v)
            for w in (f[(i + 1) % 4], f[(i - 1) % 4]):
                spokes.setdefault(_edge(v, w), []).append(idx)
        if any(len(fs) != 2 for fs in spokes.values()):
            return False
        # Walk the wheel: faces linked by shared spokes must form one cycle.
        seen = {incident[0]}
        frontier = [incident[0]]
        adj: dict[int, set[int]] = {idx: set() for idx in incident}
        for fs in spokes.values():
            adj[fs[0]].add(fs[1])
            adj[fs[1]].add(fs[0])
        while frontier:
            cur = frontier.pop()
            for nxt in adj[cur]:
                if nxt not in seen:
                    seen.add(nxt)
                    frontier.append(nxt)
        return len(seen) == len(incident)

    def adjacent_face_pairs(self) -> tuple[tuple[int, int], ...]:
        """Unordered pairs of faces sharing at least one edge, sorted."""
        pairs = set()
        for fs in self.edge_faces.values():
            if len(fs) == 2:
                pairs.add(tuple(sorted(fs)))
        return tuple(sorted(pairs))


@dataclass(frozen=True)
class ZdLabeling:
    """Axis labels with directions on E(D), integrated to vertex coordinates.

    ``edge_axis[e]`` is the 1-based lattice axis of edge e and
    ``edge_tail[e]`` the endpoint the axis vector points away from, so that
    coords[head] - coords[tail] = e_axis.  ``coords`` maps every vertex to a
    tuple of d integers, pinned to 0 at ``base``.
    """

    d: int
    edge_axis: dict[Edge, int]
    edge_tail: dict[Edge, int]
    coords: dict[int, tuple[int, ...]]
    base: int

    def head(self, e: Edge) -> int:
        (h,) = e - {self.edge_tail[e]}
        return h

    def coord_vector(self, v: int):
        return self.coords[v]

    def step(self, tail: int, head: int) -> tuple[int, int]:
        """(axis, sign) of the move tail -> head along their edge."""
        e = _edge(tail, head)
        axis = self.edge_axis[e]
        return axis, (1 if self.edge_tail[e] == tail else -1)


RawLabels = Mapping[Edge, tuple[int, int]]  # edge -> (axis, tail vertex)


def _face_steps(labels: RawLabels, face: Sequence[int]):
    steps = []
    for i in range(4):
        u, v = face[i], face[(i + 1) % 4]
        e = _edge(u, v)
        if e not in labels:
            raise StructureError(f"edge {sorted(e)} unlabeled")
        axis, tail = labels[e]
        steps.append((axis, 1 if tail == u else -1))
    return steps


def _check_face_coherence(labels: RawLabels, face_index: int, face: Sequence[int]):
    """Parallelogram conditions: opposite edges same axis with cancelling
    traversal steps, the two axes distinct."""
    steps = _face_steps(labels, face)
    axes = [a for a, _ in steps]
    if axes[0] != axes[2] or axes[1] != axes[3]:
        raise IncoherentFaceError(
            face_index, f"opposite edges carry different axes {axes}"
        )
    if axes[0] == axes[1]:
        raise IncoherentFaceError(face_index, f"both axis pairs equal ({axes[0]})")
    if steps[0][1] != -steps[2][1] or steps[1][1] != -steps[3][1]:
        raise IncoherentFaceError(
            face_index, "signed unit steps around the face do not cancel"
        )


def integrate_labeling(
    q: QuadGraph,
    labels: RawLabels,
    base: int | None = None,
    d: int | None = None,
) -> ZdLabeling:
    """Integrate raw edge labels into lattice coordinates.

    Every edge of ``q`` must appear in ``labels`` as (axis, tail).  Each face
    is checked for parallelogram coherence first; the first failing face is
    reported by an IncoherentFaceError naming it.  Coordinates are assigned
    breadth-first from ``base`` (default: smallest vertex id) and non-tree
    edges are verified, so an inconsistent labeling cannot slip through on
    multiply connected patches.
    """
    labels = {frozenset(e): (int(a), int(t)) for e, (a, t) in labels.items()}
    for e in q.edges:
        if e not in labels:
            raise StructureError(f"edge {sorted(e)} unlabeled")
    for idx, f in enumerate(q.faces):
        _check_face_coherence(labels, idx, f)
    axes = [a for a, _ in labels.values()]
    if any(a < 1 for a in axes):
        raise StructureError("axes are 1-based positive integers")
    if d is None:
        if not axes:
            raise StructureError("cannot infer d: no labeled edges and no explicit d")
        dim = max(axes)
    else:
        dim = int(d)
        if axes and dim < max(axes):
            raise StructureError(f"axis {max(axes)} exceeds d = {dim}")

    if not q.parts:
        return ZdLabeling(dim, {}, {}, {}, base=0)
    if base is None:
        base = min(q.parts)
    elif base not in q.parts:
        raise StructureError(f"base vertex {base} not in graph")

    adjacency: dict[int, list[int]] = {v: [] for v in q.parts}
    for e in q.edges:
        u, v = sorted(e)
        adjacency[u].append(v)
        adjacency[v].append(u)

    coords: dict[int, tuple[int, ...]] = {base: (0,) * dim}
    queue = [base]
    while queue:
        u = queue.pop(0)
        cu = coords[u]
        for v in sorted(adjacency[u]):
            axis, tail = labels[_edge(u, v)]
            sign = 1 if tail == u else -1
            cv = list(cu)
            cv[axis - 1] += sign
            cv = tuple(cv)
            if v in coords:
                if coords[v] != cv:
                    raise IncoherentFaceError(
                        -1, f"labels fail to integrate at vertex {v}"
                    )
            else:
                coords[v] = cv
                queue.append(v)
    missing = set(q.parts) - set(coords)
    if missing:
        raise StructureError(f"graph disconnected; unreachable vertices {sorted(missing)}")

    edge_axis = {e: labels[e][0] for e in q.edges}
    edge_tail = {e: labels[e][1] for e in q.edges}
    return ZdLabeling(dim, edge_axis, edge_tail, coords, base)


# ---------------------------------------------------------------------------
# Double construction
# ---------------------------------------------------------------------------


def double_from_planar(
    vertices: Iterable[int],
    face_walks: Sequence[Sequence[int]],
    pos: Mapping[int, complex] | None = None,
) -> QuadGraph:
    """Build the quad-graph double of a planar graph.

    ``face_walks`` lists every face of the input graph (the outer face
    included) as cyclic vertex sequences consistent with one orientation:
    each edge must be traversed exactly once in each direction overall.
    The double has the input vertices as its primal part and one dual vertex
    per input face; every input edge (u, v) yields the quad
    (u, right face, v, left face), which is counterclockwise when interior
    input faces were given counterclockwise.  The primal graph of the result
    is the input graph again.

    Raises StructureError when the face list is inconsistent (an edge bounded
    by more or fewer than two face traversals, or by a single face, as for a
    bridge, where the interior dual is undefined).
    """
    vertices = sorted(int(v) for v in vertices)
    vset = set(vertices)
    directed: dict[tuple[int, int], int] = {}
    for fidx, walk in enumerate(face_walks):
        walk = [int(v) for v in walk]
        if len(walk) < 2:
            raise StructureError(f"face {fidx} has fewer than two vertices")
        for v in walk:
            if v not in vset:
                raise StructureError(f"face {fidx} uses unknown vertex {v}")
        for i in range(len(walk)):
            u, v = walk[i], walk[(i + 1) % len(walk)]
            if u == v:
                raise StructureError(f"face {fidx} repeats vertex {u} consecutively")
            if (u, v) in directed:
                raise StructureError(
                    f"edge ({u}, {v}) traversed twice in the same direction; "
                    "face list inconsistent"
                )
            directed[(u, v)] = fidx

    dual_ids = {fidx: max(vertices) + 1 + fidx for fidx in range(len(face_walks))}
    parts = {v: Part.PRIMAL for v in vertices}
    parts.update({dv: Part.DUAL for dv in dual_ids.values()})

    quads = []
    seen = set()
    for (u, v), f_left in directed.items():
        if (v, u) not in directed:
            raise StructureError(
                f"edge ({u}, {v}) bounded by one face traversal only; "
                "face list inconsistent"
            )
        if frozenset((u, v)) in seen:
            continue
        seen.add(frozenset((u, v)))
        f_right = directed[(v, u)]
        if f_left == f_right:
            raise StructureError(
                f"edge ({u}, {v}) bounded by a single face; interior dual undefined"
            )
        quads.append((u, dual_ids[f_right], v, dual_ids[f_left]))

    positions = None
    if pos is not None:
        positions = {v: complex(pos[v]) for v in vertices}
        all_pts = list(positions.values())
        centroid = sum(all_pts) / len(all_pts)
        spread = max((abs(p - centroid) for p in all_pts), default=1.0) or 1.0
        for fidx, walk in enumerate(face_walks):
            pts = [positions[int(v)] for v in walk]
            center = sum(pts) / len(pts)
            if _walk_is_clockwise(pts):
                # Outer face: place its dual vertex outside the drawing.
                direction = center - centroid
                if abs(direction) < 1e-12:
                    direction = 1.0
                center = centroid + direction / abs(direction) * 2.5 * spread
            positions[dual_ids[fidx]] = center

    return QuadGraph(parts, tuple(quads), positions)


def _walk_is_clockwise(pts: Sequence[complex]) -> bool:
    area2 = 0.0
    for i in range(len(pts)):
        a, b = pts[i], pts[(i + 1) % len(pts)]
        area2 += a.real * b.imag - b.real * a.imag
    return area2 < 0


# ---------------------------------------------------------------------------
# Fixtures
# ---------------------------------------------------------------------------


class FixtureKind(Enum):
    SQUARE_D2 = "square"
    STAIRCASE_D3 = "staircase"
    FLIPPED_STAIRCASE_D5 = "flipped"
    STRIP_CUSTOM = "strip"


ColumnSpec = tuple[int, int]  # (axis, direction sign) for a column/row of edges


def grid_quadgraph(ncols: int, nrows: int) -> QuadGraph:
    """Lattice patch with (ncols+1) x (nrows+1) vertices and ncols*nrows faces.

    Vertex (i, j) has id i + j*(ncols+1); the part is PRIMAL for even i+j.
    Faces are listed column-major, counterclockwise from the lower-left
    corner, matching the standard drawing with x right and y up.
    """
    if ncols < 1 or nrows < 1:
        raise StructureError("grid needs at least one face in each direction")
    width = ncols + 1

    def vid(i: int, j: int) -> int:
        return i + j * width

    parts = {}
    pos = {}
    for j in range(nrows + 1):
        for i in range(width):
            parts[vid(i, j)] = Part.PRIMAL if (i + j) % 2 == 0 else Part.DUAL
            pos[vid(i, j)] = complex(i, j)
    faces = []
    for i in range(ncols):
        for j in range(nrows):
            faces.append((vid(i, j), vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1)))
    return QuadGraph(parts, tuple(faces), pos)


def grid_labels(
    ncols: int,
    nrows: int,
    col_specs: Sequence[ColumnSpec],
    row_specs: Sequence[ColumnSpec],
) -> dict[Edge, tuple[int, int]]:
    """Raw labels for :func:`grid_quadgraph`.

    ``col_specs[i]`` labels the horizontal edges of column i (between
    vertices (i, j) and (i+1, j)); ``row_specs[j]`` labels the vertical edges
    of row j.  Direction +1 points toward increasing coordinate.
    """
    if len(col_specs) != ncols or len(row_specs) != nrows:
        raise StructureError("one spec per column and per row required")
    width = ncols + 1

    def vid(i: int, j: int) -> int:
        return i + j * width

    labels: dict[Edge, tuple[int, int]] = {}
    for i, (axis, sign) in enumerate(col_specs):
        for j in range(nrows + 1):
            u, v = vid(i, j), vid(i + 1, j)
            labels[_edge(u, v)] = (axis, u if sign > 0 else v)
    for j, (axis, sign) in enumerate(row_specs):
        for i in range(width):
            u, v = vid(i, j), vid(i, j + 1)
            labels[_edge(u, v)] = (axis, u if sign > 0 else v)
    return labels


def generate_fixture(
    kind: FixtureKind | str,
    size: int,
    col_specs: Sequence[ColumnSpec] | None = None,
    row_specs: Sequence[ColumnSpec] | None = None,
) -> tuple[QuadGraph, ZdLabeling]:
    """Named lattice patches with their labelings.

    * SQUARE_D2: horizontal edges axis 1, vertical axis 2, both increasing.
    * STAIRCASE_D3: verticals axis 3; horizontals alternate axis 1 and 2 by
      column, all pointing right, so the patch climbs a staircase in Z^3.
    * FLIPPED_STAIRCASE_D5: the staircase with a vertical cut at the middle
      column; horizontal edges left of the cut reverse direction and use
      axes 4 (even columns) and 5 (odd columns) instead of 1 and 2.
    * STRIP_CUSTOM: explicit ``col_specs``/``row_specs`` (rows default to
      axis 3 pointing up).

    ``size`` counts faces per side (the patch is size x size except for
    STRIP_CUSTOM, where len(col_specs) fixes the width).
    """
    if not isinstance(kind, FixtureKind):
        try:
            kind = FixtureKind(str(kind).lower())
        except ValueError:
            try:
                kind = FixtureKind[str(kind).upper()]
            except KeyError:
                raise StructureError(f"unknown fixture kind {kind!r}") from None
    if size < 1:
        raise StructureError("fixture size must be at least 1")

    if kind is FixtureKind.SQUARE_D2:
        cols = [(1, 1)] * size
        rows = [(2, 1)] * size
    elif kind is FixtureKind.STAIRCASE_D3:
        cols = [(1 if i % 2 == 0 else 2, 1) for i in range(size)]
        rows = [(3, 1)] * size
    elif kind is FixtureKind.FLIPPED_STAIRCASE_D5:
        cut = (size + 1) // 2
        cols = []
        for i in range(size):
            if i < cut:
                cols.append((4 if i % 2 == 0 else 5, -1))
            else:
                cols.append((1 if i % 2 == 0 else 2, 1))
        rows = [(3, 1)] * size
    elif kind is FixtureKind.STRIP_CUSTOM:
        if col_specs is None:
            raise StructureError("STRIP_CUSTOM requires col_specs")
        cols = [tuple(c) for c in col_specs]
        rows = [tuple(r) for r in row_specs] if row_specs else [(3, 1)] * size
    else:  # pragma: no cover - enum is exhaustive
        raise StructureError(f"unknown fixture kind {kind!r}")

    ncols, nrows = len(cols), len(rows)
    q = grid_quadgraph(ncols, nrows)
    labels = grid_labels(ncols, nrows, cols, rows)
    return q, integrate_labeling(q, labels)
