"""Weighted Laplacian, Cauchy-Riemann residuals, and holomorphic extension.

Vertex fields are plain mappings from vertex ids to complex values; a missing
vertex is an error, never an implicit zero.  The Laplacian acts inside one
part (primal or dual) of the quad-graph,

    (L f)(x0) = sum over neighbors x of nu(x0, x) (f(x) - f(x0)),

while the Cauchy-Riemann residual couples the two diagonals of a face.  A
field with vanishing residual on every face restricts to a harmonic function
on each part; conversely a harmonic function on the primal part extends to a
discrete holomorphic field, uniquely up to one additive constant on the dual
part, which :func:`extend_to_holomorphic` pins with an anchor value.
"""

from __future__ import annotations

from typing import Mapping

from .errors import DomainError, ExtensionError
from .quadgraph import Part, QuadGraph
from .weights import WeightFunction

VertexField = Mapping[int, complex]


def apply_laplacian(
    q: QuadGraph, w: WeightFunction, f: VertexField, x0: int
) -> complex:
    """Evaluate the weighted Laplacian of f at x0 (within x0's own part)."""
    if x0 not in f:
        raise DomainError(f"field missing value at {x0}")
    nbrs = q.neighbors(x0)
    if not nbrs:
        raise DomainError(f"vertex {x0} has no neighbors in its part")
    f0 = complex(f[x0])
    acc = 0.0 + 0.0j
    for x in nbrs:
        if x not in f:
            raise DomainError(f"field missing value at neighbor {x} of {x0}")
        acc += w(x0, x) * (complex(f[x]) - f0)
    return acc


def cr_residual(q: QuadGraph, w: WeightFunction, f: VertexField, face_index: int) -> complex:
    """Cauchy-Riemann residual (f(y1)-f(y0)) - i nu(x0,x1) (f(x1)-f(x0)).

    The stored face is rotated to start at a primal corner; starting at the
    opposite primal corner gives the identical value, so the residual is well
    defined.  Zero iff the face satisfies the Cauchy-Riemann equation.
    """
    face = q.faces[face_index]
    if q.parts[face[0]] is not Part.PRIMAL:
        face = face[1:] + face[:1]
    x0, y0, x1, y1 = face
    for v in (x0, y0, x1, y1):
        if v not in f:
            raise DomainError(f"field missing value at {v} on face {face_index}")
    return (complex(f[y1]) - complex(f[y0])) - 1j * w(x0, x1) * (
        complex(f[x1]) - complex(f[x0])
    )


def laplacian_scale(q: QuadGraph, w: WeightFunction, f: VertexField, x0: int) -> float:
    """sum |nu| |f| over the star of x0; natural scale for Laplacian residuals."""
    f0 = abs(complex(f[x0]))
    return sum(
        abs(w(x0, x)) * max(abs(complex(f[x])), f0) for x in q.neighbors(x0)
    ) or 1.0


def extend_to_holomorphic(
    q: QuadGraph,
    w: WeightFunction,
    f: VertexField,
    anchor: tuple[int, complex],
    tol: float = 1e-9,
) -> dict[int, complex]:
    """Extend a harmonic primal field to a discrete holomorphic field on V(D).

    ``f`` must cover the primal part and be harmonic at every interior primal
    vertex (checked first).  The dual values are integrated face by face over
    a spanning tree rooted at the anchor vertex, using

        g(y1) = g(y0) + i nu(x0, x1) (f(x1) - f(x0))

    on the face (x0, y0, x1, y1); every co-tree face is then verified, and a
    mismatch beyond ``tol`` (relative to the face's value scale) raises
    ExtensionError naming the face.  The result restricted to the primal part
    is ``f`` itself; changing the anchor value shifts the dual part by a
    constant and nothing else.
    """
    anchor_vertex, anchor_value = anchor
    if q.parts.get(anchor_vertex) is not Part.DUAL:
        raise DomainError(f"anchor vertex {anchor_vertex} is not a dual vertex")

    for v in q.vertices_of(Part.PRIMAL):
        if v not in f:
            raise DomainError(f"field missing value at primal vertex {v}")
    interior = q.interior_vertices()
    for v in q.vertices_of(Part.PRIMAL):
        if v in interior:
            resid = apply_laplacian(q, w, f, v)
            if abs(resid) > tol * laplacian_scale(q, w, f, v):
                raise ExtensionError(
                    f"input not harmonic at interior vertex {v} "
                    f"(|L f| = {abs(resid):.3e})",
                    vertex=v,
                )

    # Each face contributes one increment along its dual diagonal.
    increments: dict[int, list[tuple[int, complex, int]]] = {}
    for idx in range(len(q.faces)):
        face = q.faces[idx]
        if q.parts[face[0]] is not Part.PRIMAL:
            face = face[1:] + face[:1]
        x0, y0, x1, y1 = face
        delta = 1j * w(x0, x1) * (complex(f[x1]) - complex(f[x0]))
        increments.setdefault(y0, []).append((y1, delta, idx))
        increments.setdefault(y1, []).append((y0, -delta, idx))

    g: dict[int, complex] = {anchor_vertex: complex(anchor_value)}
    tree_faces = set()
    queue = [anchor_vertex]
    while queue:
        y = queue.pop(0)
        for y_next, delta, idx in increments.get(y, ()):
            if y_next not in g:
                g[y_next] = g[y] + delta
                tree_faces.add(idx)
                queue.append(y_next)

    missing = set(q.vertices_of(Part.DUAL)) - set(g)
    if missing:
        raise ExtensionError(
            f"dual vertices {sorted(missing)} unreachable from anchor; patch disconnected"
        )

    for idx in range(len(q.faces)):
        if idx in tree_faces:
            continue
        face = q.faces[idx]
        if q.parts[face[0]] is not Part.PRIMAL:
            face = face[1:] + face[:1]
        x0, y0, x1, y1 = face
        lhs = g[y1] - g[y0]
        rhs = 1j * w(x0, x1) * (complex(f[x1]) - complex(f[x0]))
        scale = max(abs(lhs), abs(rhs), abs(g[y0]), 1e-30)
        if abs(lhs - rhs) > tol * scale:
            raise ExtensionError(
                f"integration inconsistent on face {idx}; input not harmonic "
                f"around a cycle through it (mismatch {abs(lhs - rhs):.3e})",
                face_index=idx,
            )

    out = {v: complex(f[v]) for v in q.vertices_of(Part.PRIMAL)}
    out.update(g)
    return out
