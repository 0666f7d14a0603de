"""Boundary-value problems inside a simple cycle of the primal graph.

A simple cycle of primal edges splits the plane in two; the chosen side's
strictly enclosed primal vertices are the interior, the cycle vertices the
boundary.  Prescribing boundary values and requiring the weighted Laplacian
to vanish at every interior vertex yields a sparse linear system, one
equation per interior vertex.  For sign-uniform real weights the discrete
maximum principle |f(x0)| <= max over neighbors |f(x)| holds, so the
solution is unique; with mixed signs the system may be singular, which is
reported (rank and a witness null-vector) rather than hidden.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .errors import DomainError, PreconditionError, SingularSystemError, StructureError
from .quadgraph import Part, QuadGraph, _edge
from .weights import WeightFunction


class Side(Enum):
    INNER = "inner"  # the bounded component of the cycle's complement
    OUTER = "outer"


@dataclass(frozen=True)
class DirichletProblem:
    """A classified region with boundary data and weights."""

    q: QuadGraph
    cycle: tuple[int, ...]
    side: Side
    interior: tuple[int, ...]
    boundary: tuple[int, ...]
    data: dict[int, complex]
    weights: WeightFunction

    def with_data(self, data) -> "DirichletProblem":
        values = {int(v): complex(x) for v, x in data.items()}
        missing = set(self.boundary) - set(values)
        if missing:
            raise DomainError(f"boundary data missing at vertices {sorted(missing)}")
        return DirichletProblem(
            self.q, self.cycle, self.side, self.interior, self.boundary, values, self.weights
        )


def _point_on_segment(p: complex, a: complex, b: complex, eps: float = 1e-12) -> bool:
    ab = b - a
    ap = p - a
    cross = ab.real * ap.imag - ab.imag * ap.real
    if abs(cross) > eps * max(abs(ab), 1.0):
        return False
    t = (ap.real * ab.real + ap.imag * ab.imag) / (abs(ab) ** 2)
    return -eps <= t <= 1 + eps


def _winding_parity(p: complex, polygon: list[complex]) -> bool:
    """True when p lies strictly inside the polygon (even-odd rule)."""
    inside = False
    n = len(polygon)
    for i in range(n):
        a, b = polygon[i], polygon[(i + 1) % n]
        if (a.imag > p.imag) != (b.imag > p.imag):
            x_cross = a.real + (p.imag - a.imag) * (b.real - a.real) / (b.imag - a.imag)
            if x_cross > p.real:
                inside = not inside
    return inside


def region_from_cycle(
    q: QuadGraph,
    cycle,
    side: Side | str = Side.INNER,
    weights: WeightFunction | None = None,
) -> DirichletProblem:
    """Classify primal vertices against a simple cycle in the primal graph.

    ``cycle`` lists primal vertex ids in order; consecutive vertices (and the
    closing pair) must be primal edges.  Classification is point-in-polygon
    on the stored planar positions.  A vertex lying on the boundary polyline
    without being a cycle vertex is rejected, as is a repeated cycle vertex.
    The returned problem has empty boundary data; attach it with
    :meth:`DirichletProblem.with_data`.
    """
    side = Side(side) if not isinstance(side, Side) else side
    cycle = tuple(int(v) for v in cycle)
    if len(cycle) < 3:
        raise StructureError("cycle needs at least three vertices")
    if len(set(cycle)) != len(cycle):
        raise StructureError("cycle repeats a vertex; not simple")
    if q.pos is None:
        raise PreconditionError("planar positions required for region classification")
    primal_edges = q.part_edges(Part.PRIMAL)
    for v in cycle:
        if q.parts.get(v) is not Part.PRIMAL:
            raise StructureError(f"cycle vertex {v} is not primal")
    for i in range(len(cycle)):
        e = _edge(cycle[i], cycle[(i + 1) % len(cycle)])
        if e not in primal_edges:
            raise StructureError(f"cycle step {sorted(e)} is not a primal edge")

    polygon = [q.pos[v] for v in cycle]
    boundary = set(cycle)
    interior = []
    for v in q.vertices_of(Part.PRIMAL):
        if v in boundary:
            continue
        p = q.pos[v]
        on_polyline = any(
            _point_on_segment(p, polygon[i], polygon[(i + 1) % len(polygon)])
            for i in range(len(polygon))
        )
        if on_polyline:
            raise StructureError(
                f"vertex {v} lies on the boundary polyline but is not a cycle vertex"
            )
        is_inside = _winding_parity(p, polygon)
        if (side is Side.INNER) == is_inside:
            interior.append(v)

    if weights is None:
        weights = WeightFunction({}, True)
    return DirichletProblem(
        q, cycle, side, tuple(sorted(interior)), tuple(cycle), {}, weights
    )


def _assemble(p: DirichletProblem):
    index = {v: i for i, v in enumerate(p.interior)}
    rows, cols, vals = [], [], []
    rhs = np.zeros(len(p.interior), dtype=complex)
    boundary = set(p.boundary)
    for v in p.interior:
        i = index[v]
        diag = 0.0 + 0.0j
        for x in p.q.neighbors(v):
            if x not in index and x not in boundary:
                raise DomainError(
                    f"neighbor {x} of interior vertex {v} is neither interior nor boundary"
                )
            nu = p.weights(v, x)
            diag -= nu
            if x in index:
                rows.append(i)
                cols.append(index[x])
                vals.append(nu)
            else:
                rhs[i] -= nu * p.data[x]
        rows.append(i)
        cols.append(i)
        vals.append(diag)
    n = len(p.interior)
    A = sp.csr_matrix((vals, (rows, cols)), shape=(n, n), dtype=complex)
    return A, rhs, index


def solve(
    p: DirichletProblem,
    tol: float = 1e-9,
    method: str = "direct",
) -> dict[int, complex]:
    """Solve the boundary-value problem; returns values on interior + boundary.

    ``method`` is "direct" (sparse LU) or "iterative" (GMRES, useful as an
    independent route).  The interior Laplacian residual is checked against
    ``tol`` relative to the equation scale.  A rank-deficient system raises
    SingularSystemError carrying the rank and, for moderate sizes, a witness
    null-vector; mixed-sign weights are the typical cause.
    """
    missing = set(p.boundary) - set(p.data)
    if missing:
        raise DomainError(f"boundary data missing at vertices {sorted(missing)}")
    out = {v: complex(p.data[v]) for v in p.boundary}
    if not p.interior:
        return out

    A, rhs, index = _assemble(p)
    n = A.shape[0]
    with np.errstate(all="ignore"):
        if method == "direct":
            import warnings

            with warnings.catch_warnings():
                warnings.simplefilter("error", spla.MatrixRankWarning)
                try:
                    x = spla.spsolve(A.tocsc(), rhs)
                except spla.MatrixRankWarning:
                    x = np.full(n, np.nan)
        elif method == "iterative":
            x, info = spla.gmres(A, rhs, rtol=1e-13, atol=0.0, restart=50, maxiter=50 * n)
            if info != 0:
                x = np.full(n, np.nan)
        else:
            raise PreconditionError(f"unknown method {method!r}")

    if not np.all(np.isfinite(x)):
        _raise_singular(A)

    # Residual check, relative to the per-equation coefficient scale.
    scale = abs(A) @ np.abs(x) + np.abs(rhs)
    resid = np.abs(A @ x - rhs)
    worst = float(np.max(resid / np.maximum(scale, 1e-300)))
    if worst > tol:
        _raise_singular(A)

    for v, i in index.items():
        out[v] = complex(x[i])
    return out


def _raise_singular(A):
    n = A.shape[0]
    rank = n
    null_vector = None
    if n <= 2000:
        dense = A.toarray()
        s = np.linalg.svd(dense, compute_uv=False)
        cut = max(dense.shape) * np.finfo(float).eps * (s[0] if len(s) else 1.0)
        rank = int(np.sum(s > cut))
        if rank < n:
            _, _, vh = np.linalg.svd(dense)
            null_vector = vh[-1].conj()
    raise SingularSystemError(rank, n, null_vector)


@dataclass(frozen=True)
class MaxPrincipleReport:
    """Worst margin of |f(x0)| - max over neighbors |f(x)| over the interior."""

    worst_margin: float
    worst_vertex: int | None
    violations: tuple[int, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def check_maximum_principle(
    p: DirichletProblem, f, rel_slack: float = 1e-12
) -> MaxPrincipleReport:
    """Check |f(x0)| <= max over neighbors |f(x)| at every interior vertex.

    Guaranteed for sign-uniform weights; with mixed signs violations can and
    do occur.  Report-only.
    """
    worst = -float("inf")
    worst_vertex = None
    violations = []
    for v in p.interior:
        here = abs(complex(f[v]))
        nb = max(abs(complex(f[x])) for x in p.q.neighbors(v))
        margin = here - nb
        if margin > worst:
            worst, worst_vertex = margin, v
        if margin > rel_slack * max(here, nb, 1.0):
            violations.append(v)
    if worst == -float("inf"):
        worst = 0.0
    return MaxPrincipleReport(worst, worst_vertex, tuple(violations))
