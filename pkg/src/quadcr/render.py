"""Figure rendering: embeddings, weight signs, violations, solutions.

All renderers draw with matplotlib and save SVG.  Output is deterministic
for identical inputs: the SVG hash salt is pinned and the date metadata is
dropped, so only the generator-version comment varies between matplotlib
releases.
"""

from __future__ import annotations

from .errors import PreconditionError
from .positivity import check_positive_consistency, oval_order
from .quadgraph import Part, QuadGraph, ZdLabeling
from .spectral import SpectralData
from .weights import embed_quasicrystal, weight_function


def _plt():
    import matplotlib

    matplotlib.use("Agg")
    matplotlib.rcParams["svg.hashsalt"] = "quadcr"
    import matplotlib.pyplot as plt

    return plt


def _save(fig, path):
    fig.savefig(path, format="svg", metadata={"Date": None}, bbox_inches="tight")
    import matplotlib.pyplot as plt

    plt.close(fig)


def _coordinates(
    q: QuadGraph,
    labeling: ZdLabeling,
    data: SpectralData | None,
    use_embedding: bool,
) -> dict[int, complex]:
    if use_embedding:
        if data is None:
            raise PreconditionError("embedding coordinates need spectral data")
        return embed_quasicrystal(data, q, labeling)
    if q.pos is not None:
        return dict(q.pos)
    if data is not None:
        return embed_quasicrystal(data, q, labeling)
    raise PreconditionError("no planar positions available and no spectral data given")


def _draw_graph_edges(ax, q: QuadGraph, pts, color="0.75", lw=0.8):
    for e in q.edges:
        u, v = sorted(e)
        ax.plot(
            [pts[u].real, pts[v].real], [pts[u].imag, pts[v].imag],
            color=color, lw=lw, zorder=1,
        )


def _scatter_parts(ax, q: QuadGraph, pts):
    for part, color, marker in ((Part.PRIMAL, "tab:blue", "o"), (Part.DUAL, "tab:red", "s")):
        vs = q.vertices_of(part)
        ax.scatter(
            [pts[v].real for v in vs], [pts[v].imag for v in vs],
            s=14, c=color, marker=marker, zorder=3, label=part.value,
        )


def render_embedding(path, q: QuadGraph, labeling: ZdLabeling, data: SpectralData) -> None:
    """Quasicrystalline embedding: faces map to parallelograms with marked sides."""
    plt = _plt()
    pts = _coordinates(q, labeling, data, use_embedding=True)
    fig, ax = plt.subplots(figsize=(6, 6))
    _draw_graph_edges(ax, q, pts)
    _scatter_parts(ax, q, pts)
    ax.set_aspect("equal")
    ax.legend(loc="upper right", fontsize=8)
    ax.set_title("quasicrystalline embedding")
    _save(fig, path)


def render_weights(
    path, q: QuadGraph, labeling: ZdLabeling, data: SpectralData
) -> None:
    """Diagonal edges colored by the sign of their weight (blue +, red -)."""
    plt = _plt()
    pts = _coordinates(q, labeling, data, use_embedding=False)
    w = weight_function(data, q, labeling)
    fig, ax = plt.subplots(figsize=(6, 6))
    _draw_graph_edges(ax, q, pts, color="0.85", lw=0.6)
    for e, val in sorted(w.nu.items(), key=lambda kv: sorted(kv[0])):
        u, v = sorted(e)
        color = "tab:blue" if val.real > 0 else "tab:red"
        style = "-" if e in q.primal_edges else "--"
        ax.plot(
            [pts[u].real, pts[v].real], [pts[u].imag, pts[v].imag],
            style, color=color, lw=1.4, zorder=2,
        )
    ax.set_aspect("equal")
    ax.set_title("weight signs (blue +, red -; dashed = dual)")
    _save(fig, path)


def render_violations(
    path, q: QuadGraph, labeling: ZdLabeling, data: SpectralData
) -> None:
    """Consistency violations: offending shared edges highlighted."""
    plt = _plt()
    pts = _coordinates(q, labeling, data, use_embedding=False)
    report = check_positive_consistency(q, labeling, oval_order(data))
    fig, ax = plt.subplots(figsize=(6, 6))
    _draw_graph_edges(ax, q, pts)
    _scatter_parts(ax, q, pts)
    for violation in report.violations:
        f1, f2 = violation.faces
        shared = [
            e for e, fs in q.edge_faces.items() if set(fs) == {f1, f2}
        ]
        for e in shared:
            u, v = sorted(e)
            ax.plot(
                [pts[u].real, pts[v].real], [pts[u].imag, pts[v].imag],
                color="crimson", lw=3.0, zorder=4,
            )
    ax.set_aspect("equal")
    status = "consistent" if report.consistent else f"{len(report.violations)} violations"
    ax.set_title(f"positive consistency: {status}")
    _save(fig, path)


def render_solution(
    path,
    q: QuadGraph,
    labeling: ZdLabeling,
    field: dict[int, complex],
    data: SpectralData | None = None,
) -> None:
    """Vertex field as a colored scatter (real part) over the drawing."""
    plt = _plt()
    pts = _coordinates(q, labeling, data, use_embedding=False)
    fig, ax = plt.subplots(figsize=(6, 6))
    _draw_graph_edges(ax, q, pts)
    xs = sorted(field)
    sc = ax.scatter(
        [pts[v].real for v in xs],
        [pts[v].imag for v in xs],
        c=[complex(field[v]).real for v in xs],
        cmap="viridis", s=40, zorder=3,
    )
    fig.colorbar(sc, ax=ax, shrink=0.8, label="Re f")
    ax.set_aspect("equal")
    ax.set_title("solution (real part)")
    _save(fig, path)
