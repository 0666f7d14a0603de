"""JSON document formats for graphs, spectral data, and vertex fields.

One self-describing format: every document carries a ``format`` field naming
its schema and version.  Validation is strict; unknown fields are rejected so
that typos fail loudly instead of being ignored.

Schemas (all JSON objects):

graph document, ``quadcr.graph/1``::

    {"format": "quadcr.graph/1",
     "vertices": [{"id": 0, "part": "primal", "pos": [0.0, 0.0]}, ...],
     "faces":    [[0, 1, 5, 4], ...],
     "labels":   [{"edge": [0, 1], "axis": 1, "from": 0}, ...],
     "d": 2}                                  # optional; inferred when absent

spectral document, ``quadcr.spectral/1``::

    {"format": "quadcr.spectral/1",
     "d": 2,
     "alpha": [[1.0, 0.0], [0.0, 1.0]],
     "C": 1.0}                                # optional: declares |alpha_j| = C

vertex field, ``quadcr.field/1``::

    {"format": "quadcr.field/1",
     "values": {"0": [1.0, 0.0], ...}}        # vertex id -> [re, im]
"""

from __future__ import annotations

import json
from typing import Any

from .errors import DocumentError
from .quadgraph import Part, QuadGraph, ZdLabeling, integrate_labeling
from .spectral import SpectralData

GRAPH_FORMAT = "quadcr.graph/1"
SPECTRAL_FORMAT = "quadcr.spectral/1"
FIELD_FORMAT = "quadcr.field/1"


def _load_json(path) -> Any:
    try:
        with open(path, "r", encoding="utf-8") as fp:
            return json.load(fp)
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path} is not valid JSON: {exc}") from exc


def _dump_json(path, payload) -> None:
    try:
        with open(path, "w", encoding="utf-8") as fp:
            json.dump(payload, fp, indent=2, sort_keys=True)
            fp.write("\n")
    except OSError as exc:
        raise DocumentError(f"cannot write {path}: {exc}") from exc


def _require(obj: dict, allowed: set[str], required: set[str], what: str) -> None:
    if not isinstance(obj, dict):
        raise DocumentError(f"{what} must be a JSON object")
    unknown = set(obj) - allowed
    if unknown:
        raise DocumentError(f"{what} has unknown fields {sorted(unknown)}")
    missing = required - set(obj)
    if missing:
        raise DocumentError(f"{what} is missing fields {sorted(missing)}")


def _check_format(obj: dict, expected: str, what: str) -> None:
    got = obj.get("format")
    if got != expected:
        raise DocumentError(f"{what}: format {got!r} is not {expected!r}")


# ---------------------------------------------------------------------------
# Graph documents (graph + labeling together)
# ---------------------------------------------------------------------------


def graph_to_document(q: QuadGraph, labeling: ZdLabeling) -> dict:
    vertices = []
    for v in q.vertices:
        entry: dict[str, Any] = {"id": v, "part": q.parts[v].value}
        if q.pos is not None and v in q.pos:
            entry["pos"] = [q.pos[v].real, q.pos[v].imag]
        vertices.append(entry)
    labels = []
    for e in sorted(q.edges, key=sorted):
        u, v = sorted(e)
        labels.append(
            {"edge": [u, v], "axis": labeling.edge_axis[e], "from": labeling.edge_tail[e]}
        )
    return {
        "format": GRAPH_FORMAT,
        "vertices": vertices,
        "faces": [list(f) for f in q.faces],
        "labels": labels,
        "d": labeling.d,
    }


def graph_from_document(doc: dict) -> tuple[QuadGraph, ZdLabeling]:
    _require(doc, {"format", "vertices", "faces", "labels", "d"},
             {"format", "vertices", "faces", "labels"}, "graph document")
    _check_format(doc, GRAPH_FORMAT, "graph document")
    parts: dict[int, Part] = {}
    pos: dict[int, complex] = {}
    for entry in doc["vertices"]:
        _require(entry, {"id", "part", "pos"}, {"id", "part"}, "vertex entry")
        vid = int(entry["id"])
        if vid in parts:
            raise DocumentError(f"duplicate vertex id {vid}")
        try:
            parts[vid] = Part(entry["part"])
        except ValueError:
            raise DocumentError(f"vertex {vid}: unknown part {entry['part']!r}") from None
        if "pos" in entry:
            x, y = entry["pos"]
            pos[vid] = complex(float(x), float(y))
    faces = []
    for f in doc["faces"]:
        if len(f) != 4:
            raise DocumentError(f"face {f} does not have 4 vertices")
        faces.append(tuple(int(v) for v in f))
    labels = {}
    for entry in doc["labels"]:
        _require(entry, {"edge", "axis", "from"}, {"edge", "axis", "from"}, "label entry")
        u, v = (int(x) for x in entry["edge"])
        tail = int(entry["from"])
        if tail not in (u, v):
            raise DocumentError(f"label for edge [{u}, {v}]: 'from' must be an endpoint")
        labels[frozenset((u, v))] = (int(entry["axis"]), tail)
    q = QuadGraph(parts, tuple(faces), pos or None)
    labeling = integrate_labeling(q, labels, d=doc.get("d"))
    return q, labeling


def save_graph(path, q: QuadGraph, labeling: ZdLabeling) -> None:
    _dump_json(path, graph_to_document(q, labeling))


def load_graph(path) -> tuple[QuadGraph, ZdLabeling]:
    return graph_from_document(_load_json(path))


# ---------------------------------------------------------------------------
# Spectral documents
# ---------------------------------------------------------------------------


def spectral_to_document(data: SpectralData) -> dict:
    doc: dict[str, Any] = {
        "format": SPECTRAL_FORMAT,
        "d": data.d,
        "alpha": [[a.real, a.imag] for a in data.alpha],
    }
    if data.C is not None:
        doc["C"] = data.C
    return doc


def spectral_from_document(doc: dict) -> SpectralData:
    _require(doc, {"format", "d", "alpha", "C"}, {"format", "d", "alpha"},
             "spectral document")
    _check_format(doc, SPECTRAL_FORMAT, "spectral document")
    alpha = []
    for pair in doc["alpha"]:
        if not isinstance(pair, (list, tuple)) or len(pair) != 2:
            raise DocumentError(f"alpha entry {pair!r} is not [re, im]")
        alpha.append(complex(float(pair[0]), float(pair[1])))
    if int(doc["d"]) != len(alpha):
        raise DocumentError(f"d = {doc['d']} but {len(alpha)} alpha entries")
    # Degenerate marked points raise SpectralDataError here, which callers
    # treat as bad data rather than a malformed document.
    return SpectralData(tuple(alpha), doc.get("C"))


def save_spectral(path, data: SpectralData) -> None:
    _dump_json(path, spectral_to_document(data))


def load_spectral(path) -> SpectralData:
    return spectral_from_document(_load_json(path))


# ---------------------------------------------------------------------------
# Vertex-field documents
# ---------------------------------------------------------------------------


def field_to_document(values) -> dict:
    return {
        "format": FIELD_FORMAT,
        "values": {
            str(int(v)): [complex(x).real, complex(x).imag]
            for v, x in sorted(values.items())
        },
    }


def field_from_document(doc: dict) -> dict[int, complex]:
    _require(doc, {"format", "values"}, {"format", "values"}, "field document")
    _check_format(doc, FIELD_FORMAT, "field document")
    out = {}
    for key, pair in doc["values"].items():
        if not isinstance(pair, (list, tuple)) or len(pair) != 2:
            raise DocumentError(f"field value {pair!r} is not [re, im]")
        out[int(key)] = complex(float(pair[0]), float(pair[1]))
    return out


def save_field(path, values) -> None:
    _dump_json(path, field_to_document(values))


def load_field(path) -> dict[int, complex]:
    return field_from_document(_load_json(path))
