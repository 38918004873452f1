"""Canonical text format for didrawings, plus DOT export.

The format is a JSON document:

    {
      "format": "didrawing/1",
      "vertices": ["u", "v"],
      "edges": [{"id": "e1", "tail": "u", "head": "v"}],
      "rotations": {"u": [["e1", "T"]], "v": [["e1", "H"]]}
    }

Serialization is canonical and byte-exact: vertices and edges sorted by id,
every rotation rotated to start at its lexicographically least dart, two
space indentation, a single trailing newline.  ``parse(serialize(d))``
reproduces d, and re-serializing canonical text is the identity.
"""

from __future__ import annotations

import json
from typing import Any

from .core import Dart, Didrawing, HEAD, TAIL
from .digraph import Digraph, Edge
from .errors import DiwallkitError, ParseError

FORMAT_TAG = "didrawing/1"


def serialize(d: Didrawing) -> str:
    doc = {
        "format": FORMAT_TAG,
        "vertices": list(d.vertices),
        "edges": [{"id": e.id, "tail": e.tail, "head": e.head} for e in d.edges],
        "rotations": {v: [[x.edge, x.end] for x in d.rotation[v]]
                      for v in d.vertices},
    }
    return json.dumps(doc, indent=2) + "\n"


def parse(text: str) -> Didrawing:
    """Parse and fully validate a didrawing document.

    Raises:
        ParseError: malformed JSON or document structure; rotation and
            Euler violations are wrapped too, so a bad file never raises
            anything but ParseError.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object")
    if doc.get("format") != FORMAT_TAG:
        raise ParseError(f"missing or unsupported format tag "
                         f"(expected {FORMAT_TAG!r}, got {doc.get('format')!r})")
    for key in ("vertices", "edges", "rotations"):
        if key not in doc:
            raise ParseError(f"missing field {key!r}")

    vertices = doc["vertices"]
    if (not isinstance(vertices, list)
            or not all(isinstance(v, str) for v in vertices)):
        raise ParseError("'vertices' must be a list of strings")

    edges = []
    if not isinstance(doc["edges"], list):
        raise ParseError("'edges' must be a list")
    for i, rec in enumerate(doc["edges"]):
        if not isinstance(rec, dict):
            raise ParseError(f"edge #{i} must be an object")
        try:
            eid, tail, head = rec["id"], rec["tail"], rec["head"]
        except KeyError as exc:
            raise ParseError(f"edge #{i} is missing field {exc}") from exc
        if not all(isinstance(x, str) for x in (eid, tail, head)):
            raise ParseError(f"edge #{i} fields must be strings")
        edges.append(Edge(eid, tail, head))

    rotations = doc["rotations"]
    if not isinstance(rotations, dict):
        raise ParseError("'rotations' must be an object")
    rot: dict[str, list[Dart]] = {}
    for v, seq in rotations.items():
        if not isinstance(seq, list):
            raise ParseError(f"rotation at {v!r} must be a list")
        darts = []
        for j, pair in enumerate(seq):
            if (not isinstance(pair, list) or len(pair) != 2
                    or not all(isinstance(x, str) for x in pair)):
                raise ParseError(f"rotation at {v!r}, entry #{j}: "
                                 f"expected [edge-id, end]")
            if pair[1] not in (TAIL, HEAD):
                raise ParseError(f"rotation at {v!r}, entry #{j}: "
                                 f"end must be {TAIL!r} or {HEAD!r}")
            darts.append(Dart(pair[0], pair[1]))
        rot[v] = darts

    try:
        graph = Digraph(vertices, edges)
        return Didrawing(graph, rot)
    except (DiwallkitError, ValueError) as exc:
        raise ParseError(f"invalid didrawing: {exc}") from exc


def read_didrawing(path: str) -> Didrawing:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path!r}: {exc}") from exc
    return parse(text)


def write_didrawing(d: Didrawing, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize(d))


def _dot_quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(d: Didrawing | Digraph, *, name: str = "didrawing",
           edge_labels: bool = True) -> str:
    """DOT text for rendering; arrowheads preserve edge directions.

    Rotations cannot be expressed in DOT, so this is a figure aid, not a
    round-trippable format.
    """
    g = d.graph if isinstance(d, Didrawing) else d
    lines = [f"digraph {_dot_quote(name)} {{",
             "  node [shape=circle, fontsize=10];"]
    for v in g.vertices:
        lines.append(f"  {_dot_quote(v)};")
    for e in g.edges:
        attr = f" [label={_dot_quote(e.id)}]" if edge_labels else ""
        lines.append(f"  {_dot_quote(e.tail)} -> {_dot_quote(e.head)}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def dumps_mapping(obj: dict[str, Any]) -> str:
    """Canonical JSON for auxiliary mapping documents (dual bijections,
    carvings, certificates): sorted keys, two-space indent, newline."""
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"
