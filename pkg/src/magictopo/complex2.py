"""Combinatorial 2-complexes whose edges are labels and whose faces are contexts."""

from __future__ import annotations

import json
from collections import Counter, deque
from dataclasses import dataclass
from typing import Any, Literal

from .arrangement import Arrangement, DocumentSyntaxError, ValidationError, _check_keys, _int, _load_json, _str

Step = tuple[str, int]
Word = tuple[Step, ...]


@dataclass(frozen=True)
class Edge:
    id: str
    source: str
    target: str


@dataclass(frozen=True)
class Face:
    context: str
    word: Word


@dataclass(frozen=True)
class CellComplex2:
    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]
    faces: tuple[Face, ...]

    def __post_init__(self) -> None:
        _check_structure(self)

    def edge(self, eid: str) -> Edge:
        return self.edge_map[eid]

    @property
    def edge_map(self) -> dict[str, Edge]:
        return {e.id: e for e in self.edges}

    @property
    def euler_characteristic(self) -> int:
        return len(self.vertices) - len(self.edges) + len(self.faces)

    def step_endpoints(self, step: Step) -> tuple[str, str]:
        e = self.edge_map[step[0]]
        return (e.source, e.target) if step[1] == 1 else (e.target, e.source)

    def boundary_matrix(self) -> list[list[int]]:
        """Rows = edges (in ``self.edges`` order), columns = faces."""
        idx = {e.id: i for i, e in enumerate(self.edges)}
        m = [[0] * len(self.faces) for _ in self.edges]
        for j, f in enumerate(self.faces):
            for eid, x in f.word:
                m[idx[eid]][j] += x
        return m

    def edge_boundary_matrix(self) -> list[list[int]]:
        """d1: rows = vertices, columns = edges (target - source)."""
        idx = {v: i for i, v in enumerate(self.vertices)}
        m = [[0] * len(self.edges) for _ in self.vertices]
        for j, e in enumerate(self.edges):
            m[idx[e.target]][j] += 1
            m[idx[e.source]][j] -= 1
        return m

    def to_dict(self) -> dict[str, Any]:
        return {
            "vertices": list(self.vertices),
            "edges": [{"id": e.id, "source": e.source, "target": e.target} for e in self.edges],
            "faces": [{"context": f.context, "word": [[s, x] for s, x in f.word]} for f in self.faces],
        }


def _check_structure(x: CellComplex2) -> None:
    vs = set(x.vertices)
    if len(vs) != len(x.vertices):
        raise ValidationError("duplicate vertex", "vertices")
    if not vs:
        raise ValidationError("complex has no vertices", "vertices")
    emap: dict[str, Edge] = {}
    for i, e in enumerate(x.edges):
        if e.id in emap:
            raise ValidationError(f"duplicate edge {e.id!r}", f"edges[{i}].id")
        if e.source not in vs or e.target not in vs:
            raise ValidationError(f"edge {e.id!r} has an unknown endpoint", f"edges[{i}]")
        emap[e.id] = e
    fids: set[str] = set()
    for i, f in enumerate(x.faces):
        where = f"faces[{i}]"
        if f.context in fids:
            raise ValidationError(f"duplicate face {f.context!r}", f"{where}.context")
        fids.add(f.context)
        if not f.word:
            raise ValidationError("empty boundary word", f"{where}.word")
        ends = []
        for k, (eid, ex) in enumerate(f.word):
            if eid not in emap:
                raise ValidationError(f"unknown edge {eid!r}", f"{where}.word[{k}]")
            if ex not in (1, -1):
                raise ValidationError(f"exponent must be 1 or -1, got {ex!r}", f"{where}.word[{k}]")
            e = emap[eid]
            ends.append((e.source, e.target) if ex == 1 else (e.target, e.source))
        for k in range(len(ends)):
            if ends[k][1] != ends[(k + 1) % len(ends)][0]:
                raise ValidationError("boundary word is not a closed edge path", f"{where}.word[{k}]")
    # connectivity of the 1-skeleton
    adj: dict[str, set[str]] = {v: set() for v in vs}
    for e in x.edges:
        adj[e.source].add(e.target)
        adj[e.target].add(e.source)
    start = x.vertices[0]
    seen = {start}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    if seen != vs:
        raise ValidationError("complex is not connected", "vertices")


def build_single_vertex(arr: Arrangement, vertex: str = "v") -> CellComplex2:
    return CellComplex2(
        vertices=(vertex,),
        edges=tuple(Edge(a, vertex, vertex) for a in arr.labels),
        faces=tuple(Face(c.id, c.word()) for c in arr.contexts),
    )


def _rotations(word: Word):
    for i in range(len(word)):
        yield word[i:] + word[:i]


def validate_realization(
    arr: Arrangement, x: CellComplex2, mode: Literal["topological", "commutative"] = "topological"
) -> list[str]:
    """Violations of ``x`` as a realization of ``arr``; an empty list means ok.

    Topological mode compares each face word with the context word up to
    rotation only; commutative mode compares signed multisets.
    """
    if mode not in ("topological", "commutative"):
        raise ValueError(f"unknown mode {mode!r}")
    problems = []
    edge_ids = {e.id for e in x.edges}
    labels = set(arr.labels)
    for a in sorted(labels - edge_ids):
        problems.append(f"label {a}: no edge")
    for e in sorted(edge_ids - labels):
        problems.append(f"edge {e}: not a label")
    faces = {f.context: f for f in x.faces}
    for cid in arr.context_ids:
        if cid not in faces:
            problems.append(f"context {cid}: no face")
    for f in x.faces:
        if f.context not in arr.context_ids:
            problems.append(f"face {f.context}: not a context")
            continue
        want = arr.context(f.context).word()
        if mode == "topological":
            if want not in set(_rotations(f.word)):
                problems.append(f"face {f.context}: word {_fmt(f.word)} is not a rotation of {_fmt(want)}")
        elif Counter(f.word) != Counter(want):
            problems.append(f"face {f.context}: word {_fmt(f.word)} is not a permutation of {_fmt(want)}")
    return problems


def _fmt(word: Word) -> str:
    return " ".join(a if x == 1 else f"{a}^-1" for a, x in word)


@dataclass(frozen=True)
class SurfaceReport:
    euler_characteristic: int
    is_closed_surface: bool
    orientable: bool | None
    genus: int | None

    def to_dict(self) -> dict[str, Any]:
        return {
            "euler_characteristic": self.euler_characteristic,
            "is_closed_surface": self.is_closed_surface,
            "orientable": "unknown" if self.orientable is None else self.orientable,
            "genus": "n/a" if self.genus is None else self.genus,
        }


def _vertex_links_are_cycles(x: CellComplex2) -> bool:
    # an edge end is (edge id, 0 for source / 1 for target)
    link: dict[tuple[str, int], list[tuple[str, int]]] = {}
    for e in x.edges:
        link[(e.id, 0)] = []
        link[(e.id, 1)] = []
    for f in x.faces:
        n = len(f.word)
        for k in range(n):
            a, xa = f.word[k]
            b, xb = f.word[(k + 1) % n]
            arrive = (a, 1 if xa == 1 else 0)
            leave = (b, 0 if xb == 1 else 1)
            link[arrive].append(leave)
            link[leave].append(arrive)
    if any(len(nb) != 2 for nb in link.values()):
        return False
    # ends grouped by vertex; each group must be one connected cycle
    by_vertex: dict[str, list[tuple[str, int]]] = {v: [] for v in x.vertices}
    for e in x.edges:
        by_vertex[e.source].append((e.id, 0))
        by_vertex[e.target].append((e.id, 1))
    for v, ends in by_vertex.items():
        if not ends:
            return False
        seen = {ends[0]}
        stack = [ends[0]]
        while stack:
            for w in link[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != len(ends):
            return False
    return True


def _orientable(x: CellComplex2) -> bool:
    # occurrences of each edge: (face index, exponent)
    occ: dict[str, list[tuple[int, int]]] = {e.id: [] for e in x.edges}
    for i, f in enumerate(x.faces):
        for eid, ex in f.word:
            occ[eid].append((i, ex))
    adj: dict[int, list[tuple[int, int]]] = {i: [] for i in range(len(x.faces))}
    for (i, xi), (j, xj) in occ.values():
        # coherent orientations o_i, o_j need o_i*xi == -o_j*xj
        rel = -xi * xj
        if i == j:
            if rel != 1:
                return False
            continue
        adj[i].append((j, rel))
        adj[j].append((i, rel))
    orient: dict[int, int] = {}
    for start in adj:
        if start in orient:
            continue
        orient[start] = 1
        stack = [start]
        while stack:
            i = stack.pop()
            for j, rel in adj[i]:
                want = orient[i] * rel
                if j not in orient:
                    orient[j] = want
                    stack.append(j)
                elif orient[j] != want:
                    return False
    return True


def surface_report(x: CellComplex2) -> SurfaceReport:
    chi = x.euler_characteristic
    uses = Counter(eid for f in x.faces for eid, _ in f.word)
    closed = all(uses[e.id] == 2 for e in x.edges) and _vertex_links_are_cycles(x)
    if not closed:
        return SurfaceReport(chi, False, None, None)
    orientable = _orientable(x)
    genus = (2 - chi) // 2 if orientable else 2 - chi
    return SurfaceReport(chi, True, orientable, genus)


def reverse_orientation(x: CellComplex2) -> CellComplex2:
    """Reverse every edge and every 2-cell.

    Words are read backwards; exponents are unchanged because they now refer
    to the reversed edges, so relative to the original orientation every
    boundary column is negated.
    """
    return CellComplex2(
        vertices=x.vertices,
        edges=tuple(Edge(e.id, e.target, e.source) for e in x.edges),
        faces=tuple(Face(f.context, tuple(reversed(f.word))) for f in x.faces),
    )


# --- (de)serialization --------------------------------------------------------


def complex_from_dict(doc: Any) -> CellComplex2:
    _check_keys(doc, {"vertices", "edges", "faces"}, {"vertices", "edges", "faces"}, "")
    for key in ("vertices", "edges", "faces"):
        if not isinstance(doc[key], list):
            raise ValidationError("expected a list", key)
    vertices = tuple(_str(v, f"vertices[{i}]") for i, v in enumerate(doc["vertices"]))
    edges = []
    for i, e in enumerate(doc["edges"]):
        w = f"edges[{i}]"
        _check_keys(e, {"id", "source", "target"}, {"id", "source", "target"}, w)
        edges.append(Edge(_str(e["id"], f"{w}.id"), _str(e["source"], f"{w}.source"), _str(e["target"], f"{w}.target")))
    faces = []
    for i, f in enumerate(doc["faces"]):
        w = f"faces[{i}]"
        _check_keys(f, {"context", "word"}, {"context", "word"}, w)
        if not isinstance(f["word"], list):
            raise ValidationError("expected a list", f"{w}.word")
        word = []
        for k, step in enumerate(f["word"]):
            if not isinstance(step, list) or len(step) != 2:
                raise DocumentSyntaxError(f"{w}.word[{k}]: expected [edge, exponent]")
            word.append((_str(step[0], f"{w}.word[{k}][0]"), _int(step[1], f"{w}.word[{k}][1]")))
        faces.append(Face(_str(f["context"], f"{w}.context"), tuple(word)))
    return CellComplex2(vertices=vertices, edges=tuple(edges), faces=tuple(faces))


def parse_realization(document: str | bytes) -> CellComplex2:
    return complex_from_dict(_load_json(document))


def serialize_realization(x: CellComplex2) -> str:
    return json.dumps(x.to_dict(), indent=2) + "\n"


def load_realization(path) -> CellComplex2:
    with open(path, "rb") as fh:
        return parse_realization(fh.read())
