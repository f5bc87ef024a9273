"""Intersection graphs of restricted arrangements and the planarity criterion."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Any

import networkx as nx

from .arrangement import Arrangement
from .complex2 import CellComplex2, Edge, Face

Dart = tuple[str, int]  # (label, +1) leaves the edge's first endpoint, (label, -1) its second


class NotRestricted(ValueError):
    pass


@dataclass(frozen=True)
class IntersectionGraph:
    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str, str], ...]  # (label, u, v)

    def endpoints(self) -> dict[str, tuple[str, str]]:
        return {l: (u, v) for l, u, v in self.edges}

    def to_edge_list(self) -> str:
        return "".join(f"{u} {v} {l}\n" for l, u, v in self.edges)


def intersection_graph(arr: Arrangement) -> IntersectionGraph:
    if not arr.restricted_flag:
        raise NotRestricted("every label must lie in exactly two contexts")
    where = defaultdict(list)
    for c in arr.contexts:
        for a in c.labels:
            where[a].append(c.id)
    return IntersectionGraph(
        vertices=arr.context_ids,
        edges=tuple((a, *where[a]) for a in arr.labels),
    )


def parse_edge_list(text: str) -> IntersectionGraph:
    edges = []
    verts: list[str] = []
    for n, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ValueError(f"line {n}: expected 'u v label'")
        u, v, l = parts
        edges.append((l, u, v))
        for w in (u, v):
            if w not in verts:
                verts.append(w)
    return IntersectionGraph(tuple(verts), tuple(edges))


# --- rotation systems -------------------------------------------------------------


def _origin(g: IntersectionGraph, d: Dart) -> str:
    u, v = g.endpoints()[d[0]]
    return u if d[1] == 1 else v


def trace_faces(rotation: dict[str, list[Dart]]) -> list[list[Dart]]:
    """Face boundaries of a rotation system, each a cyclic list of darts."""
    succ: dict[Dart, Dart] = {}
    for darts in rotation.values():
        for i, d in enumerate(darts):
            succ[d] = darts[(i + 1) % len(darts)]
    seen: set[Dart] = set()
    faces = []
    for start in sorted(succ):
        if start in seen:
            continue
        face = []
        d = start
        while d not in seen:
            seen.add(d)
            face.append(d)
            d = succ[(d[0], -d[1])]
        faces.append(face)
    return faces


def verify_embedding(g: IntersectionGraph, rotation: dict[str, list[Dart]]) -> bool:
    """Checks that ``rotation`` uses every dart once at its origin and has Euler characteristic 2."""
    if set(rotation) != set(g.vertices):
        return False
    darts = [d for ds in rotation.values() for d in ds]
    if len(darts) != len(set(darts)) or len(darts) != 2 * len(g.edges):
        return False
    for v, ds in rotation.items():
        if any(_origin(g, d) != v for d in ds):
            return False
    f = len(trace_faces(rotation))
    return len(g.vertices) - len(g.edges) + f == 2


def _smooth(h: nx.Graph) -> nx.Graph:
    h = nx.Graph(h)
    changed = True
    while changed:
        changed = False
        for v in list(h.nodes):
            if h.degree(v) == 2:
                a, b = list(h.neighbors(v))
                if h.has_edge(a, b):
                    continue
                h.remove_node(v)
                h.add_edge(a, b)
                changed = True
    h.remove_nodes_from([v for v in list(h.nodes) if h.degree(v) == 0])
    return h


def kuratowski_type(h: nx.Graph) -> str | None:
    """'K5' or 'K3,3' when ``h`` is a subdivision of that graph, else None."""
    core = _smooth(h)
    degs = sorted(d for _, d in core.degree())
    if degs == [4] * 5 and core.number_of_edges() == 10:
        return "K5"
    if degs == [3] * 6 and core.number_of_edges() == 9 and nx.is_bipartite(core):
        sides = nx.bipartite.sets(core)
        if all(len(s) == 3 for s in sides):
            return "K3,3"
    return None


@dataclass(frozen=True)
class PlanarityResult:
    planar: bool
    rotation: dict[str, list[Dart]] | None = None
    witness: list[str] | None = None  # labels of a Kuratowski subdivision
    witness_type: str | None = None
    verified: bool = False

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"planar": self.planar, "verified": self.verified}
        if self.rotation is not None:
            out["rotation"] = {v: [[l, s] for l, s in ds] for v, ds in self.rotation.items()}
        if self.witness is not None:
            out["witness"] = {"type": self.witness_type, "labels": self.witness}
        return out


def planarity(g: IntersectionGraph) -> PlanarityResult:
    """Planarity with a certificate; the simple reduction goes to networkx."""
    bundles: dict[frozenset, list[str]] = defaultdict(list)
    loops: dict[str, list[str]] = defaultdict(list)
    simple = nx.Graph()
    simple.add_nodes_from(g.vertices)
    for l, u, v in g.edges:
        if u == v:
            loops[u].append(l)
        else:
            bundles[frozenset((u, v))].append(l)
            simple.add_edge(u, v)
    if not nx.is_connected(simple):
        raise ValueError("intersection graph is not connected")
    ok, cert = nx.check_planarity(simple, counterexample=True)
    if not ok:
        labels = sorted(bundles[frozenset(e)][0] for e in cert.edges)
        kind = kuratowski_type(nx.Graph(cert.edges))
        sub_ok = kind is not None and all(simple.has_edge(*e) for e in cert.edges)
        return PlanarityResult(False, witness=labels, witness_type=kind, verified=sub_ok)
    ends = g.endpoints()
    rotation: dict[str, list[Dart]] = {}
    for v in g.vertices:
        darts: list[Dart] = []
        for w in (cert.neighbors_cw_order(v) if len(simple[v]) else []):
            bundle = bundles[frozenset((v, w))]
            # parallel edges nest as digons: reverse the bundle at one end
            seq = bundle if v < w else list(reversed(bundle))
            darts += [(l, 1 if ends[l][0] == v else -1) for l in seq]
        for l in loops[v]:
            darts += [(l, 1), (l, -1)]
        rotation[v] = darts
    return PlanarityResult(True, rotation=rotation, verified=verify_embedding(g, rotation))


def dual_complex(g: IntersectionGraph, rotation: dict[str, list[Dart]]) -> CellComplex2:
    """Cells dual to an embedding: faces become vertices, graph vertices become faces.

    Face words follow the embedding orientation, so their exponents agree
    with the context signs only up to sign; that is exact when d = 2.
    """
    faces = trace_faces(rotation)
    face_of = {d: f"f{i}" for i, f in enumerate(faces) for d in f}
    edges = tuple(Edge(l, face_of[(l, 1)], face_of[(l, -1)]) for l, _, _ in g.edges)
    cells = tuple(Face(v, tuple((l, s) for l, s in rotation[v])) for v in g.vertices)
    return CellComplex2(vertices=tuple(f"f{i}" for i in range(len(faces))), edges=edges, faces=cells)


@dataclass(frozen=True)
class TheoremAVerdict:
    status: str  # magic | non-magic | not-applicable
    reason: str
    planarity: PlanarityResult | None = None
    extra: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"status": self.status, "reason": self.reason}
        if self.planarity is not None:
            out["planarity"] = self.planarity.to_dict()
        return out


def theorem_a_verdict(arr: Arrangement) -> TheoremAVerdict:
    if arr.d != 2:
        return TheoremAVerdict("not-applicable", f"the planarity criterion needs d = 2, got d = {arr.d}")
    if not arr.restricted_flag:
        return TheoremAVerdict("not-applicable", "some label does not lie in exactly two contexts")
    result = planarity(intersection_graph(arr))
    if not result.verified:
        return TheoremAVerdict("not-applicable", "planarity certificate failed verification", result)
    if result.planar:
        return TheoremAVerdict("non-magic", "intersection graph is planar", result)
    return TheoremAVerdict("magic", f"intersection graph contains a {result.witness_type} subdivision", result)
