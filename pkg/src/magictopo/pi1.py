"""Fundamental-group presentations of 2-complexes via a maximal tree."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from math import gcd
from typing import Any

from .arrangement import Arrangement
from .complex2 import CellComplex2
from .cosets import LimitExceeded, enumerate_cosets
from .intlinalg import invariant_factors, smith_normal_form
from .limits import DEFAULT_LIMITS, Limits
from .words import FreeWord, exponent_sums, format_word, free_reduce, inverse, parse_word


@dataclass(frozen=True)
class RelatorOrigin:
    face: str
    gamma: FreeWord  # tree path (edge steps) from the basepoint to the face's first vertex


@dataclass(frozen=True)
class GroupPresentation:
    generators: tuple[str, ...]
    relators: tuple[FreeWord, ...]
    generator_origin: dict[str, str] = field(default_factory=dict)
    relator_origin: tuple[RelatorOrigin, ...] = ()
    basepoint: str | None = None
    tree: tuple[str, ...] = ()
    tree_paths: dict[str, FreeWord] = field(default_factory=dict)

    def __post_init__(self) -> None:
        gens = set(self.generators)
        for i, r in enumerate(self.relators):
            bad = {s for s, _ in r} - gens
            if bad:
                raise ValueError(f"relator {i} uses unknown generators {sorted(bad)}")

    def to_text(self) -> str:
        lines = ["gens: " + " ".join(self.generators)]
        lines += [format_word(r) for r in self.relators]
        return "\n".join(lines) + "\n"

    def loop_word(self, x: CellComplex2, gen: str) -> FreeWord:
        """The edge loop at the basepoint represented by a generator."""
        e = x.edge(self.generator_origin[gen])
        return self.tree_paths[e.source] + ((e.id, 1),) + inverse(self.tree_paths[e.target])


def parse_presentation(text: str) -> GroupPresentation:
    lines = text.splitlines()
    if not lines or not lines[0].startswith("gens:"):
        raise ValueError("first line must start with 'gens:'")
    gens = tuple(lines[0][len("gens:"):].split())
    rels = tuple(parse_word(line) for line in lines[1:])
    return GroupPresentation(generators=gens, relators=rels)


def spanning_tree(x: CellComplex2, basepoint: str) -> tuple[list[str], dict[str, FreeWord]]:
    """BFS tree from the basepoint, incident edges visited in lexicographic id order."""
    incident: dict[str, list] = {v: [] for v in x.vertices}
    for e in x.edges:
        incident[e.source].append(e)
        if e.target != e.source:
            incident[e.target].append(e)
    for v in incident:
        incident[v].sort(key=lambda e: e.id)
    paths: dict[str, FreeWord] = {basepoint: ()}
    tree: list[str] = []
    queue = deque([basepoint])
    while queue:
        v = queue.popleft()
        for e in incident[v]:
            if e.source == v and e.target not in paths:
                paths[e.target] = paths[v] + ((e.id, 1),)
            elif e.target == v and e.source not in paths:
                paths[e.source] = paths[v] + ((e.id, -1),)
            else:
                continue
            tree.append(e.id)
            queue.append(e.target if e.source == v else e.source)
    return tree, paths


def presentation(x: CellComplex2, basepoint: str | None = None) -> GroupPresentation:
    basepoint = x.vertices[0] if basepoint is None else basepoint
    if basepoint not in x.vertices:
        raise ValueError(f"unknown basepoint {basepoint!r}")
    tree, paths = spanning_tree(x, basepoint)
    in_tree = set(tree)
    gens = sorted(e.id for e in x.edges if e.id not in in_tree)
    rels = []
    origins = []
    for f in x.faces:
        start = x.step_endpoints(f.word[0])[0]
        gamma = paths[start]
        # tree edges are erased, so the conjugating path drops out of the word
        rels.append(free_reduce(s for s in f.word if s[0] not in in_tree))
        origins.append(RelatorOrigin(face=f.context, gamma=gamma))
    return GroupPresentation(
        generators=tuple(gens),
        relators=tuple(rels),
        generator_origin={g: g for g in gens},
        relator_origin=tuple(origins),
        basepoint=basepoint,
        tree=tuple(tree),
        tree_paths=paths,
    )


def relator_matrix(p: GroupPresentation) -> list[list[int]]:
    """Rows = relators, columns = generators, entries = exponent sums."""
    return [exponent_sums(r, list(p.generators)) for r in p.relators]


def abelianization(p: GroupPresentation) -> list[int]:
    """Invariant factors of the abelianized group (0 = free factor)."""
    m = relator_matrix(p)
    # coker of the transpose: Z^gens / row span of the relator matrix
    mt = [list(col) for col in zip(*m)] if m else [[] for _ in p.generators]
    return invariant_factors(mt, len(p.generators), len(p.relators))


def homology_h1(x: CellComplex2) -> list[int]:
    """H_1(X; Z) from the cellular chain complex, same convention as :func:`abelianization`."""
    d1 = x.edge_boundary_matrix()
    r1 = smith_normal_form(d1, len(x.vertices), len(x.edges)).rank
    sf2 = smith_normal_form(x.boundary_matrix(), len(x.edges), len(x.faces))
    torsion = [s for s in sf2.diagonal if s > 1]
    free = len(x.edges) - r1 - sf2.rank
    return torsion + [0] * free


# --- bounded decisions ---------------------------------------------------------


def _coset_words(p: GroupPresentation) -> list[list[int]]:
    idx = {g: i for i, g in enumerate(p.generators)}
    return [[2 * idx[s] + (0 if x == 1 else 1) for s, x in r] for r in p.relators]


def _enumerate(p: GroupPresentation, limits: Limits) -> int:
    return enumerate_cosets(len(p.generators), _coset_words(p), (), max_rows=limits.coset_rows)


@dataclass(frozen=True)
class TrivialityVerdict:
    status: str  # trivial | nontrivial | unknown
    evidence: dict[str, Any]


def triviality(p: GroupPresentation, limits: Limits = DEFAULT_LIMITS) -> TrivialityVerdict:
    ab = abelianization(p)
    evidence: dict[str, Any] = {"abelianization": ab}
    if 0 in ab:
        return TrivialityVerdict("nontrivial", evidence)
    try:
        index = _enumerate(p, limits)
    except LimitExceeded as exc:
        evidence["note"] = str(exc)
        return TrivialityVerdict("nontrivial" if ab else "unknown", evidence)
    evidence["coset_table_index"] = index
    return TrivialityVerdict("trivial" if index == 1 else "nontrivial", evidence)


@dataclass(frozen=True)
class InfiniteOrUnknown:
    certificate: str


def finite_order(p: GroupPresentation, limits: Limits = DEFAULT_LIMITS) -> int | InfiniteOrUnknown:
    free = abelianization(p).count(0)
    if free:
        return InfiniteOrUnknown(f"H1 has free rank {free}; the group is infinite")
    try:
        return _enumerate(p, limits)
    except LimitExceeded as exc:
        return InfiniteOrUnknown(f"order unknown: {exc}")


@dataclass(frozen=True)
class CoprimeVerdict:
    status: str  # non-magic-certified | inconclusive
    order: int | None
    note: str


def coprime_criterion(arr: Arrangement, p: GroupPresentation, limits: Limits = DEFAULT_LIMITS) -> CoprimeVerdict:
    """Finite fundamental group of order prime to d forces classical realizability."""
    n = finite_order(p, limits)
    if isinstance(n, InfiniteOrUnknown):
        return CoprimeVerdict("inconclusive", None, n.certificate)
    if gcd(n, arr.d) == 1:
        return CoprimeVerdict("non-magic-certified", n, f"|pi1| = {n} is prime to d = {arr.d}")
    return CoprimeVerdict("inconclusive", n, f"gcd(|pi1| = {n}, d = {arr.d}) = {gcd(n, arr.d)}")
