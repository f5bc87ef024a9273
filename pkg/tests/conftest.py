import random

import pytest

from magictopo import fixture, load_arrangement, load_operators, load_realization
from magictopo.arrangement import make_arrangement
from magictopo.complex2 import CellComplex2, Edge, Face

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def arrangement(name):
    return load_arrangement(fixture(name))


def realization(name):
    return load_realization(fixture(name))


def operators(name):
    return load_operators(fixture(name))


@pytest.fixture(scope="session")
def square():
    return arrangement("mermin_square.json")


@pytest.fixture(scope="session")
def square_ops():
    return operators("mermin_square_ops.json")


@pytest.fixture(scope="session")
def torus():
    return realization("mermin_square_torus.json")


@pytest.fixture(scope="session")
def rp2():
    return realization("mermin_square_rp2.json")


@pytest.fixture(scope="session")
def rp2_signs():
    return arrangement("mermin_square_rp2_signs.json")


@pytest.fixture(scope="session")
def star():
    return arrangement("mermin_star.json")


@pytest.fixture(scope="session")
def star_ops():
    return operators("mermin_star_ops.json")


@pytest.fixture(scope="session")
def star_torus():
    return realization("mermin_star_torus.json")


def random_arrangement(rng: random.Random, d: int, max_labels: int = 6, max_contexts: int = 4, max_cells: int | None = None):
    """Random signed arrangement; labels that end up unused are dropped."""
    while True:
        nl = rng.randint(1, max_labels)
        labels = [f"a{i}" for i in range(nl)]
        ctxs = []
        for j in range(rng.randint(1, max_contexts)):
            picked = rng.sample(labels, rng.randint(1, nl))
            ctxs.append((f"C{j}", [(a, rng.choice((1, -1))) for a in picked], rng.randrange(d)))
        used = [a for a in labels if any(a == e for _, es, _ in ctxs for e, _ in es)]
        if max_cells is not None and d ** len(used) > max_cells:
            continue
        return make_arrangement(d, ctxs, labels=used)


def random_complex(rng: random.Random, max_vertices: int = 5, extra_edges: int = 5, max_faces: int = 4) -> CellComplex2:
    """Random connected 2-complex: a random spanning tree plus extra edges, faces are closed walks."""
    nv = rng.randint(1, max_vertices)
    verts = [f"v{i}" for i in range(nv)]
    edges = []
    for i in range(1, nv):
        a, b = verts[i], verts[rng.randrange(i)]
        edges.append((a, b) if rng.random() < 0.5 else (b, a))
    for _ in range(rng.randint(0 if nv > 1 else 1, extra_edges)):
        edges.append((rng.choice(verts), rng.choice(verts)))
    rng.shuffle(edges)
    es = tuple(Edge(f"e{i}", s, t) for i, (s, t) in enumerate(edges))
    inc = {v: [] for v in verts}
    for e in es:
        inc[e.source].append((e.id, 1, e.target))
        inc[e.target].append((e.id, -1, e.source))
    faces = []
    for j in range(rng.randint(0, max_faces)):
        start = rng.choice([v for v in verts if inc[v]])
        v, word = start, []
        for _ in range(rng.randint(1, 6)):
            eid, x, w = rng.choice(inc[v])
            word.append((eid, x))
            v = w
        # walk back along the same steps if we did not close up
        if v != start:
            word += [(eid, -x) for eid, x in reversed(word)]
        faces.append(Face(f"F{j}", tuple(word)))
    return CellComplex2(vertices=tuple(verts), edges=es, faces=tuple(faces))
