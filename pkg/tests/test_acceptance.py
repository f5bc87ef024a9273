"""Acceptance criteria, one test per criterion, each printing a PASS/FAIL line."""

import random
import time

import networkx as nx
from conftest import ACCEPTANCE_LINES, arrangement, random_arrangement, random_complex, realization

from magictopo import fixture
from magictopo.arkhipov import dual_complex, intersection_graph, kuratowski_type, theorem_a_verdict
from magictopo.arrangement import parse_arrangement, serialize_arrangement
from magictopo.complex2 import (
    build_single_vertex,
    parse_realization,
    reverse_orientation,
    serialize_realization,
    surface_report,
    validate_realization,
)
from magictopo.homology import (
    ClassicalSolution,
    Infeasible,
    brute_force_classical,
    build_chain,
    check_classical,
    check_witness,
    cohomology_rank,
    solve_classical,
)
from magictopo.pauli import (
    PauliOp,
    check_face_identity,
    commutator,
    parse_operators,
    path_operator,
    serialize_operators,
    verify_quantum_realization,
)
from magictopo.pi1 import abelianization, coprime_criterion, finite_order, homology_h1, presentation, triviality
from magictopo.primes import decompose, glue, prime_plan
from magictopo.report import MAGIC, NON_MAGIC, analyze
from magictopo.solngroup import theta_lift_check


def record(n: int, title: str, checks: dict[str, bool]) -> None:
    failed = [k for k, ok in checks.items() if not ok]
    line = f"criterion {n:2d} {'PASS' if not failed else 'FAIL'}: {title}"
    if failed:
        line += " (failed: " + ", ".join(failed) + ")"
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert not failed, line


def _magic_pipeline(arr, ops, x, oracle_size):
    t0 = time.perf_counter()
    quantum = verify_quantum_realization(arr, ops)
    classical = solve_classical(arr)
    oracle = brute_force_classical(arr, cap=4096)
    rep = analyze(arr, x, ops)
    elapsed = time.perf_counter() - t0
    return {
        "quantum realization verified": quantum == [],
        "solve_classical infeasible": isinstance(classical, Infeasible),
        "witness re-checks": isinstance(classical, Infeasible) and check_witness(arr, classical.witness),
        f"oracle over {oracle_size} candidates agrees": isinstance(oracle, Infeasible) and arr.d ** len(arr.labels) == oracle_size,
        "report is magic(certified)": rep["classification"]["verdict"] == MAGIC,
        "runtime < 1 s": elapsed < 1.0,
    }


def test_criterion_01_mermin_square(square, square_ops, torus):
    checks = _magic_pipeline(square, square_ops, torus, 512)
    yy = square.context("C6")
    checks["tau = 1 exactly on {XX, ZZ, YY}"] = set(yy.labels) == {"XX", "ZZ", "YY"} and square.tau() == [0, 0, 0, 0, 0, 1]
    checks["(XX)(ZZ)(YY) = -I"] = (square_ops["XX"] * square_ops["ZZ"] * square_ops["YY"]).equals_omega(1)
    record(1, "Mermin square magic certification", checks)


def test_criterion_02_mermin_star(star, star_ops, star_torus):
    checks = _magic_pipeline(star, star_ops, star_torus, 1024)
    checks["sum of tau = 1"] = sum(star.tau()) % 2 == 1
    record(2, "Mermin star magic certification", checks)


def test_criterion_03_torus(torus):
    rep = surface_report(torus)
    p = presentation(torus)
    record(
        3,
        "torus topology",
        {
            "chi = 0": rep.euler_characteristic == 0,
            "closed": rep.is_closed_surface,
            "orientable": rep.orientable is True,
            "genus 1": rep.genus == 1,
            "7 generators": len(p.generators) == 7,
            "abelianization Z^2": abelianization(p) == [0, 0],
            "chain-level H1 agrees": homology_h1(torus) == [0, 0],
        },
    )


def test_criterion_04_rp2(rp2, rp2_signs):
    rep = surface_report(rp2)
    p = presentation(rp2)
    arr3 = rp2_signs.with_modulus(3)
    cop = coprime_criterion(arr3, p)
    rep3 = analyze(arr3, rp2)
    record(
        4,
        "RP2 topology and the coprime criterion",
        {
            "chi = 1": rep.euler_characteristic == 1,
            "closed": rep.is_closed_surface,
            "non-orientable": rep.orientable is False,
            "abelianization Z_2": abelianization(p) == [2],
            "finite_order = 2": finite_order(p) == 2,
            "coprime criterion certifies d = 3": cop.status == "non-magic-certified",
            "report cites the coprime criterion": "coprime-criterion(user)" in rep3["classification"]["certified_by"]
            and rep3["classification"]["verdict"] == NON_MAGIC,
            "H2(RP2; Z_3) = 0": cohomology_rank(build_chain(arr3)) == [],
            "realization validates topologically": validate_realization(rp2_signs, rp2) == [],
        },
    )


def test_criterion_05_face_identities(square, square_ops, torus, rp2, rp2_signs, star, star_ops, star_torus):
    checks = {}
    for name, arr, ops, x in (
        ("square/torus", square, square_ops, torus),
        ("square/RP2", rp2_signs, square_ops, rp2),
        ("star/torus", star, star_ops, star_torus),
        ("square/single-vertex", square, square_ops, build_single_vertex(square)),
        ("star/single-vertex", star, star_ops, build_single_vertex(star)),
    ):
        checks[f"faces of {name}"] = check_face_identity(ops, x, arr) == []
    p = presentation(torus)
    t1 = path_operator(square_ops, torus, p.loop_word(torus, "XX"))
    t4 = path_operator(square_ops, torus, p.loop_word(torus, "Z1"))
    c = commutator(t1, t4)
    checks["[T1, T4] = omega^(sum tau)"] = c.equals_omega(sum(square.tau()))
    checks["[T1, T4] = -I"] = c == PauliOp.scalar(2, 2, 1)
    record(5, "face identities and the torus commutator", checks)


def _cycle_arrangement():
    return arrangement("context_cycle.json")


def test_criterion_06_planarity():
    checks = {}
    for name, arr, kind in (
        ("square", arrangement("mermin_square.json"), "K3,3"),
        ("star", arrangement("mermin_star.json"), "K5"),
    ):
        t0 = time.perf_counter()
        v = theorem_a_verdict(arr)
        elapsed = time.perf_counter() - t0
        g = intersection_graph(arr)
        ends = g.endpoints()
        sub = nx.Graph([ends[l] for l in v.planarity.witness])
        checks[f"{name}: magic"] = v.status == "magic"
        checks[f"{name}: {kind} witness verified"] = v.planarity.verified and v.planarity.witness_type == kind
        checks[f"{name}: witness re-checked by contraction"] = kuratowski_type(sub) == kind
        checks[f"{name}: runtime < 1 s"] = elapsed < 1.0
    t0 = time.perf_counter()
    cyc = _cycle_arrangement()
    v = theorem_a_verdict(cyc)
    dual = dual_complex(intersection_graph(cyc), v.planarity.rotation)
    checks["4-cycle: non-magic"] = v.status == "non-magic"
    checks["4-cycle: embedding verified"] = v.planarity.verified
    checks["4-cycle: dual is a sphere"] = surface_report(dual).euler_characteristic == 2
    checks["4-cycle: dual pi1 trivial"] = triviality(presentation(dual)).status == "trivial"
    checks["4-cycle: runtime < 1 s"] = time.perf_counter() - t0 < 1.0
    record(6, "planarity verdicts", checks)


def _lift_agrees(arr, x):
    v = theta_lift_check(arr, x, presentation(x))
    feasible = isinstance(solve_classical(arr), ClassicalSolution)
    if v.status == "unknown":
        return None
    return (v.status == "lift-exists") == feasible


def test_criterion_07_lift_consistency(square, torus, rp2, rp2_signs, star, star_torus):
    checks = {}
    cases = [
        ("square/torus", square, torus),
        ("square/single-vertex", square, build_single_vertex(square)),
        ("square tau=0/torus", square.with_tau([0] * 6), torus),
        ("square/RP2 d=2", rp2_signs, rp2),
        ("square/RP2 d=3", rp2_signs.with_modulus(3), rp2),
        ("star/torus", star, star_torus),
        ("cycle/single-vertex", _cycle_arrangement(), build_single_vertex(_cycle_arrangement())),
    ]
    for name, arr, x in cases:
        checks[f"fixture {name}"] = _lift_agrees(arr, x) is True
    rng = random.Random(20240607)
    unknown = disagree = 0
    for _ in range(200):
        arr = random_arrangement(rng, rng.choice((2, 3, 4, 6)))
        res = _lift_agrees(arr, build_single_vertex(arr))
        if res is None:
            unknown += 1
        elif not res:
            disagree += 1
    print(f"random lift checks: {200 - unknown} decided, {unknown} unknown, {disagree} disagreements")
    checks["200 random arrangements agree"] = disagree == 0
    record(7, f"lift test agrees with classical feasibility ({unknown} unknown)", checks)


def test_criterion_08_prime_round_trip():
    rng = random.Random(6)
    agree = glued_ok = True
    for _ in range(100):
        arr = random_arrangement(rng, 6, max_cells=4096)
        plan, parts = decompose(arr)
        sols = [solve_classical(p) for p in parts]
        full = isinstance(solve_classical(arr), ClassicalSolution)
        joint = all(isinstance(s, ClassicalSolution) for s in sols)
        agree &= full == joint
        if joint:
            glued_ok &= check_classical(arr, glue(sols, plan).c)
    plans_ok = all(prime_plan(d).identity_holds() for d in range(2, 500))
    record(
        8,
        "prime decomposition round trip",
        {"feasibility agrees": agree, "glued solutions re-verify": glued_ok, "plan identity holds": plans_ok},
    )


def test_criterion_09_orientation_reversal(square, square_ops, torus, rp2, rp2_signs):
    checks = {}
    for name, arr, x in (("torus", square, torus), ("RP2", rp2_signs, rp2)):
        xr = reverse_orientation(x)
        # the reversed complex realizes the same arrangement commutatively, with the same operators
        checks[f"{name}: reversed faces give the same scalars"] = check_face_identity(square_ops, xr, arr) == []
        checks[f"{name}: reversed complex is a commutative realization"] = validate_realization(arr, xr, "commutative") == []
        checks[f"{name}: omega^(2 tau(X)) = 1"] = PauliOp.scalar(2, arr.d, 2 * sum(arr.tau())) == PauliOp.identity(2, arr.d)
    # torus: reversing the surface inverts the commutator of the generating loops,
    # while both equal omega^tau(X); together these force omega^(2 tau(X)) = 1
    p, xr = presentation(torus), reverse_orientation(torus)
    pr = presentation(xr)
    k = commutator(path_operator(square_ops, torus, p.loop_word(torus, "XX")), path_operator(square_ops, torus, p.loop_word(torus, "Z1")))
    kr = commutator(path_operator(square_ops, xr, pr.loop_word(xr, "XX")), path_operator(square_ops, xr, pr.loop_word(xr, "Z1")))
    checks["torus: commutator is omega^tau(X)"] = k.equals_omega(sum(square.tau()))
    checks["torus: reversed commutator is the inverse"] = kr == k.inverse()
    record(9, "orientation-reversal law", checks)


def test_criterion_10_properties():
    t0 = time.perf_counter()
    rng = random.Random(10)
    convention = True
    for _ in range(1000):
        d = rng.choice((2, 3, 4, 5, 6))
        n = rng.randint(1, 3)
        ps = [PauliOp(d, rng.randrange(2 * d), tuple((rng.randrange(d), rng.randrange(d)) for _ in range(n))) for _ in range(3)]
        p, q, r = ps
        convention &= (p * q) * r == p * (q * r)
        for (a, b), (a2, b2), (s, t) in zip(p.sites, q.sites, (p * q).sites):
            convention &= (s, t) == ((a + a2) % d, (b + b2) % d)
        expect = (p.phase + q.phase + 2 * sum(b * a2 for (_, b), (a2, _) in zip(p.sites, q.sites))) % (2 * d)
        convention &= (p * q).phase == expect
    ranks = True
    for _ in range(50):
        x = random_complex(rng)
        ranks &= len(presentation(x).generators) == len(x.edges) - len(x.vertices) + 1
    round_trip = True
    for name in ("mermin_square.json", "mermin_square_rp2_signs.json", "mermin_square_rp2_d3.json", "mermin_star.json", "context_cycle.json"):
        arr = arrangement(name)
        round_trip &= parse_arrangement(serialize_arrangement(arr)) == arr
    for name in ("mermin_square_torus.json", "mermin_square_rp2.json", "mermin_star_torus.json"):
        x = realization(name)
        round_trip &= parse_realization(serialize_realization(x)) == x
    for name in ("mermin_square_ops.json", "mermin_star_ops.json"):
        t = parse_operators(fixture(name).read_bytes())
        round_trip &= parse_operators(serialize_operators(t)) == t
    record(
        10,
        "property suites",
        {
            "Pauli convention on 1000 triples": convention,
            "generator count on 50 random complexes": ranks,
            "fixture round trips": round_trip,
            "runtime well under 60 s": time.perf_counter() - t0 < 60,
        },
    )
