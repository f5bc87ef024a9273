import random

from conftest import random_arrangement

from magictopo.arrangement import make_arrangement
from magictopo.homology import (
    ClassicalSolution,
    Infeasible,
    TooLarge,
    boundary_matrix,
    brute_force_classical,
    build_chain,
    chain_from_matrix,
    check_classical,
    check_witness,
    cohomology_rank,
    solve_classical,
)


def test_boundary_matrix_square(square):
    b = boundary_matrix(square)
    assert len(b) == 9 and all(len(r) == 6 for r in b)
    for j in range(6):
        assert sum(b[i][j] % 2 for i in range(9)) == 3
    assert boundary_matrix(make_arrangement(2, [("C", ["a", "b"], 0)])) == [[1], [1]]


def test_square_is_infeasible_with_all_ones_witness(square):
    res = solve_classical(square)
    assert isinstance(res, Infeasible)
    assert check_witness(square, res.witness)
    assert check_witness(square, {c: 1 for c in square.context_ids})
    assert isinstance(brute_force_classical(square, cap=512), Infeasible)


def test_zero_tau_gives_zero_solution(square):
    arr = square.with_tau([0] * 6)
    assert solve_classical(arr).c == {a: 0 for a in arr.labels}
    assert brute_force_classical(arr).c == {a: 0 for a in arr.labels}


def test_single_context_mod_3():
    arr = make_arrangement(3, [("C", ["a", "b"], 2)])
    res = solve_classical(arr)
    assert check_classical(arr, res.c)
    # lexicographically least; the assignment a=2, b=0 is equally valid
    assert res.c == {"a": 0, "b": 2}
    assert check_classical(arr, {"a": 2, "b": 0})


def test_oracle_cap():
    res = brute_force_classical(make_arrangement(2, [("C", [f"x{i}" for i in range(9)], 0)]), cap=10)
    assert isinstance(res, TooLarge) and res.candidates == 512


def test_cohomology_examples(torus, rp2):
    t = chain_from_matrix([e.id for e in torus.edges], [f.context for f in torus.faces], torus.boundary_matrix(), 2)
    assert cohomology_rank(t) == [2]
    r = chain_from_matrix([e.id for e in rp2.edges], [f.context for f in rp2.faces], rp2.boundary_matrix(), 3)
    assert cohomology_rank(r) == []
    assert cohomology_rank(r, 2) == [2]
    empty = make_arrangement(2, [])
    assert cohomology_rank(build_chain(empty)) == []


def test_solver_matches_oracle_on_random_instances():
    rng = random.Random(11)
    for _ in range(300):
        d = rng.choice((2, 3, 4, 5, 6))
        arr = random_arrangement(rng, d, max_cells=4096)
        fast = solve_classical(arr)
        slow = brute_force_classical(arr, cap=4096)
        if isinstance(fast, ClassicalSolution):
            assert check_classical(arr, fast.c)
            assert fast.c == slow.c
        else:
            assert isinstance(slow, Infeasible)
            assert check_witness(arr, fast.witness)
