import random

import pytest
from conftest import random_arrangement

from magictopo.arrangement import make_arrangement
from magictopo.complex2 import build_single_vertex
from magictopo.homology import ClassicalSolution, solve_classical
from magictopo.limits import Limits
from magictopo.pi1 import parse_presentation, presentation
from magictopo.solngroup import (
    J,
    NotApplicable,
    Rewriter,
    build_solution_group,
    knuth_bendix,
    order_of_j,
    relator_images,
    restricted_product_check,
    theta_lift_check,
)
from magictopo.words import parse_word


def test_square_solution_group_size(square):
    g = build_solution_group(square)
    assert len(g.generators) == 10 and g.generators[0] == J
    assert len(g.relators) == 1 + 9 + 9 + 18 + 6
    assert len(build_solution_group(square, quantum=False).relators) == 1 + 9 + 9 + 6


def test_one_label_transcription():
    g = build_solution_group(make_arrangement(2, [("C", ["a"], 1)]))
    assert g.to_text() == "gens: J g_a\nJ J\ng_a g_a\nJ g_a J^-1 g_a^-1\ng_a J^-1\n"


def test_restricted_product(square, star):
    assert restricted_product_check(square) == 1
    assert restricted_product_check(square.with_tau([0] * 6)) == 0
    assert restricted_product_check(star) == 1
    with pytest.raises(NotApplicable):
        restricted_product_check(square.with_modulus(3))


def test_toy_rewriting():
    g = build_solution_group(make_arrangement(2, [("C", ["a"], 1)]))
    # g_a = J here, so g_a g_a = J^2 = 1
    assert knuth_bendix(g, parse_word("g_a g_a")).status == "reduces-to-identity"
    v = knuth_bendix(g, parse_word("g_a"))
    assert v.status == "reduces-to-J-power" and v.j_power == 1
    assert knuth_bendix(g, parse_word("J g_a J^-1 g_a^-1")).status == "reduces-to-identity"


def test_generic_presentation_rewriting():
    p = parse_presentation("gens: a b\na b a^-1 b^-1\n")
    rw = Rewriter(p)
    assert rw.complete
    assert rw.verdict(parse_word("b a b^-1 a^-1")).status == "reduces-to-identity"
    assert rw.verdict(parse_word("a b")).status == "irreducible-distinct"
    # a non-terminating completion is cut off and reported as unknown
    hard = parse_presentation("gens: a b\na b a b^-1 a^-1 b^-1\n")
    v = knuth_bendix(hard, parse_word("a b a^-1"), Limits(kb_rules=5, kb_steps=1000))
    assert v.status in ("unknown", "irreducible-distinct", "reduces-to-identity")
    assert Rewriter(hard, Limits(kb_rules=5, kb_steps=1000)).stats()["complete"] is False


def test_square_relator_image_reduces_to_j(square, torus):
    p = presentation(torus)
    rw = Rewriter(build_solution_group(square))
    assert rw.complete
    powers = [rw.verdict(w) for w in relator_images(torus, p)]
    assert all(v.status in ("reduces-to-J-power", "reduces-to-identity") for v in powers)
    assert sum(v.j_power for v in powers) % 2 == 1


def test_lift_check_examples(square, torus, rp2, rp2_signs):
    v = theta_lift_check(square, torus, presentation(torus))
    assert v.status == "lift-fails"
    assert v.witness["j_exponent"] == 1
    assert v.evidence["order_of_J"] == 2
    z = square.with_tau([0] * 6)
    assert theta_lift_check(z, torus, presentation(torus)).status == "lift-exists"
    assert theta_lift_check(rp2_signs.with_modulus(3), rp2, presentation(rp2)).status == "lift-exists"
    checked = theta_lift_check(square, torus, presentation(torus), verify_with_rewriting=True)
    assert checked.status == "lift-fails"
    assert all(r["status"] != "unknown" for r in checked.evidence["relator_reductions"])


def test_lift_on_single_vertex_matches_classical():
    rng = random.Random(17)
    for _ in range(120):
        arr = random_arrangement(rng, rng.choice((2, 3, 4)), max_labels=4, max_contexts=3)
        x = build_single_vertex(arr)
        v = theta_lift_check(arr, x, presentation(x), Limits(coset_rows=20000, kb_rules=2000))
        classical = isinstance(solve_classical(arr), ClassicalSolution)
        if classical:
            assert v.status == "lift-exists"
        else:
            assert v.status in ("lift-fails", "unknown")


def test_degenerate_center_is_flagged():
    # {a} and {a} with different tau force J = 1
    arr = make_arrangement(2, [("C", ["a"], 0), ("D", ["a"], 1)])
    x = build_single_vertex(arr)
    v = theta_lift_check(arr, x, presentation(x))
    assert v.status == "lift-fails"
    assert v.evidence["order_of_J"] == 1 and "degenerate" in v.evidence["note"]
    order, engine, _ = order_of_j(build_solution_group(arr))
    assert order == 1 and engine
