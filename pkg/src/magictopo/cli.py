"""Command-line front end: ``magictopo <command> --arrangement FILE ...``."""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Callable

from .arkhipov import NotRestricted, intersection_graph, planarity, theorem_a_verdict
from .arrangement import ArrangementError, load_arrangement
from .complex2 import build_single_vertex, load_realization, serialize_realization, surface_report, validate_realization
from .homology import ClassicalSolution, TooLarge, brute_force_classical, build_chain, cohomology_rank, solve_classical
from .limits import Limits
from .pauli import DimensionMismatch, check_face_identity, load_operators, verify_operator_realization, verify_quantum_realization
from .pi1 import InfiniteOrUnknown, abelianization, finite_order, homology_h1, presentation, triviality
from .primes import decompose, glue
from .report import UNDETERMINED, analyze, render_human
from .solngroup import build_solution_group, theta_lift_check


class InputError(Exception):
    pass


class Outcome:
    def __init__(self, data: dict[str, Any], text: str | None = None, undetermined: bool = False):
        self.data = data
        self.text = text
        self.undetermined = undetermined


def _limits(args) -> Limits:
    base = Limits()
    return Limits(
        coset_rows=args.coset_rows or base.coset_rows,
        kb_rules=args.kb_rules or base.kb_rules,
        kb_steps=base.kb_steps,
    )


def _arr(args):
    if not args.arrangement:
        raise InputError("--arrangement is required")
    return load_arrangement(args.arrangement)


def _complex(args, arr):
    return load_realization(args.realization) if args.realization else build_single_vertex(arr)


def _ops(args):
    if not args.operators:
        raise InputError("--operators is required")
    return load_operators(args.operators)


def cmd_check_classical(args) -> Outcome:
    res = solve_classical(_arr(args))
    if isinstance(res, ClassicalSolution):
        return Outcome({"status": "feasible", "solution": res.c}, "feasible: " + json.dumps(res.c))
    return Outcome({"status": "infeasible", "witness": res.witness}, "infeasible; witness " + json.dumps(res.witness))


def cmd_oracle(args) -> Outcome:
    res = brute_force_classical(_arr(args), args.oracle_cap)
    if isinstance(res, TooLarge):
        msg = f"{res.candidates} candidates exceed the cap of {res.cap}"
        return Outcome({"status": "too-large", "candidates": res.candidates, "cap": res.cap}, msg, undetermined=True)
    if isinstance(res, ClassicalSolution):
        return Outcome({"status": "feasible", "solution": res.c}, "feasible: " + json.dumps(res.c))
    return Outcome({"status": "infeasible"}, "infeasible")


def cmd_homology(args) -> Outcome:
    arr = _arr(args)
    chain = build_chain(arr)
    factors = cohomology_rank(chain)
    res = solve_classical(arr, chain)
    data = {"h2_factors": factors, "tau_class_vanishes": isinstance(res, ClassicalSolution)}
    return Outcome(data, f"H^2 = {' + '.join(f'Z_{n}' for n in factors) or '0'}")


def cmd_realize(args) -> Outcome:
    arr = _arr(args)
    if args.realization:
        x = load_realization(args.realization)
        data = {
            "topological": validate_realization(arr, x, "topological"),
            "commutative": validate_realization(arr, x, "commutative"),
        }
        text = "\n".join(f"{k}: {'ok' if not v else '; '.join(v)}" for k, v in data.items())
        return Outcome(data, text)
    x = build_single_vertex(arr)
    return Outcome(x.to_dict(), serialize_realization(x))


def cmd_surface(args) -> Outcome:
    rep = surface_report(_complex(args, _arr(args))).to_dict()
    return Outcome(rep, "\n".join(f"{k}: {v}" for k, v in rep.items()))


def cmd_pi1(args) -> Outcome:
    arr = _arr(args)
    x = _complex(args, arr)
    limits = _limits(args)
    p = presentation(x)
    triv = triviality(p, limits)
    order = finite_order(p, limits)
    data = {
        "presentation": p.to_text(),
        "basepoint": p.basepoint,
        "tree": list(p.tree),
        "abelianization": abelianization(p),
        "h1_from_chains": homology_h1(x),
        "triviality": {"status": triv.status, "evidence": triv.evidence},
        "order": order if isinstance(order, int) else None,
    }
    if isinstance(order, InfiniteOrUnknown):
        data["order_note"] = order.certificate
    return Outcome(data, p.to_text(), undetermined=triv.status == "unknown")


def cmd_verify_ops(args) -> Outcome:
    arr, t = _arr(args), _ops(args)
    op = verify_operator_realization(arr, t)
    qu = verify_quantum_realization(arr, t)
    data = {"operator_realization": not op, "quantum_realization": not qu, "violations": qu}
    text = "quantum realization: ok" if not qu else "\n".join(qu)
    return Outcome(data, text)


def cmd_face_check(args) -> Outcome:
    arr, t = _arr(args), _ops(args)
    x = _complex(args, arr)
    bad = check_face_identity(t, x, arr)
    return Outcome({"status": "ok" if not bad else "violations", "violations": bad}, "ok" if not bad else "\n".join(bad))


def cmd_solution_group(args) -> Outcome:
    g = build_solution_group(_arr(args), quantum=not args.operator_only)
    return Outcome({"generators": list(g.generators), "relators": len(g.relators), "presentation": g.to_text()}, g.to_text())


def cmd_lift_check(args) -> Outcome:
    arr = _arr(args)
    x = _complex(args, arr)
    v = theta_lift_check(arr, x, presentation(x), _limits(args))
    return Outcome(v.to_dict(), v.status, undetermined=v.status == "unknown")


def cmd_planarity(args) -> Outcome:
    arr = _arr(args)
    try:
        g = intersection_graph(arr)
    except NotRestricted as exc:
        return Outcome({"status": "not-applicable", "reason": str(exc)}, f"not applicable: {exc}")
    res = planarity(g)
    verdict = theorem_a_verdict(arr)
    data = {"edge_list": g.to_edge_list(), **res.to_dict(), "planarity_criterion": verdict.status}
    text = g.to_edge_list() + f"planar: {res.planar} (certificate verified: {res.verified})\nverdict: {verdict.status}"
    return Outcome(data, text)


def cmd_decompose(args) -> Outcome:
    plan, parts = decompose(_arr(args))
    comps = []
    sols = []
    for comp, part in zip(plan.components, parts):
        res = solve_classical(part)
        sols.append(res)
        comps.append({"modulus": comp.modulus, "tau": part.tau(), "feasible": isinstance(res, ClassicalSolution)})
    data: dict[str, Any] = {"plan": plan.to_dict(), "identity_holds": plan.identity_holds(), "components": comps}
    if all(isinstance(s, ClassicalSolution) for s in sols):
        data["glued_solution"] = glue(sols, plan).c
    text = "\n".join(f"mod {c['modulus']}: tau={c['tau']} feasible={c['feasible']}" for c in comps)
    return Outcome(data, text)


def cmd_analyze(args) -> Outcome:
    arr = _arr(args)
    x = load_realization(args.realization) if args.realization else None
    t = load_operators(args.operators) if args.operators else None
    rep = analyze(arr, x, t, oracle_cap=args.oracle_cap, limits=_limits(args))
    return Outcome(rep, render_human(rep), undetermined=rep["classification"]["verdict"] == UNDETERMINED)


COMMANDS: dict[str, tuple[Callable[[Any], Outcome], str]] = {
    "analyze": (cmd_analyze, "run the full pipeline and emit a report"),
    "check-classical": (cmd_check_classical, "solve dc = tau over Z_d"),
    "oracle": (cmd_oracle, "brute-force classical search"),
    "homology": (cmd_homology, "second cohomology of the context complex"),
    "realize": (cmd_realize, "build the single-vertex realization, or validate one"),
    "surface": (cmd_surface, "Euler characteristic, surface test, orientability, genus"),
    "pi1": (cmd_pi1, "fundamental group presentation and triviality"),
    "verify-ops": (cmd_verify_ops, "check an operator table against the arrangement"),
    "face-check": (cmd_face_check, "check every face boundary operator"),
    "solution-group": (cmd_solution_group, "export the solution group presentation"),
    "lift-check": (cmd_lift_check, "does the projective representation lift"),
    "planarity": (cmd_planarity, "intersection graph planarity"),
    "decompose": (cmd_decompose, "split over the prime powers of d"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--arrangement", metavar="PATH")
    common.add_argument("--realization", metavar="PATH")
    common.add_argument("--operators", metavar="PATH")
    common.add_argument("--oracle-cap", type=int, default=4096, metavar="N")
    common.add_argument("--kb-rules", type=int, default=None, metavar="N")
    common.add_argument("--coset-rows", type=int, default=None, metavar="N")
    common.add_argument("--strict", action="store_true", help="exit 2 when the result is undetermined")
    common.add_argument("--human", action="store_true", help="print a text summary instead of JSON")
    parser = argparse.ArgumentParser(prog="magictopo", description="Topological analysis of contextuality arrangements.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        sp = sub.add_parser(name, parents=[common], help=help_text)
        if name == "solution-group":
            sp.add_argument("--operator-only", action="store_true", help="omit the context commutation relators")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out = COMMANDS[args.command][0](args)
    except (InputError, ArrangementError, DimensionMismatch, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.human and out.text is not None:
        sys.stdout.write(out.text if out.text.endswith("\n") else out.text + "\n")
    else:
        sys.stdout.write(json.dumps(out.data, indent=2) + "\n")
    return 2 if args.strict and out.undetermined else 0


if __name__ == "__main__":
    sys.exit(main())
