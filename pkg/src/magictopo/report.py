"""The end-to-end analysis behind ``magictopo analyze``."""

from __future__ import annotations

from typing import Any

from .arkhipov import theorem_a_verdict
from .arrangement import Arrangement
from .complex2 import CellComplex2, build_single_vertex, surface_report, validate_realization
from .homology import ClassicalSolution, TooLarge, brute_force_classical, build_chain, cohomology_rank, solve_classical
from .limits import DEFAULT_LIMITS, Limits
from .pauli import OperatorAssignment, check_face_identity, verify_quantum_realization
from .pi1 import abelianization, coprime_criterion, finite_order, homology_h1, presentation, triviality
from .primes import decompose, factorize, glue
from .solngroup import theta_lift_check

SCHEMA_VERSION = 1

MAGIC = "magic(certified)"
NON_MAGIC = "non-magic(certified)"
UNDETERMINED = "undetermined"


def _classical_section(arr: Arrangement, oracle_cap: int) -> tuple[dict[str, Any], bool]:
    res = solve_classical(arr, build_chain(arr))
    out: dict[str, Any]
    if isinstance(res, ClassicalSolution):
        out = {"status": "feasible", "solution": res.c}
    else:
        out = {"status": "infeasible", "witness": res.witness}
    oracle = brute_force_classical(arr, oracle_cap)
    if isinstance(oracle, TooLarge):
        out["oracle"] = {"status": "skipped", "candidates": oracle.candidates, "cap": oracle.cap}
    else:
        agrees = isinstance(oracle, ClassicalSolution) == isinstance(res, ClassicalSolution)
        out["oracle"] = {"status": "agrees" if agrees else "DISAGREES", "candidates": arr.d ** len(arr.labels)}
    return out, isinstance(res, ClassicalSolution)


def _realization_section(
    name: str,
    arr: Arrangement,
    x: CellComplex2,
    ops: OperatorAssignment | None,
    quantum_ok: bool,
    limits: Limits,
) -> dict[str, Any]:
    sec: dict[str, Any] = {"name": name}
    topo = validate_realization(arr, x, "topological")
    comm = validate_realization(arr, x, "commutative") if topo else []
    if topo and comm:
        sec["validation"] = {"mode": None, "violations": comm}
        sec["skipped"] = "not a realization of the arrangement"
        return sec
    sec["validation"] = {"mode": "topological" if not topo else "commutative", "violations": []}
    sec["surface"] = surface_report(x).to_dict()
    p = presentation(x)
    triv = triviality(p, limits)
    order = finite_order(p, limits) if triv.status != "trivial" else 1
    sec["pi1"] = {
        "generators": len(p.generators),
        "relators": len(p.relators),
        "presentation": p.to_text(),
        "abelianization": abelianization(p),
        "h1_from_chains": homology_h1(x),
        "triviality": {"status": triv.status, "evidence": triv.evidence},
        "order": order if isinstance(order, int) else {"status": "infinite-or-unknown", "note": order.certificate},
    }
    cop = coprime_criterion(arr, p, limits)
    sec["coprime_criterion"] = {"status": cop.status, "order": cop.order, "note": cop.note}
    if ops is not None and quantum_ok and not topo:
        bad = check_face_identity(ops, x, arr)
        sec["face_identity"] = {"status": "ok" if not bad else "violations", "violations": bad}
    sec["lift"] = theta_lift_check(arr, x, p, limits).to_dict()
    return sec


def analyze(
    arr: Arrangement,
    realization: CellComplex2 | None = None,
    operators: OperatorAssignment | None = None,
    oracle_cap: int = 4096,
    limits: Limits = DEFAULT_LIMITS,
) -> dict[str, Any]:
    report: dict[str, Any] = {"schema_version": SCHEMA_VERSION}
    report["arrangement"] = {
        "d": arr.d,
        "labels": len(arr.labels),
        "contexts": len(arr.contexts),
        "restricted": arr.restricted_flag,
        "tau_sum": sum(arr.tau()) % arr.d,
    }
    notes: list[str] = []

    classical, feasible = _classical_section(arr, oracle_cap)
    report["classical"] = classical
    report["homology"] = {"h2_factors": cohomology_rank(build_chain(arr))}

    quantum_ok = False
    if operators is not None:
        bad = verify_quantum_realization(arr, operators)
        quantum_ok = not bad
        report["operators"] = {"quantum_realization": "ok" if quantum_ok else "violations", "violations": bad}
    else:
        notes.append("operators: stage skipped, no operator file given")

    sections = [_realization_section("single-vertex", arr, build_single_vertex(arr), operators, quantum_ok, limits)]
    if realization is not None:
        sections.append(_realization_section("user", arr, realization, operators, quantum_ok, limits))
    else:
        notes.append("user realization: stage skipped, no realization file given")
    report["realizations"] = sections

    ta = theorem_a_verdict(arr)
    report["planarity_criterion"] = ta.to_dict() if ta.status != "not-applicable" else {"status": ta.status, "reason": ta.reason}

    if sum(a for _, a in factorize(arr.d)) > 1:
        plan, parts = decompose(arr)
        comps = []
        sols = []
        for comp, part in zip(plan.components, parts):
            res = solve_classical(part)
            comps.append({"modulus": comp.modulus, "feasible": isinstance(res, ClassicalSolution)})
            sols.append(res)
        prime = {"plan": plan.to_dict(), "components": comps}
        if all(isinstance(s, ClassicalSolution) for s in sols):
            prime["glued_solution"] = glue(sols, plan).c
        report["primes"] = prime

    report["classification"] = _classify(feasible, quantum_ok, sections, ta.status, notes)
    report["notes"] = notes
    return report


def _classify(feasible: bool, quantum_ok: bool, sections, planar_verdict: str, notes: list[str]) -> dict[str, Any]:
    non_magic = []
    if feasible:
        non_magic.append("classical-solution")
    for sec in sections:
        if sec.get("coprime_criterion", {}).get("status") == "non-magic-certified":
            non_magic.append(f"coprime-criterion({sec['name']})")
        if sec.get("pi1", {}).get("triviality", {}).get("status") == "trivial":
            non_magic.append(f"simply-connected-realization({sec['name']})")
    if planar_verdict == "non-magic":
        non_magic.append("planar-intersection-graph")
    if quantum_ok and not feasible:
        if non_magic:
            notes.append("internal inconsistency: magic and non-magic certificates both present " + ", ".join(non_magic))
            return {"verdict": UNDETERMINED, "certified_by": []}
        return {"verdict": MAGIC, "certified_by": ["quantum-realization", "classical-infeasibility"]}
    if non_magic:
        return {"verdict": NON_MAGIC, "certified_by": non_magic}
    if planar_verdict == "magic":
        notes.append("the planarity criterion predicts magic; no operator witness was supplied")
    return {"verdict": UNDETERMINED, "certified_by": []}


def render_human(report: dict[str, Any]) -> str:
    a = report["arrangement"]
    lines = [
        f"arrangement: d={a['d']}, {a['labels']} labels, {a['contexts']} contexts, restricted={a['restricted']}",
        f"classical: {report['classical']['status']} (oracle {report['classical']['oracle']['status']})",
        f"H^2 factors: {report['homology']['h2_factors'] or 'trivial'}",
    ]
    if "operators" in report:
        lines.append(f"quantum realization: {report['operators']['quantum_realization']}")
    for sec in report["realizations"]:
        if "skipped" in sec:
            lines.append(f"[{sec['name']}] skipped: {sec['skipped']}")
            continue
        s, p = sec["surface"], sec["pi1"]
        lines.append(
            f"[{sec['name']}] chi={s['euler_characteristic']} closed={s['is_closed_surface']} "
            f"orientable={s['orientable']} genus={s['genus']}"
        )
        lines.append(
            f"[{sec['name']}] pi1: {p['generators']} generators, {p['relators']} relators, "
            f"abelianization {p['abelianization']}, {p['triviality']['status']}"
        )
        if "face_identity" in sec:
            lines.append(f"[{sec['name']}] face identities: {sec['face_identity']['status']}")
        lines.append(f"[{sec['name']}] lift: {sec['lift']['status']}")
    lines.append(f"planarity criterion: {report['planarity_criterion']['status']}")
    if "primes" in report:
        comps = ", ".join(f"mod {c['modulus']}: {'feasible' if c['feasible'] else 'infeasible'}" for c in report["primes"]["components"])
        lines.append(f"prime components: {comps}")
    c = report["classification"]
    by = f" via {', '.join(c['certified_by'])}" if c["certified_by"] else ""
    lines.append(f"verdict: {c['verdict']}{by}")
    lines += [f"note: {n}" for n in report["notes"]]
    return "\n".join(lines) + "\n"
