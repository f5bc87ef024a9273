"""Solution groups, bounded word problems, and the lift test."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Union

from .arrangement import Arrangement
from .complex2 import CellComplex2, validate_realization
from .cosets import CosetTable, LimitExceeded
from .intlinalg import ModObstruction, solve_mod
from .limits import DEFAULT_LIMITS, Limits
from .pi1 import GroupPresentation, relator_matrix
from .rewriting import RewritingSystem
from .words import FreeWord, format_word, free_reduce

J = "J"


class NotApplicable(ValueError):
    pass


def gen_name(label: str) -> str:
    return f"g_{label}"


@dataclass(frozen=True)
class SolutionGroupPresentation:
    d: int
    generators: tuple[str, ...]  # J first, then g_a in label order
    relators: tuple[FreeWord, ...]
    quantum: bool
    label_of: dict[str, str] = field(default_factory=dict)

    def to_text(self) -> str:
        lines = ["gens: " + " ".join(self.generators)]
        lines += [format_word(r) for r in self.relators]
        return "\n".join(lines) + "\n"


def _pow(sym: str, k: int) -> FreeWord:
    return tuple((sym, 1 if k > 0 else -1) for _ in range(abs(k)))


def _comm(x: str, y: str) -> FreeWord:
    return ((x, 1), (y, 1), (x, -1), (y, -1))


def build_solution_group(arr: Arrangement, quantum: bool = True) -> SolutionGroupPresentation:
    if J in {gen_name(a) for a in arr.labels}:
        raise ValueError("generator name J is reserved")
    gs = [gen_name(a) for a in arr.labels]
    rels: list[FreeWord] = [_pow(J, arr.d)]
    rels += [_pow(g, arr.d) for g in gs]
    rels += [_comm(J, g) for g in gs]
    if quantum:
        for c in arr.contexts:
            ls = c.labels
            for i, a in enumerate(ls):
                for b in ls[i + 1:]:
                    rels.append(_comm(gen_name(a), gen_name(b)))
    for c in arr.contexts:
        rels.append(tuple((gen_name(a), s) for a, s in c.word()) + _pow(J, -c.tau))
    return SolutionGroupPresentation(
        d=arr.d,
        generators=(J, *gs),
        relators=tuple(rels),
        quantum=quantum,
        label_of={gen_name(a): a for a in arr.labels},
    )


def restricted_product_check(arr: Arrangement) -> int:
    """J-exponent of the product of all context relations (restricted, d = 2 only)."""
    if arr.d != 2 or not arr.restricted_flag:
        raise NotApplicable("needs a restricted arrangement with d = 2")
    return sum(arr.tau()) % 2


# --- rewriting --------------------------------------------------------------------


@dataclass(frozen=True)
class RewriteVerdict:
    status: str  # reduces-to-identity | reduces-to-J-power | irreducible-distinct | unknown
    j_power: int | None
    normal_form: FreeWord | None
    system: dict[str, Any]


Presentation = Union[GroupPresentation, SolutionGroupPresentation]


class Rewriter:
    """A (possibly partial) rewriting system for a presentation.

    Solution groups only need positive letters since every generator has
    order dividing d; other presentations get an inverse letter per generator.
    J is always the greatest letter, so J-powers collect at the end of
    normal forms.
    """

    def __init__(self, p: Presentation, limits: Limits = DEFAULT_LIMITS):
        self.positive = isinstance(p, SolutionGroupPresentation)
        self.order = p.d if self.positive else None
        gens = sorted(p.generators, key=lambda g: (g == J, p.generators.index(g)))
        self.letter: dict[tuple[str, int], str] = {}
        self.symbol: dict[str, tuple[str, int]] = {}
        for i, g in enumerate(gens):
            if self.positive:
                self.letter[(g, 1)] = chr(0x100 + i)
            else:
                self.letter[(g, 1)] = chr(0x100 + 2 * i)
                self.letter[(g, -1)] = chr(0x100 + 2 * i + 1)
        self.symbol = {v: k for k, v in self.letter.items()}
        self.has_j = J in p.generators
        self.system = RewritingSystem(max_rules=limits.kb_rules, max_steps=limits.kb_steps)
        eqs = [(self.encode(r), "") for r in p.relators]
        if not self.positive:
            eqs += [(self.letter[(g, 1)] + self.letter[(g, -1)], "") for g in gens]
            eqs += [(self.letter[(g, -1)] + self.letter[(g, 1)], "") for g in gens]
        try:
            self.complete = self.system.complete_with(eqs)
            self.note = "confluent" if self.complete else "not confluent"
        except LimitExceeded as exc:
            self.complete = False
            self.note = str(exc)
        # later reductions get a fresh step budget
        self.system.steps = 0

    def encode(self, word: FreeWord) -> str:
        out = []
        for s, x in word:
            if self.positive and x == -1:
                out.append(self.letter[(s, 1)] * (self.order - 1))
            else:
                out.append(self.letter[(s, x)])
        return "".join(out)

    def decode(self, text: str) -> FreeWord:
        return tuple(self.symbol[ch] for ch in text)

    def stats(self) -> dict[str, Any]:
        return {"rules": len(self.system.rules), "complete": self.complete, "note": self.note}

    def reduce(self, word: FreeWord) -> str:
        return self.system.reduce(self.encode(word))

    def verdict(self, word: FreeWord) -> RewriteVerdict:
        try:
            nf = self.reduce(word)
        except LimitExceeded as exc:
            return RewriteVerdict("unknown", None, None, {**self.stats(), "note": str(exc)})
        dec = self.decode(nf)
        if not dec:
            return RewriteVerdict("reduces-to-identity", 0, dec, self.stats())
        if self.has_j:
            # J itself may rewrite to something smaller, so compare normal forms
            for k in range(1, self.order or 0):
                try:
                    if self.reduce(_pow(J, k)) == nf:
                        return RewriteVerdict("reduces-to-J-power", k, dec, self.stats())
                except LimitExceeded:
                    break
        status = "irreducible-distinct" if self.complete else "unknown"
        return RewriteVerdict(status, None, dec, self.stats())

    def order_of_j(self) -> int | None:
        """The order of J when it can be proved from this system, else None."""
        d = self.order or 0
        for m in range(1, d + 1):
            try:
                if self.reduce(_pow(J, m)) == "":
                    # a derivation J^m = 1; exact when the system is complete
                    return m if self.complete else (m if m == 1 else None)
            except LimitExceeded:
                return None
        return None


def knuth_bendix(p: Presentation, word: FreeWord, limits: Limits = DEFAULT_LIMITS) -> RewriteVerdict:
    return Rewriter(p, limits).verdict(word)


def _order_of_j_by_cosets(g: SolutionGroupPresentation, limits: Limits) -> int | None:
    idx = {s: i for i, s in enumerate(g.generators)}
    words = [[2 * idx[s] + (0 if x == 1 else 1) for s, x in r] for r in g.relators]
    table = CosetTable(len(g.generators), words, [], max_rows=limits.coset_rows)
    try:
        table.run()
    except LimitExceeded:
        return None
    j = 2 * idx[J]
    c, m = table.rep(table.table[0][j]), 1
    while c != 0:
        c = table.rep(table.table[c][j])
        m += 1
    return m


def order_of_j(g: SolutionGroupPresentation, limits: Limits = DEFAULT_LIMITS, rw: Rewriter | None = None):
    """Order of J in G, trying cheap budgets first.

    Coset enumeration and completion alternate with budgets growing tenfold
    up to ``limits``; the first engine to finish decides. Returns
    ``(order | None, engine | None, attempts)``.
    """
    attempts = []
    if rw is not None and rw.complete:
        return rw.order_of_j(), "knuth-bendix", [{"engine": "knuth-bendix", **rw.stats()}]
    for scale in (100, 10, 1):
        rows = max(1, limits.coset_rows // scale)
        m = _order_of_j_by_cosets(g, Limits(coset_rows=rows))
        attempts.append({"engine": "coset-enumeration", "max_rows": rows, "done": m is not None})
        if m is not None:
            return m, "coset-enumeration", attempts
        sub = Limits(kb_rules=max(1, limits.kb_rules // scale), kb_steps=max(1, limits.kb_steps // scale))
        rw = Rewriter(g, sub)
        m = rw.order_of_j()
        attempts.append({"engine": "knuth-bendix", "max_rules": sub.kb_rules, **rw.stats()})
        if m is not None:
            return m, "knuth-bendix", attempts
    return None, None, attempts


# --- lift test --------------------------------------------------------------------


@dataclass(frozen=True)
class LiftVerdict:
    status: str  # lift-exists | lift-fails | unknown
    alpha: dict[str, int] | None = None
    witness: dict[str, Any] | None = None
    evidence: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"status": self.status}
        if self.alpha is not None:
            out["alpha"] = self.alpha
        if self.witness is not None:
            out["witness"] = self.witness
        out["evidence"] = self.evidence
        return out


def relator_images(x: CellComplex2, p: GroupPresentation) -> list[FreeWord]:
    """theta-tilde of each pi1 relator as a word over the g_a, before any re-phasing."""
    loops = {g: p.loop_word(x, g) for g in p.generators}
    out = []
    for r in p.relators:
        w: list = []
        for s, e in r:
            loop = loops[s] if e == 1 else tuple((a, -b) for a, b in reversed(loops[s]))
            w.extend(loop)
        out.append(tuple((gen_name(a), b) for a, b in free_reduce(w)))
    return out


def theta_lift_check(
    arr: Arrangement,
    x: CellComplex2,
    p: GroupPresentation,
    limits: Limits = DEFAULT_LIMITS,
    verify_with_rewriting: bool = False,
) -> LiftVerdict:
    """Does theta: pi1(X) -> G/<J> lift to G, with J acting faithfully?

    Each relator image reduces to J^tau(C) of its face: it is a conjugate of
    the face word by a tree path, the face word equals J^tau(C) by a context
    relator (after commutations in the quantum group), and J is central.
    Re-phasing generator e by J^alpha(e) shifts these exponents by A.alpha
    where A is the relator exponent matrix, so a lift exists iff
    A.alpha == -tau (mod ord J).
    """
    problems = validate_realization(arr, x, mode="commutative")
    if problems:
        raise ValueError("not a realization: " + "; ".join(problems))
    d = arr.d
    k = [arr.context(o.face).tau for o in p.relator_origin]
    a = relator_matrix(p)
    evidence: dict[str, Any] = {"relator_j_exponents": dict(zip((o.face for o in p.relator_origin), k))}

    g = build_solution_group(arr, quantum=True)
    rw = None
    if verify_with_rewriting:
        rw = Rewriter(g, limits)
        evidence["rewriting"] = rw.stats()
        checked = []
        for face, img, kf in zip((o.face for o in p.relator_origin), relator_images(x, p), k):
            v = rw.verdict(img)
            checked.append({"face": face, "status": v.status, "j_power": v.j_power})
            if v.status == "reduces-to-J-power" and (v.j_power - kf) % d:
                raise AssertionError(f"face {face}: rewriting gives J^{v.j_power}, derivation gives J^{kf}")
        evidence["relator_reductions"] = checked

    res = solve_mod(a, [-t % d for t in k], d, len(p.generators))
    if not isinstance(res, ModObstruction):
        alpha = dict(zip(p.generators, res.x))
        return LiftVerdict("lift-exists", alpha=alpha, evidence=evidence)

    y = res.y
    witness = {
        "relator_combination": {o.face: yi for o, yi in zip(p.relator_origin, y) if yi},
        "j_exponent": sum(yi * ki for yi, ki in zip(y, k)) % d,
    }
    # the obstruction only bites if J really has order d in G
    order, engine, attempts = order_of_j(g, limits, rw)
    evidence["order_of_J"] = order
    evidence["order_engine"] = engine
    evidence["order_attempts"] = attempts
    if order is None:
        return LiftVerdict("unknown", witness=witness, evidence=evidence)
    if order < d:
        evidence["note"] = f"degenerate center: J has order {order} < d in G, so no operator realization exists"
    return LiftVerdict("lift-fails", witness=witness, evidence=evidence)
