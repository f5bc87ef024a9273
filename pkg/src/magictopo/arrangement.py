"""Signed arrangements of observables: labels, ordered signed contexts, constraints."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Iterable


class ArrangementError(Exception):
    """Base class for input errors."""


class DocumentSyntaxError(ArrangementError):
    """The document is not well-formed JSON or has the wrong shape."""


class ValidationError(ArrangementError):
    """The document parses but violates an invariant.

    ``path`` locates the offending item, e.g. ``contexts[2].elements[0].label``.
    """

    def __init__(self, message: str, path: str = ""):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


@dataclass(frozen=True)
class Element:
    label: str
    sign: int


@dataclass(frozen=True)
class Context:
    id: str
    elements: tuple[Element, ...]
    tau: int

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(e.label for e in self.elements)

    def word(self) -> tuple[tuple[str, int], ...]:
        return tuple((e.label, e.sign) for e in self.elements)


@dataclass(frozen=True)
class Arrangement:
    d: int
    labels: tuple[str, ...]
    contexts: tuple[Context, ...]
    restricted_flag: bool = field(init=False, compare=False)

    def __post_init__(self) -> None:
        _validate(self)
        object.__setattr__(self, "restricted_flag", _occurrences(self) == {a: 2 for a in self.labels})

    @property
    def context_ids(self) -> tuple[str, ...]:
        return tuple(c.id for c in self.contexts)

    def context(self, cid: str) -> Context:
        for c in self.contexts:
            if c.id == cid:
                return c
        raise KeyError(cid)

    def tau(self) -> list[int]:
        return [c.tau for c in self.contexts]

    def with_tau(self, tau: Iterable[int], d: int | None = None) -> "Arrangement":
        d = self.d if d is None else d
        ctxs = tuple(Context(c.id, c.elements, t % d) for c, t in zip(self.contexts, tau))
        return Arrangement(d=d, labels=self.labels, contexts=ctxs)

    def with_modulus(self, d: int) -> "Arrangement":
        return self.with_tau([c.tau for c in self.contexts], d=d)

    def to_dict(self) -> dict[str, Any]:
        return {
            "d": self.d,
            "labels": list(self.labels),
            "contexts": [
                {
                    "id": c.id,
                    "elements": [{"label": e.label, "sign": e.sign} for e in c.elements],
                    "tau": c.tau,
                }
                for c in self.contexts
            ],
        }


def _occurrences(arr: Arrangement) -> Counter:
    return Counter(e.label for c in arr.contexts for e in c.elements)


def _validate(arr: Arrangement) -> None:
    if not isinstance(arr.d, int) or isinstance(arr.d, bool) or arr.d < 2:
        raise ValidationError(f"modulus must be an integer >= 2, got {arr.d!r}", "d")
    seen: set[str] = set()
    for i, a in enumerate(arr.labels):
        if not isinstance(a, str) or not a:
            raise ValidationError("label must be a nonempty string", f"labels[{i}]")
        if a in seen:
            raise ValidationError(f"duplicate label {a!r}", f"labels[{i}]")
        seen.add(a)
    cids: set[str] = set()
    for ci, c in enumerate(arr.contexts):
        where = f"contexts[{ci}]"
        if not isinstance(c.id, str) or not c.id:
            raise ValidationError("context id must be a nonempty string", f"{where}.id")
        if c.id in cids:
            raise ValidationError(f"duplicate context id {c.id!r}", f"{where}.id")
        cids.add(c.id)
        if not c.elements:
            raise ValidationError("context has no elements", f"{where}.elements")
        in_ctx: set[str] = set()
        for ei, e in enumerate(c.elements):
            ew = f"{where}.elements[{ei}]"
            if e.label not in seen:
                raise ValidationError(f"unknown label {e.label!r}", f"{ew}.label")
            if e.label in in_ctx:
                raise ValidationError(f"label {e.label!r} repeated in context", f"{ew}.label")
            in_ctx.add(e.label)
            if e.sign not in (1, -1) or isinstance(e.sign, bool):
                raise ValidationError(f"sign must be 1 or -1, got {e.sign!r}", f"{ew}.sign")
        if not isinstance(c.tau, int) or isinstance(c.tau, bool) or not 0 <= c.tau < arr.d:
            raise ValidationError(f"tau must be in [0, {arr.d}), got {c.tau!r}", f"{where}.tau")
    occ = _occurrences(arr)
    for i, a in enumerate(arr.labels):
        if occ[a] == 0:
            raise ValidationError(f"label {a!r} occurs in no context", f"labels[{i}]")


def is_restricted(arr: Arrangement) -> bool:
    """True iff every label occurs in exactly two contexts."""
    occ = _occurrences(arr)
    return all(occ[a] == 2 for a in arr.labels)


def make_arrangement(
    d: int,
    contexts: list[tuple[str, list[tuple[str, int]] | list[str], int]],
    labels: list[str] | None = None,
) -> Arrangement:
    """Convenience constructor; bare label strings get sign +1."""
    ctxs = []
    for cid, elems, tau in contexts:
        els = tuple(Element(e, 1) if isinstance(e, str) else Element(e[0], e[1]) for e in elems)
        ctxs.append(Context(cid, els, tau))
    if labels is None:
        labels = []
        for c in ctxs:
            for e in c.elements:
                if e.label not in labels:
                    labels.append(e.label)
    return Arrangement(d=d, labels=tuple(labels), contexts=tuple(ctxs))


# --- (de)serialization --------------------------------------------------------


def _check_keys(obj: Any, allowed: set[str], required: set[str], path: str) -> None:
    if not isinstance(obj, dict):
        raise DocumentSyntaxError(f"{path or 'document'}: expected an object")
    extra = set(obj) - allowed
    if extra:
        raise ValidationError(f"unknown keys {sorted(extra)}", path)
    missing = required - set(obj)
    if missing:
        raise ValidationError(f"missing keys {sorted(missing)}", path)


def _load_json(document: str | bytes) -> Any:
    if isinstance(document, bytes):
        try:
            document = document.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise DocumentSyntaxError(f"not UTF-8: {exc}") from exc
    try:
        return json.loads(document)
    except json.JSONDecodeError as exc:
        raise DocumentSyntaxError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from exc


def _int(v: Any, path: str) -> int:
    if not isinstance(v, int) or isinstance(v, bool):
        raise ValidationError(f"expected an integer, got {v!r}", path)
    return v


def _str(v: Any, path: str) -> str:
    if not isinstance(v, str):
        raise ValidationError(f"expected a string, got {v!r}", path)
    return v


def arrangement_from_dict(doc: Any) -> Arrangement:
    _check_keys(doc, {"d", "labels", "contexts"}, {"d", "labels", "contexts"}, "")
    d = _int(doc["d"], "d")
    if not isinstance(doc["labels"], list):
        raise ValidationError("expected a list", "labels")
    labels = tuple(_str(a, f"labels[{i}]") for i, a in enumerate(doc["labels"]))
    if not isinstance(doc["contexts"], list):
        raise ValidationError("expected a list", "contexts")
    ctxs = []
    for ci, c in enumerate(doc["contexts"]):
        where = f"contexts[{ci}]"
        _check_keys(c, {"id", "elements", "tau"}, {"id", "elements", "tau"}, where)
        if not isinstance(c["elements"], list):
            raise ValidationError("expected a list", f"{where}.elements")
        els = []
        for ei, e in enumerate(c["elements"]):
            ew = f"{where}.elements[{ei}]"
            _check_keys(e, {"label", "sign"}, {"label", "sign"}, ew)
            els.append(Element(_str(e["label"], f"{ew}.label"), _int(e["sign"], f"{ew}.sign")))
        ctxs.append(Context(_str(c["id"], f"{where}.id"), tuple(els), _int(c["tau"], f"{where}.tau")))
    return Arrangement(d=d, labels=labels, contexts=tuple(ctxs))


def parse_arrangement(document: str | bytes) -> Arrangement:
    """Parse and validate an arrangement JSON document."""
    return arrangement_from_dict(_load_json(document))


def serialize_arrangement(arr: Arrangement) -> str:
    return json.dumps(arr.to_dict(), indent=2) + "\n"


def load_arrangement(path) -> Arrangement:
    with open(path, "rb") as fh:
        return parse_arrangement(fh.read())
