"""Knuth-Bendix completion for string rewriting systems under shortlex order.

Words are Python strings over an ordered alphabet; letter order is code point
order, so callers pick code points to fix the ordering.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field

from .cosets import LimitExceeded


def shortlex_greater(u: str, v: str) -> bool:
    return (len(u), u) > (len(v), v)


@dataclass
class RewritingSystem:
    max_rules: int = 50_000
    max_steps: int = 10**6
    rules: dict[str, str] = field(default_factory=dict)
    steps: int = 0
    complete: bool = False
    _maxlen: int = 0

    def reduce(self, word: str) -> str:
        rules = self.rules
        out: list[str] = []
        todo = list(reversed(word))
        while todo:
            out.append(todo.pop())
            for k in range(min(self._maxlen, len(out)), 0, -1):
                lhs = "".join(out[-k:])
                rhs = rules.get(lhs)
                if rhs is not None:
                    self.steps += 1
                    if self.steps > self.max_steps:
                        raise LimitExceeded(f"more than {self.max_steps} reduction steps")
                    del out[-k:]
                    todo.extend(reversed(rhs))
                    break
        return "".join(out)

    def _add(self, lhs: str, rhs: str, queue: list) -> None:
        for l, r in list(self.rules.items()):
            if lhs in l:
                del self.rules[l]
                heapq.heappush(queue, (max(len(l), len(r)), l, r))
        self.rules[lhs] = rhs
        self._maxlen = max(len(l) for l in self.rules)
        for l, r in list(self.rules.items()):
            if lhs in r and l != lhs:
                self.rules[l] = self.reduce(r)
        if len(self.rules) > self.max_rules:
            raise LimitExceeded(f"more than {self.max_rules} rewrite rules")
        for l, r in list(self.rules.items()):
            for u, v in _critical_pairs(lhs, rhs, l, r):
                heapq.heappush(queue, (max(len(u), len(v)), u, v))
            if l != lhs:
                for u, v in _critical_pairs(l, r, lhs, rhs):
                    heapq.heappush(queue, (max(len(u), len(v)), u, v))

    def complete_with(self, equations: list[tuple[str, str]]) -> bool:
        """Run completion; True when the system is confluent. Raises :class:`LimitExceeded`."""
        queue = [(max(len(u), len(v)), u, v) for u, v in equations]
        heapq.heapify(queue)
        while queue:
            _, u, v = heapq.heappop(queue)
            u, v = self.reduce(u), self.reduce(v)
            if u == v:
                continue
            if shortlex_greater(v, u):
                u, v = v, u
            self._add(u, v, queue)
        self.complete = self.locally_confluent()
        return self.complete

    def locally_confluent(self) -> bool:
        items = list(self.rules.items())
        for l1, r1 in items:
            for l2, r2 in items:
                for u, v in _critical_pairs(l1, r1, l2, r2):
                    if self.reduce(u) != self.reduce(v):
                        return False
        return True


def _critical_pairs(l1: str, r1: str, l2: str, r2: str):
    """Overlaps where a proper suffix of l1 is a prefix of l2."""
    for k in range(1, min(len(l1), len(l2))):
        if l1[-k:] == l2[:k]:
            yield r1 + l2[k:], l1[:-k] + r2
