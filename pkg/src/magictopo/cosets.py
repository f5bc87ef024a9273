"""Todd-Coxeter coset enumeration (HLT strategy with coincidence processing)."""

from __future__ import annotations


class LimitExceeded(Exception):
    """A resource cap was hit before the computation finished."""


class CosetTable:
    """Coset enumeration for ``<gens | relators>`` over the subgroup ``<subgroup>``.

    Columns ``2g`` and ``2g + 1`` hold the action of generator ``g`` and its
    inverse. Words are lists of column indices.
    """

    def __init__(self, ngens: int, relators: list[list[int]], subgroup: list[list[int]] = (), max_rows: int = 10**6):
        self.ncols = 2 * ngens
        self.relators = [r for r in relators if r]
        self.subgroup = [w for w in subgroup if w]
        self.max_rows = max_rows
        self.table: list[list[int | None]] = [[None] * self.ncols]
        self.parent: list[int] = [0]

    @staticmethod
    def inv(x: int) -> int:
        return x ^ 1

    def live(self, c: int) -> bool:
        return self.parent[c] == c

    def rep(self, c: int) -> int:
        root = c
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[c] != root:
            self.parent[c], c = root, self.parent[c]
        return root

    def define(self, c: int, x: int) -> None:
        if len(self.table) >= self.max_rows:
            raise LimitExceeded(f"coset table exceeded {self.max_rows} rows")
        n = len(self.table)
        self.table.append([None] * self.ncols)
        self.parent.append(n)
        self.table[c][x] = n
        self.table[n][self.inv(x)] = c

    def scan_and_fill(self, alpha: int, word: list[int]) -> None:
        t = self.table
        f = b = alpha
        i, j = 0, len(word) - 1
        while True:
            while i <= j and t[f][word[i]] is not None:
                f = t[f][word[i]]
                i += 1
            if i > j:
                if f != alpha:
                    self.coincidence(f, alpha)
                return
            while j >= i and t[b][self.inv(word[j])] is not None:
                b = t[b][self.inv(word[j])]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                t[f][word[i]] = b
                t[b][self.inv(word[i])] = f
                return
            self.define(f, word[i])

    def _merge(self, k: int, l: int, queue: list[int]) -> None:
        k, l = self.rep(k), self.rep(l)
        if k == l:
            return
        k, l = min(k, l), max(k, l)
        self.parent[l] = k
        queue.append(l)

    def coincidence(self, a: int, b: int) -> None:
        t = self.table
        queue: list[int] = []
        self._merge(a, b, queue)
        i = 0
        while i < len(queue):
            g = queue[i]
            i += 1
            for x in range(self.ncols):
                d = t[g][x]
                if d is None:
                    continue
                t[d][self.inv(x)] = None
                m, dd = self.rep(g), self.rep(d)
                if t[m][x] is not None:
                    self._merge(dd, t[m][x], queue)
                elif t[dd][self.inv(x)] is not None:
                    self._merge(m, t[dd][self.inv(x)], queue)
                else:
                    t[m][x] = dd
                    t[dd][self.inv(x)] = m

    def run(self) -> int:
        """Enumerate; returns the index. Raises :class:`LimitExceeded`."""
        for w in self.subgroup:
            self.scan_and_fill(0, w)
        c = 0
        while c < len(self.table):
            if self.live(c):
                for r in self.relators:
                    self.scan_and_fill(c, r)
                    if not self.live(c):
                        break
                else:
                    for x in range(self.ncols):
                        if self.table[c][x] is None:
                            self.define(c, x)
            c += 1
        return sum(1 for k in range(len(self.table)) if self.live(k))


def enumerate_cosets(ngens: int, relators: list[list[int]], subgroup=(), max_rows: int = 10**6) -> int:
    return CosetTable(ngens, relators, list(subgroup), max_rows).run()
