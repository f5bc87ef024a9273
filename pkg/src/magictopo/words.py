"""Free-group words as tuples of ``(symbol, +1 | -1)``."""

from __future__ import annotations

from typing import Iterable

Letter = tuple[str, int]
FreeWord = tuple[Letter, ...]


def free_reduce(word: Iterable[Letter]) -> FreeWord:
    out: list[Letter] = []
    for s, x in word:
        if out and out[-1][0] == s and out[-1][1] == -x:
            out.pop()
        else:
            out.append((s, x))
    return tuple(out)


def inverse(word: Iterable[Letter]) -> FreeWord:
    return tuple((s, -x) for s, x in reversed(tuple(word)))


def power(word: FreeWord, k: int) -> FreeWord:
    if k < 0:
        return power(inverse(word), -k)
    return free_reduce(word * k)


def exponent_sums(word: Iterable[Letter], symbols: list[str]) -> list[int]:
    idx = {s: i for i, s in enumerate(symbols)}
    v = [0] * len(symbols)
    for s, x in word:
        v[idx[s]] += x
    return v


def format_word(word: Iterable[Letter]) -> str:
    return " ".join(s if x == 1 else f"{s}^-1" for s, x in word)


def parse_word(text: str) -> FreeWord:
    out = []
    for tok in text.split():
        if tok.endswith("^-1"):
            out.append((tok[:-3], -1))
        elif "^" in tok:
            raise ValueError(f"unsupported exponent in {tok!r}")
        else:
            out.append((tok, 1))
    return tuple(out)
