"""Reduced words in a free group.

A word is a tuple of nonzero ints: ``g+1`` is the ``g``-th generator and
``-(g+1)`` its inverse. Generators print as ``a, b, c, ...`` and inverses as
the capital letter.
"""
from __future__ import annotations

from typing import Iterable, Iterator, Sequence

Word = tuple[int, ...]


def reduce(word: Iterable[int]) -> Word:
    out: list[int] = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def inverse(word: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(word))


def power(word: Sequence[int], n: int) -> Word:
    base = tuple(word) if n >= 0 else inverse(word)
    return reduce(base * abs(n))


def mul(*words: Sequence[int]) -> Word:
    out: list[int] = []
    for w in words:
        for x in w:
            if out and out[-1] == -x:
                out.pop()
            else:
                out.append(x)
    return tuple(out)


def cyclic_reduce(word: Sequence[int]) -> Word:
    w = reduce(word)
    i, j = 0, len(w) - 1
    while i < j and w[i] == -w[j]:
        i += 1
        j -= 1
    return w[i : j + 1]


def rotations(word: Sequence[int]) -> list[Word]:
    w = tuple(word)
    return [w[i:] + w[:i] for i in range(len(w))] or [()]


def to_str(word: Sequence[int]) -> str:
    if not word:
        return "1"
    return "".join(chr(96 + x) if x > 0 else chr(64 - x) for x in word)


def from_str(text: str) -> Word:
    if text in ("", "1"):
        return ()
    out = []
    for ch in text:
        if ch.islower():
            out.append(ord(ch) - 96)
        elif ch.isupper():
            out.append(-(ord(ch) - 64))
        else:
            raise ValueError(f"bad letter {ch!r}")
    return reduce(out)


def letters(rank: int) -> list[int]:
    return [g for i in range(1, rank + 1) for g in (i, -i)]


def reduced_words(rank: int, max_len: int) -> Iterator[Word]:
    """All reduced words of length <= max_len, shortlex order."""
    layer: list[Word] = [()]
    yield ()
    for _ in range(max_len):
        nxt = []
        for w in layer:
            for x in letters(rank):
                if w and w[-1] == -x:
                    continue
                nxt.append(w + (x,))
        yield from nxt
        layer = nxt


def _key(word: Word) -> tuple:
    # shortlex with generator order a < A < b < B < ...
    return (len(word), tuple((abs(x), x < 0) for x in word))


def double_coset_canonical(word: Sequence[int], left: Sequence[int], right: Sequence[int], window: int = 3) -> Word:
    """Shortlex-least representative of <left> * word * <right>.

    Descends greedily in length by multiplying with powers of ``left`` on the
    left and ``right`` on the right, then scans a window of exponents around
    the minimum so that ties resolve the same way from any starting
    representative.
    """
    u, v = reduce(left), reduce(right)
    w = reduce(word)
    if not u and not v:
        return w
    moves_l = [u, inverse(u)] if u else [()]
    moves_r = [v, inverse(v)] if v else [()]
    improved = True
    while improved:
        improved = False
        for ml in moves_l:
            for mr in moves_r:
                for cand in (mul(ml, w), mul(w, mr), mul(ml, w, mr)):
                    if len(cand) < len(w):
                        w = cand
                        improved = True
    best, best_key = w, _key(w)
    pl = [power(u, m) for m in range(-window, window + 1)] if u else [()]
    pr = [power(v, n) for n in range(-window, window + 1)] if v else [()]
    for a in pl:
        left_part = mul(a, w)
        for b in pr:
            cand = mul(left_part, b)
            if len(cand) > best_key[0]:
                continue
            key = _key(cand)
            if key < best_key:
                best, best_key = cand, key
    return best
