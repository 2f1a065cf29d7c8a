"""Raw permutations as image tuples on points 0..m-1.

These are the plumbing shared by the permutation-backed groups and the
ambient symmetric-group searches. The product convention is function
composition: (a * b)(i) = a(b(i)).
"""

from __future__ import annotations

from itertools import permutations
from typing import Iterator

from .errors import ParseError

Perm = tuple[int, ...]

MAX_DEGREE = 16


def identity_perm(m: int) -> Perm:
    return tuple(range(m))


def is_perm(p: Perm) -> bool:
    return sorted(p) == list(range(len(p)))


def compose(a: Perm, b: Perm) -> Perm:
    """a after b: (a*b)(i) = a(b(i))."""
    return tuple(a[b[i]] for i in range(len(a)))


def invert(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, v in enumerate(p):
        inv[v] = i
    return tuple(inv)


def perm_power(p: Perm, k: int) -> Perm:
    m = len(p)
    if k < 0:
        return perm_power(invert(p), -k)
    out = identity_perm(m)
    base = p
    while k:
        if k & 1:
            out = compose(base, out)
        base = compose(base, base)
        k >>= 1
    return out


def cycles(p: Perm) -> list[tuple[int, ...]]:
    """Cycle decomposition, fixed points omitted, each cycle starting at
    its least point, cycles ordered by least point."""
    seen = [False] * len(p)
    out = []
    for i in range(len(p)):
        if seen[i] or p[i] == i:
            seen[i] = True
            continue
        cyc = []
        j = i
        while not seen[j]:
            seen[j] = True
            cyc.append(j)
            j = p[j]
        out.append(tuple(cyc))
    return out


def cycle_type(p: Perm) -> tuple[int, ...]:
    """Cycle lengths including fixed points, sorted descending."""
    lengths = [len(c) for c in cycles(p)]
    lengths += [1] * (len(p) - sum(lengths))
    return tuple(sorted(lengths, reverse=True))


def parity(p: Perm) -> int:
    """0 for even, 1 for odd, from the cycle decomposition."""
    return sum(len(c) - 1 for c in cycles(p)) % 2


def all_perms_lex(m: int) -> Iterator[Perm]:
    """Every permutation of degree m in lexicographic image order."""
    return permutations(range(m))


def render_cycles(p: Perm, base: int = 0) -> str:
    """Cycle notation string; base=1 gives the classic 1-based display."""
    cs = cycles(p)
    if not cs:
        return "()"
    return "".join("(" + " ".join(str(x + base) for x in c) + ")" for c in cs)


def parse_cycles(s: str, degree: int, base: int = 0) -> Perm:
    """Inverse of render_cycles; accepts any disjoint cycle form."""
    text = s.strip()
    if not text:
        raise ParseError(s, "empty element string")
    if text in ("()", "e"):
        return identity_perm(degree)
    images = list(range(degree))
    touched: set[int] = set()
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        if text[pos] != "(":
            raise ParseError(s, "expected '('", pos)
        close = text.find(")", pos)
        if close < 0:
            raise ParseError(s, "unbalanced '('", pos)
        body = text[pos + 1 : close].replace(",", " ").split()
        try:
            points = [int(tok) - base for tok in body]
        except ValueError:
            raise ParseError(s, "cycle entries must be integers", pos) from None
        if len(points) == 1:
            raise ParseError(s, "cycles need at least two points", pos)
        for x in points:
            if not 0 <= x < degree:
                raise ParseError(s, f"point {x + base} out of range for degree {degree}", pos)
            if x in touched:
                raise ParseError(s, f"point {x + base} repeated", pos)
            touched.add(x)
        for a, b in zip(points, points[1:] + points[:1]):
            images[a] = b
        pos = close + 1
    return tuple(images)
