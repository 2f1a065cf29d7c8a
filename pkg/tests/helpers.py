"""Independent oracles used to cross-check the library.

Everything here is deliberately written against different algorithms than
the production code: pairwise-product fixed points instead of generator
BFS, counting formulas instead of enumeration, inversion counts instead of
cycle types.
"""

from collections import Counter
from math import factorial

from groupsmith import perms
from groupsmith.core import Element, Group, Subgroup, subgroup_generated


def pairwise_closure(G: Group, seed_payloads) -> frozenset:
    """Close a payload set under products by brute fixed-point iteration."""
    current = set(seed_payloads)
    current.add(G._id())
    while True:
        nxt = set(current)
        for p in current:
            nxt.add(G._inv(p))
            for q in current:
                nxt.add(G._mul(p, q))
        if nxt == current:
            return frozenset(current)
        current = nxt


def brute_normal_closure(G: Group, g: Element) -> frozenset:
    """Conjugate-then-close oracle for the normal closure."""
    conjugates = {
        G._mul(G._mul(G._inv(y), g.payload), y) for y in G._iter_payloads()
    }
    return pairwise_closure(G, conjugates)


def brute_commutator_closure(G: Group, a_payloads, b_payloads) -> frozenset:
    comms = set()
    for a in a_payloads:
        for b in b_payloads:
            comms.add(
                G._mul(G._mul(G._mul(G._inv(a), G._inv(b)), a), b)
            )
    return pairwise_closure(G, comms)


def all_subgroups(G: Group) -> list[Subgroup]:
    """Every subgroup, by extending known subgroups one element at a time."""
    trivial = subgroup_generated(G, [])
    found = {trivial.payload_set: trivial}
    frontier = [trivial]
    elems = list(G.elements())
    while frontier:
        nxt = []
        for H in frontier:
            for e in elems:
                if e.payload in H.payload_set:
                    continue
                bigger = subgroup_generated(G, list(H.elements) + [e])
                if bigger.payload_set not in found:
                    found[bigger.payload_set] = bigger
                    nxt.append(bigger)
        frontier = nxt
    return sorted(found.values(), key=lambda s: s.key())


def parity_by_inversions(p: perms.Perm) -> int:
    inv = 0
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                inv += 1
    return inv % 2


def _double_factorial(n: int) -> int:
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def sqrt_count_by_cycle_type(g: perms.Perm) -> int:
    """Number of square roots of a permutation, from its cycle type alone.

    Even-length cycles must pair up (each pair comes from one cycle of
    doubled length, in `length` ways); odd-length cycles either keep their
    length (one root each) or pair up the same way.
    """
    counts = Counter(len(c) for c in perms.cycles(g))
    counts[1] += len(g) - sum(l * k for l, k in counts.items())
    total = 1
    for length, mult in counts.items():
        if mult == 0:
            continue
        if length % 2 == 0:
            if mult % 2:
                return 0
            total *= _double_factorial(mult - 1) * length ** (mult // 2)
        else:
            ways = 0
            for k in range(mult // 2 + 1):
                ways += (
                    factorial(mult)
                    // (factorial(k) * factorial(mult - 2 * k) * 2**k)
                    * length**k
                )
            total *= ways
    return total
