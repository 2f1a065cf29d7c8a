"""Positive equations g1*x*g2*x*...*gn*x = 1 over a finite group, their
in-group brute-force solver, and the wreath-product solver that always
succeeds.

The wreath solver scans candidates (f, k) in lexicographic (k, f) order.
Evaluating the equation at (f, k) leaves shift 0 and base coordinates

    F(i) = g1 * f(i) * g2 * f(i - k) * ... * gn * f(i - (n-1)k)   (mod n),

so a partial assignment of f can be rejected as soon as every index feeding
some coordinate F(i) is assigned and the product is not the identity. In a
group any proper partial product extends to the identity, so fully
determined coordinates are the only sound prune points.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .constructions import WreathGroup, levin_root, wreath_cyclic
from .core import Element, Group
from .errors import CapExceeded, Falsification, ParseError, PreconditionError

LEVIN_SEARCH_CAP = 10_000_000


@dataclass(frozen=True)
class PositiveEquation:
    """Coefficient sequence (g1, ..., gn) for g1*x*g2*x*...*gn*x = 1."""

    coefficients: tuple[Element, ...]

    def __post_init__(self):
        if not self.coefficients:
            raise PreconditionError("a positive equation needs at least one coefficient")
        g0 = self.coefficients[0]
        for g in self.coefficients:
            if g.group is not g0.group:
                raise PreconditionError("all coefficients must share one group")

    @property
    def degree(self) -> int:
        return len(self.coefficients)

    @property
    def group(self) -> Group:
        return self.coefficients[0].group

    def render(self) -> str:
        G = self.group
        return "".join(G.render(g) + "*x*" for g in self.coefficients)


def parse_equation(G: Group, s: str) -> PositiveEquation:
    """Parse "g1*x*g2*x*...*x*"; coefficients use G's element grammar."""
    text = s.strip()
    if not text.endswith("*x*"):
        raise ParseError(s, "equation must end with '*x*'")
    pieces = text.split("*x*")
    if pieces[-1] != "":
        raise ParseError(s, "trailing content after final '*x*'")
    coeff_strs = pieces[:-1]
    if not coeff_strs:
        raise ParseError(s, "no coefficients found")
    if any(not c.strip() for c in coeff_strs):
        raise ParseError(s, "empty coefficient; write the identity explicitly")
    return PositiveEquation(tuple(G.parse(c) for c in coeff_strs))


def evaluate(
    eq: PositiveEquation,
    H: Group,
    embed: Callable[[Element], Element],
    x: Element,
) -> Element:
    """embed(g1) * x * embed(g2) * x * ... * embed(gn) * x, computed in H."""
    H._check(x)
    acc = H.identity
    for g in eq.coefficients:
        img = embed(g)
        H._check(img)
        acc = acc * img * x
    return acc


def solve_in_group(eq: PositiveEquation, G: Group) -> Element | None:
    """First x in G's canonical enumeration solving the equation, if any."""
    if eq.group is not G:
        raise PreconditionError("coefficients do not live in the given group")
    coeff_pays = [g.payload for g in eq.coefficients]
    idp = G._id()
    mul = G._mul
    for p in G._iter_payloads():
        acc = idp
        for c in coeff_pays:
            acc = mul(mul(acc, c), p)
        if acc == idp:
            return Element(G, p)
    return None


def levin_solve(
    eq: PositiveEquation, G: Group, *, cap: int = LEVIN_SEARCH_CAP
) -> Element:
    """Solve a positive equation of degree n in G wr Z_n.

    Returns the first solution in lexicographic (k, f) order, re-verified by
    full evaluation. Degree-1 equations are solved inside G directly
    (x = g1^-1), no wreath product involved. A fruitless search raises a
    hard error: existence is guaranteed, so absence means a bug.
    """
    if eq.group is not G:
        raise PreconditionError("coefficients do not live in the given group")
    n = eq.degree
    if n == 1:
        return G.inv(eq.coefficients[0])
    if n * G.order**n > cap:
        raise CapExceeded(
            f"search space n*|G|^n = {n * G.order ** n} exceeds cap {cap}"
        )
    W = wreath_cyclic(G, n)
    coeff_pays = [g.payload for g in eq.coefficients]
    base_pays = list(G._iter_payloads())
    mul = G._mul
    idp = G._id()

    for k in range(n):
        # indices of f feeding coordinate i, in multiplication order
        feeds = [[(i - t * k) % n for t in range(n)] for i in range(n)]
        ready_at: list[list[int]] = [[] for _ in range(n)]
        for i in range(n):
            ready_at[max(feeds[i])].append(i)

        assignment: list = [None] * n

        def coordinate_closed(i: int) -> bool:
            acc = idp
            for t in range(n):
                acc = mul(mul(acc, coeff_pays[t]), assignment[feeds[i][t]])
            return acc == idp

        def descend(j: int):
            if j == n:
                return tuple(assignment)
            for p in base_pays:
                assignment[j] = p
                if all(coordinate_closed(i) for i in ready_at[j]):
                    found = descend(j + 1)
                    if found is not None:
                        return found
            assignment[j] = None
            return None

        f = descend(0)
        if f is not None:
            x = Element(W, (f, k))
            if evaluate(eq, W, W.diag_embed, x) != W.identity:
                raise Falsification(
                    "pruned search produced a candidate the evaluator rejects"
                )
            return x
    raise Falsification(
        f"Levin violation: no solution of {eq.render()} found in {W.name}"
    )


@dataclass
class AdjoinRootResult:
    wreath: WreathGroup
    embed: Callable[[Element], Element]
    root: Element


def adjoin_nth_root(
    G: Group, g: Element, n: int, *, order_cap: int | None = None
) -> AdjoinRootResult:
    """G wr Z_n together with the closed-form n-th root of the diagonal
    image of g; no searching involved."""
    G._check(g)
    if n < 2:
        raise PreconditionError(f"root degree must be at least 2, got {n}")
    W = wreath_cyclic(G, n, order_cap=order_cap)
    return AdjoinRootResult(wreath=W, embed=W.diag_embed, root=levin_root(W, g))
