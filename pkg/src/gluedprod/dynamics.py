"""Dynamical checks: the free-semigroup verifier and Folner sets.

Two infinite-order elements of opposite factors generate a free
semigroup: all nonnegative words in them evaluate to distinct elements,
which the verifier confirms exhaustively up to a length bound by
tracking normal forms.  For an amenable first factor, shifted Folner
sets of the factor are Folner sets for the whole product action because
the other factor fixes them pointwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .core import PvContext, PvElement
from .errors import BudgetError, GroupSpecError
from .pointed import Point

DEFAULT_WORD_CAP = 18


@dataclass
class PongReport:
    """Outcome of the free-semigroup check."""

    words_checked: int
    distinct: int
    first_collision: Optional[tuple[str, str]] = None

    @property
    def ok(self) -> bool:
        return self.first_collision is None and self.distinct == self.words_checked


def free_semigroup_check(ctx: PvContext, g: str, h: str,
                         max_len: int, cap: int = DEFAULT_WORD_CAP) -> PongReport:
    """Evaluate all nonempty nonnegative words in g and h up to a length.

    The elements must have infinite order; 2^(L+1) - 2 words are reduced
    to normal form and compared for pairwise distinctness.
    """
    g = ctx.G.parse(g)
    h = ctx.H.parse(h)
    if ctx.G.element_order(g) is not None:
        raise GroupSpecError("g must have infinite order")
    if ctx.H.element_order(h) is not None:
        raise GroupSpecError("h must have infinite order")
    if max_len > cap:
        raise BudgetError(f"word length {max_len} exceeds the cap of {cap}")
    letters = (("g", ctx.from_g(g)), ("h", ctx.from_h(h)))
    seen: dict[PvElement, str] = {}
    layer: list[tuple[str, PvElement]] = [("", ctx.identity)]
    checked = 0
    collision = None
    for _ in range(max_len):
        nxt = []
        for word, element in layer:
            for name, letter in letters:
                new_word = word + name
                value = ctx.multiply(element, letter)
                nxt.append((new_word, value))
                checked += 1
                other = seen.setdefault(value, new_word)
                if other != new_word and collision is None:
                    collision = (other, new_word)
        layer = nxt
    return PongReport(checked, len(seen), collision)


@dataclass(frozen=True)
class FolnerSet:
    """A finite subset of the G side avoiding the basepoint."""

    points: frozenset[Point]
    n: int
    shift: str


def _interval_scheme(G, n: int) -> tuple[list[str], str]:
    shift = str(n + 1)
    return [G.mul(str(k), shift) for k in range(-n, n + 1)], shift


def _box_scheme(G, n: int) -> tuple[list[str], str]:
    shift = G.parse(",".join([str(n + 1)] + ["0"] * (G.d - 1)))
    box = []

    def rec(prefix, slots):
        if slots == 0:
            box.append(",".join(prefix))
            return
        for c in range(-n, n + 1):
            rec(prefix + [str(c)], slots - 1)

    rec([], G.d)
    return [G.mul(x, shift) for x in box], shift


FOLNER_SCHEMES = {
    "integers": _interval_scheme,
    "lattice": _box_scheme,
}


def folner_set(ctx: PvContext, n: int) -> FolnerSet:
    """The shifted Folner set of the first factor, as points of the G side."""
    scheme = FOLNER_SCHEMES.get(ctx.G.kind)
    if scheme is None:
        raise GroupSpecError(f"no Folner scheme registered for kind {ctx.G.kind!r}")
    elements, shift = scheme(ctx.G, n)
    points = frozenset(Point("g", x) for x in elements)
    if len(points) != len(elements):
        raise GroupSpecError("Folner scheme produced duplicate points")
    for p in points:
        if p.payload == ctx.G.identity:
            raise GroupSpecError("Folner set must avoid the basepoint")
    return FolnerSet(points, n, shift)


def folner_ratio(ctx: PvContext, F: FolnerSet, s: PvElement) -> Fraction:
    """|sF symmetric-difference F| / |F| as an exact rational."""
    image = {ctx.act(s, p) for p in F.points}
    return Fraction(len(image ^ F.points), len(F.points))
