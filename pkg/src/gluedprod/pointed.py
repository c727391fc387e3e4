"""The pointed union of two factor groups and its finitely supported permutations.

Points carry a side tag: ``'e'`` for the shared basepoint, ``'g'`` or
``'h'`` for a non-identity element of the respective factor.  The factor
identities are always represented by the basepoint, which is what glues
the two copies together.
"""

from __future__ import annotations

import re
from typing import Iterable, Mapping, NamedTuple, Sequence

from .errors import WordParseError
from .groups import GroupHandle


class Point(NamedTuple):
    side: str  # 'e', 'g' or 'h'
    payload: str  # canonical element string; "" for the basepoint


BASE = Point("e", "")


class FinPerm:
    """A finitely supported permutation of the pointed union.

    Only non-fixed points are stored; the identity is the empty mapping.
    Instances are immutable and hashable.
    """

    __slots__ = ("_moved", "_hash")

    def __init__(self, moved: Mapping[Point, Point]):
        cleaned = {p: q for p, q in moved.items() if p != q}
        if set(cleaned.values()) != set(cleaned):
            raise WordParseError("mapping is not a permutation of its support")
        self._moved = cleaned
        self._hash = hash(frozenset(cleaned.items()))

    @classmethod
    def _trusted(cls, cleaned: dict[Point, Point]) -> "FinPerm":
        out = object.__new__(cls)
        out._moved = cleaned
        out._hash = hash(frozenset(cleaned.items()))
        return out

    @classmethod
    def identity(cls) -> "FinPerm":
        return cls._trusted({})

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[Point]]) -> "FinPerm":
        moved: dict[Point, Point] = {}
        for cycle in cycles:
            if len(set(cycle)) != len(cycle):
                raise WordParseError(f"repeated point in cycle {cycle!r}")
            for p, q in zip(cycle, list(cycle[1:]) + list(cycle[:1])):
                if p in moved:
                    raise WordParseError(f"point {p!r} appears in two cycles")
                moved[p] = q
        return cls(moved)

    @property
    def moved(self) -> dict[Point, Point]:
        return dict(self._moved)

    def items(self):
        """Iterate over (point, image) pairs of the support."""
        return self._moved.items()

    def __call__(self, p: Point) -> Point:
        return self._moved.get(p, p)

    def __eq__(self, other) -> bool:
        return isinstance(other, FinPerm) and self._moved == other._moved

    def __hash__(self) -> int:
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._moved)

    def __repr__(self):
        if not self._moved:
            return "FinPerm(identity)"
        pairs = ", ".join(f"{p}->{q}" for p, q in sorted(self._moved.items()))
        return f"FinPerm({pairs})"

    def support(self) -> frozenset[Point]:
        return frozenset(self._moved)

    def compose(self, other: "FinPerm") -> "FinPerm":
        """(self o other): apply ``other`` first, then ``self``."""
        moved = {}
        for p in self._moved.keys() | other._moved.keys():
            q = self._moved.get(other._moved.get(p, p), other._moved.get(p, p))
            if q != p:
                moved[p] = q
        return FinPerm._trusted(moved)

    def inverse(self) -> "FinPerm":
        return FinPerm._trusted({q: p for p, q in self._moved.items()})

    def cycles(self) -> list[tuple[Point, ...]]:
        """Cycle decomposition of the support, in traversal order."""
        seen: set[Point] = set()
        out = []
        for start in self._moved:
            if start in seen:
                continue
            cycle = [start]
            seen.add(start)
            p = self._moved[start]
            while p != start:
                cycle.append(p)
                seen.add(p)
                p = self._moved[p]
            out.append(tuple(cycle))
        return out

    def is_even(self) -> bool:
        """Parity via the cycle decomposition: sum of (length - 1)."""
        flips = sum(len(c) - 1 for c in self.cycles())
        return flips % 2 == 0

    def order(self) -> int:
        from math import lcm

        return lcm(*(len(c) for c in self.cycles())) if self._moved else 1


def three_cycle(p: Point, q: Point, r: Point) -> FinPerm:
    """The permutation p -> q -> r -> p fixing everything else."""
    if len({p, q, r}) != 3:
        raise WordParseError(f"three_cycle needs distinct points, got {p}, {q}, {r}")
    return FinPerm._trusted({p: q, q: r, r: p})


def transposition(p: Point, q: Point) -> FinPerm:
    if p == q:
        raise WordParseError("transposition needs two distinct points")
    return FinPerm._trusted({p: q, q: p})


_POINT_RE = re.compile(r"^(e|[gh]:.+)$")


class PointedUnion:
    """The pointed set of both factors with the identified basepoint.

    Provides point constructors (which collapse factor identities to the
    basepoint), the regular-on-own-side/trivial-elsewhere factor action,
    a canonical total point order, and the text forms for points and
    finitely supported permutations.
    """

    def __init__(self, G: GroupHandle, H: GroupHandle):
        self.G = G
        self.H = H

    def handle(self, side: str) -> GroupHandle:
        if side == "g":
            return self.G
        if side == "h":
            return self.H
        raise WordParseError(f"side must be 'g' or 'h', got {side!r}")

    def point(self, side: str, x: str) -> Point:
        """The point of ``x`` on the given side; the identity is BASE."""
        handle = self.handle(side)
        if x == handle.identity:
            return BASE
        return Point(side, x)

    def g_point(self, x: str) -> Point:
        return self.point("g", x)

    def h_point(self, x: str) -> Point:
        return self.point("h", x)

    def apply_factor(self, side: str, x: str, p: Point) -> Point:
        """Left multiplication by ``x`` on its own side, trivial elsewhere."""
        handle = self.handle(side)
        if p.side == side:
            return self.point(side, handle.mul(x, p.payload))
        if p.side == "e":
            return self.point(side, x)
        return p

    def translation(self, side: str, x: str) -> FinPerm:
        """Left translation by ``x`` as a finitely supported permutation.

        Only defined when the factor is finite (otherwise the support
        would be the whole side).
        """
        handle = self.handle(side)
        if not handle.is_finite:
            raise WordParseError(
                f"translation by an element of infinite {handle!r} is not finitely supported"
            )
        moved = {}
        for y in handle.elements():
            p = self.point(side, y)
            q = self.point(side, handle.mul(x, y))
            if p != q:
                moved[p] = q
        return FinPerm._trusted(moved)

    def sort_key(self, p: Point):
        """Canonical total order: basepoint, then the G side, then the H side."""
        if p.side == "e":
            return (0, ())
        rank = 1 if p.side == "g" else 2
        return (rank, self.handle(p.side).sort_key(p.payload))

    def sorted_points(self, points: Iterable[Point]) -> list[Point]:
        return sorted(points, key=self.sort_key)

    def enumerate_side(self, side: str) -> Iterable[Point]:
        """Non-basepoint points of one side in canonical order."""
        handle = self.handle(side)
        for x in handle.enumerate_elements():
            if x != handle.identity:
                yield Point(side, x)

    # ------------------------------------------------------------------
    # text forms

    def format_point(self, p: Point) -> str:
        return "e" if p.side == "e" else f"{p.side}:{p.payload}"

    def parse_point(self, text: str) -> Point:
        text = text.strip()
        if not _POINT_RE.match(text):
            raise WordParseError(f"bad point literal {text!r}")
        if text == "e":
            return BASE
        side, payload = text.split(":", 1)
        return self.point(side, self.handle(side).parse(payload))

    def format_perm(self, a: FinPerm) -> str:
        if not a:
            return "()"
        cycles = []
        for cycle in a.cycles():
            pivot = min(range(len(cycle)), key=lambda i: self.sort_key(cycle[i]))
            cycles.append(cycle[pivot:] + cycle[:pivot])
        cycles.sort(key=lambda c: self.sort_key(c[0]))
        return "".join(
            "(" + " ".join(self.format_point(p) for p in cycle) + ")"
            for cycle in cycles
        )

    def parse_perm(self, text: str) -> FinPerm:
        text = text.strip()
        body = re.sub(r"\s+", " ", text)
        if not re.fullmatch(r"(\s*\([^()]*\)\s*)*", body):
            raise WordParseError(f"bad permutation literal {text!r}")
        cycles = []
        for chunk in re.findall(r"\(([^()]*)\)", body):
            items = chunk.split()
            if not items:
                continue
            cycles.append([self.parse_point(t) for t in items])
        return FinPerm.from_cycles(cycles)
