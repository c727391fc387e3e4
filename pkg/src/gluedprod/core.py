"""Elements of the glued product in canonical normal form.

An element is a triple ``(g, h, a)`` acting on the pointed union as the
permutation g o h o a (``a`` first).  When both factors are infinite the
triple is unique per group element and ``a`` is an even finitely
supported permutation; when exactly one factor is finite (the "mixed"
regime, infinite factor first) the convention is ``h = e`` with the
finite factor absorbed into ``a``.

The ground truth for every identity is the action on points; the closed
product law below is cross-checked against it when a context is built
with ``check=True``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import lcm
from random import Random
from typing import Callable, Iterable, Optional

from .errors import (
    BudgetError,
    GluedError,
    MembershipError,
    RegimeError,
    WordParseError,
)
from .finite import has_cyclic_two_sylow
from .groups import GroupHandle
from .pointed import BASE, FinPerm, Point, PointedUnion, three_cycle

BOTH_INFINITE = "both-infinite"
MIXED = "mixed"

Letter = tuple[str, object]  # ("G", lit) | ("H", lit) | ("PERM", FinPerm)

_WORD_TOKEN = re.compile(r"PERM:(?:\([^()]*\))+|[GH]:\S+")


@dataclass(frozen=True)
class PvElement:
    """Normal form (g, h, a) of a glued-product element.

    Equality and hashing are triple equality, which is element equality
    under the canonical-form conventions of the owning context.
    """

    g: str
    h: str
    a: FinPerm


class PvContext:
    """A glued product of two factor groups, with its product regime."""

    def __init__(self, G: GroupHandle, H: GroupHandle, *,
                 check: bool = False, strict_membership: bool = True):
        if G.is_finite and H.is_finite:
            raise RegimeError(
                "both factors are finite; use the dense backend in gluedprod.finite"
            )
        if G.is_finite:
            raise RegimeError(
                "the infinite factor goes first; swap the factors (the product is symmetric)"
            )
        self.G = G
        self.H = H
        self.union = PointedUnion(G, H)
        self.regime = MIXED if H.is_finite else BOTH_INFINITE
        self.check = check
        self.strict_membership = strict_membership
        # in the mixed regime the h-and-residual part lives in Alt_f or
        # Sym_f according to whether H has a nontrivial cyclic 2-Sylow
        self.mixed_symmetric = has_cyclic_two_sylow(H) if self.regime == MIXED else False
        self.identity = PvElement(G.identity, H.identity, FinPerm.identity())

    def __repr__(self):
        return f"PvContext({self.G!r}, {self.H!r}, {self.regime})"

    # ------------------------------------------------------------------
    # constructors

    def _check_residual(self, a: FinPerm):
        if self.regime == BOTH_INFINITE:
            if not a.is_even():
                raise MembershipError(
                    "an odd finitely supported permutation is not an element "
                    "of the product of two infinite factors"
                )
        elif self.strict_membership and not self.mixed_symmetric:
            if not a.is_even():
                raise MembershipError(
                    "odd residual rejected: the finite factor has no "
                    "nontrivial cyclic 2-Sylow, so residuals are even"
                )
        for p in a.support():
            if p.side == "e":
                continue
            handle = self.G if p.side == "g" else self.H
            canonical = handle.parse(p.payload)
            if canonical != p.payload or canonical == handle.identity:
                raise MembershipError(
                    f"support point {p} is not a canonical non-identity element"
                )

    def element(self, g: str = None, h: str = None, a: FinPerm = None) -> PvElement:
        """Build an element from parts, canonicalising and validating them."""
        g = self.G.identity if g is None else self.G.parse(g)
        h = self.H.identity if h is None else self.H.parse(h)
        a = FinPerm.identity() if a is None else a
        if self.regime == MIXED and h != self.H.identity:
            # hPart is identity by convention; absorb h into the residual
            a = self.union.translation("h", h).compose(a)
            h = self.H.identity
        self._check_residual(a)
        return PvElement(g, h, a)

    def from_g(self, x: str) -> PvElement:
        return PvElement(self.G.parse(x), self.H.identity, FinPerm.identity())

    def from_h(self, y: str) -> PvElement:
        y = self.H.parse(y)
        if self.regime == MIXED:
            return PvElement(self.G.identity, self.H.identity,
                             self.union.translation("h", y))
        return PvElement(self.G.identity, y, FinPerm.identity())

    def from_perm(self, a: FinPerm) -> PvElement:
        self._check_residual(a)
        return PvElement(self.G.identity, self.H.identity, a)

    # ------------------------------------------------------------------
    # the action (ground truth)

    def act(self, s: PvElement, p: Point) -> Point:
        """Image of a point: residual first, then the H part, then the G part."""
        q = s.a(p)
        if s.h != self.H.identity:
            q = self.union.apply_factor("h", s.h, q)
        if s.g != self.G.identity:
            q = self.union.apply_factor("g", s.g, q)
        return q

    # ------------------------------------------------------------------
    # product law

    def _transport(self, a: FinPerm, f: Callable[[Point], Point]) -> FinPerm:
        return FinPerm._trusted({f(p): f(q) for p, q in a.items()})

    def multiply(self, s1: PvElement, s2: PvElement) -> PvElement:
        """Canonical form of the product s1 * s2.

        The residual is the commutator 3-cycle of the two inner letters,
        conjugated into place, times the transported first residual,
        times the second residual.
        """
        G, H, pu = self.G, self.H, self.union
        g = G.mul(s1.g, s2.g)
        h = H.mul(s1.h, s2.h)
        g2i = G.inv(s2.g)
        h2i = H.inv(s2.h)

        if s1.h != H.identity and s2.g != G.identity:
            cyc = three_cycle(BASE, pu.h_point(H.inv(s1.h)), pu.g_point(g2i))
            if s2.h != H.identity:
                t1 = self._transport(cyc, lambda p: pu.apply_factor("h", h2i, p))
            else:
                t1 = cyc
        else:
            t1 = FinPerm.identity()

        if s1.a:
            if s2.g == G.identity and s2.h == H.identity:
                t2 = s1.a
            else:
                def back(p: Point) -> Point:
                    return pu.apply_factor("h", h2i, pu.apply_factor("g", g2i, p))

                t2 = self._transport(s1.a, back)
        else:
            t2 = FinPerm.identity()

        a = t1.compose(t2).compose(s2.a)
        out = PvElement(g, h, a)
        if self.check:
            self._verify_product(s1, s2, out, t2)
        return out

    def _verify_product(self, s1: PvElement, s2: PvElement,
                        out: PvElement, transported: FinPerm):
        G, H, pu = self.G, self.H, self.union
        probes = set(s1.a.support()) | set(s2.a.support()) | set(out.a.support())
        probes |= set(transported.support())
        probes.add(BASE)
        probes.add(pu.g_point(G.inv(s2.g)))
        probes.add(pu.h_point(H.inv(s1.h)))
        probes.add(pu.h_point(H.mul(H.inv(s2.h), H.inv(s1.h))))
        for p in probes:
            if self.act(out, p) != self.act(s1, self.act(s2, p)):
                raise GluedError(
                    f"product law mismatch at {pu.format_point(p)} for "
                    f"{self.format_element(s1)} * {self.format_element(s2)}"
                )

    def invert(self, s: PvElement) -> PvElement:
        """Normalise a^-1 h^-1 g^-1 by multiplying the letter blocks."""
        out = self.from_perm(s.a.inverse())
        if s.h != self.H.identity:
            out = self.multiply(out, self.from_h(self.H.inv(s.h)))
        if s.g != self.G.identity:
            out = self.multiply(out, self.from_g(self.G.inv(s.g)))
        return out

    def normalize(self, word: Iterable[Letter]) -> PvElement:
        """Left-fold of the product over a word of letters."""
        out = self.identity
        for kind, value in word:
            if kind == "G":
                letter = self.from_g(value)
            elif kind == "H":
                letter = self.from_h(value)
            elif kind == "PERM":
                letter = self.from_perm(value)
            else:
                raise WordParseError(f"unknown letter kind {kind!r}")
            out = self.multiply(out, letter)
        return out

    def power(self, s: PvElement, n: int) -> PvElement:
        if n < 0:
            return self.power(self.invert(s), -n)
        acc = self.identity
        base = s
        while n:
            if n & 1:
                acc = self.multiply(acc, base)
            base = self.multiply(base, base)
            n >>= 1
        return acc

    # ------------------------------------------------------------------
    # structure maps

    def commutator(self, g: str, h: str) -> PvElement:
        """[g, h] = g h g^-1 h^-1; the 3-cycle (e g h) when both are nontrivial."""
        g = self.G.parse(g)
        h = self.H.parse(h)
        if g == self.G.identity or h == self.H.identity:
            return self.identity
        cyc = three_cycle(BASE, Point("g", g), Point("h", h))
        return PvElement(self.G.identity, self.H.identity, cyc)

    def project(self, s: PvElement) -> tuple[str, str]:
        """The canonical epimorphism onto G x H (both factors infinite)."""
        if self.regime != BOTH_INFINITE:
            raise RegimeError(
                "the H-projection is undefined when H is finite; use project_g"
            )
        return (s.g, s.h)

    def project_g(self, s: PvElement) -> str:
        """The canonical epimorphism onto the infinite factor G."""
        return s.g

    def project_h(self, s: PvElement) -> str:
        if self.regime != BOTH_INFINITE:
            raise RegimeError("the H-projection is undefined when H is finite")
        return s.h

    def in_monolith(self, s: PvElement) -> bool:
        """Membership in the minimal normal subgroup (kernel of project)."""
        if self.regime != BOTH_INFINITE:
            raise RegimeError("the monolith test requires both factors infinite")
        return s.g == self.G.identity and s.h == self.H.identity

    def element_order(self, s: PvElement, cap: int = 10**9) -> Optional[int]:
        """Exact order of an element, None when infinite.

        Raises BudgetError when the order exceeds ``cap``.
        """
        if self.regime != BOTH_INFINITE:
            raise RegimeError("element order is computed in the both-infinite regime")
        og = self.G.element_order(s.g)
        oh = self.H.element_order(s.h)
        if og is None or oh is None:
            return None
        m = lcm(og, oh)
        if m > cap:
            raise BudgetError(f"element order exceeds cap {cap}")
        residual = self.power(s, m)
        if residual.g != self.G.identity or residual.h != self.H.identity:
            raise GluedError("power of projections did not vanish")
        order = m * residual.a.order()
        if order > cap:
            raise BudgetError(f"element order exceeds cap {cap}")
        return order

    def stabilizer_lift(self, h: str, h_prime: str) -> PvElement:
        """A lift of h fixing every point of the G side.

        Multiplies the 3-cycle through the basepoint by h itself, so the
        result projects to (e, h) but moves no point of the G copy.
        """
        h = self.H.parse(h)
        h_prime = self.H.parse(h_prime)
        if h == self.H.identity:
            raise WordParseError("h must be nontrivial")
        if h_prime in (self.H.identity, h):
            raise WordParseError("h' must differ from both h and the identity")
        sigma = three_cycle(Point("h", h), BASE, Point("h", h_prime))
        return self.multiply(self.from_perm(sigma), self.from_h(h))

    # ------------------------------------------------------------------
    # word and element text forms

    def parse_word(self, text: str) -> list[Letter]:
        letters: list[Letter] = []
        pos = 0
        while pos < len(text):
            if text[pos].isspace():
                pos += 1
                continue
            m = _WORD_TOKEN.match(text, pos)
            if not m:
                raise WordParseError(f"bad word at position {pos}: {text[pos:]!r}")
            token = m.group()
            if token.startswith("PERM:"):
                letters.append(("PERM", self.union.parse_perm(token[5:])))
            else:
                side, lit = token.split(":", 1)
                letters.append((side, lit))
            pos = m.end()
        return letters

    def eval_word(self, text: str) -> PvElement:
        return self.normalize(self.parse_word(text))

    def format_element(self, s: PvElement) -> str:
        return f"g={s.g} h={s.h} a={self.union.format_perm(s.a)}"


def embed(source: PvContext, target: PvContext,
          g_map: Callable[[str], str], h_map: Callable[[str], str],
          s: PvElement, *, samples: int = 24, rng: Optional[Random] = None) -> PvElement:
    """Push an element along factor inclusions K -> G, L -> H.

    Both source factors must be infinite; the maps are checked to be
    injective homomorphisms on a sample before relabelling the normal
    form.  The result satisfies embed(xy) = embed(x)embed(y).
    """
    if source.regime != BOTH_INFINITE:
        raise RegimeError("embedding is only canonical for infinite source factors")
    rng = rng or Random(0)
    for handle, mapping, tgt in ((source.G, g_map, target.G),
                                 (source.H, h_map, target.H)):
        pool = handle.ball(2)
        picks = [pool[rng.randrange(len(pool))] for _ in range(samples)]
        if mapping(handle.identity) != tgt.identity:
            raise MembershipError("factor map does not preserve the identity")
        images = {}
        for x in picks:
            fx = tgt.parse(mapping(x))
            if images.setdefault(x, fx) != fx:
                raise MembershipError("factor map is not a function")
        for x, y in zip(picks, reversed(picks)):
            if tgt.parse(mapping(handle.mul(x, y))) != tgt.mul(images[x], images[y]):
                raise MembershipError("factor map is not a homomorphism on samples")
        if len(set(images.values())) != len(set(picks)):
            raise MembershipError("factor map is not injective on samples")

    def relabel(p: Point) -> Point:
        if p.side == "e":
            return BASE
        if p.side == "g":
            return target.union.g_point(target.G.parse(g_map(p.payload)))
        return target.union.h_point(target.H.parse(h_map(p.payload)))

    a = FinPerm({relabel(p): relabel(q) for p, q in s.a.moved.items()})
    return target.element(g=g_map(s.g), h=h_map(s.h), a=a)
