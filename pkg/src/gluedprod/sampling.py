"""Seeded samplers shared by the property suites and the test suite.

All samplers draw payloads from cached balls of the owning factors, so
they work for any catalog kind, not just the integers.
"""

from __future__ import annotations

from functools import lru_cache
from random import Random

from .core import PvContext, PvElement
from .cubes import CubeVertex
from .pointed import BASE, FinPerm, Point


@lru_cache(maxsize=128)
def _ball(handle, span: int) -> tuple[str, ...]:
    return tuple(handle.ball(span))


@lru_cache(maxsize=128)
def _side_points(handle, side: str, span: int) -> tuple[Point, ...]:
    return tuple(
        Point(side, x) for x in handle.ball(span) if x != handle.identity
    )


def even_perm(ctx, rng: Random, span: int = 6, size: int = 6) -> FinPerm:
    """A random even finitely supported permutation over small payloads."""
    pool = list(_side_points(ctx.G, "g", span))
    pool += _side_points(ctx.H, "h", span)
    pool.append(BASE)
    points = rng.sample(pool, min(size, len(pool)))
    images = points[:]
    rng.shuffle(images)
    perm = FinPerm(dict(zip(points, images)))
    if not perm.is_even():
        if len(images) < 2:
            return FinPerm.identity()
        images[0], images[1] = images[1], images[0]
        perm = FinPerm(dict(zip(points, images)))
    return perm


def element(ctx: PvContext, rng: Random, span: int = 5) -> PvElement:
    """A random element with factor parts in the radius-span balls."""
    g = rng.choice(_ball(ctx.G, span))
    h = rng.choice(_ball(ctx.H, span))
    return ctx.element(g=g, h=h, a=even_perm(ctx, rng))


def points(owner, rng: Random, count: int, span: int = 8) -> list[Point]:
    """Random probe points; ``owner`` is anything with G and H handles."""
    pools = {
        "g": _side_points(owner.G, "g", span),
        "h": _side_points(owner.H, "h", span),
    }
    out = []
    for _ in range(count):
        side = rng.choice(["e", "g", "h"])
        pool = pools.get(side)
        out.append(rng.choice(pool) if pool else BASE)
    return out


def vertex(ctx, rng: Random, span: int = 3) -> CubeVertex:
    removed = set()
    added = set()
    g_pool = (BASE,) + _side_points(ctx.G, "g", span)
    h_pool = _side_points(ctx.H, "h", span)
    for _ in range(rng.randint(0, 3)):
        removed.add(rng.choice(g_pool))
    for _ in range(rng.randint(0, 3)):
        added.add(rng.choice(h_pool))
    return CubeVertex(frozenset(removed), frozenset(added))
