"""Deterministic property-suite runner backing the ``suite`` subcommand.

Each suite re-runs the module's invariants at desk scale with a seeded
generator; identical (seed, config) pairs produce byte-identical
reports.  Failures carry a reproduction command line.
"""

from __future__ import annotations

import itertools
import json
import os
import zlib
from dataclasses import dataclass, field
from fractions import Fraction
from random import Random
from typing import Callable, Optional

from . import cubes, dynamics, lef
from .core import PvContext
from .errors import FiberMismatchError, GluedError, GroupSpecError, RegimeError
from .finite import classify, translation_sign, verify_classification
from .finite import FiniteUnion, parity_dense
from .groups import (
    CyclicGroup,
    TableGroup,
    cyclic_table,
    direct_product_table,
    parse_group,
    symmetric_group_table,
)
from .sampling import element as sample_element
from .sampling import points as sample_points
from .sampling import vertex as sample_vertex

SUITE_NAMES = ("core", "finite", "cube", "lef", "dynamics")


@dataclass
class SuiteConfig:
    seed: int = 42
    budget: Optional[int] = None
    left: dict = field(default_factory=lambda: {"type": "integers"})
    right: dict = field(default_factory=lambda: {"type": "integers"})
    fmt: str = "text"

    def cap(self, nominal: int) -> int:
        env = os.environ.get("PV_BUDGET")
        cap = self.budget
        if cap is None and env is not None:
            cap = int(env)
        return nominal if cap is None else min(nominal, cap)


@dataclass
class CheckResult:
    suite: str
    name: str
    ok: bool
    detail: str

    def repro(self, cfg: SuiteConfig) -> str:
        return f"gluedprod suite {self.suite} --seed {cfg.seed} --only {self.name}"


def _rng(cfg: SuiteConfig, suite: str, name: str) -> Random:
    return Random(cfg.seed * 1000003 + zlib.crc32(f"{suite}.{name}".encode()))


def _ctx(cfg: SuiteConfig) -> PvContext:
    return PvContext(parse_group(cfg.left), parse_group(cfg.right))


def finite_catalog() -> dict[str, CyclicGroup | TableGroup]:
    return {
        "Z2": CyclicGroup(2),
        "Z3": CyclicGroup(3),
        "Z4": CyclicGroup(4),
        "V4": TableGroup(direct_product_table(cyclic_table(2), cyclic_table(2))),
        "Z5": CyclicGroup(5),
        "S3": TableGroup(symmetric_group_table(3)),
    }


# ----------------------------------------------------------------------
# core suite

def _core_action_homomorphism(cfg: SuiteConfig) -> CheckResult:
    ctx = _ctx(cfg)
    rng = _rng(cfg, "core", "action-homomorphism")
    count = cfg.cap(10**4)
    for _ in range(count):
        s1 = sample_element(ctx, rng)
        s2 = sample_element(ctx, rng)
        p = sample_points(ctx, rng, 1)[0]
        if ctx.act(ctx.multiply(s1, s2), p) != ctx.act(s1, ctx.act(s2, p)):
            return CheckResult("core", "action-homomorphism", False,
                               f"mismatch at {ctx.format_element(s1)}")
    return CheckResult("core", "action-homomorphism", True, f"{count} samples")


def _core_residual_parity(cfg: SuiteConfig) -> CheckResult:
    ctx = _ctx(cfg)
    rng = _rng(cfg, "core", "residual-parity")
    count = cfg.cap(2000)
    for _ in range(count):
        prod = ctx.multiply(sample_element(ctx, rng), sample_element(ctx, rng))
        if not prod.a.is_even():
            return CheckResult("core", "residual-parity", False,
                               ctx.format_element(prod))
    return CheckResult("core", "residual-parity", True, f"{count} products even")


def _core_commutator(cfg: SuiteConfig) -> CheckResult:
    ctx = _ctx(cfg)
    rng = _rng(cfg, "core", "commutator-identity")
    count = cfg.cap(1000)
    pool_g = [x for x in ctx.G.ball(6) if x != ctx.G.identity]
    pool_h = [y for y in ctx.H.ball(6) if y != ctx.H.identity]
    for _ in range(count):
        g = rng.choice(pool_g)
        h = rng.choice(pool_h)
        c = ctx.commutator(g, h)
        word = ctx.normalize([("G", g), ("H", h),
                              ("G", ctx.G.inv(g)), ("H", ctx.H.inv(h))])
        if word != c:
            return CheckResult("core", "commutator-identity", False, f"g={g} h={h}")
        if ctx.multiply(ctx.multiply(c, c), c) != ctx.identity:
            return CheckResult("core", "commutator-identity", False,
                               f"cube not trivial at g={g} h={h}")
    return CheckResult("core", "commutator-identity", True, f"{count} pairs")


def _core_inverse(cfg: SuiteConfig) -> CheckResult:
    ctx = _ctx(cfg)
    rng = _rng(cfg, "core", "inverse-law")
    count = cfg.cap(1000)
    for _ in range(count):
        s = sample_element(ctx, rng)
        if ctx.multiply(s, ctx.invert(s)) != ctx.identity:
            return CheckResult("core", "inverse-law", False, ctx.format_element(s))
    return CheckResult("core", "inverse-law", True, f"{count} elements")


def _core_projection(cfg: SuiteConfig) -> CheckResult:
    ctx = _ctx(cfg)
    rng = _rng(cfg, "core", "projection-monolith")
    count = cfg.cap(10**4)
    for _ in range(count):
        s1 = sample_element(ctx, rng)
        s2 = sample_element(ctx, rng)
        prod = ctx.multiply(s1, s2)
        if ctx.project(prod) != (ctx.G.mul(s1.g, s2.g), ctx.H.mul(s1.h, s2.h)):
            return CheckResult("core", "projection-monolith", False,
                               "projection not multiplicative")
        trivial = ctx.project(prod) == (ctx.G.identity, ctx.H.identity)
        if ctx.in_monolith(prod) != trivial:
            return CheckResult("core", "projection-monolith", False,
                               "kernel characterisation failed")
    return CheckResult("core", "projection-monolith", True, f"{count} pairs")


def _core_pong(cfg: SuiteConfig) -> CheckResult:
    ctx = _ctx(cfg)
    g = cubes.first_infinite_order(ctx.G)
    h = cubes.first_infinite_order(ctx.H)
    report = dynamics.free_semigroup_check(ctx, g, h, 8)
    ok = report.ok and report.words_checked == 510
    return CheckResult("core", "pong-words", ok,
                       f"{report.distinct}/{report.words_checked} distinct")


# ----------------------------------------------------------------------
# finite suite

def _finite_classification(cfg: SuiteConfig) -> CheckResult:
    catalog = finite_catalog()
    done = 0
    for a, b in itertools.combinations_with_replacement(catalog.values(), 2):
        if a.order() + b.order() - 1 > 10:
            continue
        if not verify_classification(a, b):
            return CheckResult("finite", "catalog-classification", False,
                               f"{a!r} vs {b!r}")
        done += 1
    return CheckResult("finite", "catalog-classification", True, f"{done} pairs")


def _finite_translation_signs(cfg: SuiteConfig) -> CheckResult:
    for name, G in finite_catalog().items():
        union = FiniteUnion(G, CyclicGroup(2))
        for x in G.elements():
            direct = 1 if parity_dense(union.translation("g", x)) == 0 else -1
            if translation_sign(G, x) != direct:
                return CheckResult("finite", "translation-signs", False,
                                   f"{name} element {x}")
    return CheckResult("finite", "translation-signs", True, "catalog agreed")


def _finite_symmetry(cfg: SuiteConfig) -> CheckResult:
    catalog = finite_catalog()
    for a, b in itertools.combinations(catalog.values(), 2):
        if classify(a, b) != classify(b, a):
            return CheckResult("finite", "classify-symmetric", False,
                               f"{a!r} vs {b!r}")
    return CheckResult("finite", "classify-symmetric", True, "all pairs")


# ----------------------------------------------------------------------
# cube suite

def _cube_invariance(cfg: SuiteConfig) -> CheckResult:
    ctx = _ctx(cfg)
    rng = _rng(cfg, "cube", "s-invariance")
    count = cfg.cap(1000)
    for _ in range(count):
        s = sample_element(ctx, rng)
        v = sample_vertex(ctx, rng)
        w = sample_vertex(ctx, rng)
        sv = cubes.act_vertex(ctx, s, v)
        sw = cubes.act_vertex(ctx, s, w)
        if cubes.s_invariant(sv) != cubes.s_invariant(v):
            return CheckResult("cube", "s-invariance", False, "fiber moved")
        if cubes.distance(sv, sw) != cubes.distance(v, w):
            return CheckResult("cube", "s-invariance", False, "distance changed")
    return CheckResult("cube", "s-invariance", True, f"{count} samples")


def _cube_action(cfg: SuiteConfig) -> CheckResult:
    ctx = _ctx(cfg)
    rng = _rng(cfg, "cube", "action-compatibility")
    count = cfg.cap(1000)
    for _ in range(count):
        s1 = sample_element(ctx, rng)
        s2 = sample_element(ctx, rng)
        v = sample_vertex(ctx, rng)
        lhs = cubes.act_vertex(ctx, ctx.multiply(s1, s2), v)
        rhs = cubes.act_vertex(ctx, s1, cubes.act_vertex(ctx, s2, v))
        if lhs != rhs:
            return CheckResult("cube", "action-compatibility", False, "not an action")
    return CheckResult("cube", "action-compatibility", True, f"{count} samples")


def _cube_fixed_pair(cfg: SuiteConfig) -> CheckResult:
    ctx = _ctx(cfg)
    vertices = cubes.vertex_ball(ctx, 3, 3)
    pairs = [
        (x, y)
        for x in vertices if cubes.fixed_by_G(x)
        for y in vertices if cubes.fixed_by_H(y) and cubes.adjacent(x, y)
    ]
    ok = pairs == [(cubes.whole_g_side(), cubes.g_side_without_base())]
    return CheckResult("cube", "adjacent-fixed-pair", ok,
                       f"{len(vertices)} vertices scanned")


def _cube_growth(cfg: SuiteConfig) -> CheckResult:
    ctx = _ctx(cfg)
    rows = cubes.growth_witness(ctx, 40)
    dists = [d for _, d in rows]
    ok = all(d >= len(w) / 2 for w, d in rows) and \
        all(b > a for a, b in zip(dists, dists[1:]))
    return CheckResult("cube", "growth-witness", ok,
                       "distances " + ",".join(str(d) for d in dists[:5]) + ",...")


def _cube_transporter(cfg: SuiteConfig) -> CheckResult:
    ctx = _ctx(cfg)
    rng = _rng(cfg, "cube", "transporter")
    same = cross = 0
    target = cfg.cap(100)
    while same < target or cross < target:
        v = sample_vertex(ctx, rng)
        w = sample_vertex(ctx, rng)
        if cubes.s_invariant(v) == cubes.s_invariant(w):
            if same >= target:
                continue
            t = cubes.transporter(ctx, v, w)
            if cubes.act_vertex(ctx, t, v) != w or not ctx.in_monolith(t):
                return CheckResult("cube", "transporter", False, "bad transporter")
            same += 1
        else:
            if cross >= target:
                continue
            try:
                cubes.transporter(ctx, v, w)
            except FiberMismatchError:
                cross += 1
            else:
                return CheckResult("cube", "transporter", False,
                                   "cross-fiber transport accepted")
    return CheckResult("cube", "transporter", True,
                       f"{same} transports, {cross} rejections")


# ----------------------------------------------------------------------
# lef suite

def _lef_reports(cfg: SuiteConfig) -> list[CheckResult]:
    ctx = _ctx(cfg)
    approx = lef.Approximation(ctx, 1)
    sample = cfg.cap(10**4)
    out = []
    for report in (
        approx.check_point_bijection(),
        approx.check_equivariance(mode="exhaustive"),
        approx.check_pushforward(mode="sample", sample=min(sample, 2000),
                                 seed=cfg.seed),
        approx.check_multiplicativity(mode="sample", sample=sample, seed=cfg.seed),
        approx.check_window_closure(mode="sample", sample=sample, seed=cfg.seed),
        approx.check_injectivity(samples=sample, seed=cfg.seed),
    ):
        out.append(CheckResult("lef", report.name, report.ok,
                               f"{report.pairs_checked} checks"))
    return out


def _lef_mixed(cfg: SuiteConfig) -> list[CheckResult]:
    out = []
    for n_mod in (2, 3):
        ctx = PvContext(parse_group(cfg.left), CyclicGroup(n_mod))
        for report in lef.lef_mixed(ctx, 1, mode="exhaustive", seed=cfg.seed):
            out.append(CheckResult("lef", f"mixed-z{n_mod}-{report.name}",
                                   report.ok, f"{report.pairs_checked} checks"))
    return out


# ----------------------------------------------------------------------
# dynamics suite

def _dynamics_folner(cfg: SuiteConfig) -> CheckResult:
    ctx = _ctx(cfg)
    # a unit translation displaces two boundary slabs of the interval/box
    gen_g = cubes.first_infinite_order(ctx.G, span=1)
    gen_h = next(y for y in ctx.H.ball(1) if y != ctx.H.identity)
    for n in range(1, 101):
        F = dynamics.folner_set(ctx, n)
        if dynamics.folner_ratio(ctx, F, ctx.from_g(gen_g)) != Fraction(2, 2 * n + 1):
            return CheckResult("dynamics", "folner-ratios", False, f"n={n}")
        if dynamics.folner_ratio(ctx, F, ctx.from_h(gen_h)) != 0:
            return CheckResult("dynamics", "folner-ratios", False, f"n={n} (H side)")
    return CheckResult("dynamics", "folner-ratios", True, "n=1..100 exact")


def _dynamics_pong(cfg: SuiteConfig) -> CheckResult:
    ctx = _ctx(cfg)
    if ctx.G.kind == ctx.H.kind == "integers":
        pairs = (("1", "1"), ("2", "3"), ("-1", "5"))
    else:
        gs = [x for x in ctx.G.ball(3)
              if ctx.G.element_order(x) is None][:3]
        hs = [y for y in ctx.H.ball(3)
              if ctx.H.element_order(y) is None][:3]
        if len(gs) < 3 or len(hs) < 3:
            raise GroupSpecError("not enough infinite-order elements to sample")
        pairs = tuple(zip(gs, hs))
    for g, h in pairs:
        report = dynamics.free_semigroup_check(ctx, g, h, 8)
        if not report.ok:
            return CheckResult("dynamics", "pong-catalog", False, f"g={g} h={h}")
    return CheckResult("dynamics", "pong-catalog", True,
                       f"{len(pairs)} generator pairs")


def _selftest_fail(cfg: SuiteConfig) -> CheckResult:
    return CheckResult("selftest", "always-fails", False,
                       "intentional failure exercising the report path")


_SUITES: dict[str, list[Callable[[SuiteConfig], object]]] = {
    "core": [_core_action_homomorphism, _core_residual_parity, _core_commutator,
             _core_inverse, _core_projection, _core_pong],
    "finite": [_finite_classification, _finite_translation_signs, _finite_symmetry],
    "cube": [_cube_invariance, _cube_action, _cube_fixed_pair, _cube_growth,
             _cube_transporter],
    "lef": [_lef_reports, _lef_mixed],
    "dynamics": [_dynamics_folner, _dynamics_pong],
    "selftest": [_selftest_fail],
}


def run_suite(name: str, cfg: SuiteConfig,
              only: Optional[str] = None) -> tuple[int, list[str]]:
    """Run one suite (or ``all``); returns (exit code, report lines)."""
    if name == "all":
        names = list(SUITE_NAMES)
    elif name in _SUITES:
        names = [name]
    else:
        raise GluedError(f"unknown suite {name!r}; choose from "
                         f"{', '.join(list(SUITE_NAMES) + ['all'])}")
    results: list[CheckResult] = []
    for suite in names:
        for check in _SUITES[suite]:
            label = check.__name__.lstrip("_").replace("_", "-")
            try:
                outcome = check(cfg)
            except (GroupSpecError, RegimeError) as exc:
                # inapplicable for this factor configuration
                outcome = CheckResult(suite, label, True, f"skipped: {exc}")
            except GluedError as exc:
                outcome = CheckResult(suite, label, False, f"error: {exc}")
            batch = outcome if isinstance(outcome, list) else [outcome]
            for r in batch:
                if only is not None and r.name != only:
                    continue
                results.append(r)
    lines = []
    failures = 0
    for r in results:
        if r.ok:
            if cfg.fmt == "jsonl":
                lines.append(json.dumps(
                    {"check": f"{r.suite}.{r.name}", "detail": r.detail, "ok": True},
                    sort_keys=True))
            else:
                lines.append(f"ok   {r.suite}.{r.name}  {r.detail}")
        else:
            failures += 1
            if cfg.fmt == "jsonl":
                lines.append(json.dumps(
                    {"check": f"{r.suite}.{r.name}", "detail": r.detail,
                     "ok": False, "repro": r.repro(cfg)}, sort_keys=True))
            else:
                lines.append(f"FAIL {r.suite}.{r.name}  {r.detail}  "
                             f"| repro: {r.repro(cfg)}")
    return (1 if failures else 0), lines
