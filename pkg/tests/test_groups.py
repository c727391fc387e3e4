"""Factor-group catalog: laws, balls, orders, and the order engine."""

from __future__ import annotations

import itertools
from random import Random

import pytest

from gluedprod import (
    BudgetError,
    GroupSpecError,
    parse_group,
    schreier_sims_order,
)
from gluedprod.groups import cyclic_table, symmetric_group_table

from conftest import finite_catalog, mulclose


ALL_SPECS = [
    {"type": "cyclic", "n": 5},
    {"type": "cyclic", "n": 12},
    {"type": "integers"},
    {"type": "lattice", "d": 2},
    {"type": "lattice", "d": 3},
    {"type": "free", "rank": 2},
    {"type": "table", "table": cyclic_table(6)},
    {"type": "table", "table": symmetric_group_table(3)},
]


@pytest.mark.parametrize("spec", ALL_SPECS, ids=lambda s: s["type"] + str(s.get("n", s.get("d", s.get("rank", "")))))
def test_group_laws_on_random_triples(spec):
    G = parse_group(spec)
    rng = Random(7)
    pool = G.ball(3) if not G.is_finite else G.elements()
    for _ in range(1000):
        x, y, z = (rng.choice(pool) for _ in range(3))
        assert G.mul(G.mul(x, y), z) == G.mul(x, G.mul(y, z))
        assert G.mul(G.identity, x) == x
        assert G.mul(x, G.identity) == x
        assert G.mul(G.inv(x), x) == G.identity


def test_parse_group_examples():
    assert parse_group({"type": "cyclic", "n": 5}).order() == 5
    free2 = parse_group({"type": "free", "rank": 2})
    assert free2.parse("aBa") == "aBa"
    assert free2.parse("aAb") == "b"
    z2 = parse_group({"type": "table", "table": [[0, 1], [1, 0]]})
    assert z2.order() == 2
    assert z2.element_order("1") == 2


def test_parse_group_rejects_bad_specs():
    with pytest.raises(GroupSpecError):
        parse_group({"type": "nope"})
    with pytest.raises(GroupSpecError):
        parse_group({"type": "table", "table": [[0, 1], [0, 1]]})
    with pytest.raises(GroupSpecError):
        # a Latin square without identity: the rows are the two nontrivial
        # permutations of {0,1,2} composed, never fixing everything
        parse_group({"type": "table", "table": [[1, 2, 0], [2, 0, 1], [0, 1, 2]][::-1]})
    with pytest.raises(GroupSpecError):
        # Latin square failing associativity (order-5 quasigroup)
        parse_group({
            "type": "table",
            "table": [
                [0, 1, 2, 3, 4],
                [1, 0, 3, 4, 2],
                [2, 4, 0, 1, 3],
                [3, 2, 4, 0, 1],
                [4, 3, 1, 2, 0],
            ],
        })


def test_ball_integers():
    Z = parse_group({"type": "integers"})
    assert sorted(int(x) for x in Z.ball(2)) == [-2, -1, 0, 1, 2]
    for n in range(8):
        assert len(Z.ball(n)) == 2 * n + 1


def test_ball_free_rank2():
    F = parse_group({"type": "free", "rank": 2})
    assert set(F.ball(1)) == {"", "a", "A", "b", "B"}
    # closed-form count for reduced words of length <= n
    for n in range(4):
        assert len(F.ball(n)) == 1 + sum(4 * 3 ** (k - 1) for k in range(1, n + 1))


def test_ball_lattice_against_enumeration():
    L = parse_group({"type": "lattice", "d": 2})
    want = {
        f"{x},{y}"
        for x in range(-3, 4)
        for y in range(-3, 4)
        if abs(x) + abs(y) <= 1
    }
    assert set(L.ball(1)) == want
    assert len(want) == 5


def test_ball_monotone_and_product_closure():
    F = parse_group({"type": "free", "rank": 2})
    for n in range(3):
        assert set(F.ball(n)) <= set(F.ball(n + 1))
    # ball(n) equals the n-fold products of ball(1) kept at length <= n
    b1 = F.ball(1)
    closure = {""}
    for _ in range(3):
        closure = {F.mul(x, y) for x in closure for y in b1}
    assert {w for w in closure if F.length(w) <= 3} == set(F.ball(3))


def test_ball_cap():
    Z = parse_group({"type": "integers"})
    with pytest.raises(BudgetError):
        Z.ball(10**7, cap=100)


def test_element_orders():
    z4 = parse_group({"type": "cyclic", "n": 4})
    assert z4.element_order("2") == 2
    Z = parse_group({"type": "integers"})
    assert Z.element_order("3") is None
    z6 = parse_group({"type": "cyclic", "n": 6})
    # power iteration oracle: 4, 4+4=2, 2+4=0
    powers = ["4"]
    while powers[-1] != "0":
        powers.append(z6.mul(powers[-1], "4"))
    assert len(powers) == 3
    assert z6.element_order("4") == 3


def test_free_reduction_and_inverse():
    F = parse_group({"type": "free", "rank": 2})
    assert F.mul("aB", "ba") == "aa"
    assert F.inv("aBa") == "AbA"
    assert F.mul("aBa", F.inv("aBa")) == ""
    rng = Random(3)
    pool = F.ball(3)
    for _ in range(300):
        w = rng.choice(pool)
        # stored words carry no adjacent letter-inverse pair
        assert all(w[i] != w[i + 1].swapcase() for i in range(len(w) - 1))


def test_schreier_sims_small_cases():
    assert schreier_sims_order([(1, 0)]) == 2
    assert schreier_sims_order([(1, 0, 2), (1, 2, 0)]) == 6
    assert schreier_sims_order([(1, 2, 3, 4, 0)]) == 5
    assert schreier_sims_order([]) == 1
    with pytest.raises(GroupSpecError):
        schreier_sims_order([(0, 0, 1)])


def test_schreier_sims_matches_bruteforce_closure():
    rng = Random(11)
    for trial in range(40):
        n = rng.randint(2, 7)
        gens = []
        for _ in range(rng.randint(1, 3)):
            p = list(range(n))
            rng.shuffle(p)
            gens.append(tuple(p))
        closure = mulclose(gens, limit=5040)
        assert schreier_sims_order(gens) == len(closure)


def test_schreier_sims_generator_fixing_first_point():
    # a generator fixing the first moved point of the others still counts
    gens = [(1, 0, 2), (0, 2, 1)]
    assert schreier_sims_order(gens) == len(mulclose(gens))


def test_catalog_builds():
    catalog = finite_catalog()
    assert catalog["S3"].order() == 6
    assert catalog["V4"].order() == 4
    assert all(catalog["V4"].element_order(x) <= 2 for x in catalog["V4"].elements())
    for G in catalog.values():
        elems = G.elements()
        assert len(elems) == len(set(elems)) == G.order()


def test_large_table_uses_sampled_associativity():
    # above the exhaustive limit the check samples triples; a valid group passes
    G = parse_group({"type": "table", "table": cyclic_table(70)})
    assert G.order() == 70
    assert G.mul("69", "1") == "0"


@pytest.mark.parametrize("spec", ALL_SPECS, ids=lambda s: s["type"] + str(s.get("n", s.get("d", s.get("rank", "")))))
def test_proper_length_laws(spec):
    G = parse_group(spec)
    assert G.length(G.identity) == 0
    rng = Random(19)
    pool = G.ball(3) if not G.is_finite else G.elements()
    for _ in range(300):
        x, y = rng.choice(pool), rng.choice(pool)
        assert G.length(x) == G.length(G.inv(x))
        assert G.length(G.mul(x, y)) <= G.length(x) + G.length(y)
        assert G.length(x) >= 0


def test_enumeration_matches_sort_key():
    for spec in ALL_SPECS:
        G = parse_group(spec)
        first = list(itertools.islice(G.enumerate_elements(), 20))
        assert first[0] == G.identity
        assert first == sorted(first, key=G.sort_key)
        assert len(set(first)) == len(first)
