"""Dense backend: realization, translation signs, Alt/Sym classification."""

from __future__ import annotations

import itertools
import math

import pytest

from gluedprod import CyclicGroup, GroupSpecError, schreier_sims_order
from gluedprod.finite import (
    FiniteUnion,
    classify,
    compose_dense,
    glued_order,
    has_cyclic_two_sylow,
    parity_dense,
    realize_finite,
    translation_sign,
    verify_classification,
)

from conftest import finite_catalog, mulclose


def test_realize_z2_z2():
    gens = realize_finite(CyclicGroup(2), CyclicGroup(2))
    # the transpositions (0 1) and (0 2) as image tuples
    assert sorted(gens) == [(1, 0, 2), (2, 1, 0)]
    # brute-force closure on three points is the full symmetric group
    assert len(mulclose(gens)) == 6


def test_realize_z3_z2():
    gens = realize_finite(CyclicGroup(3), CyclicGroup(2))
    assert (1, 2, 0, 3) in gens and (2, 0, 1, 3) in gens and (3, 1, 2, 0) in gens
    n = 4
    for p in gens:
        # each generator fixes the other block pointwise
        assert len(p) == n
        moved = {i for i in range(n) if p[i] != i}
        assert moved <= {0, 1, 2} or moved <= {0, 3}


def test_translation_sign_formula_vs_cycle_parity():
    for name, G in finite_catalog().items():
        union = FiniteUnion(G, CyclicGroup(2))
        for x in G.elements():
            perm = union.translation("g", x)
            assert translation_sign(G, x) == (1 if parity_dense(perm) == 0 else -1), name


def test_translation_sign_examples():
    z4 = CyclicGroup(4)
    assert translation_sign(z4, "0") == 1
    # the generator is a 4-cycle: odd
    assert translation_sign(z4, "1") == -1
    # the order-2 element splits into two transpositions: even
    assert translation_sign(z4, "2") == 1


def test_cyclic_two_sylow_criterion():
    catalog = finite_catalog()
    assert has_cyclic_two_sylow(catalog["Z2"])
    assert has_cyclic_two_sylow(catalog["Z4"])
    assert has_cyclic_two_sylow(catalog["S3"])
    assert not has_cyclic_two_sylow(catalog["Z3"])
    assert not has_cyclic_two_sylow(catalog["Z5"])
    assert not has_cyclic_two_sylow(catalog["V4"])


def test_classify_examples():
    catalog = finite_catalog()
    assert classify(catalog["Z2"], catalog["Z2"]) == "Sym"
    assert classify(catalog["Z3"], catalog["Z3"]) == "Alt"
    assert classify(catalog["V4"], catalog["Z3"]) == "Alt"
    # independent verification of the V4 x Z3 case by group order
    assert glued_order(catalog["V4"], catalog["Z3"]) == math.factorial(6) // 2 == 360
    with pytest.raises(GroupSpecError):
        classify(CyclicGroup(1), catalog["Z2"])


def test_classify_symmetric_in_arguments():
    catalog = finite_catalog()
    for a, b in itertools.combinations(catalog.values(), 2):
        if a.order() + b.order() - 1 <= 10:
            assert classify(a, b) == classify(b, a)


def test_verify_classification_catalog():
    catalog = finite_catalog()
    for a, b in itertools.combinations_with_replacement(catalog.values(), 2):
        if a.order() + b.order() - 1 <= 10:
            assert verify_classification(a, b), (a, b)


def test_expected_orders():
    assert glued_order(CyclicGroup(2), CyclicGroup(2)) == 6
    assert glued_order(CyclicGroup(3), CyclicGroup(3)) == 60
    assert glued_order(CyclicGroup(4), CyclicGroup(3)) == math.factorial(6)


def test_schreier_sims_agrees_with_closure_on_small_products():
    small = [CyclicGroup(2), CyclicGroup(3), CyclicGroup(4)]
    for a, b in itertools.combinations_with_replacement(small, 2):
        gens = realize_finite(a, b)
        assert schreier_sims_order(gens) == len(mulclose(gens))


def test_compose_dense_convention():
    p = (1, 0, 2)
    q = (0, 2, 1)
    assert compose_dense(p, q) == tuple(p[q[i]] for i in range(3))
