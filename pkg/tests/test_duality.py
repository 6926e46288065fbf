"""Simplicial complexes, Stanley-Reisner translation, Alexander duality."""

import random

import numpy as np
import pytest

from cmgraphs import (
    Monomial,
    MonomialIdeal,
    SimplicialComplex,
    SizeBudgetError,
    UnitIdealError,
    alexander_dual_complex,
    build_hr,
    complex_of_ideal,
    dual_hr_fast,
    dual_ideal_bruteforce,
    grid_vertices,
    minimalize,
)
from cmgraphs import RelationFamily
from cmgraphs.duality import maximal_true, minimal_true, subset_closure, superset_closure
from cmgraphs.verification import random_family, random_squarefree_ideal

# Quadratic generators of the dual of the worked example: one X[s,i]*X[t,j]
# for every pair of levels s < t with p_i below p_j across levels s..t-1.
# Frozen by composing the two relations by hand.
SAMPLE_DUAL_GENERATORS = frozenset(
    {
        "X[1,1]*X[2,1]",
        "X[1,2]*X[2,2]",
        "X[1,3]*X[2,3]",
        "X[1,2]*X[2,3]",
        "X[2,1]*X[3,1]",
        "X[2,2]*X[3,2]",
        "X[2,3]*X[3,3]",
        "X[2,1]*X[3,2]",
        "X[1,1]*X[3,1]",
        "X[1,2]*X[3,2]",
        "X[1,3]*X[3,3]",
        "X[1,1]*X[3,2]",
        "X[1,2]*X[3,3]",
    }
)


def flags_from(bits, masks):
    out = np.zeros(1 << bits, dtype=bool)
    for m in masks:
        out[m] = True
    return out


def test_subset_and_superset_closures():
    down = subset_closure(flags_from(3, [0b101]), 3)
    assert {m for m in range(8) if down[m]} == {0b000, 0b001, 0b100, 0b101}
    up = superset_closure(flags_from(3, [0b001]), 3)
    assert {m for m in range(8) if up[m]} == {m for m in range(8) if m & 1}


def test_maximal_and_minimal_true():
    flags = flags_from(3, [0b000, 0b001, 0b100, 0b101, 0b010])
    assert set(maximal_true(flags, 3)) == {0b101, 0b010}
    up = superset_closure(flags_from(3, [0b011]), 3)
    assert minimal_true(up, 3) == [0b011]


def test_maximal_true_covers_everything():
    rng = random.Random(42)
    for _ in range(20):
        masks = [rng.randrange(1 << 6) for _ in range(rng.randint(1, 12))]
        flags = flags_from(6, masks)
        tops = maximal_true(flags, 6)
        for m in masks:
            assert any(m & ~t == 0 for t in tops)
        for a in tops:
            for b in tops:
                assert a == b or a & ~b != 0


def test_complex_make_prunes_to_facets():
    cx = SimplicialComplex.make(("a", "b", "c"), [0b011, 0b001, 0b100])
    assert set(cx.facets) == {0b011, 0b100}
    assert cx.dim() == 1
    assert cx.contains_face(0b001)
    assert not cx.contains_face(0b101)


def test_void_and_irrelevant_complexes():
    void = SimplicialComplex.make(("a",), [])
    assert void.is_void()
    irrelevant = SimplicialComplex.make(("a",), [0])
    assert irrelevant.is_irrelevant()
    assert irrelevant.dim() == -1
    with pytest.raises(ValueError):
        void.dim()


def test_complex_of_ideal_hollow_triangle():
    # one cubic relation knocks out only the full face
    ideal = MonomialIdeal(1, 3, (Monomial.from_variables(1, 3, [(1, 1), (1, 2), (1, 3)]),))
    cx = complex_of_ideal(ideal, grid_vertices(1, 3))
    assert set(cx.facet_sets()) == {((1, 1), (1, 2)), ((1, 1), (1, 3)), ((1, 2), (1, 3))}


def test_complex_of_ideal_rejects_unit():
    unit = MonomialIdeal(1, 2, (Monomial(1, 2, 0),))
    with pytest.raises(UnitIdealError):
        complex_of_ideal(unit, grid_vertices(1, 2))


def test_complex_of_ideal_budget():
    ideal = MonomialIdeal(5, 5, (Monomial.from_variables(5, 5, [(1, 1)]),))
    with pytest.raises(SizeBudgetError):
        complex_of_ideal(ideal, grid_vertices(5, 5))


def test_zero_ideal_gives_full_simplex():
    zero = MonomialIdeal(1, 3, ())
    cx = complex_of_ideal(zero, grid_vertices(1, 3))
    assert cx.facets == (0b111,)


def test_dual_complex_hand_cases():
    verts = ("a", "b", "c")
    hollow = SimplicialComplex.make(verts, [0b011, 0b101, 0b110])
    assert alexander_dual_complex(hollow).is_irrelevant()
    irrelevant = SimplicialComplex.make(verts, [0])
    dual = alexander_dual_complex(irrelevant)
    assert set(dual.facets) == {0b011, 0b101, 0b110}
    full = SimplicialComplex.make(verts, [0b111])
    assert alexander_dual_complex(full).is_void()
    assert alexander_dual_complex(SimplicialComplex.make(verts, [])).facets == (0b111,)


def test_dual_complex_is_an_involution():
    rng = random.Random(77)
    verts = tuple(f"v{k}" for k in range(8))
    for _ in range(30):
        masks = [rng.randrange(1, 256) for _ in range(rng.randint(1, 10))]
        cx = SimplicialComplex.make(verts, masks)
        assert alexander_dual_complex(alexander_dual_complex(cx)) == cx


def test_dual_ideal_reciprocal_pair():
    edge = minimalize([Monomial.from_variables(1, 2, [(1, 1), (1, 2)])])
    verts = grid_vertices(1, 2)
    dual = dual_ideal_bruteforce(edge, verts)
    assert {str(g) for g in dual.gens} == {"X[1,1]", "X[1,2]"}
    assert dual_ideal_bruteforce(dual, verts) == edge


def test_dual_ideal_degenerate_cases():
    verts = grid_vertices(1, 2)
    zero = MonomialIdeal(1, 2, ())
    assert dual_ideal_bruteforce(zero, verts).is_unit()
    unit = MonomialIdeal(1, 2, (Monomial(1, 2, 0),))
    with pytest.raises(UnitIdealError):
        dual_ideal_bruteforce(unit, verts)


def test_double_dual_is_identity_on_random_ideals():
    rng = random.Random(88)
    for _ in range(40):
        ideal = random_squarefree_ideal(rng)
        if ideal.is_zero() or ideal.is_unit():
            continue
        verts = grid_vertices(ideal.r, ideal.n)
        once = dual_ideal_bruteforce(ideal, verts)
        assert dual_ideal_bruteforce(once, verts) == ideal


def test_dual_hr_fast_matches_frozen_quadratics(sample):
    dual = dual_hr_fast(sample)
    assert {str(g) for g in dual.gens} == SAMPLE_DUAL_GENERATORS
    assert all(g.degree() == 2 for g in dual.gens)


def test_dual_hr_fast_identity_family_is_diagonal():
    fam = RelationFamily.from_pairs(2, 2, {})
    dual = dual_hr_fast(fam)
    assert {str(g) for g in dual.gens} == {"X[1,1]*X[2,1]", "X[1,2]*X[2,2]"}


def test_dual_hr_fast_two_levels_reads_off_the_relation():
    # r=2: the dual quadratics are exactly the level-1 comparabilities
    fam = RelationFamily.from_pairs(3, 2, {1: [(1, 2), (2, 3)]})
    dual = dual_hr_fast(fam)
    want = {
        (i, j)
        for i in range(1, 4)
        for j in range(1, 4)
        if fam.level(1).holds(i, j)
    }
    got = {(g.variables()[0][1], g.variables()[1][1]) for g in dual.gens}
    assert got == want


def test_dual_oracles_agree_on_sample_and_random_families(sample):
    rng = random.Random(99)
    fams = [sample] + [random_family(rng, max_n=3, max_r=3) for _ in range(10)]
    for fam in fams:
        fast = dual_hr_fast(fam)
        brute = dual_ideal_bruteforce(build_hr(fam), grid_vertices(fam.r, fam.n))
        assert set(fast.gens) == set(brute.gens)
