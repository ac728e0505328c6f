import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dsl.dsl_elaborate import ring_from_text
from harness.paper_suite import load_suite
from rings.constructions import make_zn
from rings.errors import AxiomViolation, InvalidParameter, MixedRings, NotAnIdeal
from rings.ring_core import (
    Subset,
    center,
    central_mask,
    check_axioms,
    ideal_closure,
    idempotents,
    is_central,
    is_ideal,
    is_idempotent,
    is_nilpotent,
    left_annihilator,
    nilpotents,
    opposite_ring,
    quotient_ring,
    right_annihilator,
    subring_generated,
    table_ring,
    tables_match,
)
from utils.utils_config import DEFAULT_SUITE_FILE


@given(st.integers(min_value=1, max_value=40), st.data())
def test_zn_arithmetic_matches_integers(n, data):
    zn = make_zn(n)
    a, b = (data.draw(st.integers(min_value=0, max_value=n - 1)) for _ in range(2))
    x, y = zn.element(a), zn.element(b)
    assert (x + y).index == (a + b) % n
    assert (x * y).index == (a * b) % n
    assert (x - y).index == (a - b) % n
    assert (-x + x) == zn.zero


def test_zero_is_index_zero_and_one_is_identity(ring):
    for text in ["Z(1)", "Z(6)", "Prod(Z(2), Z(3))", "Mat(Z(2), 2)", "Triv(Z(4))", "PolyMod(Z(2), 3)"]:
        r = ring(text)
        assert r.zero.index == 0
        everything = r.all_indices()
        assert np.array_equal(r.mul_many(r.one_index, everything), everything)
        assert np.array_equal(r.add_many(0, everything), everything)


def test_element_lookup_rejects_out_of_range(ring):
    with pytest.raises(InvalidParameter):
        ring("Z(4)").element(4)


def test_mixing_rings_raises(ring):
    with pytest.raises(MixedRings):
        ring("Z(4)").one + ring("Z(6)").one


def test_powers_and_predicates(ring):
    z8 = ring("Z(8)")
    assert is_nilpotent(z8.element(2))
    assert not is_nilpotent(z8.element(3))
    assert z8.element(2) ** 3 == z8.zero
    z6 = ring("Z(6)")
    assert [e.index for e in idempotents(z6)] == [0, 1, 3, 4]
    assert is_idempotent(z6.element(3))
    assert [e.index for e in nilpotents(z8)] == [0, 2, 4, 6]


def test_center_of_matrix_ring_is_scalars(ring):
    mat = ring("Mat(Z(2), 2)")
    assert [e.index for e in center(mat)] == [0, mat.one_index]
    assert not is_central(mat.element(8))


def test_annihilators(ring):
    z4 = ring("Z(4)")
    assert right_annihilator(z4.element(2)).members == (0, 2)
    assert left_annihilator(z4.element(1)).members == (0,)
    mat = ring("Mat(Z(2), 2)")
    e12 = mat.matrix_unit(1, 2)
    # e12·B = 0 iff the second row of B is zero
    assert all(mat.as_matrix(b.index)[1] == (0, 0) for b in right_annihilator(e12))
    assert len(right_annihilator(e12)) == 4


def test_ideal_closure_and_quotient(ring):
    z6 = ring("Z(6)")
    ideal = ideal_closure(z6, [z6.element(2)])
    assert ideal.members == (0, 2, 4)
    quotient = quotient_ring(z6, ideal)
    assert quotient.order == 2
    z2 = ring("Z(2)")
    assert tables_match(quotient, z2, lambda a: z2.element(a.index))
    assert quotient.project(z6.element(5)).index == 1


def test_non_ideal_is_rejected(ring):
    z4 = ring("Z(4)")
    subset = Subset.from_indices(z4, [0, 1])
    assert not is_ideal(z4, subset)
    with pytest.raises(NotAnIdeal):
        quotient_ring(z4, subset)


def test_generated_subring(ring):
    mat = ring("Mat(Z(2), 2)")
    sub = subring_generated(mat, [mat.matrix_unit(1, 2)])
    assert sub.order == 4
    check_axioms(sub)
    assert sub.inclusion(sub.one) == mat.one


def test_opposite_ring_reverses_products(ring):
    ut = ring("UT(Z(2), 2)")
    opp = opposite_ring(ut)
    a, b = ut.matrix_unit(1, 1), ut.matrix_unit(1, 2)
    assert opp.mul_idx(a.index, b.index) == ut.mul_idx(b.index, a.index)
    assert check_axioms(opp)


def test_axioms_hold_on_constructions(ring):
    for text in ["Z(6)", "Prod(Z(2), Z(2))", "UT(Z(2), 2)", "Tnk(Z(2), 3, 1)", "Triv(Z(4))"]:
        assert check_axioms(ring(text), "exhaustive")
    assert check_axioms(ring("Tnk(Z(4), 3, 1)"), "sampled", sample_size=2000, seed=7)


def test_axiom_violation_names_the_law():
    add = [[0, 1], [1, 0]]
    mul = [[0, 0], [0, 0]]
    with pytest.raises(AxiomViolation) as info:
        check_axioms(table_ring(add, mul, "zero-product"))
    assert info.value.law == "left identity"


def test_exhaustive_mode_respects_axiom_cap(ring):
    with pytest.raises(InvalidParameter):
        check_axioms(ring("Tnk(Z(4), 3, 1)"), "exhaustive", axiom_cap=64)


#####################################
# Corpus-wide invariants
#####################################

CORPUS = load_suite(DEFAULT_SUITE_FILE).corpus
SMALL_CORPUS = [text for text in CORPUS if ring_from_text(text).order <= 64]


@pytest.mark.parametrize("text", CORPUS)
def test_codec_round_trip(ring, text):
    r = ring(text)
    for i in range(r.order):
        assert r.from_value(r.element(i).value).index == i
    assert r.element(0) == r.zero


@pytest.mark.parametrize("text", CORPUS)
def test_right_and_left_annihilators_count_the_same_pairs(ring, text):
    r = ring(text)
    elements = list(r.elements())
    assert sum(len(right_annihilator(a)) for a in elements) == sum(len(left_annihilator(a)) for a in elements)


@pytest.mark.parametrize("text", CORPUS)
def test_center_is_closed_under_sum_and_product(ring, text):
    r = ring(text)
    members = center(r).array
    central = central_mask(r)
    assert central[r.add_many(members[:, None], members[None, :])].all()
    assert central[r.mul_many(members[:, None], members[None, :])].all()


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_ideal_closure_is_idempotent(ring, data):
    r = ring(data.draw(st.sampled_from(SMALL_CORPUS)))
    gens = data.draw(st.lists(st.integers(min_value=0, max_value=r.order - 1), min_size=1, max_size=3))
    ideal = ideal_closure(r, [r.element(g) for g in gens])
    again = ideal_closure(r, ideal.elements())
    assert again.members == ideal.members
    assert all(r.element(g) in ideal for g in gens)
