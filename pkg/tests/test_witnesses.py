import json

import pytest

from rings.errors import InvalidParameter, MixedRings
from rings.properties import is_central_linear_armendariz, is_linear_armendariz
from rings.witnesses import (
    Witness,
    annihilating_pair_violation,
    convolution_terms,
    jsonable,
    pp_failure,
    square_zero_element,
    square_zero_pair,
    vnr_failure,
)


def test_square_zero_element_rechecks(ring):
    z4 = ring("Z(4)")
    assert square_zero_element(z4.element(2)).holds()
    assert not square_zero_element(z4.element(1)).holds()


def test_forall_steps_range_over_the_ring(ring):
    z4 = ring("Z(4)")
    assert vnr_failure(z4.element(2)).holds()
    assert not vnr_failure(z4.element(3)).holds()
    assert pp_failure(z4.element(2)).holds()
    assert not pp_failure(ring("Z(6)").element(2)).holds()


def test_witness_survives_json(ring):
    r = ring("Triv(Z(4))")
    original = is_linear_armendariz(r).witness
    data = json.loads(json.dumps(original.to_dict()))
    rebuilt = Witness.from_dict(r, data)
    assert rebuilt.kind == "annihilating-pair-violation"
    assert rebuilt.elements == original.elements
    assert rebuilt.holds()


def test_tampered_witness_fails_recheck(ring):
    r = ring("Mat(Z(2), 2)")
    witness = is_central_linear_armendariz(r).witness
    data = witness.to_dict()
    data["elements"]["r"]["index"] = r.one_index
    assert not Witness.from_dict(r, data).holds()


def test_square_zero_pair_recipe(ring):
    tnk = ring("Tnk(Z(4), 3, 1)")
    a, b, other = tnk.square_zero_candidates(tnk.base.element(2))
    assert square_zero_pair(a, b, other).holds()
    assert not square_zero_pair(a, b, tnk.one).holds()


def test_violation_conditions(ring):
    z4 = ring("Z(4)")
    two = z4.element(2)
    # (2 + 2x)(2 + 2x) = 0 with every coefficient product 2·2 = 0 in Z(4)
    zero_condition = annihilating_pair_violation([two, two], [two, two], (0, 0), "zero")
    assert not zero_condition.holds()
    assert annihilating_pair_violation([two, two], [two, two], (0, 0), "nilpotent").notes["product"] == 0
    with pytest.raises(InvalidParameter):
        annihilating_pair_violation([two], [two], (0, 0), "central")
    with pytest.raises(InvalidParameter):
        annihilating_pair_violation([two], [two], (0, 0), "idempotent")


def test_convolution_terms_cover_every_coefficient():
    terms = convolution_terms(1, 2)
    assert len(terms) == 4
    assert terms[0] == ["mul", "a0", "b0"]
    assert terms[3] == ["mul", "a1", "b2"]


def test_witness_validation(ring):
    z4, z6 = ring("Z(4)"), ring("Z(6)")
    with pytest.raises(InvalidParameter):
        Witness("made-up", z4, {"a": z4.one})
    with pytest.raises(MixedRings):
        Witness("noncommuting-pair", z4, {"a": z4.one, "b": z6.one})


def test_jsonable_flattens_tuples():
    assert jsonable(((1, 0), (0, 1))) == [[1, 0], [0, 1]]
    assert jsonable({1: (2, 3)}) == {"1": [2, 3]}
