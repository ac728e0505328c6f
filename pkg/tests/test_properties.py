import pytest

from rings.errors import BudgetExhausted, ContradictionFound, InvalidParameter
from rings.poly import AnnPairBudget
from rings.ring_core import is_central
from rings.witnesses import square_zero_pair
from rings.properties import (
    PROFILE_ORDER,
    PROPERTIES,
    PropertyReport,
    Verdict,
    check_property,
    idempotent_annihilating_pair,
    implication_audit,
    is_abelian,
    is_armendariz_up_to,
    is_central_linear_armendariz,
    is_central_reduced,
    is_commutative,
    is_linear_armendariz,
    is_reduced,
    is_right_pp,
    is_semicommutative,
    is_semiprime,
    is_strongly_regular,
    is_von_neumann_regular,
    is_weak_armendariz_up_to,
    is_weak_linear_armendariz,
    property_profile,
    square_zero_noncentral_witness,
    tnk_square_zero_pair,
    trivial_extension_nilpotent_pair,
)

CLA = "central-linear-armendariz"


def test_commutative(ring):
    assert is_commutative(ring("Z(6)")).verdict is Verdict.HOLDS
    report = is_commutative(ring("Mat(Z(2), 2)"))
    assert report.verdict is Verdict.FAILS
    assert (report.witness["a"].index, report.witness["b"].index) == (1, 2)
    assert report.witness.holds()


def test_reduced_and_central_reduced(ring):
    assert is_reduced(ring("Z(6)")).label == "holds"
    report = is_reduced(ring("Z(4)"))
    assert report.witness["a"].index == 2
    # nilpotents of a commutative ring are central
    assert is_central_reduced(ring("Z(8)")).label == "holds"
    report = is_central_reduced(ring("Mat(Z(2), 2)"))
    assert report.label == "fails"
    assert report.witness["a"] == ring("Mat(Z(2), 2)").matrix_unit(2, 1)
    assert report.witness.holds()


def test_abelian_witness_is_least_noncentral_idempotent(ring):
    for text in ["Mat(Z(2), 2)", "UT(Z(2), 2)"]:
        r = ring(text)
        report = is_abelian(r)
        assert report.label == "fails"
        assert report.witness["e"] == r.matrix_unit(2, 2)
        assert report.witness.holds()
    assert is_abelian(ring("Prod(Z(2), Z(3))")).label == "holds"


def test_semicommutative_and_regular(ring):
    assert is_semicommutative(ring("Triv(Z(4))")).label == "holds"
    report = is_semicommutative(ring("Mat(Z(2), 2)"))
    assert report.label == "fails"
    assert report.witness.holds()
    assert is_von_neumann_regular(ring("Prod(Z(2), Z(3))")).label == "holds"
    report = is_von_neumann_regular(ring("Z(4)"))
    assert report.witness["a"].index == 2
    assert report.witness.holds()


def test_central_linear_armendariz_refuters(ring):
    report = is_central_linear_armendariz(ring("Mat(Z(2), 2)"))
    assert report.label == "fails"
    assert report.witness.notes["route"] == "noncentral-idempotent"
    assert report.witness.holds()
    report = is_central_linear_armendariz(ring("Tnk(Z(4), 3, 1)"))
    assert report.witness.notes["route"] == "square-zero-pair"
    assert report.witness.holds()


def test_square_zero_pair_from_construction(ring):
    report = square_zero_noncentral_witness(ring("Tnk(Z(4), 3, 1)"))
    assert report.label == "fails"
    assert report.note == "constructive pair"
    assert square_zero_noncentral_witness(ring("Z(8)")).label == "holds"


def test_commutative_rings_are_central_linear_armendariz(ring):
    for text in ["Z(6)", "Triv(Z(4))", "PolyMod(Z(2), 2)"]:
        assert is_central_linear_armendariz(ring(text)).label == "holds"


def test_linear_armendariz_witness_on_trivial_extension(ring):
    r = ring("Triv(Z(4))")
    report = is_linear_armendariz(r)
    assert report.label == "fails"
    witness = report.witness
    assert [witness[name].value for name in ("a0", "a1", "b0", "b1")] == [(0, 1), (2, 0), (0, 1), (2, 0)]
    assert witness.notes["product"] == [0, 2]
    assert witness.notes["position"] == [0, 1]
    assert witness.holds()


def test_armendariz_is_certified_up_to_degree(ring):
    report = is_armendariz_up_to(ring("Z(6)"), 2)
    assert report.verdict is Verdict.CERTIFIED
    assert report.label == "certified-up-to-degree(2)"
    assert report.positive is True


def test_budget_exhaustion_is_not_a_verdict(ring):
    with pytest.raises(BudgetExhausted):
        is_linear_armendariz(ring("Z(6)"), AnnPairBudget(max_pairs_examined=1))
    profile = property_profile(ring("Z(6)"), 2, AnnPairBudget(max_pairs_examined=1))
    labels = {r.property: r.label for r in profile}
    assert labels["linear-armendariz"] == "budget-exhausted"
    assert labels["commutative"] == "holds"
    assert [r.property for r in profile] == list(PROFILE_ORDER)


def test_check_property_dispatch(ring):
    assert set(PROFILE_ORDER) < set(PROPERTIES)
    assert check_property(ring("Z(2)"), "reduced").label == "holds"
    with pytest.raises(InvalidParameter):
        check_property(ring("Z(2)"), "noetherian")


def test_report_json_shape(ring):
    data = check_property(ring("Z(4)"), "reduced").to_dict()
    assert list(data)[:6] == ["property", "ring", "verdict", "degree", "work", "ms"]
    assert data["witness"]["kind"] == "square-zero-element"
    assert data["witness"]["elements"]["a"] == {"index": 2, "value": 2}


def test_audit_accepts_real_profiles(ring):
    for text in ["Z(2)", "Z(4)", "Prod(Z(2), Z(3))", "UT(Z(2), 2)"]:
        result = implication_audit(property_profile(ring(text), 1))
        assert result.to_dict()["consistent"]
        assert result.checked


def test_audit_flags_contradictions():
    forged = [
        PropertyReport("commutative", Verdict.HOLDS, "forged"),
        PropertyReport(CLA, Verdict.FAILS, "forged"),
    ]
    with pytest.raises(ContradictionFound) as info:
        implication_audit(forged)
    assert info.value.rule == "commutative => central-linear-armendariz"


def test_audit_skips_rules_without_verdicts():
    partial = [
        PropertyReport("reduced", Verdict.HOLDS, "partial"),
        PropertyReport("armendariz", Verdict.BUDGET_EXHAUSTED, "partial", 2),
    ]
    result = implication_audit(partial)
    assert "reduced => armendariz" in result.skipped


def test_regularity_and_annihilator_conditions(ring):
    assert is_strongly_regular(ring("Prod(Z(2), Z(3))")).label == "holds"
    report = is_strongly_regular(ring("Z(4)"))
    assert report.witness["a"].index == 2
    assert report.witness.holds()
    assert is_right_pp(ring("Z(6)")).label == "holds"
    assert is_right_pp(ring("Z(4)")).witness.holds()
    assert is_semiprime(ring("Z(6)")).label == "holds"
    assert is_semiprime(ring("Z(4)")).witness["a"].index == 2


def test_weak_conditions(ring):
    assert is_weak_linear_armendariz(ring("Z(4)")).label == "holds"
    assert is_weak_armendariz_up_to(ring("Z(4)"), 2).label == "certified-up-to-degree(2)"
    # (e11 + e12x)(e21 + e11x) = 0 while e11·e11 is not nilpotent
    report = is_weak_linear_armendariz(ring("Mat(Z(2), 2)"))
    assert report.label == "fails"
    assert report.witness.holds()


def _coefficients(f0, f1, g0, g1):
    return [f0 * g0, f0 * g1 + f1 * g0, f1 * g1]


def test_idempotent_annihilating_pair(ring):
    r = ring("Mat(Z(2), 2)")
    f0, f1, g0, g1 = idempotent_annihilating_pair(r.matrix_unit(2, 2), r.matrix_unit(2, 1))
    assert all(c.index == 0 for c in _coefficients(f0, f1, g0, g1))
    assert not is_central(f0 * g1)
    with pytest.raises(InvalidParameter):
        idempotent_annihilating_pair(r.matrix_unit(2, 2), r.one)


def test_trivial_extension_nilpotent_pair(ring):
    r = ring("Triv(Z(4))")
    quadruple = trivial_extension_nilpotent_pair(r, r.base.element(2))
    assert [x.value for x in quadruple] == [(2, 0), (2, 1), (2, 0), (2, 3)]
    assert all(c.index == 0 for c in _coefficients(*quadruple))
    assert (quadruple[1] * quadruple[2]).value == (0, 2)
    for bad in (0, 1):
        with pytest.raises(InvalidParameter):
            trivial_extension_nilpotent_pair(r, r.base.element(bad))


def test_tnk_square_zero_pair(ring):
    r = ring("Tnk(Z(4), 4, 2)")
    a, b, other = tnk_square_zero_pair(r, r.base.element(2))
    assert square_zero_pair(a, b, other).holds()
    with pytest.raises(InvalidParameter):
        tnk_square_zero_pair(r, r.base.element(1))
    with pytest.raises(InvalidParameter):
        tnk_square_zero_pair(r, ring("Z(4)").element(2))


def test_armendariz_is_refuted_structurally_on_large_tnk(ring):
    report = is_armendariz_up_to(ring("Tnk(Z(4), 4, 2)"), 2)
    assert report.label == "fails"
    assert report.witness.notes["route"] == "square-zero-pair"
    assert report.witness.notes["condition"] == "zero"
    assert report.witness.holds()


def test_armendariz_noncentral_idempotent_route(ring):
    report = is_armendariz_up_to(ring("UT(Z(2), 2)"), 2)
    assert report.label == "fails"
    assert report.witness.notes["route"] == "noncentral-idempotent"
    assert report.witness.holds()


@pytest.mark.parametrize("text", ["Triv(Z(4))", "Z(6)", "UT(Z(2), 2)", "Tnk(Z(2), 3, 1)"])
@pytest.mark.parametrize("check", [is_armendariz_up_to, is_weak_armendariz_up_to])
def test_degree_two_verdicts_do_not_depend_on_threads(ring, text, check):
    serial = check(ring(text), 2, threads=1).to_dict()
    threaded = check(ring(text), 2, threads=4).to_dict()
    serial.pop("ms")
    threaded.pop("ms")
    assert serial == threaded
