import itertools

import pytest

from torsionforms.catalog import catalog_model
from torsionforms.errors import IsotropicInput, NotPfister
from torsionforms.extensions import tower
from torsionforms.forms import QuadraticForm, form, is_isotropic, isometric, subform_test
from torsionforms.pfister import pfister_build
from torsionforms.realmax import (
    is_2_real_maximal,
    pfister_pure_criterion,
    pfister_torsion_forms,
    supreme_implies_realmax_check,
)

MR = catalog_model("minimal-real")
Q3 = catalog_model("q3r")
Q5 = catalog_model("q5r")


def test_examples():
    assert is_2_real_maximal(Q3, form(Q3, "<1,1,-3,-3>")).verdict
    v = is_2_real_maximal(Q3, form(Q3, "<1,-3>"))
    assert not v.verdict and isometric(v.witness, form(Q3, "<1,-2>"))
    assert not subform_test(v.witness, form(Q3, "<1,-3>"), up_to_similarity=True)
    assert is_2_real_maximal(MR, form(MR, "<1,-2>")).verdict


def test_isotropic_input():
    with pytest.raises(IsotropicInput):
        is_2_real_maximal(Q3, form(Q3, "<1,-1>"))


def test_pure_criterion_examples():
    assert pfister_pure_criterion(Q5, pfister_build(Q5, [Q5.element("2"), Q5.element("5")])).verdict
    assert pfister_pure_criterion(Q3, pfister_build(Q3, [Q3.element("3"), Q3.element("-1")])).verdict
    assert pfister_pure_criterion(MR, form(MR, "<1,-2>")).verdict
    with pytest.raises(NotPfister):
        pfister_pure_criterion(Q3, form(Q3, "<1,1,1,2>"))


def test_q5r_binary_pfister_fails():
    v = is_2_real_maximal(Q5, form(Q5, "<1,-2>"))
    assert not v.verdict
    assert isometric(v.witness, form(Q5, "<1,-5>"))


@pytest.mark.parametrize("model", [MR, Q3, Q5, tower(MR, 2), tower(Q3, 2), tower(Q5, 2)], ids=lambda m: m.name)
def test_criteria_agree_on_all_anisotropic_pfister_forms(model):
    # all anisotropic 1- and 2-fold Pfister forms, torsion or not
    elems = list(model.group.elements())
    for n in (1, 2):
        for slots in itertools.combinations_with_replacement(elems, n):
            pi = pfister_build(model, slots)
            if is_isotropic(pi):
                continue
            assert pfister_pure_criterion(model, pi).verdict == is_2_real_maximal(model, pi).verdict


@pytest.mark.parametrize("model", [MR, Q3, Q5, tower(MR, 3)], ids=lambda m: m.name)
def test_supreme_implies_realmax(model):
    assert supreme_implies_realmax_check(model).ok


def test_several_realmax_pfister_forms_over_extension():
    m = tower(Q3, 2)
    maximal = [r for r in pfister_torsion_forms(m) if is_2_real_maximal(m, r).verdict]
    assert len(maximal) >= 2


def test_monotone_under_subforms():
    reps = [f for f in (form(Q3, s) for s in ("<1,-3>", "<1,1,-3,-3>", "<1,-2>"))]
    for phi in reps:
        for chi in reps:
            if phi.dim <= chi.dim and subform_test(phi, chi) and is_2_real_maximal(Q3, phi).verdict:
                assert is_2_real_maximal(Q3, chi).verdict


def test_false_verdict_carries_checkable_witness():
    for r in pfister_torsion_forms(Q5):
        v = is_2_real_maximal(Q5, r)
        if not v.verdict:
            assert isinstance(v.witness, QuadraticForm)
            assert not subform_test(v.witness, r, up_to_similarity=True)
