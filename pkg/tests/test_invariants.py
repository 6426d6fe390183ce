import pytest

from torsionforms.catalog import catalog_model
from torsionforms.errors import NotTotallyPositive
from torsionforms.extensions import tower
from torsionforms.forms import QuadraticForm, isometric, ones, represents
from torsionforms.invariants import (
    LowerBound,
    hasse_number,
    height,
    invariant_report,
    length,
    pythagoras_number,
    height_theorem_checks,
    sums_chain,
    u_invariant,
)
from torsionforms.model import positive_cone
from torsionforms.pfister import pfister_build
from torsionforms.witt import bfs_closure_check, torsion_bfs_oracle

MR = catalog_model("minimal-real")
Q3 = catalog_model("q3r")
Q5 = catalog_model("q5r")
RE = catalog_model("reals")
ST = catalog_model("reals-st")


def brute_length(model, s):
    """Least k with s represented by k x <1>, from the form engine's D sets."""
    for k in range(1, 4 * model.order):
        if represents(ones(model, k), s):
            return k
    return None


@pytest.mark.parametrize("model,u", [(MR, 2), (Q3, 4), (Q5, 4), (RE, 0)], ids=lambda x: getattr(x, "name", x))
def test_u(model, u):
    assert u_invariant(model) == u


@pytest.mark.parametrize("model", [MR, Q3, Q5], ids=lambda m: m.name)
def test_u_matches_bfs_oracle(model):
    u = u_invariant(model)
    assert max(f.dim for f in torsion_bfs_oracle(model, u + 2)) == u
    assert bfs_closure_check(model, u + 2).ok


def test_lengths():
    assert length(Q3, Q3.element("3")) == 3
    assert length(Q3, Q3.element("6")) == 3
    assert length(Q3, 0) == 1
    with pytest.raises(NotTotallyPositive):
        length(Q3, Q3.element("-1"))


@pytest.mark.parametrize("model", [MR, Q3, Q5, tower(Q3, 2)], ids=lambda m: m.name)
def test_lengths_match_brute(model):
    for s in positive_cone(model):
        assert length(model, s) == brute_length(model, s)


@pytest.mark.parametrize("model,p,h", [(Q3, 3, 4), (Q5, 2, 2), (MR, 2, 2), (RE, 1, 1)],
                         ids=lambda x: getattr(x, "name", x))
def test_pythagoras_and_height(model, p, h):
    assert pythagoras_number(model) == p
    assert height(model) == h


def test_chain_q3r():
    chain = sums_chain(Q3)
    elem = Q3.element
    assert [set(e) for _, e in chain.levels] == [{0}, {0, elem("2")}, {0, elem("2"), elem("3"), elem("6")}]
    assert chain.index(2, 1) == 2
    assert chain.index(None, 2) == 2


def test_chain_reals_and_minimal_real():
    assert [e for _, e in sums_chain(RE).levels] == [(0,)]
    assert [set(e) for _, e in sums_chain(MR).levels] == [{0}, {0, MR.element("2")}]


def test_chain_monotone_and_stabilizes():
    for model in (MR, Q3, Q5, tower(Q3, 2)):
        chain = sums_chain(model)
        levels = [set(e) for _, e in chain.levels]
        for a, b in zip(levels, levels[1:]):
            assert a <= b
        assert levels[-1] == set(chain.cone)
        assert len(levels) <= height(model).bit_length() + 1


def test_hasse_number_values():
    assert hasse_number(RE) == 0
    assert hasse_number(ST, 8) == LowerBound(8, 8)
    # DERIVED golden values from the capped search (certified exact)
    assert hasse_number(Q3, 8) == 4
    assert hasse_number(Q5, 8) == 4
    assert hasse_number(MR, 8) == 2


def test_hasse_at_least_u():
    for model in (MR, Q3, Q5):
        h = hasse_number(model)
        assert isinstance(h, int) and h >= u_invariant(model)


def test_height_theorem_q3r():
    report = height_theorem_checks(Q3)
    assert report.ok
    assert report.status_of("pi = <<x,-1,...,-1>>") == "PASS"
    three = Q3.element("3")
    assert isometric(pfister_build(Q3, [three, Q3.minus_one]), QuadraticForm.parse(Q3, "<1,1,-3,-3>"))


def test_height_theorem_q5r_both_sides_fail():
    report = height_theorem_checks(Q5)
    assert report.ok
    detail = [r.detail for r in report.results if r.name.startswith("h = 2^n")][0]
    assert detail == "h=2^n: False, subform: False"


def test_height_theorem_minimal_real():
    assert height_theorem_checks(MR).ok


def test_invariant_report_fields():
    r = invariant_report(Q3)
    assert (r.u, r.hasse_u, r.pythagoras, r.height) == (4, 4, 3, 4)
    assert r.square_class_count == 8 and r.ordering_count == 1
    assert "index(4,2)=2" in r.machine_lines()
    assert r.u <= r.hasse_u
    assert r.pythagoras <= r.height <= 2 * r.pythagoras
