import pytest

from torsionforms.catalog import catalog_model
from torsionforms.errors import NameCollision, NotAnExtension
from torsionforms.extensions import (
    laurent_extend,
    prop_laurent_check,
    residue_decompose,
    springer_agrees,
    springer_check,
    tower,
)
from torsionforms.forms import QuadraticForm, form, is_isotropic, isometric
from torsionforms.model import positive_cone, validate_model
from torsionforms.pfister import pfister_build
from torsionforms.witt import supreme_search, torsion_subgroup, u_from_torsion, witt_class

MR = catalog_model("minimal-real")
Q3 = catalog_model("q3r")
Q5 = catalog_model("q5r")
ST = catalog_model("reals-st")
MRT = laurent_extend(MR, "t")


def test_extension_shape_and_validity():
    for base in (MR, Q3, Q5, ST):
        ext = laurent_extend(base, "z")
        assert ext.order == 2 * base.order
        assert ext.symbol.target_rank == base.symbol.target_rank + base.group.rank
        assert validate_model(ext).ok


def test_restriction_to_base_classes():
    ext = laurent_extend(Q3, "t")
    for a in Q3.group.elements():
        for b in Q3.group.elements():
            assert ext.q(a, b) == Q3.q(a, b)


def test_symbol_formula_on_t():
    ext = laurent_extend(Q3, "t")
    t = ext.element("t")
    shift = Q3.symbol.target_rank
    for a in Q3.group.elements():
        # second component of q(a, t) is the class a itself
        assert ext.q(a, t) >> shift == a
    assert ext.q(t, t) >> shift == Q3.minus_one


def test_name_collision():
    with pytest.raises(NameCollision):
        laurent_extend(Q3, "2")


def test_positive_cone_has_no_t_component():
    ext = laurent_extend(Q3, "t")
    assert positive_cone(ext) == positive_cone(Q3)


def test_reals_twice_is_reals_st():
    reals = catalog_model("reals")
    assert laurent_extend(laurent_extend(reals, "s"), "t") == ST


def test_tower_trivial():
    assert tower(Q3, 1) is Q3


def test_residue_decompose_examples():
    res = residue_decompose(form(MRT, "<1,-2,-t,2*t>"))
    assert res.first == form(MR, "<1,-2>") and res.second == form(MR, "<-1,2>")
    res = residue_decompose(form(ST, "<1,s,t,-s*t>"))
    base = ST.extension.base
    assert res.first == form(base, "<1,s>") and res.second == form(base, "<1,-s>")
    res = residue_decompose(form(MRT, "<1,-2>"))
    assert res.second.dim == 0
    with pytest.raises(NotAnExtension):
        residue_decompose(form(Q3, "<1>"))


def test_springer_examples():
    assert not is_isotropic(form(MRT, "<1,-t>"))
    assert is_isotropic(form(MRT, "<1,-1,t>"))
    assert springer_agrees(form(MRT, "<1,-t>"))


@pytest.mark.parametrize("base", [MR, Q3, Q5], ids=lambda m: m.name)
def test_springer_exhaustive(base):
    assert springer_check(laurent_extend(base, "t"), max_dim=4).ok


def test_springer_sampled_on_big_extension():
    report = springer_check(tower(Q3, 3), max_dim=6, samples=300, seed=1)
    assert report.ok
    assert "sampled seed=1" in report.results[0].detail


@pytest.mark.parametrize("base", [MR, Q3, Q5], ids=lambda m: m.name)
def test_laurent_proposition(base):
    assert prop_laurent_check(base).ok


def test_minimal_real_t_supreme():
    pi = supreme_search(MRT)
    assert isometric(pi, form(MRT, "<1,-2,-t,2*t>"))


def test_tower_supreme_and_u():
    t2 = tower(MR, 2)
    assert isometric(supreme_search(t2), pfister_build(t2, [t2.element("2"), t2.element("t_1")]))
    assert u_from_torsion(tower(MR, 3)) == 8


def test_torsion_of_extension_is_product_of_residues():
    # W_t(F((t))) <-> W_t(F) x W_t(F) via the two residue forms
    ext = laurent_extend(Q3, "t")
    base_classes = set(torsion_subgroup(Q3))
    pairs = set()
    for c in torsion_subgroup(ext):
        res = residue_decompose(c.form)
        p = (witt_class(res.first), witt_class(res.second))
        assert p[0] in base_classes and p[1] in base_classes
        pairs.add(p)
    assert len(pairs) == len(base_classes) ** 2 == len(torsion_subgroup(ext))
