"""2-real-maximality through its finite criteria."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ConsistencyViolation, IsotropicInput, NotPfister, TheoremViolation
from .forms import QuadraticForm, is_isotropic, rep_set, subform_test
from .model import FieldModel, positive_cone, require_real
from .pfister import is_pfister, pure_part
from .reports import TheoremReport
from .witt import supreme_search, torsion_subgroup

BINARY = "binary torsion subforms"
PURE = "pure part values"


@dataclass(frozen=True)
class RealMaxVerdict:
    form: QuadraticForm
    verdict: bool
    criterion: str
    witness: object = None  # failing binary form, or a missing class

    def describe(self) -> str:
        if self.verdict:
            return "true"
        w = self.witness
        if isinstance(w, QuadraticForm):
            return f"false (witness {w})"
        return f"false (witness {self.form.model.format(w)})"


def is_2_real_maximal(model: FieldModel, phi: QuadraticForm) -> RealMaxVerdict:
    """True iff every binary torsion form <1,-a> (a totally positive, a != 1)
    is similar to a subform of ``phi``."""
    require_real(model)
    if is_isotropic(phi):
        raise IsotropicInput(f"{phi} is isotropic")
    m1 = model.minus_one
    for a in positive_cone(model):
        if a == 0:
            continue
        beta = QuadraticForm(model, (0, a ^ m1))
        if not subform_test(beta, phi, up_to_similarity=True):
            return RealMaxVerdict(phi, False, BINARY, beta)
    return RealMaxVerdict(phi, True, BINARY)


def pfister_pure_criterion(model: FieldModel, pi: QuadraticForm) -> RealMaxVerdict:
    """For an anisotropic Pfister form: -s in D(pi') for every totally positive s != 1."""
    require_real(model)
    if is_isotropic(pi):
        raise IsotropicInput(f"{pi} is isotropic")
    if not is_pfister(pi):
        raise NotPfister(f"{pi} is not a Pfister form")
    m1 = model.minus_one
    values = rep_set(pure_part(pi)) if pi.dim > 1 else frozenset()
    out = RealMaxVerdict(pi, True, PURE)
    for s in positive_cone(model):
        if s and s ^ m1 not in values:
            out = RealMaxVerdict(pi, False, PURE, s ^ m1)
            break
    other = is_2_real_maximal(model, pi)
    if other.verdict != out.verdict:
        raise ConsistencyViolation(
            f"criteria disagree on {pi}: pure part says {out.verdict}, binary subforms say {other.verdict}")
    return out


def pfister_torsion_forms(model: FieldModel):
    """Anisotropic torsion representatives that are Pfister forms."""
    return [r for r in torsion_subgroup(model).representatives() if is_pfister(r)]


def supreme_implies_realmax_check(model: FieldModel) -> TheoremReport:
    report = TheoremReport(f"2-real-maximal {model.name}")
    require_real(model)
    pi = None if model.pythagorean else supreme_search(model)
    if pi is None:
        report.skip("supreme is 2-real-maximal", "no supreme torsion form")
        return report
    v1 = is_2_real_maximal(model, pi)
    report.record("supreme passes binary criterion", v1.verdict, f"{pi}: {v1.describe()}")
    try:
        v2 = pfister_pure_criterion(model, pi)
        report.record("supreme passes pure-part criterion", v2.verdict, f"{pi}: {v2.describe()}")
    except (ConsistencyViolation, NotPfister) as exc:
        report.record("supreme passes pure-part criterion", False, str(exc))
    agree, maximal = True, []
    for r in pfister_torsion_forms(model):
        try:
            v = pfister_pure_criterion(model, r)
        except ConsistencyViolation as exc:
            agree = False
            report.record("criteria agree on torsion Pfister forms", False, str(exc))
            break
        if v.verdict:
            maximal.append(str(r))
    if agree:
        report.record("criteria agree on torsion Pfister forms", True,
                      "2-real-maximal: " + (", ".join(maximal) or "none"))
    return report


def require_supreme_realmax(model: FieldModel) -> TheoremReport:
    report = supreme_implies_realmax_check(model)
    if not report.ok:
        raise TheoremViolation(f"{model.name}: supreme form is not 2-real-maximal",
                               witness=report.failures()[0].detail)
    return report
