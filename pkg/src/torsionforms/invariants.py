"""Field invariants: u, the Hasse number, Pythagoras number, height, sums of squares."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .errors import (
    CapTooSmall,
    ConsistencyViolation,
    NotTotallyPositive,
    SubgroupViolation,
    TheoremViolation,
)
from .forms import QuadraticForm, isometric, ones, subform_test
from .model import FieldModel, positive_cone, require_real
from .pfister import pfister_build
from .reports import TheoremReport
from .witt import supreme_search, torsion_subgroup


def u_invariant(model: FieldModel) -> int:
    """Largest dimension of an anisotropic torsion form."""
    require_real(model)
    if model.pythagorean:
        return 0
    u = max(c.dim for c in torsion_subgroup(model))
    pi = supreme_search(model)
    if pi is not None and pi.dim != u:
        raise TheoremViolation(f"u = {u} but the supreme form has dim {pi.dim}", witness=str(pi))
    return u


def length(model: FieldModel, s: int) -> int:
    """Least k with s a sum of k squares."""
    require_real(model)
    if s not in positive_cone(model):
        raise NotTotallyPositive(f"{model.format(s)} is not totally positive")
    return model.engine.length(s)


def pythagoras_number(model: FieldModel) -> int:
    require_real(model)
    return max(length(model, s) for s in positive_cone(model))


def _next_power_of_two(n: int) -> int:
    k = 1
    while k < n:
        k *= 2
    return k


def height(model: FieldModel) -> int:
    """Exponent of the torsion subgroup, cross-checked against the Pythagoras number."""
    require_real(model)
    h = 1 if model.pythagorean else torsion_subgroup(model).exponent
    p = pythagoras_number(model)
    if h != _next_power_of_two(p):
        raise ConsistencyViolation(f"height {h} but least 2-power >= p={p} is {_next_power_of_two(p)}")
    return h


@dataclass
class SumsChain:
    """D(1), D(2), D(4), ... up to the full cone, as sorted element lists."""

    levels: list  # (k, tuple of elements) for k = 1, 2, 4, ...
    cone: tuple

    @property
    def indices(self):
        out = []
        for (k1, a), (k2, b) in zip(self.levels, self.levels[1:]):
            out.append((k2, k1, len(b) // len(a)))
        return out

    def level(self, k: int):
        for kk, elems in self.levels:
            if kk == k:
                return elems
        return self.cone

    def index(self, big, small) -> int:
        """[D(big) : D(small)]; ``big=None`` means D(infinity)."""
        top = self.cone if big is None else self.level(big)
        return len(top) // len(self.level(small))

    def lines(self, model):
        fmt = model.format
        out = [f"D({k}) = {{{', '.join(fmt(x) for x in elems)}}}" for k, elems in self.levels]
        for big, small, idx in self.indices:
            out.append(f"[D({big}):D({small})] = {idx}")
        return out


def sums_chain(model: FieldModel) -> SumsChain:
    require_real(model)
    eng = model.engine
    cone = tuple(positive_cone(model))
    levels = []
    k = 1
    while True:
        mask = eng.sums(k)
        elems = tuple(x for x in model.group.elements() if mask >> x & 1)
        for a in elems:
            for b in elems:
                if not mask >> (a ^ b) & 1:
                    raise SubgroupViolation(
                        f"D({k}) not closed: {model.format(a)} * {model.format(b)}")
        if levels and set(elems) == set(levels[-1][1]) and set(elems) != set(cone):
            raise ConsistencyViolation(f"sums of squares stabilize at D({levels[-1][0]}) below the positive cone")
        levels.append((k, elems))
        if set(elems) == set(cone):
            break
        k *= 2
    chain = SumsChain(levels, cone)
    pi = supreme_search(model) if not model.pythagorean else None
    if pi is not None:
        n = pi.dim.bit_length() - 1
        half = 2 ** (n - 1) if n else None
        if half and pythagoras_number(model) > half:
            idx = chain.index(None, half)
            if idx != 2:
                raise TheoremViolation(f"[D(inf):D({half})] = {idx}, expected 2")
    return chain


@dataclass(frozen=True)
class LowerBound:
    value: int
    cap: int

    def __str__(self):
        return f">={self.value}"


def _totally_indefinite(rep, orderings) -> bool:
    n = len(rep)
    return all(abs(sum(o.sign(x) for x in rep)) < n for o in orderings)


def hasse_number(model: FieldModel, dim_cap: int = None):
    """Largest dimension of an anisotropic totally indefinite form.

    Breadth-first over anisotropic forms.  The value is exact once some
    dimension d >= max(#orderings, 2) has no anisotropic totally indefinite
    forms: above that bound dropping a suitable diagonal entry keeps a form
    totally indefinite, so none exist in any larger dimension either.
    Otherwise a ``LowerBound`` is returned.
    """
    require_real(model)
    u = u_invariant(model)
    if dim_cap is None:
        dim_cap = max(8, 2 * u)
    if dim_cap < u:
        raise CapTooSmall(f"dim_cap {dim_cap} is below u = {u}")
    eng = model.engine
    orderings = model.orderings
    m1 = model.minus_one
    threshold = max(len(orderings), 2)
    best = 0
    level = {()}
    for d in range(1, dim_cap + 1):
        nxt = set()
        for rep in level:
            mask = eng.rep_mask(Counter(rep))
            for a in model.group.elements():
                if mask >> (a ^ m1) & 1:
                    continue
                new = eng.canonical(Counter(rep + (a,)))
                if new in nxt:
                    continue
                # a subform of a totally indefinite form of dim <= cap
                if any(abs(sum(o.sign(x) for x in new)) > 2 * dim_cap - d - 2 for o in orderings):
                    continue
                nxt.add(new)
        found = any(_totally_indefinite(r, orderings) for r in nxt)
        if found:
            best = d
        elif d >= threshold:
            return best
        level = nxt
    return LowerBound(best, dim_cap)


def height_theorem_checks(model: FieldModel) -> TheoremReport:
    """Height bound, its equality case, and the <<x,-1,...,-1>> shape of pi."""
    report = TheoremReport(f"sums of squares {model.name}")
    require_real(model)
    pi = None if model.pythagorean else supreme_search(model)
    if pi is None:
        report.skip("h <= 2^n", "no supreme torsion form")
        return report
    n = pi.dim.bit_length() - 1
    h = height(model)
    p = pythagoras_number(model)
    report.record("h <= 2^n", h <= 2 ** n, f"h={h}, n={n}")
    half = 2 ** (n - 1) if n else 0
    contains = subform_test(ones(model, half), pi) if half else True
    report.record("h = 2^n iff 2^(n-1) x <1> in pi", (h == 2 ** n) == contains,
                  f"h=2^n: {h == 2 ** n}, subform: {contains}")
    if not half or p <= half:
        report.skip("[D(inf):D(2^(n-1))] = 2", f"p={p} <= 2^(n-1)={half}")
        report.skip("pi = <<x,-1,...,-1>>", f"p={p} <= 2^(n-1)={half}")
        return report
    chain = sums_chain(model)
    idx = chain.index(None, half)
    report.record("[D(inf):D(2^(n-1))] = 2", idx == 2, f"index {idx}")
    m1 = model.minus_one
    bad = []
    xs = [x for x in positive_cone(model) if length(model, x) > half]
    for x in xs:
        if not isometric(pi, pfister_build(model, (x,) + (m1,) * (n - 1))):
            bad.append(model.format(x))
    report.record("pi = <<x,-1,...,-1>>", not bad,
                  ("x in {" + ", ".join(model.format(x) for x in xs) + "}") if not bad else "x=" + ", ".join(bad))
    return report


@dataclass
class InvariantReport:
    model: FieldModel
    u: int
    hasse_u: object
    pythagoras: int
    height: int
    square_class_count: int
    ordering_count: int
    chain: SumsChain = field(repr=False)

    def items(self):
        return [
            ("model", self.model.name),
            ("square_classes", str(self.square_class_count)),
            ("orderings", str(self.ordering_count)),
            ("u", str(self.u)),
            ("hasse_u", str(self.hasse_u)),
            ("pythagoras", str(self.pythagoras)),
            ("height", str(self.height)),
        ]

    def lines(self):
        rows = self.items()
        width = max(len(k) for k, _ in rows)
        out = [f"{k.ljust(width)}  {v}" for k, v in rows]
        return out + self.chain.lines(self.model)

    def machine_lines(self):
        out = [f"{k}={v}" for k, v in self.items()]
        for k, elems in self.chain.levels:
            out.append(f"D({k})=" + ",".join(self.model.format(x) for x in elems))
        for big, small, idx in self.chain.indices:
            out.append(f"index({big},{small})={idx}")
        return out


def invariant_report(model: FieldModel, dim_cap: int = None) -> InvariantReport:
    require_real(model)
    return InvariantReport(
        model=model,
        u=u_invariant(model),
        hasse_u=hasse_number(model, dim_cap),
        pythagoras=pythagoras_number(model),
        height=height(model),
        square_class_count=model.order,
        ordering_count=len(model.orderings),
        chain=sums_chain(model),
    )
