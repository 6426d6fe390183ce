"""Witt classes, the torsion subgroup W_t, and supreme torsion forms."""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field

from .errors import (
    CapExceeded,
    ConsistencyViolation,
    CapTooSmall,
    LocalGlobalViolation,
    ModelMismatch,
    SearchExhausted,
    TheoremViolation,
    Unsupported,
)
from .forms import (
    QuadraticForm,
    anisotropic_part,
    is_hyperbolic,
    is_universal,
    isometric,
    rep_set,
    signature,
    subform_test,
)
from .model import FieldModel, positive_cone, require_real
from .pfister import pfister_build, pfister_recognize, pfister_recognize_similar
from .reports import TheoremReport

DEFAULT_ORDER_CAP = 64


@dataclass(frozen=True)
class WittClass:
    """A Witt class, held as its canonical anisotropic representative."""

    model: FieldModel
    rep: tuple

    @property
    def form(self) -> QuadraticForm:
        return QuadraticForm(self.model, self.rep)

    @property
    def dim(self) -> int:
        return len(self.rep)

    @property
    def is_zero(self) -> bool:
        return not self.rep

    def sort_key(self):
        return (len(self.rep), self.rep)

    def __add__(self, other):
        return witt_sum(self, other)

    def __neg__(self):
        return witt_neg(self)

    def __str__(self):
        return str(self.form)


@dataclass(frozen=True)
class Capped:
    """Order not reached within ``cap`` doublings' worth of multiples."""

    cap: int

    def __str__(self):
        return f">{self.cap}"


def witt_class(phi: QuadraticForm) -> WittClass:
    eng = phi.model.engine
    _, rest = eng.reduce(phi.entries)
    return WittClass(phi.model, eng.canonical(rest))


def zero_class(model: FieldModel) -> WittClass:
    return WittClass(model, ())


def _memo(model, name):
    eng = model.engine
    table = getattr(eng, name, None)
    if table is None:
        table = {}
        setattr(eng, name, table)
    return table


def witt_sum(c1: WittClass, c2: WittClass) -> WittClass:
    if c1.model is not c2.model and c1.model != c2.model:
        raise ModelMismatch(f"classes over {c1.model.name} and {c2.model.name}")
    key = (c1.rep, c2.rep) if c1.rep <= c2.rep else (c2.rep, c1.rep)
    memo = _memo(c1.model, "_witt_sums")
    out = memo.get(key)
    if out is None:
        eng = c1.model.engine
        _, rest = eng.reduce(c1.rep + c2.rep)
        out = eng.canonical(rest)
        memo[key] = out
    return WittClass(c1.model, out)


def witt_neg(c: WittClass) -> WittClass:
    return witt_class(-c.form)


def witt_order(c: WittClass, cap: int = DEFAULT_ORDER_CAP):
    """Least 2-power k with k*c = 0 by repeated doubling, or ``Capped(cap)``."""
    if c.is_zero:
        return 1
    memo = _memo(c.model, "_witt_orders")
    key = (c.rep, cap)
    if key in memo:
        return memo[key]
    k, d = 1, c
    out = Capped(cap)
    while k < cap:
        d = witt_sum(d, d)
        k *= 2
        if d.is_zero:
            out = k
            break
    memo[key] = out
    return out


def is_torsion(phi: QuadraticForm, method: str = "signature", cap: int = DEFAULT_ORDER_CAP) -> bool:
    """Torsion test by vanishing signatures, by finite Witt order, or both."""
    require_real(phi.model)
    if method not in ("signature", "order", "both"):
        raise ValueError(f"unknown method {method!r}")
    by_sig = all(signature(phi, s) == 0 for s in phi.model.orderings)
    if method == "signature":
        return by_sig
    order = witt_order(witt_class(phi), cap)
    if method == "order":
        if isinstance(order, Capped):
            raise CapExceeded(f"order of {phi} exceeds {cap}")
        return True
    by_order = not isinstance(order, Capped)
    if by_sig != by_order:
        raise LocalGlobalViolation(
            f"{phi}: signatures {'vanish' if by_sig else 'do not vanish'} but order is {order}"
        )
    return by_sig


# ---------- the torsion subgroup


@dataclass
class TorsionSubgroup:
    model: FieldModel
    classes: tuple
    _orders: dict = field(default_factory=dict, repr=False)

    def __len__(self):
        return len(self.classes)

    def __iter__(self):
        return iter(self.classes)

    def __contains__(self, c):
        return c in self.classes

    def nonzero(self):
        return [c for c in self.classes if not c.is_zero]

    def representatives(self, include_zero: bool = False):
        return [c.form for c in self.classes if include_zero or not c.is_zero]

    def order_of(self, c: WittClass):
        if c not in self._orders:
            self._orders[c] = witt_order(c, cap=max(DEFAULT_ORDER_CAP, 2 * len(self.classes)))
        return self._orders[c]

    @property
    def exponent(self) -> int:
        return max(self.order_of(c) for c in self.classes)

    def cayley_table(self):
        index = {c: i for i, c in enumerate(self.classes)}
        return [[index[witt_sum(a, b)] for b in self.classes] for a in self.classes]


def binary_torsion_generators(model: FieldModel):
    """Classes of a<1, -s> for a in G, s totally positive."""
    m1 = model.minus_one
    out = set()
    for s in positive_cone(model):
        for a in model.group.elements():
            out.add(witt_class(QuadraticForm(model, (a, a ^ s ^ m1))))
    return sorted(out, key=WittClass.sort_key)


def torsion_subgroup(model: FieldModel) -> TorsionSubgroup:
    """W_t as the closure of the binary torsion classes under Witt addition."""
    memo = _memo(model, "_torsion")
    if "group" in memo:
        return memo["group"]
    require_real(model)
    gens = [g for g in binary_torsion_generators(model) if not g.is_zero]
    zero = zero_class(model)
    seen = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for c in frontier:
            for g in gens:
                s = witt_sum(c, g)
                if s not in seen:
                    seen.add(s)
                    nxt.append(s)
        frontier = nxt
    for c in seen:
        sigs = [signature(c.form, o) for o in model.orderings]
        if any(sigs):
            raise LocalGlobalViolation(f"generated class {c} has signatures {sigs}")
    group = TorsionSubgroup(model, tuple(sorted(seen, key=WittClass.sort_key)))
    memo["group"] = group
    return group


def torsion_bfs_oracle(model: FieldModel, dim_cap: int):
    """Anisotropic forms of dim <= ``dim_cap`` with all signatures zero.

    Independent of the closure: breadth-first over anisotropic forms, adding
    one entry at a time and pruning forms whose signature cannot reach zero
    within the cap.  Returns canonical nonzero representatives.
    """
    if dim_cap < 2:
        raise CapTooSmall(f"dim_cap must be at least 2, got {dim_cap}")
    require_real(model)
    eng = model.engine
    orderings = model.orderings
    m1 = model.minus_one
    found = set()
    level = {()}
    for d in range(dim_cap):
        nxt = set()
        for rep in level:
            mask = eng.rep_mask(Counter(rep))
            for a in model.group.elements():
                if mask >> (a ^ m1) & 1:
                    continue
                new = eng.canonical(Counter(rep + (a,)))
                if new in nxt:
                    continue
                worst = max(abs(sum(o.sign(x) for x in new)) for o in orderings)
                if d + 1 + worst > dim_cap:
                    continue
                nxt.add(new)
        for rep in nxt:
            if all(sum(o.sign(x) for x in rep) == 0 for o in orderings):
                found.add(rep)
        level = nxt
    return {QuadraticForm(model, r) for r in found}


def u_from_torsion(model: FieldModel) -> int:
    group = torsion_subgroup(model)
    return max(c.dim for c in group.classes)


# ---------- supreme torsion forms


def _is_supreme_candidate(phi, reps, similarity=True):
    return all(subform_test(psi, phi, up_to_similarity=similarity) for psi in reps)


def supreme_candidates(model: FieldModel):
    """All torsion representatives containing every representative up to similarity."""
    reps = torsion_subgroup(model).representatives()
    if not reps:
        return []
    top = max(r.dim for r in reps)
    return [phi for phi in reps if phi.dim == top and _is_supreme_candidate(phi, reps)]


def supreme_search(model: FieldModel):
    """The supreme torsion form (canonical representative), or None.

    Raises TheoremViolation if a supreme form exists but is not unique, not a
    Pfister form, or does not contain every representative as a plain subform.
    """
    require_real(model)
    if model.pythagorean:
        return None
    found = supreme_candidates(model)
    if not found:
        return None
    if len(found) > 1:
        raise TheoremViolation("supreme torsion form not unique", witness=", ".join(map(str, found)))
    pi = found[0]
    reps = torsion_subgroup(model).representatives()
    for psi in reps:
        if not subform_test(psi, pi):
            raise TheoremViolation("supreme form misses a plain subform", witness=f"{psi} in {pi}")
    if pfister_recognize(pi) is None:
        raise TheoremViolation("supreme form is not a Pfister form", witness=str(pi))
    return pi


def signed_discriminant(phi: QuadraticForm) -> int:
    d = 0
    for a in phi.entries:
        d ^= a
    n = phi.dim
    if (n * (n - 1) // 2) & 1:
        d ^= phi.model.minus_one
    return d


def clifford_invariant(phi: QuadraticForm) -> int:
    """Clifford invariant of an even-dimensional form with trivial signed discriminant."""
    model = phi.model
    e = phi.entries
    out = 0
    for i in range(len(e)):
        row = model.q_table[e[i]]
        for j in range(i + 1, len(e)):
            out ^= row[e[j]]
    if len(e) % 8 in (4, 6):
        m1 = model.minus_one
        out ^= model.q(m1, m1)
    return out


def in_ideal_power(phi: QuadraticForm, m: int) -> bool:
    """Membership of the Witt class of ``phi`` in I^m, for m <= 3."""
    if m <= 0:
        return True
    if m > 3:
        raise Unsupported(f"I^{m} membership is only decided for m <= 3")
    if phi.dim % 2:
        return False
    if m == 1:
        return True
    if signed_discriminant(phi) != 0:
        return False
    if m == 2:
        return True
    return clifford_invariant(phi) == 0


def _fold(pi: QuadraticForm) -> int:
    return pi.dim.bit_length() - 1


def verify_supreme_properties(model: FieldModel, pi: QuadraticForm = None) -> TheoremReport:
    report = TheoremReport(f"supreme properties {model.name}")
    if pi is None:
        pi = supreme_search(model)
    if pi is None:
        report.skip("supreme form", "none exists")
        return report
    group = torsion_subgroup(model)
    reps = group.representatives()
    n = _fold(pi)
    u = max(r.dim for r in reps)

    report.record("u = dim pi", u == pi.dim, f"u={u}, dim={pi.dim}")
    slots = pfister_recognize(pi) if pi.dim & (pi.dim - 1) == 0 else None
    report.record("pi is Pfister", slots is not None,
                  str(pi) if slots is None else f"{pi} = " + _slots_str(model, slots))

    universal = [r for r in reps if is_universal(r)]
    report.record("pi is the unique universal torsion form",
                  len(universal) == 1 and isometric(universal[0], pi),
                  ", ".join(map(str, universal)) or "none universal")

    report.record("I_t^(n+1) trivial (u < 2^(n+1))", u < 2 ** (n + 1), f"u={u}, n={n}")

    others = [r for r in reps if r.dim == 2 ** n and not isometric(r, pi) and pfister_recognize(r) is not None]
    report.record("pi is the unique torsion n-fold Pfister form", not others,
                  ", ".join(map(str, others)) or f"n={n}")

    m = n - 1
    if m > 3:
        report.unsupported("I_t^(n-1) forms are pi or similar to (n-1)-fold Pfister", f"I^{m} membership")
    else:
        bad = []
        for r in reps:
            if not in_ideal_power(r, m) or isometric(r, pi):
                continue
            if r.dim != 2 ** m or pfister_recognize_similar(r) is None:
                bad.append(r)
        report.record("I_t^(n-1) forms are pi or similar to (n-1)-fold Pfister", not bad,
                      ", ".join(map(str, bad)) or f"n-1={m}")
    return report


def _slots_str(model, slots):
    from .syntax import format_pfister

    return format_pfister(model.group, slots)


def pfister_multiplier(model: FieldModel, phi: QuadraticForm, fold_cap: int = None):
    """Slots of a Pfister form psi with phi (x) psi Witt equivalent to the supreme form.

    Searches fold counts m = 0, 1, ... in order, so the result has minimal m.
    """
    pi = supreme_search(model)
    if pi is None:
        raise SearchExhausted(f"{model.name} has no supreme torsion form")
    if is_hyperbolic(phi):
        raise ValueError(f"{phi} is hyperbolic")
    n = _fold(pi)
    if fold_cap is None:
        fold_cap = n + 2
    target = witt_class(pi)
    elems = [a for a in model.group.elements() if a]
    found = None
    for m in range(fold_cap + 1):
        for slots in itertools.combinations(elems, m):
            psi = pfister_build(model, slots)
            if witt_class(phi.tensor(psi)) == target:
                found = slots
                break
        if found is not None:
            break
    if found is None:
        raise SearchExhausted(f"no Pfister multiplier with at most {fold_cap} slots for {phi}")
    for k in range(1, min(n, 3) + 1):
        if in_ideal_power(phi, k) and phi.dim < 2 ** (k + 1) and len(found) != n - k:
            raise TheoremViolation(
                f"{phi} in I^{k} with dim < 2^{k + 1} needs {len(found)} slots, expected {n - k}",
                witness=_slots_str(model, found),
            )
    return found


def kneser_check(model: FieldModel) -> TheoremReport:
    """D(phi) is strictly smaller than D(phi _|_ beta) for non-universal torsion
    phi and anisotropic binary torsion beta."""
    report = TheoremReport(f"kneser {model.name}")
    reps = torsion_subgroup(model).representatives()
    phis = [r for r in reps if not is_universal(r)]
    betas = [r for r in reps if r.dim == 2]
    witness = None
    for phi in phis:
        d_phi = rep_set(phi)
        for beta in betas:
            if not d_phi < rep_set(phi + beta):
                witness = (phi, beta)
                break
        if witness:
            break
    detail = f"{len(phis)} non-universal x {len(betas)} binary" if witness is None else \
        f"phi={witness[0]} beta={witness[1]}"
    report.record("strict growth of value sets", witness is None, detail)
    return report


@dataclass
class UniversalProbe:
    universal: list
    supreme: object
    holds: object  # True/False, or None when vacuous

    def lines(self):
        out = ["universal: " + (", ".join(map(str, self.universal)) or "none")]
        out.append(f"supreme: {self.supreme if self.supreme is not None else 'none'}")
        verdict = {True: "holds", False: "fails", None: "vacuous"}[self.holds]
        out.append(f"unique universal implies supreme: {verdict} on this model")
        return out


def universal_probe(model: FieldModel) -> UniversalProbe:
    """Evidence on whether a unique universal anisotropic torsion form must be supreme."""
    reps = torsion_subgroup(model).representatives() if not model.pythagorean else []
    universal = [r for r in reps if is_universal(r)]
    supreme = supreme_search(model) if reps else None
    if len(universal) != 1:
        holds = None
    else:
        holds = supreme is not None and isometric(universal[0], supreme)
    return UniversalProbe(universal, supreme, holds)


def local_global_check(model: FieldModel, max_dim: int = 6) -> TheoremReport:
    """Signature torsion agrees with finite Witt order for every form of dim <= ``max_dim``."""
    require_real(model)
    report = TheoremReport(f"local-global {model.name}")
    elems = list(model.group.elements())
    count = torsion = 0
    witness = None
    for d in range(1, max_dim + 1):
        for combo in itertools.combinations_with_replacement(elems, d):
            phi = QuadraticForm(model, combo)
            count += 1
            try:
                torsion += is_torsion(phi, method="both")
            except LocalGlobalViolation as exc:
                witness = str(exc)
                break
        if witness:
            break
    report.record("signature torsion iff finite order", witness is None,
                  witness or f"{count} forms of dim <= {max_dim}, {torsion} torsion")
    return report


def bfs_closure_check(model: FieldModel, dim_cap: int = None) -> TheoremReport:
    """The breadth-first oracle finds exactly the closure's nonzero representatives."""
    require_real(model)
    report = TheoremReport(f"torsion enumeration {model.name}")
    group = torsion_subgroup(model)
    reps = {c.form for c in group.nonzero()}
    top = max((r.dim for r in reps), default=0)
    if dim_cap is None:
        dim_cap = max(top, 2)
    oracle = torsion_bfs_oracle(model, dim_cap)
    expected = {r for r in reps if r.dim <= dim_cap}
    missing = sorted(map(str, expected - oracle))
    extra = sorted(map(str, oracle - expected))
    detail = f"{len(oracle)} forms up to dim {dim_cap}"
    if missing or extra:
        detail = "missing " + (", ".join(missing) or "none") + "; extra " + (", ".join(extra) or "none")
    report.record("breadth-first oracle equals closure", not missing and not extra, detail)
    return report


@dataclass(frozen=True)
class ConsistencyFlags:
    """Per-model evidence that a symbol table behaves like a field.

    Each flag is a finite check; a table may pass all of them and still
    not be realizable, so ``field_like`` is trust, not a certificate.
    """

    local_global: bool
    torsion_generation: bool
    sums_of_squares: bool
    max_dim: int

    @property
    def field_like(self) -> bool:
        return self.local_global and self.torsion_generation and self.sums_of_squares

    def lines(self):
        return [
            f"local_global_dim{self.max_dim}={'true' if self.local_global else 'false'}",
            f"torsion_generation={'true' if self.torsion_generation else 'false'}",
            f"sums_of_squares_fill_cone={'true' if self.sums_of_squares else 'false'}",
            f"field_like={'true' if self.field_like else 'false'}",
        ]


def consistency_flags(model: FieldModel, max_dim: int = 4) -> ConsistencyFlags:
    """Run the cheap field-likeness checks on a formally real model (memoized)."""
    require_real(model)
    memo = _memo(model, "_flags")
    if max_dim in memo:
        return memo[max_dim]
    try:
        lg = local_global_check(model, max_dim).ok
    except ConsistencyViolation:
        lg = False
    try:
        gen = bfs_closure_check(model).ok
    except ConsistencyViolation:
        gen = False
    eng = model.engine
    k = 1
    while eng.sums(k) != eng.sums(2 * k):
        k *= 2
    sums_ok = eng.sums(k) == model.positive_cone_mask
    memo[max_dim] = flags = ConsistencyFlags(lg, gen, sums_ok, max_dim)
    return flags
