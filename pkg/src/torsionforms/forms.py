"""Diagonal quadratic forms over a field model and the core form algebra.

Everything is decided from binary value sets D<1, z> = {b : q(-z, b) = 0}:

* D<x, y> = x * D<1, xy>
* D(phi _|_ psi) = D(phi) u D(psi) u U{ D<x, y> : x in D(phi), y in D(psi) }
* <a> _|_ psi is isotropic iff psi is isotropic or -a in D(psi)

Representation sets are bitmasks over the square classes.  Internally forms
are handled as multisets (``Counter``), grouped into blocks ``m x <a>``;
D(m x <1>) is the set of sums of m squares, computed once per model.
Splitting ``phi = <b> _|_ psi`` is done constructively from the witnesses
that put ``b`` into D(phi).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .errors import ConsistencyViolation, DimensionExceeded, EmptyForm, ModelMismatch, TorsionFormsError
from .model import FieldModel, Ordering, bits
from .syntax import format_form, parse_form_entries


@dataclass(frozen=True)
class QuadraticForm:
    """A diagonalization <a1, ..., an>; entries are square-class bitmasks."""

    model: FieldModel
    entries: tuple

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))

    @classmethod
    def parse(cls, model: FieldModel, text: str) -> "QuadraticForm":
        return cls(model, parse_form_entries(model.group, text))

    @property
    def dim(self) -> int:
        return len(self.entries)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __str__(self):
        return format_form(self.model.group, self.entries)

    def __repr__(self):
        return f"QuadraticForm({self} over {self.model.name})"

    def _same_model(self, other: "QuadraticForm"):
        if self.model is not other.model and self.model != other.model:
            raise ModelMismatch(f"forms over {self.model.name} and {other.model.name}")

    def __add__(self, other: "QuadraticForm") -> "QuadraticForm":
        """Orthogonal sum."""
        self._same_model(other)
        return QuadraticForm(self.model, self.entries + other.entries)

    def __neg__(self) -> "QuadraticForm":
        return self.scale(self.model.minus_one)

    def scale(self, a: int) -> "QuadraticForm":
        return QuadraticForm(self.model, (a ^ x for x in self.entries))

    def tensor(self, other: "QuadraticForm") -> "QuadraticForm":
        self._same_model(other)
        return QuadraticForm(self.model, (x ^ y for x in self.entries for y in other.entries))

    def times(self, n: int) -> "QuadraticForm":
        return QuadraticForm(self.model, self.entries * n)

    def sorted(self) -> "QuadraticForm":
        return QuadraticForm(self.model, sorted(self.entries))


def form(model: FieldModel, value) -> QuadraticForm:
    """Build a form from a literal string or an iterable of elements/words."""
    if isinstance(value, QuadraticForm):
        return value
    if isinstance(value, str):
        return QuadraticForm.parse(model, value)
    return QuadraticForm(model, (model.element(x) if isinstance(x, str) else x for x in value))


def ones(model: FieldModel, n: int) -> QuadraticForm:
    return QuadraticForm(model, (0,) * n)


def _key(counts) -> tuple:
    return tuple(sorted((a, m) for a, m in counts.items() if m))


class FormEngine:
    """Per-model caches for value sets and splitting witnesses.

    Caches are filled idempotently; a lost race only recomputes an equal value.
    """

    def __init__(self, model: FieldModel):
        self.model = model
        self.order = model.order
        self.full = (1 << model.order) - 1
        self.m1 = model.minus_one
        self.unit = model.unit_rep
        self._translate = {}
        self._blocks = {}
        self._rep = {}
        self._sums = [0, 1]
        self._sums_stable = False
        self._sum_comp = {0: ()}
        self._canon = {}

    # -- value sets

    def translate(self, mask: int, a: int) -> int:
        if a == 0:
            return mask
        key = (mask, a)
        out = self._translate.get(key)
        if out is None:
            out = 0
            for x in bits(mask):
                out |= 1 << (x ^ a)
            self._translate[key] = out
        return out

    def binary(self, x: int, y: int) -> int:
        """D<x, y>."""
        return self.translate(self.unit[x ^ y], x)

    def sums(self, m: int) -> int:
        """D(m x <1>); the empty set for m = 0."""
        while m >= len(self._sums) and not self._sums_stable:
            prev = self._sums[-1]
            nxt = 0
            for c in bits(prev):
                nxt |= self.unit[c]
            if nxt == prev:
                self._sums_stable = True
            else:
                self._sums.append(nxt)
        return self._sums[min(m, len(self._sums) - 1)]

    def length(self, r: int):
        """Least m with r in D(m x <1>), or None if r is not a sum of squares."""
        m = 1
        while True:
            mask = self.sums(m)
            if mask >> r & 1:
                return m
            if self._sums_stable and m >= len(self._sums) - 1:
                return None
            m += 1

    def sum_complement(self, r: int) -> tuple:
        """Entries C with length(r) x <1>  =  <r> _|_ C."""
        out = self._sum_comp.get(r)
        if out is None:
            ell = self.length(r)
            if ell is None:
                raise TorsionFormsError(f"{self.model.format(r)} is not a sum of squares")
            prev = self.sums(ell - 1)
            for c in bits(prev):
                if self.unit[c] >> r & 1:
                    # (ell-1) x <1>  =  <c> _|_ C(c) _|_ pad, and <1, c>  =  <r, rc>
                    rest = self.sum_complement(c)
                    out = (r ^ c,) + rest + (0,) * (ell - 2 - len(rest))
                    break
            self._sum_comp[r] = out
        return out

    def block(self, a: int, m: int) -> int:
        key = (a, m)
        out = self._blocks.get(key)
        if out is None:
            out = self.translate(self.sums(m), a)
            self._blocks[key] = out
        return out

    def combine(self, X: int, Y: int) -> int:
        """D(phi _|_ psi) from D(phi) and D(psi)."""
        if not X:
            return Y
        if not Y:
            return X
        out = X | Y
        ys = list(bits(Y))
        ux = self.unit
        for x in bits(X):
            for y in ys:
                out |= self.translate(ux[x ^ y], x)
            if out == self.full:
                break
        return out

    def rep_mask(self, counts) -> int:
        key = _key(counts)
        out = self._rep.get(key)
        if out is None:
            out = 0
            for a, m in key:
                out = self.combine(out, self.block(a, m))
            self._rep[key] = out
        return out

    # -- splitting

    def split_block(self, a: int, m: int, y: int) -> list:
        """Entries C with m x <a>  =  <y> _|_ C."""
        r = y ^ a
        comp = self.sum_complement(r)
        extra = m - 1 - len(comp)
        return [a ^ c for c in comp] + [a] * extra

    def split(self, counts, b: int) -> Counter:
        """Complement of <b> in the form with multiset ``counts``."""
        blocks = _key(counts)
        prefix = [0]
        for a, m in blocks:
            prefix.append(self.combine(prefix[-1], self.block(a, m)))
        if not prefix[-1] >> b & 1:
            raise ConsistencyViolation(f"{self.model.format(b)} is not represented; table is not field-like")
        out = Counter()
        j = len(blocks)
        while True:
            a, m = blocks[j - 1]
            before = prefix[j - 1]
            bm = self.block(a, m)
            if before >> b & 1:
                out[a] += m
                j -= 1
                continue
            if bm >> b & 1:
                out.update(self.split_block(a, m, b))
                for a2, m2 in blocks[: j - 1]:
                    out[a2] += m2
                return out
            for x in bits(before):
                # b in D<x, y>  <=>  y in D<-x, b>
                hit = self.binary(x ^ self.m1, b) & bm
                if hit:
                    y = (hit & -hit).bit_length() - 1
                    out.update(self.split_block(a, m, y))
                    out[b ^ x ^ y] += 1
                    b = x
                    j -= 1
                    break
            else:
                raise ConsistencyViolation("inconsistent representation witnesses")

    # -- Witt decomposition

    def reduce(self, entries):
        """Witt index and anisotropic part (as a Counter) of ``entries``."""
        rho = Counter()
        mask = 0
        index = 0
        for a in entries:
            na = a ^ self.m1
            if rho[na]:
                rho[na] -= 1
                index += 1
                mask = self.rep_mask(rho)
            elif mask >> na & 1:
                rho = self.split(rho, na)
                index += 1
                mask = self.rep_mask(rho)
            else:
                rho[a] += 1
                mask = self.combine(mask, 1 << a)
        return index, +rho

    def canonical(self, counts) -> tuple:
        key = _key(counts)
        out = self._canon.get(key)
        if out is None:
            rest = Counter(dict(key))
            out = []
            while rest:
                mask = self.rep_mask(rest)
                b = (mask & -mask).bit_length() - 1
                out.append(b)
                rest = +self.split(rest, b)
            out = tuple(out)
            self._canon[key] = out
        return out


# ---------- public operations


def _engine(phi: QuadraticForm) -> FormEngine:
    return phi.model.engine


def rep_set(phi: QuadraticForm) -> frozenset:
    """The set of square classes represented by ``phi``."""
    if phi.dim == 0:
        raise EmptyForm("the zero form represents nothing")
    return frozenset(bits(_engine(phi).rep_mask(Counter(phi.entries))))


def represents(phi: QuadraticForm, b: int) -> bool:
    if phi.dim == 0:
        return False
    return bool(_engine(phi).rep_mask(Counter(phi.entries)) >> b & 1)


def is_universal(phi: QuadraticForm) -> bool:
    eng = _engine(phi)
    return phi.dim > 0 and eng.rep_mask(Counter(phi.entries)) == eng.full


def is_isotropic(phi: QuadraticForm) -> bool:
    eng = _engine(phi)
    rho = Counter()
    mask = 0
    for a in phi.entries:
        if mask >> (a ^ eng.m1) & 1:
            return True
        rho[a] += 1
        mask = eng.combine(mask, 1 << a)
    return False


def split_off(phi: QuadraticForm, b: int) -> QuadraticForm:
    """A form psi with phi = <b> _|_ psi; requires b in D(phi)."""
    comp = _engine(phi).split(Counter(phi.entries), b)
    return QuadraticForm(phi.model, sorted(comp.elements()))


def witt_index(phi: QuadraticForm) -> int:
    return _engine(phi).reduce(phi.entries)[0]


def canonicalize(phi: QuadraticForm) -> QuadraticForm:
    """Isometry-invariant diagonalization: greedily split off the least
    represented class."""
    return QuadraticForm(phi.model, _engine(phi).canonical(Counter(phi.entries)))


def witt_decompose(phi: QuadraticForm):
    """Return ``(i, phi_an)`` with phi = i x <1,-1> _|_ phi_an, phi_an canonical."""
    eng = _engine(phi)
    index, rest = eng.reduce(phi.entries)
    return index, QuadraticForm(phi.model, eng.canonical(rest))


def anisotropic_part(phi: QuadraticForm) -> QuadraticForm:
    return witt_decompose(phi)[1]


def is_hyperbolic(phi: QuadraticForm) -> bool:
    return 2 * witt_index(phi) == phi.dim


def isometric(phi: QuadraticForm, psi: QuadraticForm) -> bool:
    phi._same_model(psi)
    if phi.dim != psi.dim:
        return False
    return witt_index(phi + (-psi)) == phi.dim


def _plain_subform(psi: QuadraticForm, phi: QuadraticForm) -> bool:
    return witt_index(phi + (-psi)) >= psi.dim


def similarity_witness(psi: QuadraticForm, phi: QuadraticForm):
    """Least a with a*psi a subform of phi, or None."""
    phi._same_model(psi)
    if psi.dim > phi.dim:
        raise DimensionExceeded(f"dim {psi.dim} > dim {phi.dim}")
    for a in phi.model.group.elements():
        if _plain_subform(psi.scale(a), phi):
            return a
    return None


def subform_test(psi: QuadraticForm, phi: QuadraticForm, up_to_similarity: bool = False) -> bool:
    """Is ``psi`` (a scalar multiple of, if ``up_to_similarity``) a subform of ``phi``?"""
    phi._same_model(psi)
    if psi.dim > phi.dim:
        raise DimensionExceeded(f"dim {psi.dim} > dim {phi.dim}")
    if up_to_similarity:
        return similarity_witness(psi, phi) is not None
    return _plain_subform(psi, phi)


def signature(phi: QuadraticForm, sigma: Ordering) -> int:
    return sum(sigma.sign(a) for a in phi.entries)


def signatures(phi: QuadraticForm) -> list:
    return [signature(phi, s) for s in phi.model.orderings]
