"""Field models: a finite square-class group with a quaternion symbol map.

Elements of the square-class group are ``int`` bitmasks over the generator
list (bit ``i`` set means generator ``i`` occurs), so the group law is XOR
and the identity (the class of squares) is ``0``.  Element order everywhere
is the integer order of these bitmasks.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import AxiomViolation, NonRealModel, TorsionFormsError
from .syntax import format_element

MAX_RANK = 10


def bits(mask: int):
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def parity(x: int) -> int:
    return bin(x).count("1") & 1


class SquareClassGroup:
    """The group F*/F*^2 as GF(2)^k with a distinguished ``-1``."""

    def __init__(self, generator_names, minus_one: int):
        self.generator_names = tuple(generator_names)
        self.rank = len(self.generator_names)
        if self.rank > MAX_RANK:
            raise TorsionFormsError(f"rank {self.rank} exceeds the supported maximum {MAX_RANK}")
        self.order = 1 << self.rank
        self.minus_one = minus_one

    def elements(self):
        return range(self.order)

    def neg(self, a: int) -> int:
        return a ^ self.minus_one

    def generator(self, name: str) -> int:
        return 1 << self.generator_names.index(name)

    def format(self, a: int) -> str:
        return format_element(self, a)

    def __eq__(self, other):
        return (
            isinstance(other, SquareClassGroup)
            and self.generator_names == other.generator_names
            and self.minus_one == other.minus_one
        )

    def __hash__(self):
        return hash((self.generator_names, self.minus_one))

    def __repr__(self):
        return f"SquareClassGroup({list(self.generator_names)}, minus_one={self.format(self.minus_one)})"


class SymbolMap:
    """Bilinear map G x G -> GF(2)^m given by its values on generator pairs."""

    def __init__(self, target_rank: int, values):
        self.target_rank = target_rank
        self.values = tuple(tuple(row) for row in values)

    def evaluate(self, a: int, b: int) -> int:
        out = 0
        for i in bits(a):
            row = self.values[i]
            for j in bits(b):
                out ^= row[j]
        return out

    def __eq__(self, other):
        return (
            isinstance(other, SymbolMap)
            and self.target_rank == other.target_rank
            and self.values == other.values
        )

    def __hash__(self):
        return hash((self.target_rank, self.values))


@dataclass(frozen=True)
class Ordering:
    """A sign character on the square classes, stored as a GF(2) functional.

    ``sign(a) = (-1)**popcount(functional & a)``.
    """

    functional: int

    def sign(self, a: int) -> int:
        return -1 if parity(self.functional & a) else 1

    def is_positive(self, a: int) -> bool:
        return not parity(self.functional & a)

    def describe(self, group) -> str:
        parts = []
        for i, name in enumerate(group.generator_names):
            if 1 << i == group.minus_one:
                continue
            parts.append(f"{name}{'<' if self.functional >> i & 1 else '>'}0")
        return ",".join(parts) or "-1<0"


@dataclass(frozen=True)
class ExtensionDescriptor:
    """Records that a model is ``base((var))``; ``t_bit`` is the bitmask of ``var``."""

    base: "FieldModel"
    var: str
    t_bit: int


@dataclass
class Check:
    name: str
    passed: bool
    witness: str = ""


@dataclass
class ValidationReport:
    model_name: str
    checks: list = field(default_factory=list)
    formally_real: bool = False
    pythagorean: bool = False

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.passed]

    def lines(self):
        out = []
        for c in self.checks:
            status = "PASS" if c.passed else "FAIL"
            out.append(f"{status} {c.name}" + (f": {c.witness}" if c.witness else ""))
        out.append(f"INFO formally_real={str(self.formally_real).lower()}")
        out.append(f"INFO pythagorean={str(self.pythagorean).lower()}")
        return out


class FieldModel:
    """A finitely presented field: square classes plus quaternion symbol.

    Derived tables (full symbol table, binary value sets, orderings) are
    built on first use; they depend only on the immutable presentation.
    """

    def __init__(self, name: str, group: SquareClassGroup, symbol: SymbolMap, extension=None):
        if len(symbol.values) != group.rank or any(len(r) != group.rank for r in symbol.values):
            raise TorsionFormsError("symbol table shape does not match the generator count")
        self.name = name
        self.group = group
        self.symbol = symbol
        self.extension = extension
        self._key = (group.generator_names, group.minus_one, symbol.target_rank, symbol.values)
        self._q = None
        self._unit = None
        self._orderings = None
        self._cone = None
        self._engine = None

    # -- identity

    def __eq__(self, other):
        return isinstance(other, FieldModel) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"FieldModel({self.name!r}, |G|={self.order})"

    @property
    def order(self) -> int:
        return self.group.order

    @property
    def minus_one(self) -> int:
        return self.group.minus_one

    def element(self, word: str) -> int:
        from .syntax import parse_word

        return parse_word(self.group, word)

    def format(self, a: int) -> str:
        return format_element(self.group, a)

    # -- symbol

    @property
    def q_table(self):
        if self._q is None:
            k = self.group.rank
            vals = self.symbol.values
            table = []
            for a in range(self.order):
                row = [0] * k
                for i in bits(a):
                    for j in range(k):
                        row[j] ^= vals[i][j]
                full = [0] * self.order
                for b in range(1, self.order):
                    low = (b & -b).bit_length() - 1
                    full[b] = full[b & (b - 1)] ^ row[low]
                table.append(full)
            self._q = table
        return self._q

    def q(self, a: int, b: int) -> int:
        return self.q_table[a][b]

    @property
    def unit_rep(self):
        """``unit_rep[z]`` is the bitmask of D<1, z> = {b : q(-z, b) = 0}."""
        if self._unit is None:
            table = self.q_table
            m1 = self.minus_one
            out = []
            for z in range(self.order):
                row = table[z ^ m1]
                mask = 0
                for b in range(self.order):
                    if row[b] == 0:
                        mask |= 1 << b
                out.append(mask)
            self._unit = out
        return self._unit

    # -- orderings

    @property
    def orderings(self):
        if self._orderings is None:
            self._orderings = enumerate_orderings(self)
        return self._orderings

    @property
    def formally_real(self) -> bool:
        return bool(self.orderings)

    @property
    def positive_cone_mask(self) -> int:
        if self._cone is None:
            if not self.orderings:
                raise NonRealModel(f"model {self.name} has no orderings")
            mask = (1 << self.order) - 1
            for o in self.orderings:
                mask &= _positive_mask(self, o.functional)
            self._cone = mask
        return self._cone

    @property
    def pythagorean(self) -> bool:
        return self.positive_cone_mask == 1

    @property
    def engine(self):
        if self._engine is None:
            from .forms import FormEngine

            self._engine = FormEngine(self)
        return self._engine


def _positive_mask(model, functional: int) -> int:
    mask = 0
    for a in range(model.order):
        if not parity(functional & a):
            mask |= 1 << a
    return mask


def enumerate_orderings(model: FieldModel):
    """All sign characters with sigma(-1) = -1 whose positive cone is closed
    under binary representation; sorted by functional bitvector."""
    out = []
    unit = model.unit_rep
    m1 = model.minus_one
    for s in range(model.order):
        if not parity(s & m1):
            continue
        pos = _positive_mask(model, s)
        if all(unit[a] & ~pos == 0 for a in bits(pos)):
            out.append(Ordering(s))
    return out


def positive_cone(model: FieldModel):
    """Sorted list of the totally positive square classes."""
    return list(bits(model.positive_cone_mask))


def validate_model(model: FieldModel) -> ValidationReport:
    report = ValidationReport(model.name)
    g = model.group
    fmt = model.format

    vals = model.symbol.values
    witness = ""
    for i in range(g.rank):
        for j in range(i + 1, g.rank):
            if vals[i][j] != vals[j][i] and not witness:
                witness = f"({g.generator_names[i]}, {g.generator_names[j]})"
    report.checks.append(Check("symmetry", not witness, witness))

    witness = ""
    for a in g.elements():
        if model.q(a, g.neg(a)) != 0:
            witness = f"q({fmt(a)}, {fmt(g.neg(a))}) != 0"
            break
    report.checks.append(Check("q(a,-a)=0", not witness, witness))

    if report.ok and g.minus_one:
        report.formally_real = model.formally_real
        report.pythagorean = report.formally_real and model.pythagorean
    return report


def require_valid(model: FieldModel) -> FieldModel:
    report = validate_model(model)
    for c in report.checks:
        if not c.passed:
            raise AxiomViolation(c.name, c.witness)
    return model


def require_real(model: FieldModel) -> None:
    if model.minus_one == 0 or not model.formally_real:
        raise NonRealModel(f"model {model.name} is not formally real")
