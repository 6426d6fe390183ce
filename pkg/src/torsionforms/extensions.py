"""Laurent series extensions F((t)) of field models and residue forms."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .errors import NameCollision, NotAnExtension
from .forms import QuadraticForm, is_isotropic, isometric
from .model import ExtensionDescriptor, FieldModel, SquareClassGroup, SymbolMap, require_valid
from .reports import TheoremReport


def laurent_extend(model: FieldModel, var: str = "t") -> FieldModel:
    """The model of ``F((var))``.

    Square classes become G x <t>; the symbol gains a residue component in G:
    q'(a t^e, b t^d) = (q(a, b), a^d b^e (-1)^(e d)).
    """
    g = model.group
    if var in g.generator_names:
        raise NameCollision(f"{var!r} is already a generator of {model.name}")
    k, m = g.rank, model.symbol.target_rank
    table = [[0] * (k + 1) for _ in range(k + 1)]
    for i in range(k):
        for j in range(k):
            table[i][j] = model.symbol.values[i][j]
        table[i][k] = table[k][i] = 1 << (m + i)
    table[k][k] = g.minus_one << m
    group = SquareClassGroup(g.generator_names + (var,), g.minus_one)
    ext = ExtensionDescriptor(model, var, 1 << k)
    out = FieldModel(f"{model.name}(({var}))", group, SymbolMap(m + k, table), extension=ext)
    return require_valid(out)


def tower(base: FieldModel, n: int) -> FieldModel:
    """``base((t_1))...((t_{n-1}))``; ``tower(base, 1)`` is ``base``."""
    if n < 1:
        raise ValueError("tower height must be at least 1")
    model = base
    for i in range(1, n):
        model = laurent_extend(model, f"t_{i}")
    return model


@dataclass(frozen=True)
class ResiduePair:
    """phi = first _|_ t*second, both residue forms over the base model."""

    first: QuadraticForm
    second: QuadraticForm


def _descriptor(model: FieldModel) -> ExtensionDescriptor:
    if model.extension is None:
        raise NotAnExtension(f"{model.name} was not built by laurent_extend")
    return model.extension


def residue_decompose(phi: QuadraticForm) -> ResiduePair:
    ext = _descriptor(phi.model)
    t = ext.t_bit
    first = [a for a in phi.entries if not a & t]
    second = [a ^ t for a in phi.entries if a & t]
    return ResiduePair(QuadraticForm(ext.base, first), QuadraticForm(ext.base, second))


def springer_agrees(phi: QuadraticForm) -> bool:
    res = residue_decompose(phi)
    return is_isotropic(phi) == (is_isotropic(res.first) or is_isotropic(res.second))


def _forms_to_check(model, max_dim, exhaustive, samples, seed):
    elems = list(model.group.elements())
    if exhaustive:
        for d in range(1, max_dim + 1):
            for combo in itertools.combinations_with_replacement(elems, d):
                yield QuadraticForm(model, combo)
    else:
        rng = random.Random(seed)
        for _ in range(samples):
            d = rng.randint(1, max_dim)
            yield QuadraticForm(model, [rng.choice(elems) for _ in range(d)])


def springer_check(model: FieldModel, max_dim: int = 4, exhaustive=None, samples: int = 2000, seed: int = 0,
                   forms=None) -> TheoremReport:
    """Native isotropy versus the residue criterion over ``model = F((t))``.

    Exhaustive over all forms of dim <= ``max_dim`` when ``|G'| <= 16`` (or
    when forced), otherwise ``samples`` seeded random forms.
    """
    _descriptor(model)
    if exhaustive is None:
        exhaustive = model.order <= 16
    report = TheoremReport(f"springer {model.name}")
    if forms is None:
        forms = _forms_to_check(model, max_dim, exhaustive, samples, seed)
        how = "exhaustive" if exhaustive else f"sampled seed={seed}"
    else:
        how = "given"
    count = 0
    witness = None
    for phi in forms:
        count += 1
        if not springer_agrees(phi):
            witness = phi
            break
    report.record("isotropy iff a residue form is isotropic",
                  witness is None,
                  f"{how}, {count} forms" if witness is None else f"witness {witness}")
    return report


def prop_laurent_check(base: FieldModel, extended: FieldModel = None) -> TheoremReport:
    """Supreme form over F((t)) is pi (x) <<t>>, and its residues recover pi."""
    from .pfister import pfister_build
    from .witt import supreme_search

    if extended is None:
        extended = laurent_extend(base, "t")
    ext = _descriptor(extended)
    if ext.base != base:
        raise NotAnExtension(f"{extended.name} does not extend {base.name}")
    report = TheoremReport(f"laurent {base.name} -> {extended.name}")
    pi = supreme_search(base)
    if pi is None:
        report.skip("supreme lifts", "no supreme torsion form over the base")
        return report
    lifted = QuadraticForm(extended, pi.entries).tensor(pfister_build(extended, [ext.t_bit]))
    psi = supreme_search(extended)
    report.record("supreme over extension exists", psi is not None, "" if psi is None else str(psi))
    if psi is None:
        return report
    report.record("supreme = pi (x) <<t>>", isometric(psi, lifted), f"{psi} vs {lifted}")
    res = residue_decompose(psi)
    # psi = psi1 _|_ -t psi2 with residue forms psi1 and -psi2
    psi2 = -res.second
    report.record("residues isometric", isometric(res.first, psi2), f"{res.first} vs {psi2}")
    report.record("residue is supreme over base", isometric(res.first, pi), f"{res.first} vs {pi}")
    return report
