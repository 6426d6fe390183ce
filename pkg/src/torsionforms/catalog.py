"""Built-in field models."""

from __future__ import annotations

from functools import lru_cache

from .errors import UnknownCatalogModel
from .model import FieldModel, SquareClassGroup, SymbolMap, require_valid

CATALOG_NAMES = ("minimal-real", "q3r", "q5r", "reals", "reals-st")


def _valuation(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _legendre_bit(u: int, p: int) -> int:
    """0 if ``u`` is a nonzero square mod p, else 1."""
    return 0 if pow(u % p, (p - 1) // 2, p) == 1 else 1


def hilbert_symbol(a: int, b: int, p) -> int:
    """Additive Hilbert symbol (a, b)_p for an odd prime p, or p = 'inf'.

    Returns 0 when the symbol is +1 and 1 when it is -1.
    """
    if p == "inf":
        return 1 if a < 0 and b < 0 else 0
    alpha, beta = _valuation(a, p), _valuation(b, p)
    u, v = a // p**alpha, b // p**beta
    eps = (p - 1) // 2
    out = (alpha * beta * eps) & 1
    out ^= (beta * _legendre_bit(u, p)) & 1
    out ^= (alpha * _legendre_bit(v, p)) & 1
    return out


def _padic_real_model(name: str, p: int) -> FieldModel:
    # Basis {-1, 2, p}; symbol components (p-adic, real), evaluated on the
    # integer representatives of the generators.
    names = ("m1", "2", str(p))
    values = (-1, 2, p)
    table = [
        [hilbert_symbol(x, y, p) | hilbert_symbol(x, y, "inf") << 1 for y in values]
        for x in values
    ]
    return FieldModel(name, SquareClassGroup(names, 1), SymbolMap(2, table))


def _minimal_real() -> FieldModel:
    # q(-1,-1) nontrivial, 2 a sum of two squares: q(-1,2) = q(2,2) = 0.
    group = SquareClassGroup(("m1", "2"), 1)
    return FieldModel("minimal-real", group, SymbolMap(1, [[1, 0], [0, 0]]))


def _reals() -> FieldModel:
    return FieldModel("reals", SquareClassGroup(("m1",), 1), SymbolMap(1, [[1]]))


def catalog_model(name: str) -> FieldModel:
    """Return the built-in model ``name`` (shared, immutable instance)."""
    if name not in CATALOG_NAMES:
        raise UnknownCatalogModel(f"unknown catalog model {name!r}; known: {', '.join(CATALOG_NAMES)}")
    return _build(name)


@lru_cache(maxsize=None)
def _build(name: str) -> FieldModel:
    if name == "minimal-real":
        model = _minimal_real()
    elif name == "q3r":
        model = _padic_real_model("q3r", 3)
    elif name == "q5r":
        model = _padic_real_model("q5r", 5)
    elif name == "reals":
        model = _reals()
    else:
        from .extensions import laurent_extend

        model = laurent_extend(laurent_extend(_reals(), "s"), "t")
        model.name = "reals-st"
    return require_valid(model)
