"""Text syntax: element words, form literals and the model file format.

Square classes are written as signed ``*``-products of generator ids, e.g.
``-g2*g3``.  A leading ``-`` multiplies by the model's ``-1``.  Integer
tokens that are not generator names are factored over the integer-named
generators, so ``10`` means ``2*5`` when ``2`` and ``5`` are generators.
"""

from __future__ import annotations

import re

from .errors import ModelSyntaxError, SymbolTableIncomplete, UnknownGenerator

ID_RE = re.compile(r"^(?:[A-Za-z_][A-Za-z0-9_]*|[0-9]+)$")


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


def _factor_integer(group, n: int, token: str) -> int:
    x = 0
    for i, name in enumerate(group.generator_names):
        if not name.isdigit():
            continue
        v = int(name)
        if v < 2:
            continue
        while n % v == 0:
            n //= v
            x ^= 1 << i
    if n != 1:
        raise UnknownGenerator(f"cannot express {token!r} over the generators")
    return x


def parse_word(group, text: str, allow_sign: bool = True) -> int:
    """Parse a (signed) generator word into an element bitmask."""
    s = text.strip()
    negative = False
    if s.startswith("-"):
        if not allow_sign:
            raise ModelSyntaxError(f"sign not allowed in {text!r}")
        negative = True
        s = s[1:].strip()
    if not s:
        raise ModelSyntaxError(f"empty word in {text!r}")
    x = 0
    for token in s.split("*"):
        token = token.strip()
        if not ID_RE.match(token):
            raise ModelSyntaxError(f"bad token {token!r} in {text!r}")
        if token in group.generator_names:
            x ^= 1 << group.generator_names.index(token)
        elif token == "1":
            continue
        elif token.isdigit():
            x ^= _factor_integer(group, int(token), token)
        else:
            raise UnknownGenerator(f"unknown generator {token!r}")
    if negative:
        x ^= group.minus_one
    return x


def _product_word(group, x: int) -> str:
    names = [group.generator_names[i] for i in range(group.rank) if x >> i & 1]
    if not names:
        return "1"
    ints = [n for n in names if n.isdigit()]
    others = [n for n in names if not n.isdigit()]
    int_names = [n for n in group.generator_names if n.isdigit()]
    if ints and all(_is_prime(int(n)) for n in int_names):
        prod = 1
        for n in ints:
            prod *= int(n)
        head = [] if prod == 1 else [str(prod)]
        return "*".join(head + others)
    return "*".join(names)


def format_element(group, x: int) -> str:
    m1 = group.minus_one
    if m1 and m1 & (m1 - 1) == 0:
        sign = "-" if x & m1 else ""
        return sign + _product_word(group, x & ~m1)
    return _product_word(group, x)


def format_form(group, entries) -> str:
    return "<" + ",".join(format_element(group, a) for a in entries) + ">"


def format_pfister(group, slots) -> str:
    return "<<" + ",".join(format_element(group, a) for a in slots) + ">>"


def _literal_body(text: str, opener: str, closer: str) -> str:
    s = text.strip()
    if not (s.startswith(opener) and s.endswith(closer)):
        raise ModelSyntaxError(f"expected {opener}...{closer}, got {text!r}")
    return s[len(opener): len(s) - len(closer)]


def parse_form_entries(group, text: str) -> list[int]:
    """Entries of a form literal ``<a, b, ...>``; ``<>`` is the zero form."""
    s = text.strip()
    if s.startswith("<<"):
        raise ModelSyntaxError(f"{text!r} is a Pfister literal, not a form literal")
    body = _literal_body(s, "<", ">").strip()
    if not body:
        return []
    return [parse_word(group, part) for part in body.split(",")]


def parse_pfister_slots(group, text: str) -> list[int]:
    body = _literal_body(text, "<<", ">>").strip()
    if not body:
        return []
    return [parse_word(group, part) for part in body.split(",")]


# ---------- model files


def parse_model_text(text: str):
    """Parse model file text into an unvalidated FieldModel.

    Returns ``(model, constraints)`` where constraints are the q lines on
    non-generator words, as ``(line, a, b, value)`` tuples, to be checked
    against the bilinear extension.
    """
    from .model import FieldModel, SquareClassGroup, SymbolMap

    name = None
    gens = None
    minus_word = None
    rank = None
    q_lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        col = len(line) - len(line.lstrip()) + 1
        parts = line.split()
        head, args = parts[0], parts[1:]
        if head == "model":
            if len(args) != 1:
                raise ModelSyntaxError("expected 'model <name>'", lineno, col)
            name = args[0]
        elif head == "generators":
            if not args:
                raise ModelSyntaxError("expected at least one generator", lineno, col)
            for a in args:
                if not ID_RE.match(a) or a == "1":
                    raise ModelSyntaxError(f"bad generator id {a!r}", lineno, line.index(a) + 1)
            if len(set(args)) != len(args):
                raise ModelSyntaxError("duplicate generator id", lineno, col)
            gens = args
        elif head == "minus_one":
            if len(args) != 1:
                raise ModelSyntaxError("expected 'minus_one <word>'", lineno, col)
            minus_word = (args[0], lineno, line.index(args[0]) + 1)
        elif head == "symbol_rank":
            if len(args) != 1 or not args[0].isdigit():
                raise ModelSyntaxError("expected 'symbol_rank <m>'", lineno, col)
            rank = int(args[0])
        elif head == "q":
            if len(args) != 3:
                raise ModelSyntaxError("expected 'q <word> <word> <bits>'", lineno, col)
            q_lines.append((lineno, line, args))
        else:
            raise ModelSyntaxError(f"unknown directive {head!r}", lineno, col)

    if name is None:
        raise ModelSyntaxError("missing 'model' line")
    if gens is None:
        raise ModelSyntaxError("missing 'generators' line")
    if minus_word is None:
        raise ModelSyntaxError("missing 'minus_one' line")
    if rank is None:
        raise SymbolTableIncomplete("missing 'symbol_rank' line")

    probe = SquareClassGroup(gens, 0)
    try:
        m1 = parse_word(probe, minus_word[0], allow_sign=False)
    except ModelSyntaxError as exc:
        raise ModelSyntaxError(str(exc), minus_word[1], minus_word[2]) from None
    group = SquareClassGroup(gens, m1)

    k = len(gens)
    table = [[0] * k for _ in range(k)]
    explicit = set()
    constraints = []
    for lineno, line, (wa, wb, bits) in q_lines:
        bcol = line.rindex(bits) + 1
        if len(bits) != rank or set(bits) - {"0", "1"}:
            raise ModelSyntaxError(f"expected a {rank}-bit string, got {bits!r}", lineno, bcol)
        value = sum(1 << i for i, ch in enumerate(bits) if ch == "1")
        try:
            a = parse_word(group, wa)
            b = parse_word(group, wb)
        except ModelSyntaxError as exc:
            raise ModelSyntaxError(str(exc), lineno, line.index(wa) + 1) from None
        except UnknownGenerator as exc:
            raise UnknownGenerator(f"line {lineno}: {exc}") from None
        if a and b and a & (a - 1) == 0 and b & (b - 1) == 0:
            i, j = a.bit_length() - 1, b.bit_length() - 1
            table[i][j] = value
            explicit.add((i, j))
            if (j, i) not in explicit:
                table[j][i] = value
        else:
            constraints.append((lineno, a, b, value))
    model = FieldModel(name, group, SymbolMap(rank, table))
    return model, constraints


def serialize_model(model) -> str:
    group = model.group
    sym = model.symbol
    lines = [
        f"model {model.name}",
        "generators " + " ".join(group.generator_names),
        "minus_one " + _unsigned_word(group, group.minus_one),
        f"symbol_rank {sym.target_rank}",
    ]
    for i in range(group.rank):
        for j in range(i, group.rank):
            v = sym.values[i][j]
            if v:
                bits = "".join("1" if v >> c & 1 else "0" for c in range(sym.target_rank))
                lines.append(f"q {group.generator_names[i]} {group.generator_names[j]} {bits}")
    return "\n".join(lines) + "\n"


def _unsigned_word(group, x: int) -> str:
    names = [group.generator_names[i] for i in range(group.rank) if x >> i & 1]
    return "*".join(names) if names else "1"
