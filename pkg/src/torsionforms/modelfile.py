"""Loading and saving field models in the line-based text format."""

from __future__ import annotations

from pathlib import Path

from .errors import AxiomViolation
from .model import FieldModel, require_valid
from .syntax import parse_model_text, serialize_model

__all__ = ["load_model", "load_model_file", "serialize_model", "normalize_model_text"]


def load_model(text: str) -> FieldModel:
    """Parse and validate model text; raises on syntax or axiom errors."""
    model, constraints = parse_model_text(text)
    require_valid(model)
    for lineno, a, b, value in constraints:
        if model.q(a, b) != value:
            raise AxiomViolation(
                "bilinearity",
                f"line {lineno}: q({model.format(a)}, {model.format(b)})",
                f"line {lineno}: q({model.format(a)}, {model.format(b)}) contradicts the generator table",
            )
    return model


def load_model_file(path) -> FieldModel:
    return load_model(Path(path).read_text(encoding="utf-8"))


def normalize_model_text(text: str) -> str:
    return serialize_model(load_model(text))
