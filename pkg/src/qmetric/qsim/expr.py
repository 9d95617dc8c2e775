"""Symbolic angle expressions for parameterized gates.

An angle is either a literal constant or a small closed-form expression
over parameter slots. Slots are non-negative integers into a flat
parameter vector; binding a circuit evaluates every expression against
one such vector. The expression language is deliberately tiny: it is
just rich enough to express the data-encoding angles of the built-in
feature map (``2*x_i`` and ``2*(pi - x_j)*(pi - x_k)``) plus sums and
rescalings of slots.

All expression types are immutable and compare structurally.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

from ..errors import InvalidArgumentError

AngleExpr = Union["Const", "Var", "PiMinusVar", "Scale", "Sum", "Product"]


@dataclass(frozen=True)
class Const:
    """A fixed angle in radians."""

    value: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.value):
            raise InvalidArgumentError("constant angle must be finite")


@dataclass(frozen=True)
class Var:
    """The value of parameter slot ``index``."""

    index: int

    def __post_init__(self) -> None:
        if self.index < 0:
            raise InvalidArgumentError("parameter slot must be non-negative")


@dataclass(frozen=True)
class PiMinusVar:
    """``pi - params[index]``, the data-encoding offset used by the ZZ map."""

    index: int

    def __post_init__(self) -> None:
        if self.index < 0:
            raise InvalidArgumentError("parameter slot must be non-negative")


@dataclass(frozen=True)
class Scale:
    """``factor * inner``."""

    factor: float
    inner: AngleExpr

    def __post_init__(self) -> None:
        if not math.isfinite(self.factor):
            raise InvalidArgumentError("scale factor must be finite")


@dataclass(frozen=True)
class Sum:
    """Sum of one or more sub-expressions."""

    terms: tuple[AngleExpr, ...]

    def __init__(self, terms: Sequence[AngleExpr]) -> None:
        object.__setattr__(self, "terms", tuple(terms))
        if not self.terms:
            raise InvalidArgumentError("sum requires at least one term")


@dataclass(frozen=True)
class Product:
    """Product of one or more sub-expressions."""

    terms: tuple[AngleExpr, ...]

    def __init__(self, terms: Sequence[AngleExpr]) -> None:
        object.__setattr__(self, "terms", tuple(terms))
        if not self.terms:
            raise InvalidArgumentError("product requires at least one term")


def evaluate(expr: AngleExpr, params: Sequence[float]) -> float:
    """Evaluate ``expr`` against a full parameter vector.

    Raises InvalidArgumentError if the expression references a slot at
    or beyond ``len(params)``.
    """
    if isinstance(expr, Const):
        return expr.value
    if isinstance(expr, Var):
        _check_slot(expr.index, params)
        return float(params[expr.index])
    if isinstance(expr, PiMinusVar):
        _check_slot(expr.index, params)
        return math.pi - float(params[expr.index])
    if isinstance(expr, Scale):
        return expr.factor * evaluate(expr.inner, params)
    if isinstance(expr, Sum):
        return sum(evaluate(t, params) for t in expr.terms)
    if isinstance(expr, Product):
        out = 1.0
        for t in expr.terms:
            out *= evaluate(t, params)
        return out
    raise InvalidArgumentError(f"not an angle expression: {expr!r}")


def max_slot(expr: AngleExpr) -> int:
    """Largest parameter slot referenced, or -1 for constant expressions."""
    if isinstance(expr, Const):
        return -1
    if isinstance(expr, (Var, PiMinusVar)):
        return expr.index
    if isinstance(expr, Scale):
        return max_slot(expr.inner)
    if isinstance(expr, (Sum, Product)):
        return max(max_slot(t) for t in expr.terms)
    raise InvalidArgumentError(f"not an angle expression: {expr!r}")


def shift_slots(expr: AngleExpr, offset: int) -> AngleExpr:
    """Return ``expr`` with every parameter slot increased by ``offset``."""
    if offset < 0:
        raise InvalidArgumentError("slot offset must be non-negative")
    if isinstance(expr, Const):
        return expr
    if isinstance(expr, Var):
        return Var(expr.index + offset)
    if isinstance(expr, PiMinusVar):
        return PiMinusVar(expr.index + offset)
    if isinstance(expr, Scale):
        return Scale(expr.factor, shift_slots(expr.inner, offset))
    if isinstance(expr, Sum):
        return Sum([shift_slots(t, offset) for t in expr.terms])
    if isinstance(expr, Product):
        return Product([shift_slots(t, offset) for t in expr.terms])
    raise InvalidArgumentError(f"not an angle expression: {expr!r}")


def _check_slot(index: int, params: Sequence[float]) -> None:
    if index >= len(params):
        raise InvalidArgumentError(
            f"angle references slot {index} but only {len(params)} parameters given"
        )
