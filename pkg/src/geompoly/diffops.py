"""Finite-difference and directional-derivative operators attached to a square matrix.

For a matrix ``M`` with rows ``M_i``:

* ``delta(ctx, i, p) = p(x - M_i) - p(x)``
* ``dee(ctx, i, p) = M_i . grad p``

A polynomial is in the difference space when every ``d/dx_i delta_i p`` vanishes,
and in the derivative space when every ``d/dx_i dee_i p`` vanishes.  The two
spaces coincide; both membership tests are kept so the coincidence is checked
rather than assumed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .linalg import DimensionError, QMatrix
from .mpoly import MPoly, directional, partial, shift

__all__ = [
    "OperatorContext",
    "MembershipWitness",
    "delta",
    "dee",
    "in_Delta",
    "in_D",
    "verify_expansion",
]


class OperatorContext:
    """A square matrix whose rows drive the operators."""

    __slots__ = ("M", "n")

    def __init__(self, M):
        M = M if isinstance(M, QMatrix) else QMatrix(M)
        if not M.is_square:
            raise DimensionError("operator context needs a square matrix")
        self.M = M
        self.n = M.nrows

    def row(self, i: int):
        if not 1 <= i <= self.n:
            raise IndexError(f"operator index {i} outside 1..{self.n}")
        return self.M.row(i - 1)

    def __repr__(self):
        return f"OperatorContext({self.M!r})"


def _ctx(ctx) -> OperatorContext:
    return ctx if isinstance(ctx, OperatorContext) else OperatorContext(ctx)


def _check_poly(ctx: OperatorContext, p: MPoly):
    if p.nvars != ctx.n:
        raise DimensionError(f"polynomial in {p.nvars} variables for a {ctx.n}x{ctx.n} matrix")


@dataclass(frozen=True)
class MembershipWitness:
    """Verdict of a membership test.

    When ``verdict`` is false, ``offending`` is the nonzero polynomial
    ``d/dx_i op_i p`` for the smallest failing index ``failing_index``.
    """

    verdict: bool
    failing_index: int | None = None
    offending: MPoly | None = None

    def __bool__(self):
        return self.verdict


def delta(ctx, i: int, p: MPoly) -> MPoly:
    ctx = _ctx(ctx)
    _check_poly(ctx, p)
    return shift(p, ctx.row(i)) - p


def dee(ctx, i: int, p: MPoly) -> MPoly:
    ctx = _ctx(ctx)
    _check_poly(ctx, p)
    return directional(p, ctx.row(i))


def _membership(ctx, p: MPoly, op) -> MembershipWitness:
    ctx = _ctx(ctx)
    _check_poly(ctx, p)
    for i in range(1, ctx.n + 1):
        r = partial(op(ctx, i, p), i)
        if r:
            return MembershipWitness(False, i, r)
    return MembershipWitness(True)


def in_Delta(ctx, p: MPoly) -> MembershipWitness:
    """Is ``x_i`` absent from ``delta_i p`` for every ``i``?"""
    return _membership(ctx, p, delta)


def in_D(ctx, p: MPoly) -> MembershipWitness:
    """Is ``x_i`` absent from ``dee_i p`` for every ``i``?"""
    return _membership(ctx, p, dee)


def verify_expansion(ctx, i: int, p: MPoly) -> bool:
    """Check ``delta_i p == sum_{s=1}^{deg p} (-1)^s / s! * dee_i^s p`` exactly."""
    ctx = _ctx(ctx)
    lhs = delta(ctx, i, p)
    if p.is_zero():
        return lhs.is_zero()
    rhs = MPoly.zero(ctx.n)
    term = p
    for s in range(1, p.degree() + 1):
        term = dee(ctx, i, term)
        rhs = rhs + term.scale(Fraction((-1) ** s, factorial(s)))
    return lhs == rhs
