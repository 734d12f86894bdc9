"""Conjugator recovery for tuples with equal depth-two test-word values."""

from __future__ import annotations

from ..errors import PreconditionViolated
from ..slp import evaluate
from ..words import Word, conjugate, power


def recover_conjugator(xs, ys, t_value: Word, t_expr=None, cap: int = 3, budget=None):
    """v in {T^j : |j| <= cap} with x_i = v^-1 y_i v for all i, or None.

    With t_expr given, the precondition T(x) = T(y) = t_value is checked
    first and PreconditionViolated is raised when it fails.
    """
    xs, ys = list(xs), list(ys)
    if len(xs) != len(ys):
        raise PreconditionViolated("tuples differ in length")
    if t_expr is not None:
        tx, ty = evaluate(t_expr, xs, budget), evaluate(t_expr, ys, budget)
        if tx != t_value or ty != t_value:
            raise PreconditionViolated("test-word values of the two tuples differ")
    for j in sorted(range(-cap, cap + 1), key=abs):
        v = power(t_value, j)
        if all(conjugate(y, v) == x for x, y in zip(xs, ys)):
            return v
    return None


def conjugate_tuple(xs, u: Word):
    return [conjugate(x, u) for x in xs]


__all__ = ["recover_conjugator", "conjugate_tuple"]
