"""Brute-force solving of plain equation systems and the single-equation reduction."""

from __future__ import annotations

from dataclasses import dataclass

from ..slp import Var, WordExpr, evaluate, node_count, exponent_sums, substitute, variables
from ..words import Word
from .oracles import enumerate_words


def _nvars(system):
    idx = set()
    for e, _ in system:
        idx |= variables(e)
    return max(idx) + 1 if idx else 0


def solve_equation_system(system, max_len: int, sig=None):
    """First assignment (in enumeration order) solving every w_i(z) = h_i, or None.

    Variables are assigned one at a time; an equation is checked as soon as
    all of its variables are fixed.
    """
    if not system:
        return []
    if sig is None:
        sig = system[0][1].sig
    n = _nvars(system)
    if n == 0:
        return [] if all(evaluate(e, [h]) == h for e, h in system) else None
    pool = list(enumerate_words(sig, max_len))
    ready = [[] for _ in range(n)]
    for e, h in system:
        vs = variables(e)
        ready[max(vs) if vs else 0].append((e, h))
    assignment = [pool[0]] * n

    def go(i):
        for w in pool:
            assignment[i] = w
            if all(evaluate(e, assignment) == h for e, h in ready[i]):
                if i + 1 == n or go(i + 1):
                    return True
        return False

    return list(assignment) if go(0) else None


@dataclass
class SingleEquation:
    lhs: WordExpr
    rhs: WordExpr
    constants: tuple
    nvars: int

    def stats(self) -> dict:
        return {"lhs_nodes": node_count(self.lhs), "rhs_nodes": node_count(self.rhs),
                "lhs_sums": exponent_sums(self.lhs), "nvars": self.nvars}


def reduce_to_single_equation(system, u1: Word, u2: Word, budget=None, max_len=None):
    """The equation M_x(w_0(z),..,w_{n-1}(z), y1, y2) = M_x(h_0,..,h_{n-1},u1,u2).

    x = (h_0, .., h_{n-1}, u1, u2); y1, y2 are fresh variables.  The right-hand
    side is kept as an SLP over the constants x (Var(i) stands for x_i).
    """
    from ..testwords import ENUM_MAX_LEN, m_words
    hs = [h for _, h in system]
    xs = hs + [u1, u2]
    mw = m_words(xs, budget, max_len or ENUM_MAX_LEN)
    nz = _nvars(system)
    images = [e for e, _ in system] + [Var(nz), Var(nz + 1)]
    lhs = substitute(mw.M, images)
    return SingleEquation(lhs, mw.M, tuple(xs), nz + 2), mw
