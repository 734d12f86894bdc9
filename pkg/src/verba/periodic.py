"""Subwords, periodicity and the period-splitting statements for simple words."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import (NoCommonStructure, NotApplicable, NotSimple, PreconditionTooShort,
                     PreconditionViolated, StructureMismatch)
from .words import (Word, _inv, _mul, _primitive_period, find_first, is_cyclically_reduced,
                    is_simple, central_length)


@dataclass(frozen=True)
class PeriodSplit:
    C1: Word
    C2: Word
    m1: int = 1
    m2: int = 1


def is_subword(U: Word, W: Word):
    return find_first(W.sig, W.syl, U.syl)


def period_offset(U: Word, A: Word):
    """Offset o in [0, |A|) with U equal to the segment of A A A ... starting at o, or None."""
    p = len(A)
    if not U.syl:
        return 0
    reps = -(-(len(U) + 2 * p) // p)
    pos = find_first(A.sig, A.syl * reps, U.syl)
    return None if pos is None else pos % p


def is_periodic(U: Word, A: Word) -> bool:
    if not is_simple(A):
        raise NotSimple(str(A))
    return period_offset(U, A) is not None


def _split_at(A: Word, r: int) -> tuple[Word, Word]:
    return Word(A.sig, A.syl[:r]), Word(A.sig, A.syl[r:])


def _rotation(A, B, oA, oB):
    # B[j] = A[(j + r) % p]; a zero shift is reported as the cut after all of A
    p = len(A)
    r = (oA - oB) % p
    if B.syl != A.syl[r:] + A.syl[:r]:
        raise StructureMismatch("alignment does not induce a rotation")
    return r or p


def fine_wilf_split(w1: Word, w2: Word, U: Word) -> PeriodSplit:
    for w in (w1, w2):
        if not is_cyclically_reduced(w) or central_length(w) < 2:
            raise PreconditionViolated(f"{w} must be cyclically reduced of length >= 2")
    p1, p2 = _primitive_period(w1.syl), _primitive_period(w2.syl)
    bound = p1 + p2 - gcd(p1, p2)
    if len(U) < bound:
        raise PreconditionTooShort(f"|U|={len(U)} below bound {bound}")
    A1, A2 = Word(w1.sig, w1.syl[:p1]), Word(w2.sig, w2.syl[:p2])
    o1, o2 = period_offset(U, A1), period_offset(U, A2)
    if o1 is None or o2 is None or p1 != p2:
        raise NoCommonStructure("U is not a common subword of powers of w1 and w2")
    r = _rotation(A1, A2, o1, o2)
    C1, C2 = _split_at(A1, r)
    return PeriodSplit(C1, C2, len(w1) // p1, len(w2) // p2)


def p3_inverse_periodic(B: Word) -> PeriodSplit:
    if not is_simple(B):
        raise NotSimple(str(B))
    Binv = Word(B.sig, _inv(B.sig, B.syl))
    o = period_offset(Binv, B)
    if o is None:
        raise NotApplicable(f"inverse of {B} is not {B}-periodic")
    C1, C2 = _split_at(B, o)
    sig = B.sig
    if _mul(sig, C1.syl, C1.syl) or _mul(sig, C2.syl, C2.syl):
        raise StructureMismatch("split parts are not involutions")
    return PeriodSplit(C1, C2)


def p4_double_periodic(A: Word, B: Word, U: Word) -> PeriodSplit:
    for w in (A, B):
        if not is_simple(w):
            raise NotSimple(str(w))
    if len(U) < len(A) + len(B) - 1:
        raise PreconditionTooShort(f"|U|={len(U)} below {len(A) + len(B) - 1}")
    oA, oB = period_offset(U, A), period_offset(U, B)
    if oA is None or oB is None or len(A) != len(B):
        raise NoCommonStructure("U is not simultaneously A- and B-periodic")
    r = _rotation(A, B, oA, oB)
    C1, C2 = _split_at(A, r)
    return PeriodSplit(C1, C2)


def rotation_cuts(A: Word, B: Word) -> list[int]:
    """All cut positions r in [0, |A|) with A = C1 C2 and B = C2 C1 (C1 = A[:r])."""
    p = len(A)
    if len(B) != p:
        return []
    return [r for r in range(p) if B.syl == A.syl[r:] + A.syl[:r]]
