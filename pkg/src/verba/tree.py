"""The bipartite Bass-Serre tree of a free product.

Vertices are group elements g and cosets gH_i.  An element g is joined to
every coset gH_i, so a coset gH_i is joined to the elements gh, h in H_i.
Distances are edge counts.  Lengths (``paper_length``, translation lengths,
overlaps) are edge counts divided by two, so a hyperbolic element moves
along its axis by exactly its central length.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .errors import BallTooLarge, NotHyperbolic, WindowTooSmall
from .words import Word, _cyclic, _inv, _mul, _power, _primitive_period

ELEMENT = "element"
COSET = "coset"
UNBOUNDED = math.inf
BALL_CAP = 200_000


@dataclass(frozen=True)
class TreeVertex:
    kind: str
    rep: Word
    factor: int | None = None

    @property
    def key(self):
        return (self.kind == COSET, self.rep.syl, -1 if self.factor is None else self.factor)

    def __str__(self):
        if self.kind == ELEMENT:
            return str(self.rep)
        name = self.rep.sig.names[self.factor] or str(self.factor)
        return f"{self.rep}H_{name}" if self.rep.syl else f"H_{name}"


@dataclass(frozen=True)
class AxisSegment:
    vertices: tuple
    paper_length: Fraction


def _canon(sig, syl, i):
    return syl[:-1] if syl and sig.fac[syl[-1]] == i else syl


def element(w: Word) -> TreeVertex:
    return TreeVertex(ELEMENT, w)


def coset(w: Word, factor: int) -> TreeVertex:
    return TreeVertex(COSET, Word(w.sig, _canon(w.sig, w.syl, factor)), factor)


def _vertex(sig, key):
    is_coset, syl, i = key
    return TreeVertex(COSET, Word(sig, syl), i) if is_coset else TreeVertex(ELEMENT, Word(sig, syl))


def act(h: Word, v: TreeVertex) -> TreeVertex:
    sig = h.sig
    syl = _mul(sig, h.syl, v.rep.syl)
    if v.kind == ELEMENT:
        return TreeVertex(ELEMENT, Word(sig, syl))
    return TreeVertex(COSET, Word(sig, _canon(sig, syl, v.factor)), v.factor)


def _key_distance(sig, k1, k2):
    c1, r1, i = k1
    c2, r2, j = k2
    if c1 and c2 and i == j and r1 == r2:
        return 0
    w = _mul(sig, _inv(sig, r1), r2)
    fac = sig.fac
    lo, hi = 0, len(w)
    if c1 and hi and fac[w[0]] == i:
        lo = 1
    if c2 and hi > lo and fac[w[hi - 1]] == j:
        hi -= 1
    return 2 * (hi - lo) + c1 + c2


def distance(v1: TreeVertex, v2: TreeVertex) -> int:
    return _key_distance(v1.rep.sig, v1.key, v2.key)


def _neighbours(sig, key):
    is_coset, syl, i = key
    if not is_coset:
        return [(True, _canon(sig, syl, a), a) for a in range(len(sig.factors))]
    off = sig.offsets[i]
    out = [(False, syl, -1)]
    out.extend((False, syl + (off + x,), -1) for x in range(sig.factors[i].order - 1))
    return out


def bfs_distances(center: TreeVertex, radius: int, cap: int = BALL_CAP) -> dict:
    """Map vertex key -> edge distance for every vertex within radius."""
    sig = center.rep.sig
    start = center.key
    dist = {start: 0}
    queue = deque([start])
    while queue:
        k = queue.popleft()
        d = dist[k]
        if d == radius:
            continue
        for nb in _neighbours(sig, k):
            if nb not in dist:
                dist[nb] = d + 1
                if len(dist) > cap:
                    raise BallTooLarge(f"ball of radius {radius} exceeds {cap} vertices")
                queue.append(nb)
    return dist


def bfs_ball(center: TreeVertex, radius: int, cap: int = BALL_CAP) -> set:
    sig = center.rep.sig
    return {_vertex(sig, k) for k in bfs_distances(center, radius, cap)}


def axis(h: Word, window: int) -> AxisSegment:
    sig = h.sig
    core, f = _cyclic(sig, h.syl)
    n = len(core)
    if n < 2:
        raise NotHyperbolic(str(h))
    finv = _inv(sig, f)
    fac = sig.fac
    verts = []
    for k in range(-window, window + 2):
        P = _mul(sig, finv, _power(sig, core, k))
        verts.append(coset(Word(sig, P), fac[core[-1]]))
        if k == window + 1:
            break
        verts.append(element(Word(sig, P)))
        for i in range(n - 1):
            P = _mul(sig, P, (core[i],))
            verts.append(coset(Word(sig, P), fac[core[i]]))
            verts.append(element(Word(sig, P)))
    return AxisSegment(tuple(verts), Fraction(len(verts) - 1, 2))


def translation_length(h: Word) -> Fraction:
    seg = axis(h, 0)
    return min(Fraction(distance(v, act(h, v)), 2) for v in seg.vertices)


def default_window(h1: Word, h2: Word) -> int:
    """Enough periods on both sides to contain any bounded overlap of the two axes."""
    sig = h1.sig
    c1, f1 = _cyclic(sig, h1.syl)
    c2, f2 = _cyclic(sig, h2.syl)
    base_gap = 2 * len(_mul(sig, f1, _inv(sig, f2)))
    r1, r2 = _primitive_period(c1), _primitive_period(c2)
    reach = base_gap + 2 * (r1 + r2)
    return -(-reach // (2 * min(len(c1), len(c2)))) + 1


def axis_overlap(h1: Word, h2: Word, window: int | None = None):
    """Length of the common segment of the two axes, measured as edges / 2.

    Returns None for disjoint axes and UNBOUNDED when the axes coincide.
    """
    sig = h1.sig
    for h in (h1, h2):
        if len(_cyclic(sig, h.syl)[0]) < 2:
            raise NotHyperbolic(str(h))
    if _mul(sig, h1.syl, h2.syl) == _mul(sig, h2.syl, h1.syl):
        return UNBOUNDED
    if window is None:
        window = default_window(h1, h2)
    a1 = [v.key for v in axis(h1, window).vertices]
    a2 = [v.key for v in axis(h2, window).vertices]
    pos2 = {k: t for t, k in enumerate(a2)}
    common = [t for t, k in enumerate(a1) if k in pos2]
    if not common:
        return None
    if common[-1] - common[0] + 1 != len(common):
        raise AssertionError("axis intersection is not a segment")
    ends2 = {pos2[a1[common[0]]], pos2[a1[common[-1]]]}
    if common[0] == 0 or common[-1] == len(a1) - 1 or 0 in ends2 or len(a2) - 1 in ends2:
        raise WindowTooSmall(f"overlap reaches the edge of window {window}")
    return Fraction(len(common) - 1, 2)


def fixes(g: Word, v: TreeVertex) -> bool:
    return act(g, v).key == v.key
