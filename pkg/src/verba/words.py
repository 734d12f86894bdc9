"""Normal forms and arithmetic in a free product of finite groups.

A word is stored as a tuple of syllable codes (see ``Signature``); every
operation returns a reduced word.  Long words (10^6 syllables) are handled by
doing the cancellation scan in chunks and building results by slicing.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import NamedTuple

from .errors import LetterOutOfRange, NotHyperbolic, ParseError, SignatureMismatch, UnknownFactor
from .groups import Signature


class Syllable(NamedTuple):
    factor: int
    letter: int


class Word:
    __slots__ = ("sig", "syl", "_h")

    def __init__(self, sig: Signature, syl: tuple = ()):
        # syl must already be reduced; use reduce() for raw input
        self.sig = sig
        self.syl = syl
        self._h = None

    @property
    def syllables(self):
        fac, let = self.sig.fac, self.sig.let
        return tuple(Syllable(fac[c], let[c]) for c in self.syl)

    def __len__(self):
        return len(self.syl)

    def __bool__(self):
        return True

    def is_identity(self):
        return not self.syl

    def __eq__(self, other):
        if not isinstance(other, Word):
            return NotImplemented
        return self.syl == other.syl and self.sig == other.sig

    def __hash__(self):
        if self._h is None:
            self._h = hash(self.syl)
        return self._h

    def __lt__(self, other):
        return (len(self.syl), self.syl) < (len(other.syl), other.syl)

    def __mul__(self, other):
        return multiply(self, other)

    def __pow__(self, n):
        return power(self, n)

    def __invert__(self):
        return invert(self)

    def inverse(self):
        return invert(self)

    def __str__(self):
        return format_word(self)

    def __repr__(self):
        return f"Word({format_word(self)!r})"


@dataclass(frozen=True)
class HypDecomposition:
    A: Word
    k: int
    f: Word


def identity(sig: Signature) -> Word:
    return Word(sig, ())


# ---------------------------------------------------------------- code level

def _mirror_len(inv, u, v, cap):
    """Number of leading s < cap with u[-1-s] == inv[v[s]]."""
    s, step, nu = 0, 32, len(u)
    get = inv.__getitem__
    while s < cap:
        t = min(cap, s + step)
        a = u[nu - t:nu - s][::-1]
        b = tuple(map(get, v[s:t]))
        if a == b:
            s = t
            step = min(step * 2, 1 << 16)
            continue
        for x, y in zip(a, b):
            if x != y:
                return s
            s += 1
        return s
    return s


def _mul(sig, u, v):
    if not u:
        return v
    if not v:
        return u
    fac = sig.fac
    if fac[u[-1]] != fac[v[0]]:
        return u + v
    c = _mirror_len(sig.inv, u, v, min(len(u), len(v)))
    i, j = len(u) - c, c
    if i and j < len(v):
        m = sig.merge[u[i - 1]][v[j]]
        if m >= 0:
            return u[:i - 1] + (m,) + v[j + 1:]
    return u[:i] + v[j:]


def _inv(sig, u):
    return tuple(map(sig.inv.__getitem__, reversed(u)))


def _cyclic(sig, w):
    """(core, f) with w = f^-1 . core o f; a merge, if any, sits at the right end of core."""
    n = len(w)
    if n < 2:
        return w, ()
    fac = sig.fac
    if fac[w[0]] != fac[w[-1]]:
        return w, ()
    c = _mirror_len(sig.inv, w, w, n // 2)
    i, j = c, n - 1 - c
    if i >= j:
        return w[i:j + 1], w[j + 1:]
    x, y = w[i], w[j]
    if fac[x] != fac[y]:
        return w[i:j + 1], w[j + 1:]
    core = w[i + 1:j] + (sig.merge[y][x],)
    f = (sig.inv[x],) + w[j + 1:]
    return core, f


def _prime_factors(n):
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _primitive_period(c):
    n = len(c)
    p = n
    for q in _prime_factors(n):
        while p % q == 0:
            d = p // q
            if c[d:] == c[:n - d]:
                p = d
            else:
                break
    return p


def _power(sig, w, n):
    if n == 0 or not w:
        return ()
    if n < 0:
        w, n = _inv(sig, w), -n
    if n == 1:
        return w
    core, f = _cyclic(sig, w)
    finv = _inv(sig, f)
    if len(core) == 1:
        x = core[0]
        i = sig.fac[x]
        p = sig.factors[i].power(sig.let[x], n)
        if p == 0:
            return ()
        return _mul(sig, finv + (sig.code(i, p),), f)
    return _mul(sig, finv + core * n, f)


def find_all(sig, hay, needle):
    """All offsets of needle (a code tuple) inside hay."""
    if not needle:
        return list(range(len(hay) + 1))
    out = []
    if sig.ncodes <= 256:
        h, nd = bytes(hay), bytes(needle)
        i = h.find(nd)
        while i >= 0:
            out.append(i)
            i = h.find(nd, i + 1)
        return out
    m = len(needle)
    first = needle[0]
    for i in range(len(hay) - m + 1):
        if hay[i] == first and hay[i:i + m] == needle:
            out.append(i)
    return out


def find_first(sig, hay, needle):
    if not needle:
        return 0
    if sig.ncodes <= 256:
        i = bytes(hay).find(bytes(needle))
        return None if i < 0 else i
    m = len(needle)
    first = needle[0]
    for i in range(len(hay) - m + 1):
        if hay[i] == first and hay[i:i + m] == needle:
            return i
    return None


# ---------------------------------------------------------------- public API

def _same(u, v):
    if u.sig is not v.sig and u.sig != v.sig:
        raise SignatureMismatch(f"{u.sig!r} vs {v.sig!r}")


def reduce(sig: Signature, raw) -> Word:
    fac, merge = sig.fac, sig.merge
    out = []
    for s in raw:
        f, x = s
        if not 0 <= f < len(sig.factors):
            raise UnknownFactor(f"no factor {f}")
        if not 0 <= x < sig.factors[f].order:
            raise LetterOutOfRange(f"letter {x} outside factor {f} of order {sig.factors[f].order}")
        if x == 0:
            continue
        c = sig.code(f, x)
        if out and fac[out[-1]] == f:
            m = merge[out[-1]][c]
            if m < 0:
                out.pop()
            else:
                out[-1] = m
        else:
            out.append(c)
    return Word(sig, tuple(out))


def multiply(u: Word, v: Word) -> Word:
    _same(u, v)
    return Word(u.sig, _mul(u.sig, u.syl, v.syl))


def invert(u: Word) -> Word:
    return Word(u.sig, _inv(u.sig, u.syl))


def conjugate(u: Word, g: Word) -> Word:
    """g^-1 u g."""
    _same(u, g)
    s = u.sig
    return Word(s, _mul(s, _mul(s, _inv(s, g.syl), u.syl), g.syl))


def power(u: Word, n: int) -> Word:
    return Word(u.sig, _power(u.sig, u.syl, n))


def commutator(x: Word, y: Word) -> Word:
    """x^-1 y^-1 x y."""
    _same(x, y)
    s = x.sig
    left = _mul(s, _inv(s, x.syl), _inv(s, y.syl))
    return Word(s, _mul(s, left, _mul(s, x.syl, y.syl)))


def product(*words: Word) -> Word:
    out = words[0]
    for w in words[1:]:
        out = multiply(out, w)
    return out


def length(w: Word) -> int:
    return len(w.syl)


def cyclic_reduce(w: Word):
    core, f = _cyclic(w.sig, w.syl)
    return Word(w.sig, core), Word(w.sig, f)


def central_length(w: Word) -> int:
    return len(_cyclic(w.sig, w.syl)[0])


def is_cyclically_reduced(w: Word) -> bool:
    s = w.syl
    return len(s) < 2 or w.sig.fac[s[0]] != w.sig.fac[s[-1]]


def is_hyperbolic(w: Word) -> bool:
    return central_length(w) >= 2


def hyperbolic_decompose(w: Word) -> HypDecomposition:
    core, f = _cyclic(w.sig, w.syl)
    if len(core) < 2:
        raise NotHyperbolic(f"{format_word(w)} has central length {len(core)}")
    p = _primitive_period(core)
    return HypDecomposition(Word(w.sig, core[:p]), len(core) // p, Word(w.sig, f))


def radical_length(w: Word) -> int:
    return len(hyperbolic_decompose(w).A)


def is_simple(w: Word) -> bool:
    s = w.syl
    return len(s) >= 2 and is_cyclically_reduced(w) and _primitive_period(s) == len(s)


def root(w: Word, n: int):
    if n < 1:
        raise ValueError("root index must be positive")
    d = hyperbolic_decompose(w)
    if d.k % n:
        return None
    sig = w.sig
    return Word(sig, _mul(sig, _inv(sig, d.f.syl) + d.A.syl * (d.k // n), d.f.syl))


def centralizer_generator(w: Word) -> Word:
    d = hyperbolic_decompose(w)
    sig = w.sig
    return Word(sig, _mul(sig, _inv(sig, d.f.syl) + d.A.syl, d.f.syl))


def are_conjugate(u: Word, v: Word):
    """A conjugator g with g^-1 u g = v, or None."""
    _same(u, v)
    sig = u.sig
    cu, fu = _cyclic(sig, u.syl)
    cv, fv = _cyclic(sig, v.syl)
    if len(cu) != len(cv):
        return None
    fu_inv = _inv(sig, fu)
    if not cu:
        return identity(sig)
    if len(cu) == 1:
        x, y = cu[0], cv[0]
        if sig.fac[x] != sig.fac[y]:
            return None
        i = sig.fac[x]
        F = sig.factors[i]
        best = None
        for t in range(F.order):
            if F.mult[F.mult[F.inv[t]][sig.let[x]]][t] != sig.let[y]:
                continue
            mid = (sig.code(i, t),) if t else ()
            g = _mul(sig, _mul(sig, fu_inv, mid), fv)
            if best is None or (len(g), g) < (len(best), best):
                best = g
        return None if best is None else Word(sig, best)
    best = None
    for r in find_all(sig, cu + cu, cv):
        if r >= len(cu):
            break
        # cv = P^-1 cu P with P = cu[:r]
        g = _mul(sig, _mul(sig, fu_inv, cu[:r]), fv)
        if best is None or (len(g), g) < (len(best), best):
            best = g
    return None if best is None else Word(sig, best)


# ---------------------------------------------------------------- literals

_SCAN = re.compile(r"\s*(?:(\d+):(\d+)|([a-z])(?:\^(\d+))?)")


def parse_word(sig: Signature, text: str) -> Word:
    """Parse ``b a^2 b`` (or ``1`` for the identity, or ``0:1`` numeric syllables)."""
    if text.strip() == "1":
        return identity(sig)
    raw = []
    pos, n = 0, len(text)
    while pos < n:
        if text[pos:].strip() == "":
            break
        m = _SCAN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        if m.group(1) is not None:
            f, x = int(m.group(1)), int(m.group(2))
        else:
            name = m.group(3)
            if name not in sig.names:
                raise ParseError(f"unknown factor name {name!r}", m.start(3))
            f = sig.names.index(name)
            x = int(m.group(4)) if m.group(4) is not None else 1
        if not 0 <= f < len(sig.factors):
            raise ParseError(f"unknown factor {f}", m.start())
        if not 0 <= x < sig.factors[f].order:
            raise ParseError(f"letter {x} out of range for factor {f}", m.start())
        raw.append((f, x))
        pos = m.end()
    return reduce(sig, raw)


def format_word(w: Word) -> str:
    if not w.syl:
        return "1"
    sig = w.sig
    parts = []
    for c in w.syl:
        f, x = sig.fac[c], sig.let[c]
        name = sig.names[f]
        if not name:
            parts.append(f"{f}:{x}")
        else:
            parts.append(name if x == 1 else f"{name}^{x}")
    return " ".join(parts)
