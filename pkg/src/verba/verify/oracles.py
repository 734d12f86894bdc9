"""Brute-force oracles: enumeration, sampling and finite permutation quotients."""

from __future__ import annotations

import random

from ..groups import Signature
from ..words import Word, _mul, commutator, is_hyperbolic, radical_length


def enumerate_words(sig: Signature, max_len: int):
    """All reduced words of length <= max_len in shortlex order."""
    yield Word(sig, ())
    nf = len(sig.factors)
    codes = [[sig.code(i, x) for x in range(1, sig.factors[i].order)] for i in range(nf)]
    layer = [()]
    for _ in range(max_len):
        nxt = []
        for w in layer:
            last = sig.fac[w[-1]] if w else -1
            for i in range(nf):
                if i == last:
                    continue
                for c in codes[i]:
                    nxt.append(w + (c,))
        for w in nxt:
            yield Word(sig, w)
        layer = nxt


def naive_reduce(sig: Signature, syllables) -> tuple:
    """Stack reduction on (factor, letter) pairs; independent of the chunked product."""
    out = []
    for f, x in syllables:
        if x == 0:
            continue
        if out and out[-1][0] == f:
            y = sig.factors[f].mult[out[-1][1]][x]
            out.pop()
            if y:
                out.append((f, y))
        else:
            out.append((f, x))
    return tuple(sig.code(f, x) for f, x in out)


def random_word(sig: Signature, rng: random.Random, length: int) -> Word:
    nf = len(sig.factors)
    out, last = [], -1
    for _ in range(length):
        f = rng.choice([i for i in range(nf) if i != last])
        out.append(sig.code(f, rng.randrange(1, sig.factors[f].order)))
        last = f
    return Word(sig, tuple(out))


def random_hyperbolic(sig: Signature, rng: random.Random, max_len: int = 8, min_len: int = 2,
                      tries: int = 1000) -> Word:
    for _ in range(tries):
        w = random_word(sig, rng, rng.randint(min_len, max_len))
        if is_hyperbolic(w):
            return w
    raise RuntimeError("no hyperbolic sample found")


def random_cyclic_hyperbolic(sig, rng, max_len=6):
    """A cyclically reduced word of length >= 2."""
    while True:
        w = random_word(sig, rng, rng.randint(2, max_len))
        if sig.fac[w.syl[0]] != sig.fac[w.syl[-1]]:
            return w


def noncommuting(x: Word, y: Word) -> bool:
    # hyperbolics with different radical lengths never commute
    if radical_length(x) != radical_length(y):
        return True
    return not commutator(x, y).is_identity()


def random_pair(sig, rng, max_len=8, tries=1000):
    for _ in range(tries):
        x = random_hyperbolic(sig, rng, max_len)
        y = random_hyperbolic(sig, rng, max_len)
        if noncommuting(x, y):
            return x, y
    raise RuntimeError("no noncommuting pair found")


# ---------------------------------------------------------------- permutation quotients

def perm_mul(p, q):
    """p then q."""
    return tuple(q[i] for i in p)


def perm_inv(p):
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


class PermRep:
    """A random homomorphism from the free product into Sym(degree).

    Each factor acts by right multiplication on disjoint copies of itself,
    leftover points fixed, the whole action conjugated by a random relabelling.
    """

    def __init__(self, sig: Signature, rng: random.Random, degree: int):
        self.sig = sig
        self.degree = degree
        self.one = tuple(range(degree))
        self.code_image = [None] * sig.ncodes
        for i, F in enumerate(sig.factors):
            q = F.order
            if q > degree:
                raise ValueError("degree smaller than a factor order")
            blocks = rng.randint(1, degree // q)
            sigma = list(range(degree))
            rng.shuffle(sigma)
            for x in range(1, q):
                base = list(range(degree))
                for b in range(blocks):
                    for g in range(q):
                        base[b * q + g] = b * q + F.mult[g][x]
                img = [0] * degree
                for pt in range(degree):
                    img[sigma[pt]] = sigma[base[pt]]
                self.code_image[sig.code(i, x)] = tuple(img)

    def word(self, w: Word):
        acc = self.one
        for c in w.syl:
            acc = perm_mul(acc, self.code_image[c])
        return acc

    def powers(self, p):
        out, acc = {self.one}, p
        while acc not in out:
            out.add(acc)
            acc = perm_mul(acc, p)
        return out


def perm_pow(p, n):
    if n < 0:
        p, n = perm_inv(p), -n
    acc = tuple(range(len(p)))
    while n:
        if n & 1:
            acc = perm_mul(acc, p)
        p = perm_mul(p, p)
        n >>= 1
    return acc


def same_by_naive(sig, u: Word, v: Word) -> bool:
    return naive_reduce(sig, list(u.syllables) + list(v.syllables)) == _mul(sig, u.syl, v.syl)


__all__ = ["enumerate_words", "naive_reduce", "random_word", "random_hyperbolic", "random_pair",
           "random_cyclic_hyperbolic", "noncommuting", "PermRep", "perm_mul", "perm_inv", "perm_pow",
           "same_by_naive"]
