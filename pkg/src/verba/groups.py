"""Finite factor groups given by Cayley tables, and signatures of free products."""

from __future__ import annotations

import itertools
import re
import string
from dataclasses import dataclass, field, replace
from pathlib import Path

from .errors import InvalidOrder, NoIdentity, NoInverse, NonAssociative, ParseError


@dataclass(frozen=True)
class FactorGroup:
    """A finite group on the elements 0..order-1 with identity 0."""

    id: int
    order: int
    mult: tuple
    inv: tuple
    name: str = field(default="", compare=False)

    def power(self, g: int, e: int) -> int:
        if e < 0:
            g, e = self.inv[g], -e
        acc = 0
        for _ in range(e % self.element_order(g)):
            acc = self.mult[acc][g]
        return acc

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != 0:
            x = self.mult[x][g]
            k += 1
        return k

    def is_abelian(self) -> bool:
        m = self.mult
        return all(m[x][y] == m[y][x] for x in range(self.order) for y in range(x))


def make_cyclic(n: int, id: int = 0) -> FactorGroup:
    if n < 2:
        raise InvalidOrder(f"cyclic factor needs order >= 2, got {n}")
    mult = tuple(tuple((i + j) % n for j in range(n)) for i in range(n))
    inv = tuple((-i) % n for i in range(n))
    return FactorGroup(id, n, mult, inv, f"Z{n}")


def make_symmetric(n: int, id: int = 0) -> FactorGroup:
    """S_n with elements listed in lexicographic order of permutations."""
    if n < 2:
        raise InvalidOrder(f"symmetric factor needs degree >= 2, got {n}")
    perms = list(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    # (p*q)(x) = q(p(x)): apply p first
    table = [[index[tuple(q[p[x]] for x in range(n))] for q in perms] for p in perms]
    g = make_from_table(table, id)
    return replace(g, name=f"S{n}")


def make_from_table(table, id: int = 0) -> FactorGroup:
    n = len(table)
    if n < 1 or any(len(row) != n for row in table):
        raise InvalidOrder("Cayley table must be square and nonempty")
    rows = [[int(x) for x in row] for row in table]
    if any(not 0 <= x < n for row in rows for x in row):
        raise InvalidOrder("Cayley table entry out of range")

    e = next((c for c in range(n)
              if all(rows[c][x] == x and rows[x][c] == x for x in range(n))), None)
    if e is None:
        raise NoIdentity("no two-sided identity element")
    if e != 0:
        sigma = list(range(n))
        sigma[0], sigma[e] = e, 0
        rows = [[sigma[rows[sigma[x]][sigma[y]]] for y in range(n)] for x in range(n)]

    inv = []
    for g in range(n):
        h = next((h for h in range(n) if rows[g][h] == 0 and rows[h][g] == 0), None)
        if h is None:
            raise NoInverse(g)
        inv.append(h)

    for x, y, z in itertools.product(range(n), repeat=3):
        if rows[rows[x][y]][z] != rows[x][rows[y][z]]:
            raise NonAssociative((x, y, z))

    return FactorGroup(id, n, tuple(tuple(r) for r in rows), tuple(inv))


def conjugacy_in_factor(f: FactorGroup, g: int, h: int):
    """Smallest t with t^-1 g t = h, or None."""
    m = f.mult
    for t in range(f.order):
        if m[m[f.inv[t]][g]][t] == h:
            return t
    return None


def _default_name(i: int) -> str:
    return string.ascii_lowercase[i] if i < 26 else ""


class Signature:
    """An ordered list of at least two nontrivial finite factors.

    Syllables are encoded as small integers ("codes"); code tables give the
    factor, letter, inverse and in-factor product of every syllable.
    """

    def __init__(self, factors, names=None):
        factors = list(factors)
        if len(factors) < 2:
            raise InvalidOrder("a free product needs at least two factors")
        for f in factors:
            if f.order < 2:
                raise InvalidOrder("every factor must be nontrivial")
        self.factors = tuple(replace(f, id=i) for i, f in enumerate(factors))
        self.names = tuple(names) if names else tuple(_default_name(i) for i in range(len(factors)))

        offsets, fac, let = [], [], []
        for i, f in enumerate(self.factors):
            offsets.append(len(fac))
            for x in range(1, f.order):
                fac.append(i)
                let.append(x)
        self.offsets = tuple(offsets)
        self.fac = tuple(fac)
        self.let = tuple(let)
        self.ncodes = len(fac)
        self.inv = tuple(self.code(i, self.factors[i].inv[x]) for i, x in zip(fac, let))
        # merge[c][d]: code of the product, -1 for the identity, -2 across factors
        merge = []
        for c in range(self.ncodes):
            row = []
            for d in range(self.ncodes):
                if fac[c] != fac[d]:
                    row.append(-2)
                    continue
                p = self.factors[fac[c]].mult[let[c]][let[d]]
                row.append(self.code(fac[c], p) if p else -1)
            merge.append(tuple(row))
        self.merge = tuple(merge)
        self._key = tuple((f.order, f.mult) for f in self.factors)

    def code(self, factor: int, letter: int) -> int:
        return self.offsets[factor] + letter - 1

    def __len__(self):
        return len(self.factors)

    def __eq__(self, other):
        return isinstance(other, Signature) and (self is other or self._key == other._key)

    def __hash__(self):
        return hash(self._key)

    def describe(self) -> str:
        return "*".join(f.name or f"G{f.order}" for f in self.factors)

    def __repr__(self):
        return f"Signature({self.describe()})"


_TOKEN = re.compile(r"^(Z|S)(\d+)$")


def parse_group_spec(text: str) -> Signature:
    """Parse ``Z2*Z2*Z3`` (``S3`` tokens allowed too) or ``table:<file>``."""
    text = text.strip()
    if text.startswith("table:"):
        return load_group_file(text[len("table:"):])
    factors = []
    pos = 0
    for tok in text.split("*"):
        m = _TOKEN.match(tok.strip())
        if not m:
            raise ParseError(f"bad factor token {tok!r}", pos)
        kind, n = m.group(1), int(m.group(2))
        factors.append(make_cyclic(n) if kind == "Z" else make_symmetric(n))
        pos += len(tok) + 1
    return Signature(factors)


def parse_group_text(text: str) -> Signature:
    """Blocks of ``order n`` followed by n rows of n integers."""
    lines = [ln.split() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln[0].startswith("#")]
    factors = []
    i = 0
    while i < len(lines):
        head = lines[i]
        if len(head) != 2 or head[0] != "order":
            raise ParseError(f"expected 'order n', got {' '.join(head)!r}", i)
        n = int(head[1])
        rows = lines[i + 1:i + 1 + n]
        if len(rows) != n:
            raise ParseError("truncated Cayley table", i)
        factors.append(make_from_table([[int(x) for x in r] for r in rows], len(factors)))
        i += 1 + n
    return Signature(factors)


def load_group_file(path) -> Signature:
    return parse_group_text(Path(path).read_text())
