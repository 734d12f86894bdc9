"""Straight-line programs over free-group variables z_0, z_1, ...

Expressions are DAGs of ``Var``, ``One``, ``Mul``, ``Inv``, ``Pow`` and
``Comm`` nodes.  A ``Pow`` exponent is normally an int; it may also be a
sympy symbol standing for a constant that could not be computed within the
syllable budget.  Such expressions still have exact exponent sums but cannot
be evaluated.
"""

from __future__ import annotations

import os
import re

from .errors import BudgetExceeded, ParseError, UnresolvedConstant
from .words import Word, _cyclic, _inv, _mul, _power

DEFAULT_BUDGET = 5_000_000


def default_budget() -> int:
    env = os.environ.get("VERBA_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


class WordExpr:
    __slots__ = ("args", "_sums", "__weakref__")
    op = ""

    def __init__(self, *args):
        self.args = args
        self._sums = None

    @property
    def children(self):
        return ()

    def __repr__(self):
        return f"<{self.op} node, {node_count(self)} nodes>"


class Var(WordExpr):
    __slots__ = ()
    op = "var"

    def __init__(self, i: int):
        super().__init__(int(i))

    @property
    def index(self):
        return self.args[0]


class One(WordExpr):
    __slots__ = ()
    op = "one"


class Mul(WordExpr):
    __slots__ = ()
    op = "mul"

    @property
    def children(self):
        return self.args


class Inv(WordExpr):
    __slots__ = ()
    op = "inv"

    @property
    def children(self):
        return self.args


class Pow(WordExpr):
    __slots__ = ()
    op = "pow"

    def __init__(self, child, e):
        super().__init__(child, e)

    @property
    def children(self):
        return self.args[:1]


class Comm(WordExpr):
    __slots__ = ()
    op = "comm"

    @property
    def children(self):
        return self.args


def mul(*exprs: WordExpr) -> WordExpr:
    out = exprs[0]
    for e in exprs[1:]:
        out = Mul(out, e)
    return out


def power_of(e: WordExpr, n) -> WordExpr:
    """Pow node, collapsing the exponent 1."""
    return e if isinstance(n, int) and n == 1 else Pow(e, n)


def symbol(name: str):
    import sympy
    return sympy.Symbol(name, integer=True, positive=True)


def _is_sym(x) -> bool:
    return not isinstance(x, int)


def postorder(root: WordExpr) -> list:
    seen, out = set(), []
    stack = [(root, False)]
    while stack:
        node, done = stack.pop()
        if done:
            out.append(node)
            continue
        if id(node) in seen:
            continue
        seen.add(id(node))
        stack.append((node, True))
        for c in node.children:
            if id(c) not in seen:
                stack.append((c, False))
    return out


def node_count(e: WordExpr) -> int:
    return len(postorder(e))


def variables(e: WordExpr) -> set:
    return {n.index for n in postorder(e) if isinstance(n, Var)}


def free_symbols(e: WordExpr) -> set:
    return {n.args[1] for n in postorder(e) if isinstance(n, Pow) and _is_sym(n.args[1])}


def is_symbolic(e: WordExpr) -> bool:
    return any(isinstance(n, Pow) and _is_sym(n.args[1]) for n in postorder(e))


# ---------------------------------------------------------------- abelianization

def _scale(d, e):
    if not d:
        return {}
    if isinstance(e, int):
        return {k: v * e for k, v in d.items()} if e else {}
    import sympy
    out = {}
    for k, v in d.items():
        x = sympy.expand(v * e)
        if x != 0:
            out[k] = x
    return out


def _add(a, b):
    out = dict(a)
    for k, v in b.items():
        x = out.get(k, 0) + v
        if not isinstance(x, int):
            import sympy
            x = sympy.expand(x)
        if x == 0:
            out.pop(k, None)
        else:
            out[k] = x
    return out


def exponent_sums(e: WordExpr) -> dict:
    """Image in the abelianization: variable index -> exponent sum (zeros omitted)."""
    if e._sums is not None:
        return e._sums
    for n in postorder(e):
        if n._sums is not None:
            continue
        if isinstance(n, Var):
            s = {n.index: 1}
        elif isinstance(n, Mul):
            s = _add(n.args[0]._sums, n.args[1]._sums)
        elif isinstance(n, Inv):
            s = {k: -v for k, v in n.args[0]._sums.items()}
        elif isinstance(n, Pow):
            s = _scale(n.args[0]._sums, n.args[1])
        else:  # One, Comm
            s = {}
        n._sums = s
    return e._sums


def exponent_sum(e: WordExpr, i: int):
    return exponent_sums(e).get(i, 0)


# ---------------------------------------------------------------- lengths

def length_upper_bound(e: WordExpr, input_lengths) -> int:
    """Syllable bound from the DAG; symbolic exponents raise UnresolvedConstant."""
    memo = {}
    for n in postorder(e):
        if isinstance(n, Var):
            b = input_lengths[n.index]
        elif isinstance(n, One):
            b = 0
        elif isinstance(n, Inv):
            b = memo[id(n.args[0])]
        elif isinstance(n, Pow):
            x = n.args[1]
            if _is_sym(x):
                # a polynomial in the symbols would grow with the DAG
                raise UnresolvedConstant(f"symbolic exponent {x}")
            b = abs(x) * memo[id(n.args[0])]
        elif isinstance(n, Mul):
            b = memo[id(n.args[0])] + memo[id(n.args[1])]
        else:
            b = 2 * (memo[id(n.args[0])] + memo[id(n.args[1])])
        memo[id(n)] = b
    return memo[id(e)]


def power_length(sig, w: tuple, n: int) -> int:
    """Exact syllable length of w^n without building it."""
    n = abs(n)
    if n == 0 or not w:
        return 0
    if n == 1:
        return len(w)
    core, f = _cyclic(sig, w)
    if len(core) < 2:
        return len(_power(sig, w, n))
    merged = bool(f) and sig.fac[core[-1]] == sig.fac[f[0]]
    return 2 * len(f) + n * len(core) - merged


# ---------------------------------------------------------------- evaluation

def evaluate(e: WordExpr, assignment, budget: int | None = None) -> Word:
    if budget is None:
        budget = default_budget()
    sig = assignment[0].sig if assignment else None
    memo = {}

    def fail(node, size):
        lens = [len(w) for w in assignment]
        try:
            bound = length_upper_bound(node, lens)
        except UnresolvedConstant:
            bound = size
        raise BudgetExceeded(max(bound, size), budget, node)

    for n in postorder(e):
        if isinstance(n, Var):
            r = assignment[n.index].syl
        elif isinstance(n, One):
            r = ()
        elif isinstance(n, Mul):
            r = _mul(sig, memo[id(n.args[0])], memo[id(n.args[1])])
        elif isinstance(n, Inv):
            r = _inv(sig, memo[id(n.args[0])])
        elif isinstance(n, Pow):
            x = n.args[1]
            if _is_sym(x):
                raise UnresolvedConstant(f"symbolic exponent {x}")
            c = memo[id(n.args[0])]
            size = power_length(sig, c, x)
            if size > budget:
                fail(n, size)
            r = _power(sig, c, x)
        else:
            a, b = memo[id(n.args[0])], memo[id(n.args[1])]
            r = _mul(sig, _mul(sig, _inv(sig, a), _inv(sig, b)), _mul(sig, a, b))
        if len(r) > budget:
            fail(n, len(r))
        memo[id(n)] = r
    return Word(sig, memo[id(e)]) if sig is not None else None


def evaluate_in(e: WordExpr, assignment, mul_op, inv_op, one, pow_op=None):
    """Evaluate in any group given by its operations (e.g. permutations)."""
    def default_pow(x, n):
        if n < 0:
            x, n = inv_op(x), -n
        acc = one
        while n:
            if n & 1:
                acc = mul_op(acc, x)
            x = mul_op(x, x)
            n >>= 1
        return acc

    pw = pow_op or default_pow
    memo = {}
    for n in postorder(e):
        if isinstance(n, Var):
            r = assignment[n.index]
        elif isinstance(n, One):
            r = one
        elif isinstance(n, Mul):
            r = mul_op(memo[id(n.args[0])], memo[id(n.args[1])])
        elif isinstance(n, Inv):
            r = inv_op(memo[id(n.args[0])])
        elif isinstance(n, Pow):
            if _is_sym(n.args[1]):
                raise UnresolvedConstant(f"symbolic exponent {n.args[1]}")
            r = pw(memo[id(n.args[0])], n.args[1])
        else:
            a, b = memo[id(n.args[0])], memo[id(n.args[1])]
            r = mul_op(mul_op(inv_op(a), inv_op(b)), mul_op(a, b))
        memo[id(n)] = r
    return memo[id(e)]


def substitute(e: WordExpr, images) -> WordExpr:
    """Replace Var(i) by images[i], sharing rebuilt subterms."""
    memo = {}
    for n in postorder(e):
        if isinstance(n, Var):
            r = images[n.index]
        elif isinstance(n, One):
            r = n
        elif isinstance(n, Pow):
            r = Pow(memo[id(n.args[0])], n.args[1])
        else:
            r = type(n)(*(memo[id(c)] for c in n.args))
        memo[id(n)] = r
    return memo[id(e)]


def expand_free(e: WordExpr) -> list:
    """Freely reduced letter list [(var, +-1), ...]; only for small integer expressions."""
    memo = {}

    def red(seq):
        out = []
        for x in seq:
            if out and out[-1][0] == x[0] and out[-1][1] == -x[1]:
                out.pop()
            else:
                out.append(x)
        return out

    def inverse(seq):
        return [(v, -s) for v, s in reversed(seq)]

    for n in postorder(e):
        if isinstance(n, Var):
            r = [(n.index, 1)]
        elif isinstance(n, One):
            r = []
        elif isinstance(n, Mul):
            r = red(memo[id(n.args[0])] + memo[id(n.args[1])])
        elif isinstance(n, Inv):
            r = inverse(memo[id(n.args[0])])
        elif isinstance(n, Pow):
            c, x = memo[id(n.args[0])], n.args[1]
            r = red((c if x >= 0 else inverse(c)) * abs(x))
        else:
            a, b = memo[id(n.args[0])], memo[id(n.args[1])]
            r = red(inverse(a) + inverse(b) + a + b)
        memo[id(n)] = r
    return memo[id(e)]


# ---------------------------------------------------------------- text dump

def dump(e: WordExpr) -> str:
    nodes = postorder(e)
    ids = {id(n): t for t, n in enumerate(nodes)}
    lines = []
    for t, n in enumerate(nodes):
        if isinstance(n, Var):
            args = str(n.index)
        elif isinstance(n, One):
            args = ""
        elif isinstance(n, Pow):
            args = f"{ids[id(n.args[0])]} {n.args[1]}"
        else:
            args = " ".join(str(ids[id(c)]) for c in n.args)
        lines.append(f"{t} := {n.op} {args}".rstrip())
    return "\n".join(lines) + "\n"


_LINE = re.compile(r"^\s*(\d+)\s*:=\s*(\w+)\s*(.*?)\s*$")
_OPS = {"var": Var, "one": One, "mul": Mul, "inv": Inv, "pow": Pow, "comm": Comm}


def parse_dump(text: str) -> WordExpr:
    nodes = {}
    last = None
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        m = _LINE.match(line)
        if not m or m.group(2) not in _OPS:
            raise ParseError(f"bad SLP line {line!r}", lineno)
        t, op, rest = int(m.group(1)), m.group(2), m.group(3).split()
        try:
            if op == "var":
                node = Var(int(rest[0]))
            elif op == "one":
                node = One()
            elif op == "pow":
                e = int(rest[1]) if re.fullmatch(r"-?\d+", rest[1]) else symbol(rest[1])
                node = Pow(nodes[int(rest[0])], e)
            else:
                node = _OPS[op](*(nodes[int(a)] for a in rest))
        except (KeyError, IndexError, ValueError) as exc:
            raise ParseError(f"bad operands in {line!r}", lineno) from exc
        nodes[t] = last = node
    if last is None:
        raise ParseError("empty SLP dump")
    return last


def depth(e: WordExpr) -> int:
    memo = {}
    for n in postorder(e):
        memo[id(n)] = 1 + max((memo[id(c)] for c in n.children), default=0)
    return memo[id(e)]


def stats(e: WordExpr, input_lengths=None) -> dict:
    vs = variables(e)
    nv = max(vs) + 1 if vs else 0
    sums = exponent_sums(e)
    out = {
        "nodes": node_count(e),
        "depth": depth(e),
        "variables": nv,
        "exponent_sums": [str(sums.get(i, 0)) for i in range(nv)],
        "symbolic_constants": sorted(str(s) for s in free_symbols(e)),
    }
    if input_lengths is None:
        input_lengths = [1] * nv
    try:
        out["length_upper_bound"] = str(length_upper_bound(e, input_lengths))
    except UnresolvedConstant:
        out["length_upper_bound"] = "unresolved"
    return out
