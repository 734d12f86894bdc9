"""Constructors for the nested test words and the searches that fix their constants.

Everything is built as straight-line programs.  Concrete words are evaluated
only while they fit in the syllable budget; a constant whose search would
need a larger word is left as a named sympy symbol and reported as
unresolved.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (BadArity, BudgetExceeded, CommutingPair, NotHyperbolic, SearchExhausted,
                     StructureMismatch, UnresolvedConstant)
from .slp import (Comm, Inv, Mul, Pow, Var, WordExpr, default_budget, evaluate, mul, power_of,
                  substitute, symbol)
from .words import (Word, _cyclic, _inv, _mul, _power, commutator, conjugate, hyperbolic_decompose,
                    invert, is_hyperbolic, multiply, power, radical_length)

KAPPA_CAP = 64
ENUM_MAX_LEN = 6


# ---------------------------------------------------------------- L2

def l2(e0: WordExpr, e1: WordExpr) -> WordExpr:
    c = Comm(Pow(e0, 10), Pow(e1, 10))
    c5000 = Pow(c, 5000)
    return mul(c5000, e0, Pow(c, 200), e1, Pow(c, 400), Inv(e0), Pow(c, 600), Inv(e1), c5000)


_L2 = l2(Var(0), Var(1))


def l2_value(x: Word, y: Word, budget: int | None = None) -> Word:
    return evaluate(_L2, [x, y], budget)


# ---------------------------------------------------------------- axis data

@dataclass(frozen=True)
class CommutatorAxisData:
    B: Word
    l: int
    s: Word
    Y1: Word
    Y2: Word
    k: int
    j: int
    f: Word


def in_cyclic(Y: Word, B: Word) -> bool:
    """Y in <B> for a cyclically reduced B."""
    if not Y.syl:
        return True
    if len(Y) % len(B):
        return False
    t = len(Y) // len(B)
    return Y.syl == B.syl * t or Y.syl == _inv(B.sig, B.syl) * t


def _require_pair(X1, X2):
    for X in (X1, X2):
        if not is_hyperbolic(X):
            raise NotHyperbolic(str(X))
    if commutator(X1, X2).is_identity():
        raise CommutingPair(f"{X1} and {X2} commute")


def _comm_length_bound(X1, X2, k):
    # |X^n| = n|X|_c + (|X| - |X|_c) for hyperbolic X
    c1, c2 = len(_cyclic(X1.sig, X1.syl)[0]), len(_cyclic(X2.sig, X2.syl)[0])
    return 2 * (10 * c1 + len(X1) - c1) + 2 * (10 * k * c2 + len(X2) - c2)


def commutator_axis_data(X1: Word, X2: Word, k: int, J: int | None = None,
                         budget: int | None = None) -> CommutatorAxisData:
    _require_pair(X1, X2)
    if budget is None:
        budget = default_budget()
    bound = _comm_length_bound(X1, X2, k)
    if bound > budget:
        raise BudgetExceeded(bound, budget)
    sig = X1.sig
    c = commutator(power(X1, 10), power(X2, 10 * k))
    dec = hyperbolic_decompose(c)
    B, l, f = dec.A, dec.k, dec.f
    if J is None:
        J = 2 * l + 4
    finv = _inv(sig, f.syl)
    a1 = Word(sig, _mul(sig, _mul(sig, f.syl, X1.syl), finv))
    a2 = Word(sig, _mul(sig, _mul(sig, f.syl, X2.syl), finv))
    limit = 4 * l * len(B)
    best = None
    for j in sorted(range(-J, J + 1), key=lambda t: (abs(t), t < 0)):
        if best is not None and abs(j) * len(B) - len(f) > len(best[0]):
            break
        Bj = Word(sig, _power(sig, B.syl, j))
        Y1 = conjugate(a1, Bj)
        if len(Y1) >= limit:
            continue
        Y2 = conjugate(a2, Bj)
        if len(power(Y2, k)) >= limit or in_cyclic(Y1, B) or in_cyclic(Y2, B):
            continue
        s = Word(sig, _mul(sig, finv, Bj.syl))
        if best is None or len(s) < len(best[0]):
            best = (s, Y1, Y2, j)
    if best is None:
        raise SearchExhausted(f"no conjugator f^-1 B^j with |j| <= {J}")
    s, Y1, Y2, j = best
    if commutator(power(Y1, 10), power(Y2, 10 * k)).syl != B.syl * l:
        raise StructureMismatch("normalized commutator is not B^l")
    return CommutatorAxisData(B, l, s, Y1, Y2, k, j, f)


def kappa_data(N: int, X1: Word, X2: Word, cap: int = KAPPA_CAP, budget: int | None = None):
    """Smallest k (with its axis data) meeting the three threshold conditions."""
    _require_pair(X1, X2)
    # |B| <= |c| <= bound(k): every k with bound(k) <= N fails |B| > N
    k_lo = 1
    while _comm_length_bound(X1, X2, k_lo) <= N:
        step = max(1, (N - _comm_length_bound(X1, X2, k_lo)) // (20 * len(_cyclic(X2.sig, X2.syl)[0])))
        k_lo += step

    def radical(k):
        c = commutator(power(X1, 10), power(X2, 10 * k))
        if budget is not None and len(c) > budget:
            raise BudgetExceeded(len(c), budget)
        return len(hyperbolic_decompose(c).A)

    # gallop and bisect on |B| > N (radical length grows with k), then scan
    if radical(k_lo) <= N:
        lo, step = k_lo, 1
        while radical(lo + step) <= N:
            lo, step = lo + step, step * 2
        hi = lo + step
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if radical(mid) > N:
                hi = mid
            else:
                lo = mid
        k_lo = hi
    for k in range(k_lo, k_lo + cap):
        try:
            d = commutator_axis_data(X1, X2, k, budget=budget)
        except SearchExhausted:
            continue
        if d.l in (1, 2) and len(d.B) > N and 4 * len(d.B) > len(d.s):
            return k, d
    raise SearchExhausted(f"kappa search over k in [{k_lo}, {k_lo + cap - 1}]")


def kappa(N: int, X1: Word, X2: Word, cap: int = KAPPA_CAP, budget: int | None = None) -> int:
    return kappa_data(N, X1, X2, cap, budget)[0]


@dataclass(frozen=True)
class L2Structure:
    T: tuple
    R: tuple
    conjugator: Word
    W: Word
    data: CommutatorAxisData


def w_structure(X1: Word, X2: Word, k: int, budget: int | None = None) -> L2Structure:
    d = commutator_axis_data(X1, X2, k, budget=budget)
    sig = X1.sig
    B, l = d.B, d.l
    Bp = lambda e: Word(sig, B.syl * e) if e >= 0 else power(B, e)  # noqa: E731
    B10 = Bp(10 * l)
    Y2k = power(d.Y2, k)
    T = tuple(multiply(multiply(B10, Y), B10) for Y in (d.Y1, Y2k, invert(d.Y1), invert(Y2k)))
    R = tuple(Bp(e * l) for e in (180, 380, 580, 9980))
    nb = len(B)
    for t in T:
        if t.syl[:nb] != B.syl or t.syl[-nb:] != B.syl:
            raise StructureMismatch("a T-block does not start and end with B")
    W = Word(sig, sum((t.syl + r.syl for t, r in zip(T, R)), ()))
    conj = multiply(d.s, Bp(4990 * l))
    L = l2_value(X1, power(X2, k), budget)
    if conjugate(L, conj) != W:
        raise StructureMismatch("conjugated L2 value differs from the assembled word")
    Bl = l * nb
    for t in T:
        if not 4 * Bl < len(t) < 25 * Bl:
            raise StructureMismatch(f"|T|={len(t)} outside (4, 25)*{Bl}")
    if not 11136 * Bl < len(W) < 11220 * Bl:
        raise StructureMismatch(f"|W|={len(W)} outside (11136, 11220)*{Bl}")
    return L2Structure(T, R, conj, W, d)


# ---------------------------------------------------------------- E and J words

def e_n(exprs) -> WordExpr:
    exprs = list(exprs)
    if len(exprs) < 2:
        raise BadArity("E_n needs at least two arguments")
    e = Comm(Pow(exprs[0], 2), Pow(exprs[1], 2))
    for z in exprs[2:]:
        e = Comm(Pow(e, 2), Pow(z, 2))
    return e


def e_k(kbar, n: int) -> WordExpr:
    kbar = tuple(kbar)
    if n < 1 or len(kbar) < n:
        raise BadArity(f"E_k with n={n} needs {n} constants, got {len(kbar)}")
    e = power_of(Var(0), kbar[0])
    for j in range(1, n):
        e = Comm(Pow(e, 2), Pow(Var(j), 2 * kbar[j]))
    return e


def j_k(kbar, n: int) -> WordExpr:
    kbar = tuple(kbar)
    if n < 2 or len(kbar) != n + 1:
        raise BadArity(f"J_k with n={n} needs {n + 1} constants, got {len(kbar)}")
    return Comm(Pow(e_k(kbar[:n], n), 2 * kbar[n]), Pow(Var(n), 2))


def _rad(w: Word) -> int:
    return radical_length(w) if is_hyperbolic(w) else 0


def _require_chain(xs):
    for x in xs:
        if not is_hyperbolic(x):
            raise NotHyperbolic(str(x))
    for a, b in zip(xs, xs[1:]):
        if commutator(a, b).is_identity():
            raise CommutingPair(f"{a} and {b} commute")


@dataclass
class JConstants:
    kbar: tuple
    khat: tuple
    unresolved: list = field(default_factory=list)


def _grow(pred, name, cap):
    for m in range(1, cap + 1):
        if pred(m):
            return m
    raise SearchExhausted(f"{name}: no value up to {cap}")


def choose_j_constants(xs, budget: int | None = None, cap: int = KAPPA_CAP,
                       allow_unresolved: bool = False, tag: str = "") -> JConstants:
    """Constant tuples (k_0..k_{n-2}, m1, m2) and (k_0..k_{n-2}, m1^, m2^)."""
    xs = list(xs)
    n = len(xs)
    if n < 2:
        raise BadArity("need at least two elements")
    _require_chain(xs)
    if budget is None:
        budget = default_budget()
    unresolved = []
    state = {"open": True}

    def search(name, pred):
        if state["open"]:
            try:
                return _grow(pred, name, cap)
            except BudgetExceeded:
                if not allow_unresolved:
                    raise
                state["open"] = False
        unresolved.append(name)
        return symbol(f"{tag}{name}")

    def ev(kbar, t, args):
        return evaluate(e_k(kbar, t), args, budget)

    ks = [1]
    for t in range(1, n - 1):
        target = _rad(xs[t + 1])
        ks.append(search(f"k{t}", lambda m: _rad(ev(ks + [m], t + 1, xs[:t + 1])) > target))
    M = max(_rad(x) for x in xs)

    m1 = search("m1", lambda m: _rad(ev(ks + [m], n, xs)) > M)
    E_r = _rad(ev(ks + [m1], n, xs)) if state["open"] else None
    m1h = search("m1_hat", lambda m: _rad(ev(ks + [m], n, xs)) > E_r)
    Eh_r = _rad(ev(ks + [m1h], n, xs)) if state["open"] else None

    def j_rads(kb):
        e = j_k(kb, n)
        return [_rad(evaluate(e, xs + [xi], budget)) for xi in xs]

    m2 = search("m2", lambda m: min(j_rads(ks + [m1, m])) > Eh_r)
    Jmax = max(j_rads(ks + [m1, m2])) if state["open"] else None
    m2h = search("m2_hat", lambda m: min(j_rads(ks + [m1h, m])) > Jmax)
    kbar = tuple(ks + [m1, m2])
    khat = tuple(ks + [m1h, m2h])
    if state["open"]:
        Jk, Jh = j_rads(kbar), j_rads(khat)
        if not (min(Jk) > Eh_r > E_r and min(Jh) > max(Jk)):
            raise StructureMismatch("constant inequalities fail on recheck")
    return JConstants(kbar, khat, unresolved)


# ---------------------------------------------------------------- T words

@dataclass
class TWordFamily:
    n: int
    exprs: dict
    constants: dict
    values: dict
    xs: tuple
    unresolved: list = field(default_factory=list)
    tag: str = ""

    @property
    def T(self) -> WordExpr:
        return self.exprs[(self.n, 0)]

    def manifest(self) -> list:
        out = []
        for (j, i), m in sorted(self.constants.items()):
            out.append(f"{self.tag}m[{j},{i}]={m}")
        for (j, i), v in sorted(self.values.items()):
            if j >= 2:
                out.append(f"{self.tag}|X[{j},{i}]|={len(v)}")
        return out


def _t_family(xs, depth, budget, tag, allow_unresolved=True):
    n = len(xs)
    if budget is None:
        budget = default_budget()
    exprs = {(1, i): Var(i) for i in range(n)}
    values = {(1, i): x for i, x in enumerate(xs) if x is not None}
    constants, unresolved = {}, []
    for j in range(2, depth + 1):
        for i in range(n - j + 1):
            left = 1 if i == 0 else constants[(j, i - 1)]
            A, B = values.get((j - 1, i)), values.get((j - 1, i + 1))
            m = None
            if A is not None and B is not None and isinstance(left, int):
                try:
                    if i == 0:
                        m = kappa(1, A, B, budget=budget)
                    elif (j, i - 1) in values:
                        m = kappa(len(values[(j, i - 1)]), power(A, left), B, budget=budget)
                except BudgetExceeded:
                    if not allow_unresolved:
                        raise
            if m is None:
                if not allow_unresolved:
                    raise BudgetExceeded(0, budget)
                m = symbol(f"{tag}m{j}_{i}")
                unresolved.append((j, i))
            constants[(j, i)] = m
            exprs[(j, i)] = l2(power_of(exprs[(j - 1, i)], left), power_of(exprs[(j - 1, i + 1)], m))
            if isinstance(m, int):
                try:
                    X = l2_value(power(A, left), power(B, m), budget)
                except BudgetExceeded:
                    continue
                if not is_hyperbolic(X):
                    raise StructureMismatch(f"X[{j},{i}] is not hyperbolic")
                values[(j, i)] = X
    return TWordFamily(n, exprs, constants, values, tuple(xs), unresolved, tag)


def t_words(xs, budget: int | None = None, depth: int | None = None,
            allow_unresolved: bool = True, tag: str = "") -> TWordFamily:
    xs = list(xs)
    if len(xs) < 2:
        raise BadArity("T words need at least two elements")
    _require_chain(xs)
    return _t_family(xs, depth or len(xs), budget, tag, allow_unresolved)


def _hat_index(n: int, p: int) -> int:
    return p if p < n else 2 * n - 2 - p


def t_prime_words(xs, budget: int | None = None, tag: str = ""):
    """(T', T'', hat family): the two depth 2n-2 words of the mirrored tuple."""
    xs = list(xs)
    n = len(xs)
    _require_chain(xs)
    hat = xs + xs[-2::-1]
    fam = _t_family(hat, 2 * n - 2, budget, tag)
    images = [Var(_hat_index(n, p)) for p in range(2 * n - 1)]
    return (substitute(fam.exprs[(2 * n - 2, 0)], images),
            substitute(fam.exprs[(2 * n - 2, 1)], images), fam)


# ---------------------------------------------------------------- P words

@dataclass
class PWords:
    P: WordExpr
    P1: WordExpr
    P2: WordExpr
    constants: JConstants
    tilde: tuple
    checks: dict
    family: TWordFamily
    hat_family: TWordFamily

    def manifest(self) -> list:
        c = self.constants
        out = [f"kbar={','.join(map(str, c.kbar))}", f"khat={','.join(map(str, c.khat))}"]
        out += [f"{k}={v}" for k, v in self.checks.items()]
        out += self.family.manifest() + self.hat_family.manifest()
        return out


def _hyp_noncomm(a, b):
    return commutator(a, b).is_identity() is False


def p_words(xs, budget: int | None = None, tag: str = "") -> PWords:
    xs = list(xs)
    n = len(xs)
    if budget is None:
        budget = default_budget()
    consts = choose_j_constants(xs, budget, allow_unresolved=True, tag=f"{tag}")
    zs = [Var(i) for i in range(n)]
    J, Jh = j_k(consts.kbar, n), j_k(consts.khat, n)
    W = [substitute(J, zs + [Var(i)]) for i in range(n)]
    Wh = [substitute(Jh, zs + [Var(i)]) for i in range(n)]
    E, Eh = e_k(consts.kbar[:n], n), e_k(consts.khat[:n], n)
    base = []
    for i in range(n):
        base += [W[i], Wh[i]]
    base += [E, Eh]

    tilde = []
    for e in base:
        try:
            tilde.append(evaluate(e, xs, budget))
        except (BudgetExceeded, UnresolvedConstant):
            tilde.append(None)
    checks = _f_checks(tilde, n)
    if any(v is False for v in checks.values()):
        raise StructureMismatch(f"tuple conditions fail: {checks}")

    fam = _t_family(tilde, 2 * n + 2, budget, f"{tag}T.")
    P = substitute(fam.T, base)
    N = 2 * n + 2
    hat = tilde + tilde[-2::-1]
    hfam = _t_family(hat, 2 * N - 2, budget, f"{tag}T'.")
    images = [base[_hat_index(N, p)] for p in range(2 * N - 1)]
    P1 = substitute(hfam.exprs[(2 * N - 2, 0)], images)
    P2 = substitute(hfam.exprs[(2 * N - 2, 1)], images)
    return PWords(P, P1, P2, consts, tuple(tilde), checks, fam, hfam)


def _f_checks(tilde, n):
    X = tilde[0:2 * n:2]
    Xh = tilde[1:2 * n:2]
    U, V = tilde[2 * n], tilde[2 * n + 1]

    def known(*ws):
        return all(w is not None for w in ws)

    def nc(a, b):
        return not commutator(a, b).is_identity() if known(a, b) else None

    checks = {"F1": all(is_hyperbolic(w) for w in tilde) if known(*tilde) else None}
    checks["F2"] = _all3([nc(X[i], Xh[i]) for i in range(n)])
    checks["F3"] = _all3([nc(Xh[i], X[i + 1]) for i in range(n - 1)])
    checks["F4"] = nc(Xh[n - 1], U)
    checks["F5"] = nc(U, V)
    return checks


def _all3(vals):
    if any(v is False for v in vals):
        return False
    if any(v is None for v in vals):
        return None
    return True


# ---------------------------------------------------------------- M words

@dataclass
class MWords:
    M: WordExpr
    M1: WordExpr
    M2: WordExpr
    w: Word
    u1: Word
    u2: Word
    s: Word
    witnesses: dict
    hat: tuple
    pwords: PWords

    def manifest(self) -> list:
        out = [f"w={self.w}", f"u1={self.u1}", f"u2={self.u2}", f"s={self.s}",
               f"hat_length={len(self.hat)}"]
        out += [f"f_{k}={_free_str(v)}" for k, v in self.witnesses.items()]
        return out + self.pwords.manifest()


def _free_str(letters):
    return " ".join(f"z{i}" if e > 0 else f"z{i}^-1" for i, e in letters) or "1"


def free_words(n: int, max_len: int):
    """Reduced words over z_i^{+-1} as letter tuples, by length."""
    yield ()
    layer = [()]
    letters = [(i, e) for i in range(n) for e in (1, -1)]
    for _ in range(max_len):
        nxt = []
        for w in layer:
            for a in letters:
                if w and w[-1] == (a[0], -a[1]):
                    continue
                nxt.append(w + (a,))
        yield from nxt
        layer = nxt


def free_expr(letters) -> WordExpr:
    from .slp import One
    if not letters:
        return One()
    parts = [Var(i) if e > 0 else Inv(Var(i)) for i, e in letters]
    return mul(*parts)


def _free_value(letters, xs):
    sig = xs[0].sig
    out = ()
    for i, e in letters:
        out = _mul(sig, out, xs[i].syl if e > 0 else _inv(sig, xs[i].syl))
    return Word(sig, out)


def m_words(xs, budget: int | None = None, max_len: int = ENUM_MAX_LEN, tag: str = "") -> MWords:
    xs = list(xs)
    n = len(xs)
    cands = []
    for letters in free_words(n, max_len):
        if letters:
            cands.append((len(letters), letters, _free_value(letters, xs)))
    cands.sort(key=lambda c: (c[0], len(c[2]), c[1]))

    def first(pred, name):
        for _, letters, v in cands:
            if pred(v):
                return letters, v
        raise SearchExhausted(f"no {name} among free words of length <= {max_len}")

    def nc(a, b):
        return not commutator(a, b).is_identity()

    fw, w = first(lambda v: not v.is_identity()
                  and all(not multiply(x, v).is_identity() for x in xs), "w")
    xw = [multiply(x, w) for x in xs]

    def u_ok(v):
        return is_hyperbolic(v) and nc(w, v) and all(nc(a, v) for a in xw)

    fu1, u1 = first(u_ok, "u1")
    fu2, u2 = first(lambda v: u_ok(v) and nc(u1, v), "u2")
    dots = []
    for a in xw:
        dots += [commutator(a, u1), commutator(a, u2)]
    dotted = dots + [commutator(w, u1), commutator(w, u2), u1, u2]
    fs, s = first(lambda v: is_hyperbolic(v) and all(nc(v, d) for d in dotted), "s")

    hat = []
    for d in dotted[:-2]:
        hat += [d, s]
    hat += [u1, u2]

    Fw, Fu1, Fu2, Fs = (free_expr(x) for x in (fw, fu1, fu2, fs))
    images = []
    for i in range(n):
        for Fu in (Fu1, Fu2):
            images += [Comm(Mul(Var(i), Fw), Fu), Fs]
    images += [Comm(Fw, Fu1), Fs, Comm(Fw, Fu2), Fs, Fu1, Fu2]

    pw = p_words(hat, budget, tag=f"{tag}M.")
    M = substitute(pw.P, images)
    M1 = substitute(pw.P1, images)
    M2 = substitute(pw.P2, images)
    witnesses = {"w": fw, "u1": fu1, "u2": fu2, "s": fs}
    return MWords(M, M1, M2, w, u1, u2, s, witnesses, tuple(hat), pw)
