import random

import pytest

from verba import testwords as tw
from verba.errors import BadArity, BudgetExceeded, CommutingPair, NotHyperbolic
from verba.groups import parse_group_spec
from verba.slp import (Comm, Inv, Mul, One, Pow, Var, dump, evaluate, evaluate_in, exponent_sums, free_symbols,
                       postorder, power_of)
from verba.verify.oracles import PermRep, perm_inv, perm_mul, random_pair
from verba.words import (commutator, conjugate, cyclic_reduce, is_hyperbolic, multiply, parse_word, power,
                         radical_length)

SIG = parse_group_spec("Z2*Z3")
X1, X2 = parse_word(SIG, "a b"), parse_word(SIG, "a b^2")


def period_oracle(w):
    core = cyclic_reduce(w)[0].syl
    n = len(core)
    return next(p for p in range(1, n + 1) if n % p == 0 and core[p:] + core[:p] == core)


def kappa_oracle(N, X1, X2, limit=40):
    """Plain upward scan from k = 1."""
    for k in range(1, limit):
        d = tw.commutator_axis_data(X1, X2, k)
        c = commutator(power(X1, 10), power(X2, 10 * k))
        B = period_oracle(c)
        assert B == len(d.B)
        if d.l in (1, 2) and B > N and 4 * B > len(d.s):
            return k
    raise AssertionError("oracle scan exhausted")


def pin_symbols(e, value):
    """Copy of e with every symbolic exponent replaced by value."""
    memo = {}
    for n in postorder(e):
        if isinstance(n, (Var, One)):
            r = n
        elif isinstance(n, Pow):
            x = n.args[1]
            r = Pow(memo[id(n.args[0])], x if isinstance(x, int) else value)
        else:
            r = type(n)(*(memo[id(c)] for c in n.args))
        memo[id(n)] = r
    return memo[id(e)]


def perm_eval(e, images, one):
    return evaluate_in(e, images, perm_mul, perm_inv, one)


# ------------------------------------------------------------------ L2


def test_l2_shape_and_sums():
    e = tw.l2(Var(0), Var(1))
    assert exponent_sums(e) == {}
    assert len(dump(e).splitlines()) < 30


def test_l2_trivial_on_commuting_pairs():
    x = parse_word(SIG, "a b a b^2")
    assert tw.l2_value(x, power(x, 3)).is_identity()
    assert tw.l2_value(parse_word(SIG, "b"), parse_word(SIG, "b^2")).is_identity()


def test_l2_is_conjugation_equivariant():
    v = parse_word(SIG, "b a b^2")
    lhs = tw.l2_value(conjugate(X1, v), conjugate(X2, v))
    assert lhs == conjugate(tw.l2_value(X1, X2), v)


def test_l2_value_is_simple():
    L = tw.l2_value(X1, X2)
    assert is_hyperbolic(L)
    assert radical_length(L) == len(cyclic_reduce(L)[0]) == period_oracle(L)


# ------------------------------------------------------------------ commutator data and kappa


def test_axis_data_example():
    d = tw.commutator_axis_data(X1, X2, 1)
    assert (len(d.B), d.l) == (76, 1)
    assert tw.in_cyclic(parse_word(SIG, "1"), d.B)
    assert not tw.in_cyclic(d.Y1, d.B) and not tw.in_cyclic(d.Y2, d.B)
    assert len(d.Y1) < 4 * d.l * len(d.B) and len(power(d.Y2, 1)) < 4 * d.l * len(d.B)
    assert commutator(power(d.Y1, 10), power(d.Y2, 10)).syl == d.B.syl * d.l
    assert conjugate(X1, d.s) == d.Y1 and conjugate(X2, d.s) == d.Y2


def test_axis_data_errors():
    with pytest.raises(CommutingPair):
        tw.commutator_axis_data(X1, power(X1, 3), 1)
    with pytest.raises(NotHyperbolic):
        tw.commutator_axis_data(parse_word(SIG, "a"), X2, 1)
    with pytest.raises(BudgetExceeded):
        tw.commutator_axis_data(X1, X2, 1, budget=10)


def test_kappa_frozen_values():
    assert [tw.kappa(N, X1, X2) for N in (1, 5, 20, 50, 100)] == [1, 1, 1, 1, 2]
    z222 = parse_group_spec("Z2*Z2*Z2")
    assert tw.kappa(1, parse_word(z222, "a b"), parse_word(z222, "b c")) == 1
    with pytest.raises(CommutingPair):
        tw.kappa(1, X1, power(X1, 2))


@pytest.mark.parametrize("N", [1, 40, 150, 400])
def test_kappa_matches_plain_scan(N):
    assert tw.kappa(N, X1, X2) == kappa_oracle(N, X1, X2)


def test_kappa_monotone_in_N():
    rng = random.Random(11)
    for _ in range(5):
        a, b = random_pair(SIG, rng, 5)
        ks = [tw.kappa(N, a, b) for N in (1, 10, 60, 200)]
        assert ks == sorted(ks)


def test_w_structure_example():
    st = tw.w_structure(X1, X2, 1)
    assert len(st.W) == 851200
    assert [len(t) for t in st.T] == [1518, 1522, 1522, 1518]
    Bl = st.data.l * len(st.data.B)
    assert 11136 * Bl < len(st.W) < 11220 * Bl
    assert conjugate(tw.l2_value(X1, X2), st.conjugator) == st.W


# ------------------------------------------------------------------ E and J


def test_e_n():
    assert dump(tw.e_n([Var(0), Var(1)])) == dump(Comm(Pow(Var(0), 2), Pow(Var(1), 2)))
    x = parse_word(SIG, "a b a b^2")
    assert evaluate(tw.e_n([Var(0), Var(1), Var(2)]), [x, power(x, 2), x]).is_identity()
    with pytest.raises(BadArity):
        tw.e_n([Var(0)])


@pytest.mark.parametrize("n", [2, 3, 4])
def test_e_k_and_j_k_in_commutator_subgroup(n):
    kbar = tuple(range(1, n + 2))
    assert exponent_sums(tw.e_k(kbar[:n], n)) == {}
    assert exponent_sums(tw.j_k(kbar, n)) == {}


def test_j_k_arity():
    with pytest.raises(BadArity):
        tw.j_k((1, 1), 2)
    with pytest.raises(BadArity):
        tw.e_k((1,), 2)


def test_choose_j_constants():
    c = tw.choose_j_constants([X1, X2])
    assert (c.kbar, c.khat, c.unresolved) == ((1, 1, 1), (1, 2, 1), [])
    xs = [X1, X2]
    E = radical_length(evaluate(tw.e_k(c.kbar[:2], 2), xs))
    Eh = radical_length(evaluate(tw.e_k(c.khat[:2], 2), xs))
    J = [radical_length(evaluate(tw.j_k(c.kbar, 2), xs + [x])) for x in xs]
    Jh = [radical_length(evaluate(tw.j_k(c.khat, 2), xs + [x])) for x in xs]
    assert min(J) > Eh > E > max(radical_length(x) for x in xs)
    assert min(Jh) > max(J)
    with pytest.raises(CommutingPair):
        tw.choose_j_constants([X1, power(X1, 2)])


# ------------------------------------------------------------------ T, P, M


def test_t_words_base_case():
    fam = tw.t_words([X1, X2])
    m = fam.constants[(2, 0)]
    assert m == 1
    assert dump(fam.T) == dump(tw.l2(Var(0), power_of(Var(1), m)))
    assert exponent_sums(fam.T) == {}
    assert "m[2,0]=1" in fam.manifest()
    x = parse_word(SIG, "a b a b^2")
    assert evaluate(fam.T, [x, power(x, 2)]).is_identity()


def test_t_words_unresolved_constants():
    xs = [X1, X2, parse_word(SIG, "a b a b a b^2")]
    fam = tw.t_words(xs, budget=20000, tag="q.")
    assert fam.unresolved
    assert {str(s) for s in free_symbols(fam.T)} >= {f"q.m{j}_{i}" for j, i in fam.unresolved if j == 3}
    assert exponent_sums(fam.T) == {}
    with pytest.raises(BudgetExceeded):
        tw.t_words(xs, budget=20000, allow_unresolved=False)


def test_t_prime_words():
    T1, T2, fam = tw.t_prime_words([X1, X2], budget=200000)
    assert exponent_sums(T1) == {} and exponent_sums(T2) == {}
    assert len(fam.xs) == 3
    assert [tw._hat_index(2, p) for p in range(3)] == [0, 1, 0]


@pytest.fixture(scope="module")
def pwords():
    return tw.p_words([X1, X2])


@pytest.fixture(scope="module")
def mwords():
    return tw.m_words([X1, X2], budget=200000)


def test_p_words(pwords):
    assert pwords.checks == {f"F{i}": True for i in range(1, 6)}
    assert len(pwords.tilde) == 2 * 2 + 2
    for e in (pwords.P, pwords.P1, pwords.P2):
        assert exponent_sums(e) == {}


def test_m_words_structure(mwords):
    n = 2
    assert len(mwords.hat) == 4 * n + 6
    assert mwords.hat[1::2][:2 * n + 2] == (mwords.s,) * (2 * n + 2)
    xw = [multiply(x, mwords.w) for x in (X1, X2)]
    expected = []
    for a in xw:
        expected += [commutator(a, mwords.u1), commutator(a, mwords.u2)]
    expected += [commutator(mwords.w, mwords.u1), commutator(mwords.w, mwords.u2)]
    assert list(mwords.hat[0:2 * (2 * n + 2):2]) == expected
    assert mwords.hat[-2:] == (mwords.u1, mwords.u2)
    for e in (mwords.M, mwords.M1, mwords.M2):
        assert exponent_sums(e) == {}


def test_m_is_p_of_the_hat_tuple_in_quotients(mwords):
    # two routes to the same permutation: M on x, and P on the hat values
    rng = random.Random(5)
    for _ in range(3):
        rep = PermRep(SIG, rng, 18)
        xs = [rep.word(X1), rep.word(X2)]
        hat = [rep.word(h) for h in mwords.hat]
        for lhs, rhs in ((mwords.M, mwords.pwords.P), (mwords.M1, mwords.pwords.P1)):
            assert perm_eval(pin_symbols(lhs, 7), xs, rep.one) == perm_eval(pin_symbols(rhs, 7), hat, rep.one)


def test_free_words_count():
    # reduced words over 2 letters and inverses: 1 + 4 + 12 + 36
    assert len(list(tw.free_words(2, 3))) == 53
    assert dump(tw.free_expr(())) == dump(One())
    assert dump(tw.free_expr(((0, 1), (1, -1)))) == dump(Mul(Var(0), Inv(Var(1))))
