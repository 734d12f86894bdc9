import random

import pytest

from verba.errors import PreconditionViolated, UnknownSuite
from verba.groups import parse_group_spec
from verba.slp import Pow, Var, exponent_sums
from verba.testwords import t_words
from verba.verify import (PermRep, SUITES, conjugate_tuple, enumerate_words, icadd2_instance, mcl_c4_threshold,
                          naive_reduce, observation_identity, recover_conjugator, reduce_to_single_equation,
                          run_suite, solve_equation_system)
from verba.verify.oracles import perm_inv, perm_mul, perm_pow, random_pair, random_word
from verba.words import is_hyperbolic, parse_word, power

from test_testwords import perm_eval, pin_symbols

Z23 = parse_group_spec("Z2*Z3")


def test_enumeration_counts(z22, z52):
    assert [str(w) for w in enumerate_words(z22, 1)] == ["1", "a", "b"]
    words = list(enumerate_words(z22, 2))
    assert len(words) == 5 and {str(w) for w in words[3:]} == {"a b", "b a"}
    assert len(list(enumerate_words(z52, 2))) == 14
    assert len(set(enumerate_words(Z23, 4))) == len(list(enumerate_words(Z23, 4)))


def test_naive_reduce_merge(z52):
    assert naive_reduce(z52, [(1, 1), (0, 4), (0, 3), (1, 1)]) == parse_word(z52, "b a^2 b").syl


def test_perm_rep_is_a_homomorphism():
    rng = random.Random(3)
    rep = PermRep(Z23, rng, 9)
    for _ in range(50):
        u, v = random_word(Z23, rng, 5), random_word(Z23, rng, 5)
        assert rep.word(u * v) == perm_mul(rep.word(u), rep.word(v))
    b = rep.word(parse_word(Z23, "b"))
    assert perm_pow(b, 3) == rep.one
    assert perm_pow(b, -1) == perm_inv(b)


def test_observation_identity():
    sig = parse_group_spec("Z2*Z2*Z2")
    for k1 in range(1, 6):
        for k2 in range(1, 6):
            lhs, rhs = observation_identity(sig, k1, k2)
            assert lhs == rhs


def test_mcl_threshold_example():
    N, k, B = mcl_c4_threshold(parse_word(Z23, "a b"), parse_word(Z23, "a b^2"), 2)
    assert N > 0 and k >= 1 and is_hyperbolic(B)


# ------------------------------------------------------------------ solver


def test_solver_examples():
    h = parse_word(Z23, "a b a")
    assert solve_equation_system([(Var(0), h)], 3) == [h]
    sol = solve_equation_system([(Pow(Var(0), 2), parse_word(Z23, "a b a b"))], 2)
    assert [str(w) for w in sol] == ["a b"]
    assert solve_equation_system([(Pow(Var(0), 2), parse_word(Z23, "a"))], 4) is None


def test_solver_closed_equations():
    h = parse_word(Z23, "a b")
    assert solve_equation_system([(Var(0), h)], 0) is None
    assert solve_equation_system([], 2) == []


def test_solver_brute_force_agreement():
    # every length <= 2 square root found by enumeration is found by the solver
    roots = {}
    for z in enumerate_words(Z23, 2):
        roots.setdefault(power(z, 2), z)
    for h, z in list(roots.items())[:25]:
        sol = solve_equation_system([(Pow(Var(0), 2), h)], 2)
        assert sol is not None and power(sol[0], 2) == h


def test_single_equation_reduction():
    a, b = parse_word(Z23, "a b a b^2"), parse_word(Z23, "b a b a")
    system = [(Var(0), a), (Pow(Var(1), 2), power(b, 2))]
    u1, u2 = parse_word(Z23, "a b"), parse_word(Z23, "a b^2")
    eq, mw = reduce_to_single_equation(system, u1, u2, budget=200000)
    assert eq.nvars == 4
    assert exponent_sums(eq.lhs) == {}
    # the planted solution together with (u1, u2) satisfies the single equation in quotients
    rng = random.Random(2)
    for _ in range(3):
        rep = PermRep(Z23, rng, 15)
        z = [rep.word(w) for w in (a, b, u1, u2)]
        x = [rep.word(w) for w in eq.constants]
        assert perm_eval(pin_symbols(eq.lhs, 5), z, rep.one) == perm_eval(pin_symbols(eq.rhs, 5), x, rep.one)


# ------------------------------------------------------------------ recovery


def test_recover_examples():
    xs = [parse_word(Z23, "a b"), parse_word(Z23, "a b^2")]
    fam = t_words(xs)
    T = fam.values[(2, 0)]
    assert recover_conjugator(xs, xs, T, fam.T).is_identity()
    u = power(T, 2)
    ys = conjugate_tuple(xs, u)
    v = recover_conjugator(xs, ys, T, fam.T)
    assert conjugate_tuple(ys, v) == xs
    with pytest.raises(PreconditionViolated):
        recover_conjugator(xs, [xs[1], xs[0]], T, fam.T)
    with pytest.raises(PreconditionViolated):
        recover_conjugator(xs, xs[:1], T)


# ------------------------------------------------------------------ quotient certification


def test_quotients_never_certify_members():
    rng = random.Random(9)
    for _ in range(40):
        X0, X1 = random_pair(Z23, rng, 5)
        rep = PermRep(Z23, rng, rng.randint(4, 30))
        cyc = rep.powers(rep.word(X1))
        for j in (-3, 0, 3, 7):
            assert rep.word(power(X1, j)) in cyc


def test_icadd2_instance():
    rng = random.Random(1)
    X0, X1, X2 = (parse_word(Z23, t) for t in ("a b", "a b^2", "a b a b^2 a b^2"))
    res = icadd2_instance(X0, X1, X2, rng)
    assert res.exact_l2_zero
    assert res.undecided == []
    assert len(res.certified) == 96


# ------------------------------------------------------------------ suites

LIGHT = ["words", "finewilf", "boundary", "mcl", "tree", "solve-demo"]


@pytest.mark.parametrize("name", LIGHT)
@pytest.mark.parametrize("spec", ["Z2*Z3", "Z2*Z2*Z2", "Z5*Z2", "S3*Z2"])
def test_light_suites_pass(name, spec):
    report = run_suite(name, parse_group_spec(spec), 15, 4)
    assert report.passed, report.failures[:3]
    assert report.checks > 0


def test_suite_replay_single_trial():
    full = run_suite("words", Z23, 6, 8)
    one = run_suite("words", Z23, 6, 8, only=3)
    assert one.passed and 0 < one.checks < full.checks


def test_unknown_suite():
    with pytest.raises(UnknownSuite):
        run_suite("bogus", Z23, 1, 0)
    assert set(LIGHT) < set(SUITES)


def test_report_dict():
    d = run_suite("tree", Z23, 3, 1).to_dict()
    assert {"name", "trials", "failures", "vacuous", "skipped", "seed", "elapsed", "passed"} <= set(d)
