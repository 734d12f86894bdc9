"""Brute-force oracles, lemma suites, the equation solver and conjugator recovery."""

from .oracles import PermRep, enumerate_words, naive_reduce, random_hyperbolic, random_pair, random_word
from .recovery import conjugate_tuple, recover_conjugator
from .solver import SingleEquation, reduce_to_single_equation, solve_equation_system
from .suites import SUITES, SuiteReport, icadd2_instance, mcl_c4_threshold, observation_identity, run_suite

__all__ = ["PermRep", "enumerate_words", "naive_reduce", "random_hyperbolic", "random_pair",
           "random_word", "conjugate_tuple", "recover_conjugator", "SingleEquation",
           "reduce_to_single_equation", "solve_equation_system", "SUITES", "SuiteReport",
           "icadd2_instance", "mcl_c4_threshold", "observation_identity", "run_suite"]
