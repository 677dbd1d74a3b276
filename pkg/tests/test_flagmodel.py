"""Borel presentation classes, torus/word restrictions, GKM and equivariance."""

import math
import random
from fractions import Fraction

import pytest

from springerloc.errors import MalformedInputError
from springerloc.exactalg import SparsePoly
from springerloc.flagmodel import (BorelClass, FixedPointVector, artin_basis,
                                   equivariance_failures,
                                   gkm_divisibility_check, restrict_to_t_fixed,
                                   springer_restriction, weyl_act_on_class)
from springerloc.springer import gaussian_factorial
from springerloc.symgroup import (Partition, Permutation, all_permutations,
                                  coset_action, fixed_point_set)

rng = random.Random(97)


def test_artin_basis_size_and_graded_counts():
    for n in range(1, 6):
        basis = artin_basis(n)
        assert len(basis) == math.factorial(n)
        by_degree = {}
        for c in basis:
            by_degree[c.degree] = by_degree.get(c.degree, 0) + 1
            exps = next(iter(c.poly.terms))
            assert all(exps[i] <= n - 1 - i for i in range(n))
        counts = tuple(by_degree.get(d, 0)
                       for d in range(max(by_degree) + 1))
        assert counts == gaussian_factorial(n)


def test_borel_class_validates_homogeneity():
    poly = SparsePoly(2, {(1, 0): 1, (0, 0): 1})
    with pytest.raises(MalformedInputError):
        BorelClass(poly, 1)
    ok = BorelClass(SparsePoly(2, {(1, 0): 1}), 1)
    assert ok.n == 2


def test_torus_restriction_relabels_variables():
    c = BorelClass(SparsePoly(3, {(2, 1, 0): 1}), 3)  # y1^2 y2
    w = Permutation([3, 1, 2])
    restricted = restrict_to_t_fixed(c, w)
    assert restricted == SparsePoly(3, {(1, 0, 2): 1})  # t3^2 t1


def test_springer_restriction_entries_follow_words():
    lam = Partition([2, 1])
    P = fixed_point_set(lam)
    c = BorelClass(SparsePoly(3, {(1, 0, 0): 1}), 1)  # y1
    vec = springer_restriction(c, P)
    assert vec.degree == 1
    for i, word in enumerate(P.words):
        assert vec.entries[i] == SparsePoly.variable(2, word[0] - 1)


def test_springer_restriction_is_ring_compatible():
    # restriction of a product equals the entrywise product of restrictions
    lam = Partition([2, 2])
    P = fixed_point_set(lam)
    for _ in range(10):
        e1 = tuple(rng.randint(0, 2) for _ in range(4))
        e2 = tuple(rng.randint(0, 2) for _ in range(4))
        c1 = BorelClass(SparsePoly(4, {e1: 1}), sum(e1))
        c2 = BorelClass(SparsePoly(4, {e2: 1}), sum(e2))
        prod = BorelClass(c1.poly * c2.poly, c1.degree + c2.degree)
        r1, r2, rp = (springer_restriction(c, P) for c in (c1, c2, prod))
        for i in range(P.size):
            assert rp.entries[i] == r1.entries[i] * r2.entries[i]


def test_weyl_action_is_group_action_on_classes():
    perms = all_permutations(3)
    basis = artin_basis(3)
    for _ in range(20):
        u, v = rng.choice(perms), rng.choice(perms)
        c = rng.choice(basis)
        seq = weyl_act_on_class(weyl_act_on_class(c, v), u)
        both = weyl_act_on_class(c, u * v)
        assert seq.poly == both.poly
    for c in basis:
        assert weyl_act_on_class(c, Permutation.identity(3)).poly == c.poly


def test_gkm_divisibility_for_staircase_classes():
    for n in range(1, 5):
        for c in artin_basis(n):
            report = gkm_divisibility_check(c)
            assert report.passed, (n, c, report.failures[:3])


def test_restriction_equivariance_small_shapes():
    for parts in ([2], [1, 1], [3], [2, 1], [1, 1, 1], [2, 2], [3, 1]):
        P = fixed_point_set(Partition(parts))
        assert equivariance_failures(P) == []


def test_equivariance_identity_written_out():
    # (w . iota* c)(omega) = (iota* (w . c))(omega) for a specific class
    lam = Partition([2, 1])
    P = fixed_point_set(lam)
    w = Permutation.adjacent_transposition(3, 1)
    c = BorelClass(SparsePoly(3, {(0, 1, 0): 1}), 1)  # y2
    lhs = springer_restriction(weyl_act_on_class(c, w), P)
    base = springer_restriction(c, P)
    pull = coset_action(P, w)
    rhs = FixedPointVector(tuple(base.entries[pull[i]]
                                 for i in range(P.size)), base.degree)
    assert lhs.entries == rhs.entries
