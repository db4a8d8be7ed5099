#!/usr/bin/env python3
"""
Bijection tests: published examples, round trips and census comparisons
"""

import dataclasses
import math
import os
import sys
import unittest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from src.core.bijections import (
    bijection_41_forward,
    bijection_41_inverse,
    bijection_41_trace,
    bijection_42_forward,
    bijection_42_inverse,
    bijection_42_trace,
    count_by_circular_construction,
    lemma_43_select,
    lemma_43_select_multi,
    replay_trace,
    rotate_to_inverse_residue,
)
from src.core.errors import DomainError
from src.core.permcore import (
    erase_top,
    fixing_top,
    identity,
    inverse_maj,
    iter_permutations,
    maj,
    parse_word,
)


def census(n, predicate):
    return {p for p in iter_permutations(n) if predicate(p)}


class TestRotateToResidue(unittest.TestCase):
    def test_example(self):
        rotation, t = rotate_to_inverse_residue(parse_word("21345"), 3, 5)
        self.assertEqual(rotation, parse_word("34521"))
        self.assertEqual(t, 2)

    def test_modulus_must_divide(self):
        with self.assertRaises(DomainError):
            rotate_to_inverse_residue(parse_word("1234"), 0, 3)
        with self.assertRaises(DomainError):
            rotate_to_inverse_residue(parse_word("1234"), 2, 2)


class TestBijection41(unittest.TestCase):
    def test_published_example(self):
        trace = bijection_41_trace(parse_word("21345"), 2, 3)
        self.assertEqual(trace.rotation, parse_word("34521"))
        self.assertEqual(trace.rotation_exponent, 2)
        self.assertEqual(trace.insert_position, 5)
        self.assertEqual(trace.output, parse_word("345261"))
        self.assertTrue(replay_trace(trace))

    def test_identity(self):
        self.assertEqual(bijection_41_forward(identity(4), 0, 0), identity(5))

    def test_domain(self):
        with self.assertRaises(DomainError):
            bijection_41_forward(parse_word("312"), 0, 0)
        with self.assertRaises(DomainError):
            bijection_41_forward(parse_word("123"), 4, 0)
        with self.assertRaises(DomainError):
            bijection_41_forward(parse_word("123"), 0, 3)

    def test_image_is_residue_class(self):
        for n in range(2, 7):
            for i in range(n):
                for j in range(n - 1):
                    image = {bijection_41_forward(sigma, i, j) for sigma in fixing_top(n - 1)}
                    expected = census(n, lambda p: maj(p) % n == i and inverse_maj(p) % (n - 1) == j)
                    self.assertEqual(image, expected)
                    self.assertEqual(len(image), math.factorial(n - 2))

    def test_round_trips(self):
        n = 6
        for sigma in fixing_top(n - 1):
            for i in (0, 3):
                for j in (1, 4):
                    self.assertEqual(bijection_41_inverse(bijection_41_forward(sigma, i, j)), sigma)
        for tau in iter_permutations(n):
            self.assertEqual(bijection_41_forward(bijection_41_inverse(tau), maj(tau) % n,
                                                  inverse_maj(tau) % (n - 1)), tau)

    def test_tampered_trace_does_not_replay(self):
        trace = bijection_41_trace(parse_word("21345"), 2, 3)
        self.assertFalse(replay_trace(dataclasses.replace(trace, insert_position=1)))
        self.assertFalse(replay_trace(dataclasses.replace(trace, rotation_exponent=1)))


class TestBijection42(unittest.TestCase):
    def test_published_example(self):
        trace = bijection_42_trace(parse_word("32154"), 2)
        self.assertEqual(trace.rotation, parse_word("4321"))
        self.assertEqual(trace.rotation_exponent, 3)
        self.assertEqual(trace.insert_position, 4)
        self.assertEqual(trace.output, parse_word("43251"))
        self.assertTrue(replay_trace(trace))

    def test_domain(self):
        with self.assertRaises(DomainError):
            bijection_42_forward(parse_word("2341"), 0)

    def test_image_and_inverse(self):
        for n in range(2, 7):
            domain = [tau for tau in iter_permutations(n) if erase_top(tau)(n - 1) == n - 1]
            self.assertEqual(len(domain), n * math.factorial(n - 2))
            for j in range(n - 1):
                image = set()
                for tau in domain:
                    output = bijection_42_forward(tau, j)
                    self.assertEqual(output.position_of(n), tau.position_of(n))
                    self.assertEqual(bijection_42_inverse(output), tau)
                    image.add(output)
                self.assertEqual(image, census(n, lambda p: inverse_maj(p) % (n - 1) == j))


class TestWindowSelection(unittest.TestCase):
    def test_example(self):
        self.assertEqual(lemma_43_select(identity(4), 2, 3, 1), parse_word("3412"))

    def test_counts_and_windows(self):
        n = 6
        seeds = fixing_top(n)
        for k in range(1, n + 1):
            for j in range(k):
                for a in range(1, n - k + 2):
                    chosen = {lemma_43_select(tau, j, k, a) for tau in seeds}
                    self.assertEqual(len(chosen), math.factorial(n - 1))
                    for sigma in chosen:
                        self.assertEqual(inverse_maj(sigma) % k, j)
                        self.assertTrue(n - a - k + 2 <= sigma.position_of(n) <= n - a + 1)

    def test_multi(self):
        picks = lemma_43_select_multi(identity(4), 1, 2, 2)
        self.assertEqual(picks, (parse_word("2341"), parse_word("4123")))
        n, k = 6, 2
        for s in (1, 2, 3):
            chosen = set()
            for tau in fixing_top(n):
                chosen.update(lemma_43_select_multi(tau, 1, k, s))
            self.assertEqual(len(chosen), s * math.factorial(n - 1))

    def test_domain(self):
        with self.assertRaises(DomainError):
            lemma_43_select(parse_word("2341"), 0, 2, 1)
        with self.assertRaises(DomainError):
            lemma_43_select(identity(4), 0, 3, 3)
        with self.assertRaises(DomainError):
            lemma_43_select_multi(identity(4), 0, 3, 2)


class TestCircularConstruction(unittest.TestCase):
    def test_example(self):
        construction = count_by_circular_construction(5, 4, 2)
        self.assertEqual(construction.count, 30)
        self.assertIn(parse_word("43251"), construction.certificate)
        self.assertEqual(list(construction.certificate), sorted(construction.certificate))

    def test_matches_census(self):
        for n in range(3, 7):
            for k in range(2, n):
                for j in range(k):
                    inductive = count_by_circular_construction(n, k, j)
                    direct = count_by_circular_construction(n, k, j, inductive=False)
                    expected = census(n, lambda p: inverse_maj(p) % k == j)
                    self.assertEqual(set(inductive.certificate), expected)
                    self.assertEqual(inductive.certificate, direct.certificate)
                    self.assertEqual(inductive.count, math.factorial(n) // k)

    def test_largest_modulus_matches_bijection_42_image(self):
        n = 5
        domain = [tau for tau in iter_permutations(n) if erase_top(tau)(n - 1) == n - 1]
        for j in range(n - 1):
            image = {bijection_42_forward(tau, j) for tau in domain}
            self.assertEqual(set(count_by_circular_construction(n, n - 1, j).certificate), image)

    def test_domain(self):
        with self.assertRaises(DomainError):
            count_by_circular_construction(5, 1, 0)
        with self.assertRaises(DomainError):
            count_by_circular_construction(5, 5, 0)
        with self.assertRaises(DomainError):
            count_by_circular_construction(5, 3, 3)


if __name__ == "__main__":
    unittest.main()
