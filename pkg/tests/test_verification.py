#!/usr/bin/env python3
"""
Verification suite tests, including a corrupted major index that the
harness must catch.
"""

import os
import sys
import tempfile
import unittest
from io import StringIO
from pathlib import Path
from unittest.mock import patch

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from config import config
from src.core.errors import DomainError
from src.core.permcore import maj
from src.data.fixture_repository import FixtureRepository, fixture_repository
from src.services.enumeration_service import EnumerationService
from src.services.verification_service import SUITES, VerificationService, all_passed, first_failure


def skewed_maj(p):
    """maj plus one whenever the largest value leads (n >= 3)"""
    bump = 1 if p.n >= 3 and p(1) == p.n else 0
    return maj(p) + bump


class FakeFixtures:
    """Real tables and golden files, one wrong published count"""

    def get_published_tables(self):
        return fixture_repository.get_published_tables()

    def get_published_counts(self):
        return [{"n": 4, "k": 2, "l": 2, "i": 0, "j": 0, "value": 9}]

    def get_bijection_examples(self):
        return []

    def get_golden_table(self, name):
        return fixture_repository.get_golden_table(name)


class TestVerificationService(unittest.TestCase):
    def setUp(self):
        self.enumeration = EnumerationService(threads=1)
        self.verifier = VerificationService(enumeration=self.enumeration)

    def test_all_suites_pass(self):
        results = self.verifier.run(6)
        self.assertEqual([r.name for r in results], list(SUITES))
        self.assertTrue(all_passed(results), first_failure(results))
        self.assertTrue(all(r.checked > 0 for r in results))

    def test_small_degree_passes(self):
        self.assertTrue(all_passed(self.verifier.run(3)))

    def test_caps_apply(self):
        (result,) = self.verifier.run(12, ['lemma24'])
        self.assertEqual(result.max_degree, 8)
        self.assertTrue(result.passed)

    def test_unknown_suite(self):
        with self.assertRaises(DomainError):
            self.verifier.run(4, ['lemma99'])
        with self.assertRaises(DomainError):
            self.verifier.run(0)

    def test_corrupted_maj_is_caught(self):
        broken = VerificationService(enumeration=self.enumeration, maj_fn=skewed_maj)
        (result,) = broken.run(5, ['lemma22'])
        self.assertFalse(result.passed)
        self.assertEqual(result.counterexample['word'], "1,2")
        self.assertEqual(result.counterexample['insertion_majs'], [2, 2, 0])

    def test_corrupted_maj_breaks_tables(self):
        broken = VerificationService(enumeration=self.enumeration, maj_fn=skewed_maj)
        (result,) = broken.run(4, ['tables'])
        self.assertFalse(result.passed)
        self.assertEqual(result.counterexample['word'], "4,1,2,3")

    def test_wrong_published_count_is_reported(self):
        verifier = VerificationService(enumeration=self.enumeration, fixtures=FakeFixtures())
        (result,) = verifier.run(4, ['tables'])
        self.assertFalse(result.passed)
        self.assertEqual(result.counterexample['expected'], 9)
        self.assertEqual(result.counterexample['got'], 8)

    def test_to_dict(self):
        (result,) = self.verifier.run(4, ['thm31'])
        data = result.to_dict()
        self.assertEqual(data['name'], 'thm31')
        self.assertTrue(data['passed'])
        self.assertIsNone(data['counterexample'])

    def test_missing_fixtures_fail_tables(self):
        with tempfile.TemporaryDirectory() as tmp:
            empty = FixtureRepository(published_path=Path(tmp) / "absent.json", golden_dir=Path(tmp))
            verifier = VerificationService(enumeration=self.enumeration, fixtures=empty)
            with patch('sys.stderr', new_callable=StringIO):
                (result,) = verifier.run(7, ['tables'])
        self.assertFalse(result.passed)
        self.assertIn("no published class tables", result.counterexample['message'])

    def test_missing_golden_file_fails_tables(self):
        with tempfile.TemporaryDirectory() as tmp:
            no_golden = FixtureRepository(published_path=config.PUBLISHED_VALUES_PATH, golden_dir=Path(tmp))
            verifier = VerificationService(enumeration=self.enumeration, fixtures=no_golden)
            with patch('sys.stderr', new_callable=StringIO):
                (result,) = verifier.run(4, ['tables'])
        self.assertFalse(result.passed)
        self.assertIn("class_123.txt", result.counterexample['message'])

    def test_small_degree_skips_published_fixtures(self):
        with tempfile.TemporaryDirectory() as tmp:
            empty = FixtureRepository(published_path=Path(tmp) / "absent.json", golden_dir=Path(tmp))
            (result,) = VerificationService(enumeration=self.enumeration, fixtures=empty).run(3, ['tables'])
        self.assertTrue(result.passed)


class TestFullBounds(unittest.TestCase):
    """Every suite exhaustively at its own degree cap"""

    def test_all_suites_at_caps(self):
        verifier = VerificationService(enumeration=EnumerationService(threads=2))
        results = verifier.run(9)
        self.assertTrue(all_passed(results), first_failure(results))
        caps = {r.name: r.max_degree for r in results}
        for name in ('lemma21', 'lemma22', 'lemma24'):
            self.assertEqual(caps[name], config.VERIFY_LEMMA_MAX_DEGREE)
            self.assertEqual(caps[name], 8)
        for name in ('prop25', 'thm31', 'prop32', 'symmetry'):
            self.assertEqual(caps[name], config.VERIFY_COUNT_MAX_DEGREE)
            self.assertEqual(caps[name], 9)
        for name in ('bijections', 'tables'):
            self.assertEqual(caps[name], config.VERIFY_BIJECTION_MAX_DEGREE)
            self.assertEqual(caps[name], 7)


if __name__ == "__main__":
    unittest.main()
