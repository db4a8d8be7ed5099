#!/usr/bin/env python3
"""
CLI tests: golden tables, envelopes, exit codes and determinism.
"""

import importlib.util
import io
import json
import os
import sys
import unittest
from contextlib import redirect_stderr, redirect_stdout
from pathlib import Path
from unittest.mock import patch

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT))

from config import config
from src.api.envelope import parse_envelope
from src.core.permcore import maj as real_maj


def load_cli():
    spec = importlib.util.spec_from_file_location("majindex_cli", ROOT / "scripts" / "majindex_cli.py")
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    return module


class CliTestCase(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.cli = load_cli()

    def run_cli(self, *argv):
        out, err = io.StringIO(), io.StringIO()
        with redirect_stdout(out), redirect_stderr(err):
            code = self.cli.main(list(argv))
        return code, out.getvalue(), err.getvalue()

    def run_json(self, *argv):
        code, out, err = self.run_cli(*argv, "--format", "json")
        self.assertEqual(code, 0, err)
        return json.loads(out)


class TestClassTable(CliTestCase):
    def test_golden_tables(self):
        for seed, name in (("123", "class_123.txt"), ("213", "class_213.txt")):
            code, out, _ = self.run_cli("classtable", "--word", seed)
            self.assertEqual(code, 0)
            self.assertEqual(out, (config.GOLDEN_DIR / name).read_text(encoding="utf-8"))

    def test_smallest_class_csv(self):
        code, out, _ = self.run_cli("classtable", "--word", "1", "--format", "csv")
        self.assertEqual(code, 0)
        self.assertEqual(out.splitlines(), ["row,column,word,maj,imaj", "1,1,\"2,1\",1,1", "2,1,\"1,2\",0,0"])

    def test_seed_must_fix_top(self):
        code, _, err = self.run_cli("classtable", "--word", "132")
        self.assertEqual(code, 2)
        self.assertIn("must fix", err)


class TestStatsAndGf(CliTestCase):
    def test_stats(self):
        envelope = self.run_json("stats", "--word", "4231")
        self.assertEqual(envelope['command'], 'stats')
        self.assertEqual(envelope['parameters'], {'word': '4231'})
        self.assertEqual((envelope['result']['maj'], envelope['result']['inverse_maj']), (4, 4))
        self.assertEqual(self.run_json("stats", "--word", "123456")['result']['maj'], 0)

    def test_parse_error(self):
        code, out, err = self.run_cli("stats", "--word", "1123")
        self.assertEqual(code, 2)
        self.assertEqual(out, "")
        self.assertIn("duplicate", err)

    def test_csv_rejected_without_table(self):
        code, _, err = self.run_cli("stats", "--word", "4231", "--format", "csv")
        self.assertEqual(code, 2)
        self.assertIn("no tabular output", err)

    def test_gf(self):
        self.assertEqual(self.run_json("gf", "--n", "3")['result']['coefficients'], [1, 2, 2, 1])
        self.assertEqual(self.run_json("gf", "--n", "1")['result']['coefficients'], [1])
        result = self.run_json("gf", "--n", "4", "--mod-k", "3")['result']
        self.assertEqual(result['folded'], [8, 8, 8])
        self.assertTrue(result['constant'])

    def test_gf_degree_ceiling(self):
        code, out, err = self.run_cli("gf", "--n", str(config.MAX_DEGREE + 1), "--format", "json")
        self.assertEqual(code, 2)
        self.assertEqual(out, "")
        self.assertIn("exceeds the ceiling", err)
        self.assertEqual(self.run_json("gf", "--n", str(config.MAX_DEGREE))['result']['total'], 479001600)


class TestCount(CliTestCase):
    def test_single_closed(self):
        result = self.run_json("count", "--n", "6", "--k", "6", "--l", "5", "--i", "2", "--j", "3",
                               "--method", "closed")['result']
        self.assertEqual(result['count'], 24)

    def test_matrix(self):
        result = self.run_json("count", "--n", "4", "--k", "2", "--l", "2")['result']
        self.assertEqual(result, {"n": 4, "k": 2, "l": 2, "entries": [[8, 4], [4, 8]]})
        code, out, _ = self.run_cli("count", "--n", "4", "--k", "3", "--l", "3", "--format", "csv")
        self.assertEqual(code, 0)
        self.assertEqual(out.splitlines(), ["i\\j,0,1,2", "0,4,2,2", "1,2,3,3", "2,2,3,3"])

    def test_closed_form_not_applicable(self):
        code, out, err = self.run_cli("count", "--n", "4", "--k", "3", "--l", "3", "--method", "closed")
        self.assertEqual(code, 2)
        self.assertEqual(out, "")
        self.assertIn("does not divide", err)

    def test_half_query_rejected(self):
        code, _, _ = self.run_cli("count", "--n", "4", "--k", "2", "--l", "2", "--i", "1")
        self.assertEqual(code, 2)

    def test_usage_errors(self):
        self.assertEqual(self.run_cli("count", "--n", "4")[0], 2)
        self.assertEqual(self.run_cli("count", "--n", "4", "--k", "2", "--l", "2", "--method", "magic")[0], 2)
        self.assertEqual(self.run_cli()[0], 2)
        self.assertEqual(self.run_cli("gf", "--n", "3", "--threads", "0")[0], 2)

    def test_threads_do_not_change_envelope(self):
        argv = ("count", "--n", "8", "--k", "4", "--l", "7", "--format", "json")
        with patch.object(config, 'ENUM_BLOCK_DEGREE', 5):
            _, single, _ = self.run_cli(*argv, "--threads", "1")
            _, pooled, _ = self.run_cli(*argv, "--threads", "4")
        self.assertEqual(parse_envelope(single).stable_dict(), parse_envelope(pooled).stable_dict())
        self.assertNotIn('threads', parse_envelope(single).parameters)

    def test_envelope_round_trip(self):
        _, out, _ = self.run_cli("count", "--n", "5", "--k", "2", "--l", "4", "--format", "json")
        envelope = parse_envelope(out)
        self.assertEqual(json.loads(envelope.to_json()), json.loads(out))
        self.assertGreaterEqual(envelope.elapsed_ms, 0)


class TestBijection(CliTestCase):
    def test_p41(self):
        result = self.run_json("bijection", "--kind", "p41", "--word", "21345", "--i", "2", "--j", "3")['result']
        self.assertEqual(result['rotation'], "3,4,5,2,1")
        self.assertEqual(result['output'], "3,4,5,2,6,1")
        self.assertTrue(result['verified'])

    def test_p42(self):
        result = self.run_json("bijection", "--kind", "p42", "--word", "32154", "--j", "2")['result']
        self.assertEqual(result['output'], "4,3,2,5,1")
        self.assertEqual(result['rotation_exponent'], 3)

    def test_p42_rejects_maj_residue(self):
        code, out, err = self.run_cli("bijection", "--kind", "p42", "--word", "32154", "--i", "3", "--j", "2")
        self.assertEqual(code, 2)
        self.assertEqual(out, "")
        self.assertIn("p41 only", err)

    def test_identity(self):
        result = self.run_json("bijection", "--kind", "p41", "--word", "1234", "--i", "0", "--j", "0")['result']
        self.assertEqual(result['output'], "1,2,3,4,5")

    def test_domain_violation(self):
        code, _, err = self.run_cli("bijection", "--kind", "p41", "--word", "2413", "--i", "0", "--j", "0")
        self.assertEqual(code, 2)
        self.assertIn("must fix", err)


class TestVerifyAndMisc(CliTestCase):
    def test_verify_passes(self):
        code, out, _ = self.run_cli("verify", "--n-max", "4", "--format", "json")
        self.assertEqual(code, 0)
        self.assertTrue(json.loads(out)['result']['passed'])

    def test_verify_single_suite(self):
        envelope = self.run_json("verify", "--n-max", "3", "--suite", "lemma21", "--suite", "prop25")
        self.assertEqual([s['name'] for s in envelope['result']['suites']], ['lemma21', 'prop25'])

    def test_corrupted_maj_fails_verification(self):
        def broken(p):
            return real_maj(p) + (1 if p.n >= 3 and p(1) == p.n else 0)

        with patch('src.services.verification_service.maj', broken):
            code, _, err = self.run_cli("verify", "--n-max", "4", "--suite", "lemma22")
            json_code, out, _ = self.run_cli("verify", "--n-max", "4", "--suite", "lemma22", "--format", "json")
        self.assertEqual(code, 1)
        self.assertIn("lemma22", err)
        self.assertIn("1,2", err)
        self.assertEqual(json_code, 1)
        (suite,) = json.loads(out)['result']['suites']
        self.assertFalse(suite['passed'])
        self.assertEqual(suite['counterexample']['word'], "1,2")

    def test_windows(self):
        result = self.run_json("windows", "--n", "5")['result']
        self.assertTrue(result['found'])
        self.assertGreater(result['positions'][0], 1)
        self.assertFalse(self.run_json("windows", "--n", "2")['result']['found'])

    def test_distribution(self):
        result = self.run_json("distribution", "--n", "3")['result']
        self.assertEqual(result['maj'], [1, 2, 2, 1])
        self.assertEqual(result['inverse_maj'], [1, 2, 2, 1])
        code, out, _ = self.run_cli("distribution", "--n", "3", "--format", "csv")
        self.assertEqual(code, 0)
        self.assertEqual(out.splitlines()[0], "maj\\imaj,0,1,2,3")


if __name__ == "__main__":
    unittest.main()
