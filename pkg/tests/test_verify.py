import json

from . import *

from leggett.config import Config
from leggett.utils import dumps
from leggett.verify import (
    GHZ_CORRELATIONS, SUITES, SuiteResult, check_campaign, check_complementarity,
    check_purity, check_tensor, run_suites,
)


def small():
    return Config(samples=200, haar_samples=500, alpha_points=3, seed=7)


class TestSuites(TestCase):

    def test_tensor(self):
        res = check_tensor(small())
        self.assertTrue(res.passed, res.checks)
        self.assertIn('reduced_tensor', res.checks)
        self.assertIn('white_noise_scaling', res.checks)

    def test_purity(self):
        res = check_purity(small())
        self.assertTrue(res.passed, res.checks)
        value, ok = res.checks['bell_state']
        self.assertAlmostEqual(value, 3, places=9)

    def test_complementarity(self):
        res = check_complementarity(small())
        self.assertTrue(res.passed)
        support, _ = res.checks['reduced_support']
        self.assertEqual([tuple(x) for x in support], [(0, 0), (3, 3)])

    def test_chain_models(self):
        for model in ('A', 'B'):
            res = check_campaign(small(), model)
            self.assertTrue(res.passed, res.checks)
            self.assertEqual(res.name, 'chain-%s' % model)
            self.assertEqual(res.details['samples'], 200)
            self.assertNotIn('counterexamples', res.details)

    def test_ghz_correlation_table(self):
        self.assertEqual(len(GHZ_CORRELATIONS), 9)
        self.assertEqual(sum(1 for v in GHZ_CORRELATIONS.values() if v < 0), 6)


class TestReport(TestCase):

    def test_failed_check(self):
        res = SuiteResult('demo')
        res.check('fine', 1.0, True)
        self.assertTrue(res.passed)
        res.check('broken', np.float64(-2.5), False)
        self.assertFalse(res.passed)
        raw = json.loads(dumps(res))
        self.assertEqual(raw['checks']['broken'], {'value': -2.5, 'ok': False})

    def test_run_selected(self):
        report = run_suites(small(), ['taxi', 'settings'])
        self.assertTrue(report.passed)
        raw = json.loads(dumps(report))
        self.assertEqual(raw['schema'], 'verify/1')
        self.assertEqual(sorted(raw['suites']), ['settings', 'taxi'])

    def test_unknown_suite(self):
        self.assertRaises(ValueError, run_suites, small(), ['tensor', 'nope'])

    def test_suite_names(self):
        self.assertEqual(len(SUITES), 7)
