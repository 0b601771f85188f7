from . import *

from leggett.lambdas import (
    OUTCOMES, ChainViolation, check_chain, check_positivity, inequality_links,
    outcome_tables, positivity_floor, probability_error,
    link_constant, marginal_moduli, moduli_sum, outcome_probability,
    outcome_table, sample_lambdas, split_label, stats, taxi_norm,
    tensor_stats, touched_pairs,
)
from leggett.settings import all_sets, family_one, family_two


def all_z():
    return SettingSet(None, 0.0, a=E3, b=E3, c=E3, d=E3)


def aligned(axis=E3):
    return LambdaAssignment('A', blochs=[axis] * 4)


def pair_lambda(first, second):
    return LambdaAssignment('B', states=(first.amplitudes, second.amplitudes))


class TestAssignment(TestCase):

    def test_model_a_checks(self):
        self.assertRaises(ValueError, LambdaAssignment, 'A', blochs=[E3] * 3)
        self.assertRaises(ValueError, LambdaAssignment, 'A', blochs=[2 * E3] * 4)
        self.assertRaises(ValueError, LambdaAssignment, 'C', blochs=[E3] * 4)

    def test_model_b_checks(self):
        self.assertRaises(ValueError, LambdaAssignment, 'B', states=([1, 1, 0, 0], [1, 0, 0, 0]))
        self.assertRaises(ValueError, LambdaAssignment, 'B', states=([1, 0], [1, 0]))

    def test_sampling_is_per_sample(self):
        head = sample_lambdas('A', 8, 7)
        tail = sample_lambdas('A', 5, 7, start=3)
        np.testing.assert_array_equal(head.blochs[3:], tail.blochs)
        b = sample_lambdas('B', 4, 7)
        np.testing.assert_array_equal(b[2].states[0], sample_lambdas('B', 1, 7, start=2).states[0][0])
        self.assertEqual(len(b), 4)

    def test_replay_dump(self):
        lam = sample_lambdas('B', 1, 3)[0]
        again = LambdaAssignment._load(lam._dump())
        for x, y in zip(lam.pair_tensors(), again.pair_tensors()):
            np.testing.assert_allclose(x, y, atol=1e-15)
        self.assertRaises(ValueError, LambdaAssignment._load, {'model': 'A', 'bloch_vectors': [list(E3)] * 4, 'x': 1})


class TestStats(TestCase):

    def test_all_z(self):
        cs = stats(aligned(), all_z())
        for label in ('ABCD', 'A', 'B', 'CD', 'ABD'):
            self.assertAlmostEqual(cs[label], 1, places=12)
        self.assertEqual(cs[''], 1)
        self.assertEqual(cs["A'"], 0)
        self.assertEqual(len(cs.averages), 15)

    def test_orthogonal_marginal(self):
        lam = LambdaAssignment('A', blochs=[E1, E3, E3, E3])
        self.assertAlmostEqual(stats(lam, all_z())['A'], 0, places=12)

    def test_labels_with_primes(self):
        cs = stats(aligned(), family_two(0.1)[0])
        self.assertEqual(len(cs.averages), 35)
        self.assertIn("A'B'CD", cs)

    def test_bell_pairs_set_four(self):
        s = family_two(0.2)[0]
        cs = stats(pair_lambda(bell(), bell()), s)
        t = pauli.two_qubit_tensor(bell())
        expected = pauli.expectation(t, [s.a, s.b]) * pauli.expectation(t, [s.c, s.d])
        self.assertAlmostEqual(cs['ABCD'], expected, places=12)

    def test_matches_product_state_oracle(self):
        for model in ('A', 'B'):
            batch = sample_lambdas(model, 3, 42)
            for i in range(3):
                lam = batch[i]
                oracle = pauli.correlation_tensor(lam.state(), n=4)
                for s in all_sets(0.37):
                    cs, qm = stats(lam, s), tensor_stats(oracle, s)
                    self.assertEqual(sorted(cs.averages), sorted(qm.averages))
                    for label in cs.averages:
                        self.assertAlmostEqual(cs[label], qm[label], places=10, msg=(model, s, label))

    def test_batch_matches_single(self):
        batch = sample_lambdas('B', 5, 1)
        s = family_one(0.2)[2]
        cs = stats(batch, s)
        self.assertEqual(cs['ABCD'].shape, (5, ))
        self.assertAlmostEqual(cs['ABCD'][4], stats(batch[4], s)['ABCD'], places=14)

    def test_precomputed_tensors(self):
        for model in ('A', 'B'):
            batch = sample_lambdas(model, 20, 2)
            tensors = batch.pair_tensors()
            for s in all_sets(0.4):
                fresh, reused = stats(batch, s), stats(batch, s, tensors)
                self.assertEqual(sorted(fresh.averages), sorted(reused.averages))
                for label in fresh.averages:
                    np.testing.assert_allclose(reused[label], fresh[label], atol=1e-14)

    def test_split_label(self):
        self.assertEqual(split_label("A'BCD"), ("A'", 'B', 'C', 'D'))
        self.assertEqual(split_label("B'"), ('', "B'", '', ''))
        self.assertRaises(ValueError, split_label, 'AAB')
        self.assertRaises(ValueError, split_label, "C'")


class TestOutcomes(TestCase):

    def test_uniform(self):
        cs = CorrelationSet()
        for outcomes in OUTCOMES:
            self.assertAlmostEqual(outcome_probability(cs, outcomes), 1 / 16)

    def test_aligned(self):
        cs = stats(aligned(), all_z())
        self.assertAlmostEqual(outcome_probability(cs, (1, 1, 1, 1)), 1, places=12)
        self.assertAlmostEqual(outcome_probability(cs, (1, -1, 1, 1)), 0, places=12)

    def test_ghz_correlations_sum_to_one(self):
        cs = CorrelationSet({'ABCD': 1, 'AB': 1, 'CD': 1, 'AC': 1, 'BD': 1, 'AD': 1, 'BC': 1})
        self.assertAlmostEqual(outcome_table(cs).sum(), 1, places=12)

    def test_bad_outcomes(self):
        self.assertRaises(ValueError, outcome_probability, CorrelationSet(), (1, 1, 1))
        self.assertRaises(ValueError, outcome_probability, CorrelationSet(), (1, 0, 1, 1))

    def test_positivity(self):
        self.assertFalse(check_positivity(CorrelationSet({'AB': 1, 'A': 1, 'B': -1})))
        self.assertTrue(check_positivity(CorrelationSet({'ABCD': -1})))
        batch = sample_lambdas('A', 500, 9)
        for s in all_sets(0.25):
            self.assertTrue(np.all(check_positivity(stats(batch, s))))

    def test_probabilities_physical(self):
        for model in ('A', 'B'):
            batch = sample_lambdas(model, 500, 4)
            for s in all_sets(0.6):
                table = outcome_table(stats(batch, s), a_prime=s.a_prime is not None)
                self.assertGreaterEqual(table.min(), -1e-12)
                self.assertLessEqual(table.max(), 1 + 1e-12)
                np.testing.assert_allclose(table.sum(axis=-1), 1, atol=1e-10)

    def test_shared_tables(self):
        batch = sample_lambdas('B', 50, 3)
        s = family_two(0.3)[1]
        cs = stats(batch, s)
        tables = outcome_tables(cs)
        self.assertEqual(tables.shape, (4, 50, 16))
        np.testing.assert_array_equal(positivity_floor(cs, tables), positivity_floor(cs))
        np.testing.assert_array_equal(probability_error(cs, tables), probability_error(cs))
        one = CorrelationSet({'AB': 1, 'A': 1, 'B': -1})
        self.assertAlmostEqual(positivity_floor(one), -0.125)


class TestChain(TestCase):

    def test_single_marginal_boundary(self):
        report = check_chain(aligned(), all_z())
        self.assertEqual(report.slacks['single_marginal'], 0)
        self.assertNotIn('primed_a', report.slacks)

    def test_primed_links_present(self):
        report = check_chain(aligned(E1), family_two(0.1)[0])
        self.assertEqual(len(report.slacks), 8)
        report = check_chain(aligned(E1), family_one(0.1)[0])
        self.assertIn('primed_a', report.slacks)
        self.assertNotIn('primed_b', report.slacks)

    def test_random_lambdas(self):
        for model, sets in (('A', family_one(0.21)), ('B', family_two(0.21))):
            batch = sample_lambdas(model, 3000, 17)
            for s in sets:
                report = check_chain(batch, s, strict=True)
                self.assertGreaterEqual(report.min_slack.min(), -1e-10)

    def test_strict_dump(self):
        with self.assertRaises(ChainViolation) as cm:
            check_chain(aligned(), all_z(), strict=True, tolerance=-0.5)
        dump = cm.exception.dump
        self.assertEqual(sorted(dump), ['averages', 'lambda', 'schema', 'setting_set', 'slacks'])
        self.assertEqual(dump['lambda']['model'], 'A')
        self.assertEqual(dump['averages']['ABCD'], 1)
        self.assertIsInstance(cm.exception, ValueError)

    def test_strict_dump_from_batch(self):
        batch = sample_lambdas('B', 4, 2)
        with self.assertRaises(ChainViolation) as cm:
            check_chain(batch, family_two(0.3)[1], strict=True, tolerance=-100)
        self.assertEqual(cm.exception.dump['lambda']['model'], 'B')
        self.assertEqual(len(cm.exception.dump['lambda']['states']), 2)


class TestModuli(TestCase):

    def test_product_zero_zero(self):
        for alpha in (0.05, 0.3, 0.7):
            lam = pair_lambda(ket(0, 0), bell())
            self.assertAlmostEqual(moduli_sum(lam, alpha), 4 * abs(np.sin(2 * alpha)), places=12)

    def test_bell_attains_bound(self):
        lam = pair_lambda(bell(), ket(0, 1))
        self.assertAlmostEqual(moduli_sum(lam, 0.2), 4 * abs(np.sin(0.4)), places=12)

    def test_zero_alpha(self):
        lam = sample_lambdas('B', 1, 0)[0]
        self.assertAlmostEqual(moduli_sum(lam, 0.0), 0, places=14)

    def test_matches_tensor_sum(self):
        batch = sample_lambdas('B', 200, 5)
        alpha = 0.33
        t12 = batch.pair_tensors()[0]
        excluded = np.abs(t12).sum(axis=(1, 2)) - np.abs(t12[:, 0, 0]) - np.abs(t12[:, 3, 3])
        np.testing.assert_allclose(moduli_sum(batch, alpha), 2 * abs(np.sin(2 * alpha)) * excluded, atol=1e-12)
        self.assertGreaterEqual((moduli_sum(batch, alpha) - 4 * abs(np.sin(2 * alpha))).min(), -1e-9)

    def test_model_a_marginals(self):
        batch = sample_lambdas('A', 2000, 8)
        for alpha in (0.1, 0.5, -0.3):
            slack = marginal_moduli(batch, alpha) - 2 * abs(np.sin(2 * alpha))
            self.assertGreaterEqual(slack.min(), -1e-9)

    def test_touched_pairs(self):
        expected = {(i, j) for i in range(4) for j in range(4)} - {(0, 0), (3, 3)}
        self.assertEqual(touched_pairs(np.pi / 8), expected)
        self.assertEqual(touched_pairs(0.0), set())


class TestLinks(TestCase):

    def test_constants(self):
        self.assertEqual(link_constant(1), -6)
        self.assertEqual(link_constant(2), -44)
        self.assertEqual(len(inequality_links(0.1, 2)), 10)
        self.assertRaises(ValueError, inequality_links, 0.1, 3)

    def test_forms_match_stats(self):
        batch = sample_lambdas('B', 50, 6)
        t12, t34 = batch.pair_tensors()
        for link in inequality_links(0.4, 2):
            cs = stats(batch, link.settings)
            lhs_form, moduli_forms = link.forms()
            lhs = np.einsum('nij,ijkl,nkl->n', t12, lhs_form, t34)
            moduli = np.abs(np.einsum('nij,mij->nm', t12, moduli_forms)).sum(axis=1)
            np.testing.assert_allclose(lhs, link.lhs(cs), atol=1e-12)
            np.testing.assert_allclose(moduli, link.moduli(cs), atol=1e-12)

    def test_link_slack_non_negative(self):
        batch = sample_lambdas('A', 1000, 12)
        for link in inequality_links(0.15, 2):
            self.assertGreaterEqual(link.slack(stats(batch, link.settings)).min(), -1e-10)


class TestTaxi(TestCase):

    def test_values(self):
        self.assertEqual(taxi_norm(E1), 1)
        self.assertAlmostEqual(taxi_norm(np.ones(3) / np.sqrt(3)), np.sqrt(3), places=12)
        self.assertAlmostEqual(taxi_norm([2 ** -0.5, 2 ** -0.5, 0]), np.sqrt(2), places=12)

    def test_non_unit(self):
        self.assertRaises(ValueError, taxi_norm, [1, 1, 0])
        self.assertRaises(ValueError, taxi_norm, [1, 0])
