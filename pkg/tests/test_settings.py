from . import *

from leggett.settings import all_sets, family_one, family_two, literal_norm_defects, triangle_swap


class TestFamilyOne(TestCase):

    def test_degenerate_at_zero(self):
        s = family_one(0.0)[0]
        np.testing.assert_array_equal(s.a, E1)
        np.testing.assert_array_equal(s.a_prime, E1)
        self.assertIsNone(s.b_prime)

    def test_set_one_tilt(self):
        s = family_one(np.pi / 8)[0]
        np.testing.assert_allclose(s.a, [np.sqrt(2) / 2, np.sqrt(2) / 2, 0], atol=1e-15)
        np.testing.assert_allclose(s.a_prime, [np.sqrt(2) / 2, -np.sqrt(2) / 2, 0], atol=1e-15)

    def test_cyclic(self):
        for alpha in (0.0, 0.4, -1.2):
            s = family_one(alpha)[1]
            np.testing.assert_array_equal(s.b, -E2)
            np.testing.assert_array_equal(s.c, E2)
            np.testing.assert_array_equal(s.d, E2)
        s = family_one(0.3)[2]
        np.testing.assert_allclose(s.a, np.cos(0.6) * E3 + np.sin(0.6) * E1)

    def test_not_finite(self):
        self.assertRaises(ValueError, family_one, np.nan)
        self.assertRaises(ValueError, family_two, np.inf)


class TestFamilyTwo(TestCase):

    def test_set_four_at_zero(self):
        s = family_two(0.0)[0]
        self.assertEqual(s.family, 4)
        for v in (s.a, s.a_prime, s.b, s.b_prime):
            np.testing.assert_array_equal(v, E1)
        np.testing.assert_array_equal(s.c, -E1)
        np.testing.assert_array_equal(s.d, E1)

    def test_set_six(self):
        for alpha in (0.0, 0.2, 1.0):
            s = family_two(alpha)[2]
            self.assertEqual(s.family, 6)
            np.testing.assert_array_equal(s.c, E2)
            np.testing.assert_array_equal(s.d, E1)
            np.testing.assert_allclose(s.b, np.cos(alpha) * E2 + np.sin(alpha) * E1)

    def test_set_four_sixth_pi(self):
        s = family_two(np.pi / 6)[0]
        np.testing.assert_allclose(s.a, [np.cos(np.pi / 6), np.sin(np.pi / 6), 0])
        self.assertAlmostEqual(np.linalg.norm(s.a), 1, places=12)

    def test_sets_five_and_seven(self):
        five, seven = family_two(0.3)[1], family_two(0.3)[3]
        np.testing.assert_allclose(five.a, np.cos(0.3) * E1 + np.sin(0.3) * E3)
        np.testing.assert_array_equal(five.c, E2)
        np.testing.assert_allclose(seven.b_prime, np.cos(0.3) * E2 - np.sin(0.3) * E3)
        np.testing.assert_array_equal(seven.c, -E2)
        np.testing.assert_array_equal(seven.d, E2)

    def test_literal_table(self):
        defects = literal_norm_defects(np.pi / 8)
        self.assertEqual(sorted(defects), [4, 5, 6, 7])
        expected = np.sqrt(np.cos(np.pi / 8) ** 2 + np.sin(np.pi / 4) ** 2) - 1
        for value in defects.values():
            self.assertAlmostEqual(value, expected, places=12)
        self.assertLess(max(literal_norm_defects(0.0).values()), 1e-15)

    def test_non_unit_rejected(self):
        self.assertRaises(ValueError, SettingSet, None, 0.0, 2 * E1, E1, E1, E1)
        self.assertRaises(ValueError, SettingSet, 9, 0.0, E1, E1, E1, E1)


class TestIdentities(TestCase):

    def test_unit_norm_on_grid(self):
        for alpha in np.linspace(-np.pi / 2, np.pi / 2, 101):
            for s in all_sets(alpha):
                for v in s.vectors():
                    self.assertAlmostEqual(np.linalg.norm(v), 1, places=12)

    def test_difference_lengths(self):
        for alpha in np.linspace(-np.pi / 2, np.pi / 2, 37):
            for s in family_one(alpha):
                self.assertAlmostEqual(np.linalg.norm(s.a - s.a_prime), 2 * abs(np.sin(2 * alpha)), places=12)
            for s in family_two(alpha):
                self.assertAlmostEqual(np.linalg.norm(s.a - s.a_prime), 2 * abs(np.sin(alpha)), places=12)
                self.assertAlmostEqual(np.linalg.norm(s.b - s.b_prime), 2 * abs(np.sin(alpha)), places=12)

    def test_all_sets(self):
        sets = all_sets(0.1)
        self.assertEqual([s.family for s in sets], [1, 2, 3, 1, 2, 3, 4, 5, 6, 7])
        self.assertEqual([s.swapped for s in sets], [False] * 3 + [True] * 3 + [False] * 4)


class TestTriangleSwap(TestCase):

    def test_set_one(self):
        alpha = 0.2
        s = triangle_swap(family_one(alpha)[0])
        self.assertTrue(s.swapped)
        np.testing.assert_array_equal(s.a, -E1)
        np.testing.assert_allclose(s.b, [np.cos(2 * alpha), np.sin(2 * alpha), 0])
        np.testing.assert_allclose(s.b_prime, [np.cos(2 * alpha), -np.sin(2 * alpha), 0])
        np.testing.assert_array_equal(s.c, E1)
        np.testing.assert_array_equal(s.d, E1)
        self.assertIsNone(s.a_prime)

    def test_only_family_one(self):
        self.assertRaises(ValueError, triangle_swap, family_two(0.1)[0])
        self.assertRaises(ValueError, triangle_swap, triangle_swap(family_one(0.1)[0]))

    def test_degenerate_at_zero(self):
        s = triangle_swap(family_one(0.0)[1])
        np.testing.assert_array_equal(s.b, s.b_prime)

    def test_ghz_value(self):
        t = pauli.correlation_tensor(pauli.ghz_state(4), n=4)
        for alpha in (0.0, 0.05, 0.3):
            s = triangle_swap(family_one(alpha)[0])
            value = pauli.expectation(t, [s.a, s.b, s.c, s.d]) + pauli.expectation(t, [s.a, s.b_prime, s.c, s.d])
            self.assertAlmostEqual(value, -2 * np.cos(2 * alpha), places=12)
