import unittest

import numpy as np
from numpy.testing import assert_allclose

from api.chain.ChainParams import ChainParams
from api.data.Errors import IterationCap, TooLarge
from api.data.WormState import WormState
from api.generators.GraphGeneratorFactory import generate
from api.spectral.ChainMatrix import (absolute_gap, build_chain_matrix, eigenvalues, fitted_relaxation_time,
                                      relaxation_time, theorem1_bounds, tv_distances, tv_mixing_time,
                                      verify_theorem1, worst_mixing_time, worst_tv_distances)

MIXING_GRAPHS = [("complete", (2,)), ("complete", (3,)), ("complete", (4,)), ("cycle", (4,)), ("cycle", (5,)),
                  ("cycle", (6,)), ("grid", (2, 3))]


class ChainMatrixTest(unittest.TestCase):
    def test_single_edge_matrix(self):
        g = generate("complete", (2,))
        x = 0.4
        cm = build_chain_matrix(g, ChainParams.from_x(g, x))
        assert_allclose(cm.get_matrix(), [[1 - x / 2, x / 2], [0.5, 0.5]], atol=1e-15)
        assert_allclose(cm.get_stationary(), [1 / (1 + x), x / (1 + x)])
        self.assertEqual(cm.get_zero_index(), 0)

    def test_stationary_is_left_eigenvector(self):
        g = generate("grid", (2, 3))
        cm = build_chain_matrix(g, ChainParams.from_x(g, 0.7))
        pi = cm.get_stationary()
        assert_allclose(pi @ cm.get_matrix(), pi, atol=1e-14)
        self.assertAlmostEqual(pi.sum(), 1.0, places=12)
        self.assertEqual(cm.get_size(), 2 ** g.m)
        self.assertTrue(cm.is_irreducible())

    def test_state_cap(self):
        g = generate("cycle", (3,))
        with self.assertRaises(TooLarge):
            build_chain_matrix(g, ChainParams.from_x(g, 0.5), max_states=3)
        with self.assertRaises(TooLarge):
            build_chain_matrix(g, ChainParams.from_x(g, 0.5), max_edges=2)


class SpectrumTest(unittest.TestCase):
    def test_single_edge_gap(self):
        g = generate("complete", (2,))
        for x in (0.1, 0.5, 0.9):
            cm = build_chain_matrix(g, ChainParams.from_x(g, x))
            (lambda_star, gap) = absolute_gap(cm)
            self.assertAlmostEqual(lambda_star, (1 - x) / 2, places=12)
            self.assertAlmostEqual(gap, (1 + x) / 2, places=12)
            self.assertAlmostEqual(relaxation_time(cm), 2 / (1 + x), places=10)

    def test_lazy_spectrum_is_nonnegative(self):
        for (kind, dims) in [("cycle", (5,)), ("complete", (4,))]:
            g = generate(kind, dims)
            values = eigenvalues(build_chain_matrix(g, ChainParams.from_x(g, 0.5)))
            self.assertAlmostEqual(values[0], 1.0, places=10)
            self.assertTrue(np.all(values >= -1e-12))
            self.assertTrue(np.all(values <= 1.0 + 1e-12))
            self.assertTrue(np.all(np.diff(values) <= 1e-12))

    def test_fitted_relaxation_time(self):
        for (kind, dims) in [("complete", (2,)), ("cycle", (3,))]:
            g = generate(kind, dims)
            cm = build_chain_matrix(g, ChainParams.from_x(g, 0.5))
            assert_allclose(fitted_relaxation_time(cm), relaxation_time(cm), rtol=0.05)

    def test_fitted_relaxation_time_from_zero(self):
        g = generate("complete", (2,))
        cm = build_chain_matrix(g, ChainParams.from_x(g, 0.5))
        assert_allclose(fitted_relaxation_time(cm, start=WormState.zero(g)), relaxation_time(cm), rtol=0.05)


class MixingTest(unittest.TestCase):
    def setUp(self):
        self.g = generate("cycle", (4,))
        self.cm = build_chain_matrix(self.g, ChainParams.from_x(self.g, 0.5))
        self.zero = WormState.zero(self.g)

    def test_distances_decrease(self):
        d = tv_distances(self.cm, self.zero, 60)
        self.assertEqual(d.shape, (61,))
        self.assertAlmostEqual(d[0], 1.0 - self.cm.get_stationary()[self.cm.get_zero_index()], places=14)
        self.assertTrue(np.all(np.diff(d) <= 1e-15))
        worst = worst_tv_distances(self.cm, 60)
        self.assertTrue(np.all(worst >= d - 1e-15))
        self.assertTrue(np.all(np.diff(worst) <= 1e-15))

    def test_mixing_times(self):
        d = tv_distances(self.cm, self.zero, 200)
        t = tv_mixing_time(self.cm, self.zero, 0.25)
        self.assertLessEqual(d[t], 0.25)
        self.assertGreater(d[t - 1], 0.25)
        self.assertGreaterEqual(worst_mixing_time(self.cm, 0.25), t)
        self.assertGreaterEqual(tv_mixing_time(self.cm, self.zero, 0.01), t)

    def test_already_mixed(self):
        self.assertEqual(tv_mixing_time(self.cm, self.zero, 0.999), 0)

    def test_bad_delta_and_cap(self):
        with self.assertRaises(ValueError):
            tv_mixing_time(self.cm, self.zero, 1.0)
        with self.assertRaises(IterationCap):
            tv_mixing_time(self.cm, self.zero, 1e-9, max_iterations=2)
        with self.assertRaises(IterationCap):
            worst_mixing_time(self.cm, 1e-9, max_iterations=2)


class MixingBoundTest(unittest.TestCase):
    def test_bounds_hold(self):
        for (kind, dims) in MIXING_GRAPHS:
            g = generate(kind, dims)
            for x in (0.1, 0.5, 0.9):
                report = verify_theorem1(g, ChainParams.from_x(g, x), [0.25, 0.01])
                self.assertTrue(report.passed())
                self.assertEqual(len(report.get_records()), 5)

    def test_bound_values(self):
        g = generate("complete", (2,))
        (relaxation, from_zero, worst) = theorem1_bounds(g, 0.5, 0.25)
        self.assertEqual(relaxation, 4.0 * 1 * 1 * 16)
        self.assertAlmostEqual(from_zero, 64.0 * (np.log(2.0) + np.log(4.0)))
        self.assertAlmostEqual(worst, 64.0 * (np.log(4.0) + np.log(8.0)))

    def test_low_temperature_single_edge(self):
        g = generate("complete", (2,))
        x = 0.05
        report = verify_theorem1(g, ChainParams.from_x(g, x), [0.25])
        self.assertTrue(report.passed())
        (_, from_zero, worst) = theorem1_bounds(g, x, 0.25)
        self.assertAlmostEqual(worst, 64.0 * (np.log(2.0 / x) + np.log(8.0)))
        self.assertGreater(worst, from_zero)
