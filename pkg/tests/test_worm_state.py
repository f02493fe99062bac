import unittest

import numpy as np
from numpy.testing import assert_array_equal

from api.data.EdgeSubset import EdgeSubset
from api.data.Errors import LeavesStateSpace, NotInW
from api.data.StateClass import StateClass
from api.data.WormState import WormState, boundary, classify, toggle
from api.generators.GraphGeneratorFactory import generate


class EdgeSubsetTest(unittest.TestCase):
    def test_set_operations(self):
        a = EdgeSubset.from_indices([0, 2, 5], 6)
        b = EdgeSubset.from_indices([2, 3], 6)
        self.assertEqual(len(a), 3)
        self.assertEqual(list(a), [0, 2, 5])
        self.assertEqual((a ^ b).indices(), (0, 3, 5))
        self.assertEqual((a | b).indices(), (0, 2, 3, 5))
        self.assertEqual((a & b).indices(), (2,))
        self.assertIn(5, a)
        self.assertNotIn(1, a)
        self.assertEqual(a.toggled(2), EdgeSubset.from_indices([0, 5], 6))

    def test_width_is_checked(self):
        with self.assertRaises(ValueError):
            EdgeSubset(1 << 3, 3)

    def test_orders(self):
        small = EdgeSubset.from_indices([5], 6)
        large = EdgeSubset.from_indices([0, 1], 6)
        self.assertLess(small, large)
        self.assertLess(large.lex_key(), small.lex_key())

    def test_from_labels(self):
        g = generate("cycle", (4,))
        edges = EdgeSubset.from_labels(g, [(2, 1), (3, 4)])
        self.assertEqual(edges.labels(g), ["1-2", "3-4"])


class WormStateTest(unittest.TestCase):
    def setUp(self):
        self.g = generate("path", (4,))

    def test_boundary(self):
        edges = EdgeSubset.from_indices([0, 1], self.g.m)
        self.assertEqual(boundary(self.g, edges), {0, 2})
        self.assertEqual(boundary(self.g, EdgeSubset.empty(self.g.m)), set())

    def test_zero(self):
        s = WormState.zero(self.g)
        self.assertEqual(classify(s), StateClass.C0)
        self.assertEqual(s.dump(self.g), "[] | {}")

    def test_toggle_updates_boundary(self):
        s = toggle(self.g, WormState.zero(self.g), 1)
        self.assertEqual(s.boundary, (1, 2))
        self.assertEqual(s.get_class(), StateClass.C2)
        s = toggle(self.g, s, 2)
        self.assertEqual(s.boundary, (1, 3))
        self.assertEqual(s.dump(self.g), "[2-3 3-4] | {2 4}")
        self.assertEqual(toggle(self.g, s, 2), toggle(self.g, WormState.zero(self.g), 1))

    def test_toggle_leaving_w(self):
        s = toggle(self.g, WormState.zero(self.g), 0)
        with self.assertRaises(LeavesStateSpace):
            toggle(self.g, s, 2)

    def test_from_edges(self):
        s = WormState.from_edges(self.g, EdgeSubset.from_indices([0, 1, 2], self.g.m))
        self.assertEqual(s.boundary, (0, 3))
        g = generate("complete", (4,))
        star = EdgeSubset.from_indices([0, 1, 2], g.m)
        with self.assertRaises(NotInW):
            WormState.from_edges(g, star)
        with self.assertRaises(ValueError):
            WormState.from_edges(g, star)

    def test_equality_ignores_cached_boundary(self):
        edges = EdgeSubset.from_indices([1], self.g.m)
        self.assertEqual(WormState(edges, (1, 2)), WormState.from_edges(self.g, edges))
        self.assertEqual(len({WormState(edges, (1, 2)), WormState.from_edges(self.g, edges)}), 1)


def odd_mask(g, edges):
    return sum(1 << v for v in boundary(g, edges))


class BoundaryAlgebraTest(unittest.TestCase):
    def test_boundary_of_symmetric_difference(self):
        for g in (generate("grid", (3, 3)), generate("complete", (4,)), generate("cycle", (5,))):
            subsets = np.arange(2 ** g.m)
            masks = np.array([odd_mask(g, EdgeSubset(int(bits), g.m)) for bits in subsets], dtype=np.int64)
            for a in range(2 ** g.m):
                assert_array_equal(masks[a ^ subsets], masks[a] ^ masks)

    def test_incremental_boundary_matches_recomputation(self):
        g = generate("grid", (3, 3))
        rng = np.random.default_rng(17)
        s = WormState.zero(g)
        rejected = 0
        for e in rng.integers(g.m, size=100000):
            e = int(e)
            try:
                s = toggle(g, s, e)
            except LeavesStateSpace:
                rejected += 1
                self.assertEqual(len(boundary(g, s.edges.toggled(e))), 4)
                continue
            self.assertEqual(s.boundary, tuple(sorted(boundary(g, s.edges))))
        self.assertGreater(rejected, 0)
