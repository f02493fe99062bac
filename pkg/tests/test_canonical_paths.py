import os
import tempfile
import unittest

import pandas as pd
from numpy.testing import assert_allclose

from api.chain.ChainParams import ChainParams
from api.chain.WormChain import transition_prob
from api.data.EdgeSubset import EdgeSubset
from api.data.Errors import NotInImage, NotInW, TooLarge, TransitionNotOnPath
from api.data.Graph import Graph
from api.data.StateClass import StateClass
from api.data.WormState import WormState
from api.generators.GraphGeneratorFactory import generate
from api.oracle.ExactOracle import enumerate_classes
from api.paths.CanonicalPaths import (Transition, all_transitions, build_path, congestion, decompose, eta,
                                      reconstruct, verify_congestion, verify_injection, verify_injection_all)
from api.spectral.ChainMatrix import build_chain_matrix, relaxation_time

CONGESTION_GRAPHS = [("complete", (2,)), ("complete", (3,)), ("complete", (4,)), ("cycle", (4,)), ("cycle", (5,)),
                     ("cycle", (6,)), ("grid", (2, 3))]


def path_pairs(g):
    """Every (I, F) with I in W and F in C0."""
    table = enumerate_classes(g, 0.5)
    finals = [WormState(e, ()) for e in table.get_members(StateClass.C0)]
    initials = finals + [WormState.from_edges(g, e) for e in table.get_members(StateClass.C2)]
    return [(I, F) for I in initials for F in finals]


class PathConstructionTest(unittest.TestCase):
    def test_identity_path(self):
        g = generate("cycle", (4,))
        zero = WormState.zero(g)
        path = build_path(g, zero, zero)
        self.assertEqual(len(path), 0)
        self.assertEqual(path.states, [zero])

    def test_triangle_worm_closes_the_short_way(self):
        g = generate("cycle", (3,))
        I = WormState.from_edges(g, EdgeSubset.from_labels(g, [(1, 3), (2, 3)]))
        F = WormState(EdgeSubset.from_labels(g, [(1, 2), (1, 3), (2, 3)]), ())
        d = decompose(g, I, F)
        self.assertEqual([g.get_edge_label(e) for e in d.path], ["1-2"])
        self.assertEqual(d.cycles, ())
        self.assertEqual(len(build_path(g, I, F)), 1)

    def test_bowtie_closes_the_far_loop_first(self):
        # the walk from vertex 1 first recurs at vertex 2, not at its start
        g = Graph(5, [(0, 1), (0, 4), (1, 2), (1, 3), (1, 4), (2, 3)])
        F = WormState(EdgeSubset.from_indices(range(g.m), g.m), ())
        d = decompose(g, WormState.zero(g), F)
        self.assertEqual(d.path, ())
        self.assertEqual([sorted(g.get_edge_label(e) for e in c) for c in d.cycles],
                         [["1-2", "1-5", "2-5"], ["2-3", "2-4", "3-4"]])
        path = build_path(g, WormState.zero(g), F)
        self.assertEqual(len(path), g.m)
        self.assertEqual(path.states[-1], F)

    def test_grid_instance(self):
        g = generate("grid", (3, 3))
        I = WormState.from_edges(g, EdgeSubset.from_labels(g, [(2, 5), (4, 5), (5, 8), (7, 8), (4, 7)]))
        F = WormState.zero(g)
        self.assertEqual(I.boundary, (1, 4))
        d = decompose(g, I, F)
        self.assertEqual(d.start, 1)
        self.assertEqual([g.get_edge_label(e) for e in d.path], ["2-5"])
        self.assertEqual([[g.get_edge_label(e) for e in c] for c in d.cycles], [["4-5", "5-8", "7-8", "4-7"]])
        path = build_path(g, I, F)
        self.assertEqual(len(path), 5)
        self.assertEqual(path.dump(g)[1], "[4-5 4-7 5-8 7-8] | {}")
        self.assertEqual(path.states[-1], F)

    def test_final_state_must_be_even(self):
        g = generate("cycle", (4,))
        odd = WormState.from_edges(g, EdgeSubset.from_indices([0], g.m))
        with self.assertRaises(NotInW):
            build_path(g, WormState.zero(g), odd)

    def test_every_triangle_path_is_a_chain_walk(self):
        g = generate("cycle", (3,))
        params = ChainParams.from_x(g, 0.5)
        for (I, F) in path_pairs(g):
            path = build_path(g, I, F)
            self.assertLessEqual(len(path), g.m)
            self.assertEqual(path.states[0], I)
            self.assertEqual(path.states[-1], F)
            for (k, T) in enumerate(path.get_transitions()):
                self.assertGreater(transition_prob(g, T.state, path.states[k + 1], params), 0.0)

    def test_paths_toggle_each_difference_edge_once(self):
        g = generate("grid", (2, 3))
        for (I, F) in path_pairs(g):
            path = build_path(g, I, F)
            self.assertEqual(sorted(path.edges), list((I.edges ^ F.edges).indices()))
            for T in path.get_transitions():
                value = eta(g, T, I, F, path)
                self.assertEqual(len(value) + len(T.state.edges.with_edge(T.edge)), len(I.edges) + len(F.edges))


class InjectionTest(unittest.TestCase):
    def test_single_transitions_on_small_cycles(self):
        for n in (3, 4):
            g = generate("cycle", (n,))
            for T in all_transitions(g):
                self.assertTrue(verify_injection(g, T).passed())

    def test_injective_on_every_transition(self):
        for (kind, dims) in CONGESTION_GRAPHS:
            g = generate(kind, dims)
            report = verify_injection_all(g)
            self.assertTrue(report.passed(), (kind, dims))
            self.assertGreater(report.get_records()[0].parameters["transitions"], 0)

    def test_reconstruct_round_trip(self):
        for (kind, dims) in CONGESTION_GRAPHS:
            g = generate(kind, dims)
            for (I, F) in path_pairs(g):
                path = build_path(g, I, F)
                for T in path.get_transitions():
                    self.assertEqual(reconstruct(g, T, eta(g, T, I, F, path)), (I, F), (kind, dims))

    def test_reconstruct_rejects_foreign_values(self):
        g = generate("cycle", (4,))
        T = Transition(WormState.zero(g), 0)
        with self.assertRaises(NotInImage):
            reconstruct(g, T, EdgeSubset.from_indices([3], g.m))
        with self.assertRaises(ValueError):
            reconstruct(g, T, EdgeSubset.from_indices([3], g.m))

    def test_transition_off_path(self):
        g = generate("cycle", (4,))
        zero = WormState.zero(g)
        with self.assertRaises(TransitionNotOnPath):
            eta(g, Transition(zero, 0), zero, zero)


class CongestionTest(unittest.TestCase):
    def test_bounds(self):
        for (kind, dims) in CONGESTION_GRAPHS:
            g = generate(kind, dims)
            for x in (0.3, 0.7):
                params = ChainParams.from_x(g, x)
                result = congestion(g, params)
                t_rel = relaxation_time(build_chain_matrix(g, params))
                report = verify_congestion(g, params, result, t_rel=t_rel)
                self.assertTrue(report.passed())
                self.assertLessEqual(result.L_max, g.m)

    def test_parallel_matches_serial(self):
        g = generate("complete", (4,))
        params = ChainParams.from_x(g, 0.5)
        serial = congestion(g, params)
        parallel = congestion(g, params, workers=2)
        self.assertEqual(serial.L_max, parallel.L_max)
        assert_allclose(serial.phi, parallel.phi, rtol=1e-12)
        a = serial.to_frame()
        b = parallel.to_frame()
        self.assertEqual(list(a["state"]), list(b["state"]))
        self.assertEqual(list(a["paths"]), list(b["paths"]))
        assert_allclose(a["load"].to_numpy(), b["load"].to_numpy(), rtol=1e-12)

    def test_table_and_csv(self):
        g = generate("cycle", (4,))
        params = ChainParams.from_x(g, 0.4)
        result = congestion(g, params)
        frame = result.to_frame()
        self.assertEqual(list(frame.columns), ["state", "edge", "from_class", "to_class", "paths", "load"])
        total_length = sum(len(build_path(g, I, F)) for (I, F) in path_pairs(g))
        self.assertEqual(int(frame["paths"].sum()), total_length)
        self.assertAlmostEqual(frame["load"].max(), result.phi)
        (bits, e) = result.argmax
        A = WormState.from_edges(g, EdgeSubset(bits, g.m))
        self.assertEqual(result.get_load(A, e), result.phi)
        with tempfile.TemporaryDirectory() as directory:
            filepath = os.path.join(directory, "loads.csv")
            result.write_csv(filepath)
            loaded = pd.read_csv(filepath)
        self.assertEqual(len(loaded), len(result.get_transitions()))

    def test_pair_cap(self):
        g = generate("cycle", (4,))
        with self.assertRaises(TooLarge):
            congestion(g, ChainParams.from_x(g, 0.5), max_pairs=10)
