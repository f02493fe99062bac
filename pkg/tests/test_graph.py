import itertools
import os
import tempfile
import unittest

import networkx as nx

from api.data.Errors import (BadDimension, BadLabel, DisconnectedGraph, DuplicateEdge, EmptyEdgeSet,
                             MalformedEdgeList, SelfLoop)
from api.data.Graph import Graph, graph_distance, load_graph, parse_graph
from api.generators.GraphGeneratorFactory import generate


class GeneratorTest(unittest.TestCase):
    def test_cycle(self):
        g = generate("cycle", (3,))
        self.assertEqual(g.n, 3)
        self.assertEqual(g.edges, ((0, 1), (0, 2), (1, 2)))
        self.assertEqual(g.degrees, (2, 2, 2))

    def test_path(self):
        g = generate("path", (4,))
        self.assertEqual(g.m, 3)
        self.assertEqual(g.degrees, (1, 2, 2, 1))

    def test_complete(self):
        g = generate("complete", (4,))
        self.assertEqual(g.m, 6)
        self.assertEqual(g.max_degree, 3)

    def test_grid_is_row_major(self):
        g = generate("grid", (2, 3))
        self.assertEqual((g.n, g.m), (6, 7))
        self.assertIn((0, 1), g.edge_index)
        self.assertIn((1, 4), g.edge_index)
        self.assertNotIn((2, 3), g.edge_index)

    def test_bad_dimensions(self):
        with self.assertRaises(BadDimension):
            generate("cycle", (2,))
        with self.assertRaises(BadDimension):
            generate("grid", (3,))
        with self.assertRaises(BadDimension):
            generate("grid", (1, 1))
        with self.assertRaises(BadDimension):
            generate("torus", (3, 3))


class GraphTest(unittest.TestCase):
    def test_edges_are_normalized_and_sorted(self):
        g = Graph(3, [(2, 1), (1, 0)])
        self.assertEqual(g.edges, ((0, 1), (1, 2)))
        self.assertEqual(g.get_edge_label(1), "2-3")
        self.assertEqual(g.adjacency[1], ((0, 0), (2, 1)))

    def test_rejects_bad_input(self):
        with self.assertRaises(DisconnectedGraph):
            Graph(4, [(0, 1), (2, 3)])
        with self.assertRaises(SelfLoop):
            Graph(2, [(0, 1), (1, 1)])
        with self.assertRaises(DuplicateEdge):
            Graph(2, [(0, 1), (1, 0)])
        with self.assertRaises(EmptyEdgeSet):
            Graph(1, [])
        with self.assertRaises(BadLabel):
            Graph(2, [(0, 2)])

    def test_graph_errors_are_value_errors(self):
        with self.assertRaises(ValueError):
            Graph(4, [(0, 1), (2, 3)])

    def test_distance(self):
        g = generate("cycle", (6,))
        self.assertEqual(graph_distance(g, 0, 3), 3)
        self.assertEqual(graph_distance(g, 0, 5), 1)
        self.assertEqual(graph_distance(g, 2, 2), 0)
        with self.assertRaises(BadLabel):
            graph_distance(g, 0, 6)

    def test_distance_is_a_metric(self):
        for h in nx.graph_atlas_g():
            n = h.number_of_nodes()
            if not 2 <= n <= 6 or not nx.is_connected(h):
                continue
            g = Graph(n, list(h.edges()))
            for (u, v) in itertools.product(range(n), repeat=2):
                d = graph_distance(g, u, v)
                self.assertEqual(d, graph_distance(g, v, u))
                self.assertEqual(d == 0, u == v)
                for w in range(n):
                    self.assertLessEqual(d, graph_distance(g, u, w) + graph_distance(g, w, v))

    def test_hash_depends_on_edges_only(self):
        self.assertEqual(Graph(3, [(0, 1), (1, 2)]).get_hash(), Graph(3, [(2, 1), (0, 1)]).get_hash())
        self.assertNotEqual(generate("cycle", (3,)).get_hash(), generate("path", (3,)).get_hash())


class EdgeListTest(unittest.TestCase):
    def test_parse_with_comments(self):
        g = parse_graph("# square\n4\n1 2\n2 3\n\n3 4\n4 1\n")
        self.assertEqual(g, generate("cycle", (4,)))

    def test_round_trip_text(self):
        g = generate("grid", (2, 2))
        self.assertEqual(parse_graph(g.to_edge_list_text()), g)

    def test_malformed(self):
        with self.assertRaises(MalformedEdgeList):
            parse_graph("")
        with self.assertRaises(MalformedEdgeList):
            parse_graph("3 3\n1 2\n")
        with self.assertRaises(MalformedEdgeList):
            parse_graph("3\n1 2 3\n")
        with self.assertRaises(MalformedEdgeList):
            parse_graph("3\n1 b\n")

    def test_labels_are_one_based(self):
        with self.assertRaises(BadLabel):
            parse_graph("2\n0 1\n")
        with self.assertRaises(BadLabel):
            parse_graph("2\n1 3\n")

    def test_load_graph(self):
        with tempfile.TemporaryDirectory() as directory:
            filepath = os.path.join(directory, "triangle.txt")
            with open(filepath, 'wt', encoding='utf-8') as f:
                f.write("3\n1 2\n2 3\n1 3\n")
            self.assertEqual(load_graph(filepath), generate("complete", (3,)))
