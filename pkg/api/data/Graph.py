import hashlib

import networkx as nx

from .Errors import BadLabel, DisconnectedGraph, DuplicateEdge, EmptyEdgeSet, MalformedEdgeList, SelfLoop

class Graph:
    """Immutable simple connected graph.

       Vertices are 0-based internally and 1-based in files and reports. Edges are
       stored as (u, v) pairs with u < v, sorted lexicographically; the position of
       an edge in that list is its edge index, and this order is the fixed subgraph
       ordering used everywhere else.
    """
    def __init__(self, n, edges):
        if n < 1:
            raise BadLabel("vertex count must be positive, got {}".format(n))
        normalized = []
        seen = set()
        for (u, v) in edges:
            for w in (u, v):
                if w < 0 or w >= n:
                    raise BadLabel("vertex {} outside 1..{}".format(w + 1, n))
            if u == v:
                raise SelfLoop("self-loop at vertex {}".format(u + 1))
            key = (min(u, v), max(u, v))
            if key in seen:
                raise DuplicateEdge("edge {}-{} listed twice".format(key[0] + 1, key[1] + 1))
            seen.add(key)
            normalized.append(key)
        if not normalized:
            raise EmptyEdgeSet("graph has no edges")

        self.n = n
        self.edges = tuple(sorted(normalized))
        self.m = len(self.edges)
        self.edge_index = {e: i for (i, e) in enumerate(self.edges)}

        adjacency = [[] for _ in range(n)]
        for (i, (u, v)) in enumerate(self.edges):
            adjacency[u].append((v, i))
            adjacency[v].append((u, i))
        self.adjacency = tuple(tuple(sorted(a)) for a in adjacency)
        self.degrees = tuple(len(a) for a in self.adjacency)
        self.max_degree = max(self.degrees)

        self._nx_graph = nx.Graph()
        self._nx_graph.add_nodes_from(range(n))
        self._nx_graph.add_edges_from(self.edges)
        if not nx.is_connected(self._nx_graph):
            raise DisconnectedGraph("graph with {} vertices is not connected".format(n))
        self._distances = None

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return "Graph(n={}, m={}, max_degree={})".format(self.n, self.m, self.max_degree)

    def to_networkx(self):
        return self._nx_graph.copy()

    def get_neighbors(self, v):
        return self.adjacency[v]

    def get_edge_endpoints(self, e):
        return self.edges[e]

    def get_edge_label(self, e):
        (u, v) = self.edges[e]
        return "{}-{}".format(u + 1, v + 1)

    def check_vertex(self, v):
        if v < 0 or v >= self.n:
            raise BadLabel("vertex index {} outside 0..{}".format(v, self.n - 1))

    def get_distances(self):
        if self._distances is None:
            self._distances = dict(nx.all_pairs_shortest_path_length(self._nx_graph))
        return self._distances

    def get_hash(self):
        text = "{};{}".format(self.n, ",".join("{}-{}".format(u + 1, v + 1) for (u, v) in self.edges))
        return hashlib.sha256(text.encode("utf-8")).hexdigest()[:16]

    def to_edge_list_text(self):
        lines = [str(self.n)]
        lines.extend("{} {}".format(u + 1, v + 1) for (u, v) in self.edges)
        return "\n".join(lines) + "\n"

    def describe(self):
        return {
            "n": self.n,
            "m": self.m,
            "max_degree": self.max_degree,
            "hash": self.get_hash(),
            "edges": [self.get_edge_label(e) for e in range(self.m)]
        }


def graph_distance(g, u, v):
    """Length of a shortest u-v path (0-based vertices)."""
    g.check_vertex(u)
    g.check_vertex(v)
    return g.get_distances()[u][v]


def parse_graph(text):
    """Parses the edge-list document: first line `n`, then one `u v` pair per
    line with 1-based labels. Lines starting with '#' are comments."""
    n = None
    edges = []
    for (line_number, raw) in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        try:
            values = [int(t) for t in tokens]
        except ValueError:
            raise MalformedEdgeList("line {}: expected integers, got {!r}".format(line_number, raw))
        if n is None:
            if len(values) != 1:
                raise MalformedEdgeList("line {}: first line must hold the vertex count".format(line_number))
            n = values[0]
            if n < 1:
                raise BadLabel("vertex count must be positive, got {}".format(n))
            continue
        if len(values) != 2:
            raise MalformedEdgeList("line {}: expected `u v`, got {!r}".format(line_number, raw))
        (u, v) = values
        for w in (u, v):
            if w < 1 or w > n:
                raise BadLabel("line {}: label {} outside 1..{}".format(line_number, w, n))
        edges.append((u - 1, v - 1))
    if n is None:
        raise MalformedEdgeList("empty edge-list document")
    return Graph(n, edges)


def load_graph(filepath):
    with open(filepath, 'rt', encoding='utf-8') as f:
        return parse_graph(f.read())
