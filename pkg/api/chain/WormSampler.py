import logging

import numpy as np

import api.data.Constants
from api.data.EdgeSubset import EdgeSubset
from api.data.WormState import WormState
from .FastKernel import worm_kernel

logger = logging.getLogger(__name__)

class WormSampler:
    """Bulk worm process simulation on flat arrays, for graphs too large to tabulate."""
    def __init__(self, graph, params, state=None):
        self._graph = graph
        self._params = params
        indptr = [0]
        neighbors = []
        neighbor_edges = []
        for adjacent in graph.adjacency:
            for (w, e) in adjacent:
                neighbors.append(w)
                neighbor_edges.append(e)
            indptr.append(len(neighbors))
        self._indptr = np.array(indptr, dtype=np.int64)
        self._neighbors = np.array(neighbors, dtype=np.int64)
        self._neighbor_edges = np.array(neighbor_edges, dtype=np.int64)
        self._degrees = np.array(graph.degrees, dtype=np.int64)
        self._in_set = np.zeros(graph.m, dtype=np.uint8)
        self._walker = np.zeros(5, dtype=np.int64)
        self._steps = 0
        if state is not None:
            self.set_state(state)

    def set_state(self, state):
        self._in_set[:] = 0
        for e in state.edges:
            self._in_set[e] = 1
        (b0, b1) = state.boundary if state.boundary else (0, 0)
        bits = state.edges.bits if self._graph.m <= 62 else 0
        self._walker[:] = (b0, b1, len(state.boundary), len(state.edges), bits)

    def get_state(self):
        edges = EdgeSubset.from_indices(np.flatnonzero(self._in_set).tolist(), self._graph.m)
        boundary = ()
        if self._walker[2] == 2:
            boundary = (int(self._walker[0]), int(self._walker[1]))
        return WormState(edges, boundary)

    def get_steps(self):
        return self._steps

    def encode_pair(self, u, v):
        return min(u, v) * self._graph.n + max(u, v)

    def run_chunks(self, steps, rng, chunk_size=api.data.Constants.CHUNK_SIZE):
        """Yields (codes, sizes, states) arrays chunk by chunk; see `worm_kernel` for the encoding."""
        remaining = steps
        while remaining > 0:
            k = min(chunk_size, remaining)
            uniforms = rng.random((k, 4))
            codes = np.empty(k, dtype=np.int64)
            sizes = np.empty(k, dtype=np.int64)
            states = np.empty(k, dtype=np.int64)
            worm_kernel(self._indptr, self._neighbors, self._neighbor_edges, self._degrees,
                        self._graph.n, self._params.x, self._in_set, self._walker, uniforms, codes, sizes, states)
            remaining -= k
            self._steps += k
            yield (codes, sizes, states)

    def burn_in(self, steps, rng, chunk_size=api.data.Constants.CHUNK_SIZE):
        for _ in self.run_chunks(steps, rng, chunk_size):
            pass
        logger.debug("burn-in of %d steps done", steps)
