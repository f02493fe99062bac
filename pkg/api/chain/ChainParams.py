import math

import api.data.Constants

class ChainParams:
    """Worm process parameters: x = tanh(beta) in (0, 1), plus the per-vertex degree tables."""
    def __init__(self, graph, x, beta):
        if not 0.0 < x < 1.0:
            raise ValueError("x must lie in (0, 1), got {}".format(x))
        if not 0.0 < beta < math.inf:
            raise ValueError("beta must lie in (0, inf), got {}".format(beta))
        if abs(x - math.tanh(beta)) > api.data.Constants.BETA_X_TOLERANCE:
            raise ValueError("x = {} does not match tanh(beta) = {}".format(x, math.tanh(beta)))
        self.graph = graph
        self.x = float(x)
        self.beta = float(beta)
        self.inverse_degrees = tuple(1.0 / d for d in graph.degrees)

    @staticmethod
    def from_beta(graph, beta):
        return ChainParams(graph, math.tanh(beta), beta)

    @staticmethod
    def from_x(graph, x):
        if not 0.0 < x < 1.0:
            raise ValueError("x must lie in (0, 1), got {}".format(x))
        return ChainParams(graph, x, math.atanh(x))

    def __repr__(self):
        return "ChainParams(x={}, beta={})".format(self.x, self.beta)
