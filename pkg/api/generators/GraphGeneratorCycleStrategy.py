import networkx as nx

from .GraphGeneratorStrategy import GraphGeneratorStrategy

class GraphGeneratorCycleStrategy(GraphGeneratorStrategy):
    """Cycle C_n, vertices labeled in cyclic order."""
    def __init__(self, dims):
        GraphGeneratorStrategy.__init__(self, dims)

    def _validate(self):
        self._require(1, 3)

    def _build(self):
        return nx.cycle_graph(self._dims[0])
