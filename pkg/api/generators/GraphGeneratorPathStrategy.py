import networkx as nx

from .GraphGeneratorStrategy import GraphGeneratorStrategy

class GraphGeneratorPathStrategy(GraphGeneratorStrategy):
    """Path P_n."""
    def __init__(self, dims):
        GraphGeneratorStrategy.__init__(self, dims)

    def _validate(self):
        self._require(1, 2)

    def _build(self):
        return nx.path_graph(self._dims[0])
