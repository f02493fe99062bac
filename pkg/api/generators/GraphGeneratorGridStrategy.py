import networkx as nx

from .GraphGeneratorStrategy import GraphGeneratorStrategy
from api.data.Errors import BadDimension

class GraphGeneratorGridStrategy(GraphGeneratorStrategy):
    """Rectangular grid with `rows` x `cols` vertices, labeled row-major."""
    def __init__(self, dims):
        GraphGeneratorStrategy.__init__(self, dims)

    def _validate(self):
        self._require(2, 1)
        (rows, cols) = self._dims
        if rows * cols < 2:
            raise BadDimension("grid {}x{} has fewer than two vertices".format(rows, cols))

    def _build(self):
        return nx.grid_2d_graph(self._dims[0], self._dims[1])

    def _label(self, node):
        (row, col) = node
        return row * self._dims[1] + col
