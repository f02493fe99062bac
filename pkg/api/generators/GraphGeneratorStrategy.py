from api.data.Graph import Graph
from api.data.Errors import BadDimension

class GraphGeneratorStrategy:
    """Abstract graph generator strategy class, meant to be subclassed by concrete implementations.

       Children must implement `_validate()`, which checks `self._dims`, and `_build()`, which
         returns a networkx graph; `_label()` maps its nodes to 0-based vertex indices.
    """
    def __init__(self, dims):
        self._dims = tuple(dims)

    def generate(self):
        self._validate()
        h = self._build()
        edges = [(self._label(a), self._label(b)) for (a, b) in h.edges()]
        return Graph(h.number_of_nodes(), edges)

    def _require(self, count, minimum):
        if len(self._dims) != count:
            raise BadDimension("{} expects {} dimension(s), got {}".format(type(self).__name__, count, list(self._dims)))
        for d in self._dims:
            if d < minimum:
                raise BadDimension("dimension {} below minimum {}".format(d, minimum))

    def _label(self, node):
        return node
