from .EdgeSubset import EdgeSubset
from .Errors import LeavesStateSpace, NotInW
from .StateClass import StateClass

class WormState:
    """Edge subset in W = C0 u C2 together with its cached odd-vertex boundary.

       `boundary` is a sorted tuple of 0 or 2 vertex indices.
    """
    __slots__ = ('edges', 'boundary')

    def __init__(self, edges, boundary):
        self.edges = edges
        self.boundary = boundary

    @staticmethod
    def zero(g):
        return WormState(EdgeSubset.empty(g.m), ())

    @staticmethod
    def from_edges(g, edges):
        odd = boundary(g, edges)
        if len(odd) not in (0, 2):
            raise NotInW("edge set {} has {} odd vertices".format(edges.labels(g), len(odd)))
        return WormState(edges, tuple(sorted(odd)))

    def __eq__(self, other):
        return isinstance(other, WormState) and self.edges == other.edges

    def __hash__(self):
        return hash(self.edges)

    def __repr__(self):
        return "WormState({!r}, boundary={})".format(self.edges, self.boundary)

    def get_class(self):
        return classify(self)

    def dump(self, g):
        """Debug and golden-test text: sorted `u-v` edge tokens, then the odd vertices."""
        tokens = " ".join(self.edges.labels(g))
        odd = " ".join(str(v + 1) for v in self.boundary)
        return "[{}] | {{{}}}".format(tokens, odd)


def boundary(g, edges):
    """Set of odd vertices of the spanning subgraph (V, edges)."""
    parity = 0
    for e in edges:
        (u, v) = g.edges[e]
        parity ^= (1 << u) | (1 << v)
    odd = set()
    v = 0
    while parity:
        if parity & 1:
            odd.add(v)
        parity >>= 1
        v += 1
    return odd


def toggle(g, s, e):
    """Flips edge `e`; the boundary is updated incrementally as boundary xor {u, v}."""
    (u, v) = g.edges[e]
    odd = set(s.boundary)
    odd ^= {u, v}
    if len(odd) not in (0, 2):
        raise LeavesStateSpace("toggling {} from {} leaves W".format(g.get_edge_label(e), s.dump(g)))
    return WormState(s.edges.toggled(e), tuple(sorted(odd)))


def classify(s):
    if not s.boundary:
        return StateClass.C0
    return StateClass.C2
