class EdgeSubset:
    """Subset of the edge set as a fixed-width bit vector. Bit i is edge index i."""
    __slots__ = ('bits', 'width')

    def __init__(self, bits, width):
        if bits < 0 or bits >> width:
            raise ValueError("bits {:#x} do not fit in width {}".format(bits, width))
        self.bits = bits
        self.width = width

    @staticmethod
    def empty(width):
        return EdgeSubset(0, width)

    @staticmethod
    def from_indices(indices, width):
        bits = 0
        for e in indices:
            bits |= 1 << e
        return EdgeSubset(bits, width)

    @staticmethod
    def from_labels(g, pairs):
        """Builds a subset from 1-based (u, v) pairs."""
        indices = []
        for (u, v) in pairs:
            indices.append(g.edge_index[(min(u, v) - 1, max(u, v) - 1)])
        return EdgeSubset.from_indices(indices, g.m)

    def __eq__(self, other):
        return isinstance(other, EdgeSubset) and self.bits == other.bits and self.width == other.width

    def __hash__(self):
        return hash((self.bits, self.width))

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __xor__(self, other):
        return EdgeSubset(self.bits ^ other.bits, self.width)

    def __or__(self, other):
        return EdgeSubset(self.bits | other.bits, self.width)

    def __and__(self, other):
        return EdgeSubset(self.bits & other.bits, self.width)

    def __contains__(self, e):
        return (self.bits >> e) & 1 == 1

    def __len__(self):
        return bin(self.bits).count("1")

    def __iter__(self):
        bits = self.bits
        e = 0
        while bits:
            if bits & 1:
                yield e
            bits >>= 1
            e += 1

    def __repr__(self):
        return "EdgeSubset({:#x}, width={})".format(self.bits, self.width)

    def with_edge(self, e):
        return EdgeSubset(self.bits | (1 << e), self.width)

    def toggled(self, e):
        return EdgeSubset(self.bits ^ (1 << e), self.width)

    def indices(self):
        return tuple(self)

    def sort_key(self):
        """Enumeration order of states: by size, then by the bit pattern."""
        return (len(self), self.bits)

    def lex_key(self):
        """Fixed subgraph order: lexicographic on the increasing edge-index sequence."""
        return self.indices()

    def labels(self, g):
        return [g.get_edge_label(e) for e in self]
