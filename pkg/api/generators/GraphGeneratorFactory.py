from .GraphGeneratorCycleStrategy import GraphGeneratorCycleStrategy
from .GraphGeneratorPathStrategy import GraphGeneratorPathStrategy
from .GraphGeneratorCompleteStrategy import GraphGeneratorCompleteStrategy
from .GraphGeneratorGridStrategy import GraphGeneratorGridStrategy
from api.data.Errors import BadDimension

GRAPH_GENERATORS = {
    "cycle": GraphGeneratorCycleStrategy,
    "path": GraphGeneratorPathStrategy,
    "complete": GraphGeneratorCompleteStrategy,
    "grid": GraphGeneratorGridStrategy
}

def generate(kind, dims):
    """Canonical labeled graph of the given kind, e.g. generate("grid", (2, 3))."""
    if kind not in GRAPH_GENERATORS:
        raise BadDimension("unknown graph kind {!r}, expected one of {}".format(kind, sorted(GRAPH_GENERATORS)))
    return GRAPH_GENERATORS[kind](dims).generate()
