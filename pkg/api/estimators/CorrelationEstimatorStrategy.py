import numpy as np

from api.data.Errors import DistanceExceedsK, ZeroSampleFraction
from api.data.Graph import graph_distance
from api.utils.BatchMeans import ratio_error
from .Estimate import Estimate
from .EstimatorStrategy import EstimatorStrategy

C0 = "C0"
CUV = "Cuv"

class CorrelationEstimatorStrategy(EstimatorStrategy):
    """E(sigma_u sigma_v) = (n/2) S_uv / S0, both fractions from the same trajectory."""
    def __init__(self, graph, params, plan, u, v):
        EstimatorStrategy.__init__(self, graph, params, plan)
        graph.check_vertex(u)
        graph.check_vertex(v)
        if u == v:
            raise ValueError("correlation needs distinct vertices")
        distance = graph_distance(graph, u, v)
        if plan.k is not None and distance > plan.k:
            raise DistanceExceedsK("d({}, {}) = {} exceeds k = {}".format(u + 1, v + 1, distance, plan.k))
        self._pair = (min(u, v), max(u, v))
        self._code = self._pair[0] * graph.n + self._pair[1]

    def _observe(self, codes, offset):
        self._counter.accumulate(C0, offset + np.flatnonzero(codes == -1))
        self._counter.accumulate(CUV, offset + np.flatnonzero(codes == self._code))

    def _result(self):
        (zero_hits, pair_hits) = (self._counter.get_total(C0), self._counter.get_total(CUV))
        if zero_hits == 0 or pair_hits == 0:
            raise ZeroSampleFraction("sample fractions S0 = {}/{} and S_uv = {}/{}".format(
                zero_hits, self._plan.N, pair_hits, self._plan.N))
        n = self._graph.n
        error = ratio_error(self._counter.get_counts(CUV), self._counter.get_counts(C0),
                            self._counter.get_batch_sizes(), n / 2)
        fractions = {"S0": zero_hits / self._plan.N, "Suv": pair_hits / self._plan.N}
        return Estimate("corr", n / 2 * pair_hits / zero_hits, error, self._plan, self._seed, fractions, self._steps)
