import numpy as np

from api.data.Errors import ZeroSampleFraction
from api.utils.BatchMeans import reciprocal_error
from .Estimate import Estimate
from .EstimatorStrategy import EstimatorStrategy

C0 = "C0"

class SusceptibilityEstimatorStrategy(EstimatorStrategy):
    """chi = 1 / S0, with S0 the fraction of sampled states in C0."""
    def _observe(self, codes, offset):
        self._counter.accumulate(C0, offset + np.flatnonzero(codes == -1))

    def _result(self):
        hits = self._counter.get_total(C0)
        if hits == 0:
            raise ZeroSampleFraction("no sampled state in C0 among {} samples".format(self._plan.N))
        sizes = self._counter.get_batch_sizes()
        return Estimate("chi", self._plan.N / hits, reciprocal_error(self._counter.get_counts(C0), sizes),
                        self._plan, self._seed, {"S0": hits / self._plan.N}, self._steps)
