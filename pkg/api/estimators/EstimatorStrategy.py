import logging

from api.chain.WormSampler import WormSampler
from api.data.WormState import WormState
from api.utils.BatchMeans import BatchCounter

logger = logging.getLogger(__name__)

class EstimatorStrategy:
    """Abstract time-average estimator over one worm trajectory, meant to be subclassed.

       The chain starts at the empty edge set, runs `plan.tau` burn-in steps, then
         `plan.N` sampled steps. Children implement `_observe(codes, offset)`, which
         feeds the class codes of a chunk into `self._counter`, and `_result()`.
    """
    def __init__(self, graph, params, plan):
        self._graph = graph
        self._params = params
        self._plan = plan
        self._counter = None
        self._seed = None
        self._steps = 0

    def estimate(self, rng, seed=None):
        self._seed = seed
        self._counter = BatchCounter(self._plan.N)
        sampler = WormSampler(self._graph, self._params, WormState.zero(self._graph))
        sampler.burn_in(self._plan.tau, rng)
        offset = 0
        for (codes, _, _) in sampler.run_chunks(self._plan.N, rng):
            self._observe(codes, offset)
            offset += codes.shape[0]
        self._steps = sampler.get_steps()
        estimate = self._result()
        logger.info("%s after %d steps", estimate, self._steps)
        return estimate

    def _observe(self, codes, offset):
        raise NotImplementedError

    def _result(self):
        raise NotImplementedError
