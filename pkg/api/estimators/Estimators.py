import concurrent.futures
import logging
import math

import numpy as np

import api.data.Constants
from api.chain.ChainParams import ChainParams
from api.data.Errors import BadTolerance
from api.data.Graph import graph_distance
from api.utils.Seeding import spawn
from .CorrelationEstimatorStrategy import CorrelationEstimatorStrategy
from .Estimate import Estimate
from .EstimatorPlan import plan_correlation, plan_susceptibility
from .SusceptibilityEstimatorStrategy import SusceptibilityEstimatorStrategy

logger = logging.getLogger(__name__)


def estimate_susceptibility(g, beta, plan, rng, seed=None):
    params = ChainParams.from_beta(g, beta)
    return SusceptibilityEstimatorStrategy(g, params, plan).estimate(rng, seed)


def estimate_correlation(g, beta, u, v, plan, rng, seed=None):
    params = ChainParams.from_beta(g, beta)
    return CorrelationEstimatorStrategy(g, params, plan, u, v).estimate(rng, seed)


def replicas_for_eta(eta):
    """Number of independent runs whose median fails with probability at most eta."""
    if not 0.0 < eta < 1.0:
        raise BadTolerance("eta must lie in (0, 1), got {}".format(eta))
    return 6 * math.ceil(math.log2(1.0 / eta)) + 1


def _replica(g, beta, target, pair, plan, seed_sequence):
    rng = np.random.default_rng(seed_sequence)
    if target == "chi":
        return estimate_susceptibility(g, beta, plan, rng).value
    return estimate_correlation(g, beta, pair[0], pair[1], plan, rng).value


def median_amplify(g, beta, target, epsilon, eta, seed, pair=None, k=None, tau=None, N=None,
                   workers=1, replicas=None):
    """Median of independent estimates, each planned with delta = 1/4.

       Replica i draws from SeedSequence(seed).spawn(count)[i].
    """
    if target not in api.data.Constants.TARGETS:
        raise ValueError("unknown target {!r}, expected one of {}".format(target, api.data.Constants.TARGETS))
    if target == "corr" and pair is None:
        raise ValueError("the correlation target needs a vertex pair")
    count = replicas or replicas_for_eta(eta)
    delta = api.data.Constants.MEDIAN_TRICK_DELTA
    if target == "chi":
        plan = plan_susceptibility(g, epsilon, delta)
    else:
        k = k if k is not None else graph_distance(g, pair[0], pair[1])
        plan = plan_correlation(g, epsilon, delta, k, math.tanh(beta))
    plan = plan.with_overrides(tau, N)

    children = spawn(seed, count)
    logger.info("running %d replicas of %s on %d workers", count, target, workers)
    if workers <= 1:
        values = [_replica(g, beta, target, pair, plan, child) for child in children]
    else:
        values = [None] * count
        with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as executor:
            futures = {executor.submit(_replica, g, beta, target, pair, plan, child): i
                       for (i, child) in enumerate(children)}
            for future in concurrent.futures.as_completed(futures):
                values[futures[future]] = future.result()
                logger.info("replica %d done", futures[future])
    return Estimate(target, float(np.median(values)), None, plan, seed, {}, (plan.tau + plan.N) * count,
                    replicas=values)
