import logging
import math

import numpy as np
import scipy.linalg
import scipy.sparse
import scipy.sparse.csgraph

import api.data.Constants
from api.chain.WormChain import transition_row
from api.data.EdgeSubset import EdgeSubset
from api.data.Errors import BoundViolation, InternalInvariant, IterationCap, NotIrreducible, TooLarge
from api.data.StateClass import StateClass
from api.data.WormState import WormState
from api.oracle.CheckReport import CheckReport
from api.oracle.ExactOracle import enumerate_classes

logger = logging.getLogger(__name__)

class ChainMatrix:
    """Dense transition matrix of the worm process on all of W.

       States are ordered C0 first, then C2, each by (|A|, bits).
    """
    def __init__(self, graph, params, states, matrix, stationary):
        self.graph = graph
        self.params = params
        self._states = states
        self._matrix = matrix
        self._stationary = stationary
        self._index = {s.edges.bits: i for (i, s) in enumerate(states)}

    def get_states(self):
        return self._states

    def get_matrix(self):
        return self._matrix

    def get_stationary(self):
        return self._stationary

    def get_size(self):
        return len(self._states)

    def index_of(self, state):
        return self._index[state.edges.bits]

    def get_zero_index(self):
        return self._index[0]

    def is_irreducible(self):
        (count, _) = scipy.sparse.csgraph.connected_components(
            scipy.sparse.csr_matrix(self._matrix > 0), directed=True, connection='strong')
        return count == 1

    def validate(self, tolerance=api.data.Constants.MATRIX_TOLERANCE,
                 stationarity=api.data.Constants.STATIONARITY_TOLERANCE):
        failures = check_chain(self, tolerance, stationarity).get_failures()
        if failures:
            if failures[0].name == "irreducible":
                raise NotIrreducible("transition graph on W is not strongly connected")
            raise InternalInvariant("{!r}".format(failures[0]))
        return self


def check_chain(cm, tolerance=api.data.Constants.MATRIX_TOLERANCE,
                stationarity=api.data.Constants.STATIONARITY_TOLERANCE):
    """Row sums, laziness, detailed balance, stationarity and irreducibility of P."""
    P = cm.get_matrix()
    pi = cm.get_stationary()
    flow = pi[:, None] * P
    report = CheckReport(cm.graph)
    parameters = {"x": cm.params.x, "states": cm.get_size()}
    report.at_most("row_sums", float(np.max(np.abs(P.sum(axis=1) - 1.0))), tolerance, parameters, slack=0.0)
    report.at_least("laziness", float(np.min(np.diag(P))), 0.5 - tolerance, parameters, slack=0.0)
    report.at_most("detailed_balance", float(np.max(np.abs(flow - flow.T))), tolerance, parameters, slack=0.0)
    report.at_most("stationarity", float(np.max(np.abs(pi @ P - pi))), stationarity, parameters, slack=0.0)
    report.exact("irreducible", cm.is_irreducible(), True, parameters)
    return report


def build_chain_matrix(g, params, max_states=api.data.Constants.MAX_STATES_SPECTRAL,
                       max_edges=api.data.Constants.MAX_EDGES_ENUMERATION, validate=True):
    table = enumerate_classes(g, params.x, max_edges=max_edges)
    masks = np.concatenate([table.get_member_masks(StateClass.C0), table.get_member_masks(StateClass.C2)])
    if masks.shape[0] > max_states:
        raise TooLarge("|W| = {} exceeds the spectral cap {}".format(masks.shape[0], max_states))
    states = [WormState.from_edges(g, EdgeSubset(int(b), g.m)) for b in masks]
    index = {int(b): i for (i, b) in enumerate(masks)}

    logger.info("assembling %dx%d transition matrix", len(states), len(states))
    matrix = np.zeros((len(states), len(states)))
    for (i, s) in enumerate(states):
        for (b, p) in transition_row(g, s, params):
            matrix[i, index[b.edges.bits]] += p
    stationary = table.pi_vector(masks)
    cm = ChainMatrix(g, params, states, matrix, stationary)
    return cm.validate() if validate else cm


def eigenvalues(cm):
    """Spectrum of P via the symmetric matrix D^1/2 P D^-1/2, largest first."""
    root = np.sqrt(cm.get_stationary())
    S = root[:, None] * cm.get_matrix() / root[None, :]
    S = (S + S.T) / 2
    return scipy.linalg.eigh(S, eigvals_only=True)[::-1]


def absolute_gap(cm):
    """(lambda_star, 1 - lambda_star) with lambda_star the largest nontrivial |eigenvalue|."""
    values = eigenvalues(cm)
    if 1.0 - values[1] <= api.data.Constants.MATRIX_TOLERANCE:
        raise NotIrreducible("eigenvalue 1 is not simple (second eigenvalue {})".format(values[1]))
    lambda_star = max(values[1], abs(values[-1]))
    return (float(lambda_star), float(1.0 - lambda_star))


def relaxation_time(cm):
    (_, gap) = absolute_gap(cm)
    return 1.0 / gap


def _tv(rows, pi):
    return 0.5 * np.abs(rows - pi).sum(axis=-1)


def tv_distances(cm, start, steps):
    """||P^t(start, .) - pi||_TV for t = 0..steps."""
    pi = cm.get_stationary()
    P = cm.get_matrix()
    row = np.zeros(cm.get_size())
    row[cm.index_of(start)] = 1.0
    distances = [_tv(row, pi)]
    for _ in range(steps):
        row = row @ P
        distances.append(_tv(row, pi))
    return np.array(distances)


def tv_mixing_time(cm, start, delta, max_iterations=api.data.Constants.MAX_TV_ITERATIONS):
    """Smallest t with ||P^t(start, .) - pi||_TV <= delta."""
    if not 0.0 < delta < 1.0:
        raise ValueError("delta must lie in (0, 1), got {}".format(delta))
    pi = cm.get_stationary()
    P = cm.get_matrix()
    row = np.zeros(cm.get_size())
    row[cm.index_of(start)] = 1.0
    t = 0
    while _tv(row, pi) > delta:
        if t >= max_iterations:
            raise IterationCap("TV distance from {} still above {} after {} steps".format(
                start.dump(cm.graph), delta, max_iterations))
        row = row @ P
        t += 1
    logger.info("mix(%s, %g) = %d", start.dump(cm.graph), delta, t)
    return t


def worst_tv_distances(cm, steps):
    """d(t) = max over starts of ||P^t(s, .) - pi||_TV for t = 0..steps."""
    pi = cm.get_stationary()
    P = cm.get_matrix()
    rows = np.eye(cm.get_size())
    distances = [np.max(_tv(rows, pi))]
    for _ in range(steps):
        rows = rows @ P
        distances.append(np.max(_tv(rows, pi)))
    return np.array(distances)


def worst_mixing_time(cm, delta, max_iterations=api.data.Constants.MAX_TV_ITERATIONS):
    """mix(delta): smallest t with d(t) <= delta, d the worst-start TV distance."""
    if not 0.0 < delta < 1.0:
        raise ValueError("delta must lie in (0, 1), got {}".format(delta))
    pi = cm.get_stationary()
    P = cm.get_matrix()
    rows = np.eye(cm.get_size())
    t = 0
    while np.max(_tv(rows, pi)) > delta:
        if t >= max_iterations:
            raise IterationCap("worst-start TV distance still above {} after {} steps".format(delta, max_iterations))
        rows = rows @ P
        t += 1
    logger.info("mix(%g) = %d", delta, t)
    return t


def fitted_relaxation_time(cm, start=None, floor=api.data.Constants.FIT_FLOOR, window=api.data.Constants.FIT_WINDOW,
                           max_iterations=api.data.Constants.MAX_TV_ITERATIONS):
    """1 / (1 - r) with r the geometric decay rate of the TV distance, fitted on the
       last `window` values above `floor`.

       By default the distance is the worst-start d(t), which always decays at the
       rate of the slowest mode. With `start` set, ||P^t(start, .) - pi|| is fitted
       instead; a start with no weight on the slowest mode then decays faster and
       the fit underestimates t_rel.
    """
    pi = cm.get_stationary()
    P = cm.get_matrix()
    if start is None:
        rows = np.eye(cm.get_size())
    else:
        rows = np.zeros((1, cm.get_size()))
        rows[0, cm.index_of(start)] = 1.0
    distances = [np.max(_tv(rows, pi))]
    while distances[-1] > floor:
        if len(distances) > max_iterations:
            raise IterationCap("d(t) still above {} after {} steps".format(floor, max_iterations))
        rows = rows @ P
        distances.append(np.max(_tv(rows, pi)))
    tail = np.array(distances[-window - 1:-1])
    if tail.shape[0] < 2:
        raise IterationCap("chain mixed in {} steps, too few to fit a decay rate".format(len(distances) - 1))
    (slope, _) = np.polyfit(np.arange(tail.shape[0]), np.log(tail), 1)
    return 1.0 / (1.0 - math.exp(slope))


def theorem1_bounds(g, x, delta):
    """(t_rel bound, mix(0, delta) bound, mix(delta) bound) for the worm process on g."""
    (n, m, degree) = (g.n, g.m, g.max_degree)
    base = degree * m * n ** 4
    relaxation = 4.0 * base
    from_zero = 4.0 * (math.log(2.0) + math.log(1.0 / delta) / m) * base * m
    worst = 4.0 * (math.log(2.0 / x) + math.log(2.0 / delta) / m) * base * m
    return (relaxation, from_zero, worst)


def verify_theorem1(g, params, deltas, cm=None, raise_on_failure=True):
    cm = cm or build_chain_matrix(g, params)
    report = CheckReport(g)
    t_rel = relaxation_time(cm)
    report.at_most("relaxation_time_bound", t_rel, 4.0 * g.max_degree * g.m * g.n ** 4, {"x": params.x})
    zero = WormState.zero(g)
    for delta in deltas:
        (_, zero_bound, worst_bound) = theorem1_bounds(g, params.x, delta)
        parameters = {"x": params.x, "delta": delta}
        report.at_most("mixing_time_from_zero_bound", tv_mixing_time(cm, zero, delta), zero_bound, parameters)
        report.at_most("mixing_time_worst_bound", worst_mixing_time(cm, delta), worst_bound, parameters)
    if raise_on_failure:
        report.raise_on_failure(BoundViolation)
    return report
