import itertools
import logging
import math

import numpy as np
import sympy
from scipy.special import comb

import api.data.Constants
from api.data.EdgeSubset import EdgeSubset
from api.data.Errors import BijectionViolation, BoundViolation, CrossCheckMismatch, Mismatch, NotInW, TooLarge
from api.data.Graph import graph_distance
from api.data.StateClass import StateClass
from api.data.WormState import boundary
from .CheckReport import CheckReport

logger = logging.getLogger(__name__)


def _vertex_mask(vertices):
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


class SubgraphClassTable:
    """Every edge subset of a graph, bucketed by its number of odd vertices.

       Holds the counts of each class by subset size, from which the measures
       lambda_x(C_W) = sum of x^|A| over C_W are evaluated. With `exact` the
       parameter x is a sympy Rational and every derived quantity is exact.
    """
    def __init__(self, graph, x, parity, sizes, with_C4=False, exact=False):
        self.graph = graph
        self.n = graph.n
        self.m = graph.m
        self.exact = exact
        self.x = sympy.Rational(x) if exact else float(x)
        self.with_C4 = with_C4
        self._parity = parity
        self._sizes = sizes
        odd = np.zeros(parity.shape[0], dtype=np.int64)
        for v in range(self.n):
            odd += (parity >> v) & 1
        self._odd_counts = odd.astype(np.int8)

        powers = [sympy.Integer(1) if exact else 1.0]
        for _ in range(self.m):
            powers.append(powers[-1] * self.x)
        self._powers = powers

        classes = [StateClass.C0, StateClass.C2] + ([StateClass.C4] if with_C4 else [])
        self._members = {}
        self._size_counts = {}
        for c in classes:
            masks = np.flatnonzero(self._odd_counts == c.value)
            order = np.lexsort((masks, sizes[masks]))
            self._members[c] = masks[order]
            self._size_counts[c] = np.bincount(sizes[masks], minlength=self.m + 1)

        c2 = self._members[StateClass.C2]
        (pair_masks, inverse) = np.unique(parity[c2], return_inverse=True)
        pair_counts = np.zeros((pair_masks.shape[0], self.m + 1), dtype=np.int64)
        np.add.at(pair_counts, (inverse, sizes[c2]), 1)
        self._pair_counts = {}
        for (mask, counts) in zip(pair_masks.tolist(), pair_counts):
            (u, v) = [w for w in range(self.n) if (mask >> w) & 1]
            self._pair_counts[(u, v)] = counts

        self.lambda_C0 = self.lambda_of_counts(self._size_counts[StateClass.C0])
        self.lambda_C2 = self.lambda_of_counts(self._size_counts[StateClass.C2])
        self.lambda_C4 = self.lambda_of_counts(self._size_counts[StateClass.C4]) if with_C4 else None
        self.Z = self.n * self.lambda_C0 + 2 * self.lambda_C2

    def lambda_of_counts(self, counts):
        """sum_k counts[k] x^k, accumulated in increasing k."""
        if self.exact:
            return sum((sympy.Integer(int(c)) * self._powers[k] for (k, c) in enumerate(counts) if c), sympy.Integer(0))
        return math.fsum(int(c) * self._powers[k] for (k, c) in enumerate(counts) if c)

    def get_power(self, k):
        return self._powers[k]

    def count(self, state_class):
        return int(self._members[state_class].shape[0])

    def get_member_masks(self, state_class):
        return self._members[state_class]

    def get_members(self, state_class):
        return [EdgeSubset(int(b), self.m) for b in self._members[state_class]]

    def get_size_counts(self, state_class):
        return self._size_counts[state_class]

    def get_lambda(self, state_class):
        return {StateClass.C0: self.lambda_C0, StateClass.C2: self.lambda_C2, StateClass.C4: self.lambda_C4}[state_class]

    def get_odd_count(self, edges):
        return int(self._odd_counts[edges.bits])

    def get_class_masks(self, vertices):
        """Bit patterns of every A with boundary exactly `vertices`."""
        return np.flatnonzero(self._parity == _vertex_mask(vertices))

    def get_lambda_W(self, vertices):
        vertices = tuple(sorted(vertices))
        if len(vertices) == 2:
            return self.get_lambda_pair(*vertices)
        if not vertices:
            return self.lambda_C0
        masks = self.get_class_masks(vertices)
        return self.lambda_of_counts(np.bincount(self._sizes[masks], minlength=self.m + 1))

    def get_lambda_pair(self, u, v):
        key = (min(u, v), max(u, v))
        if key not in self._pair_counts:
            return self.lambda_of_counts(np.zeros(self.m + 1, dtype=np.int64))
        return self.lambda_of_counts(self._pair_counts[key])

    def get_lambda_k(self, k):
        """lambda_x of the union of all C_W with |W| = k."""
        masks = np.flatnonzero(self._odd_counts == k)
        return self.lambda_of_counts(np.bincount(self._sizes[masks], minlength=self.m + 1))

    def get_boundary_sizes(self):
        return sorted(set(np.unique(self._odd_counts).tolist()))

    def get_boundary_groups(self):
        """(vertex mask, counts by size) for every distinct nonempty boundary."""
        nonzero = np.flatnonzero(self._parity != 0)
        (masks, inverse) = np.unique(self._parity[nonzero], return_inverse=True)
        counts = np.zeros((masks.shape[0], self.m + 1), dtype=np.int64)
        np.add.at(counts, (inverse, self._sizes[nonzero]), 1)
        return list(zip(masks.tolist(), counts))

    def psi(self, state_class):
        return self.n if state_class is StateClass.C0 else 2

    def pi_class(self, state_class):
        return self.psi(state_class) * self.get_lambda(state_class) / self.Z

    def pi_pair(self, u, v):
        return 2 * self.get_lambda_pair(u, v) / self.Z

    def pi_vector(self, masks):
        """PS probabilities of the given bit patterns, all assumed to lie in W."""
        odd = self._odd_counts[masks]
        sizes = self._sizes[masks]
        powers = np.array([float(p) for p in self._powers])
        psi = np.where(odd == 0, self.n, 2)
        return psi * powers[sizes] / float(self.Z)


def enumerate_classes(g, x, with_C4=False, max_edges=api.data.Constants.MAX_EDGES_ENUMERATION, exact=False):
    """Exhaustive scan of all 2^m edge subsets."""
    if g.m > max_edges:
        raise TooLarge("enumeration of 2^{} subsets exceeds the cap m <= {}".format(g.m, max_edges))
    parity = np.zeros(1, dtype=np.int64)
    sizes = np.zeros(1, dtype=np.int8)
    for (u, v) in g.edges:
        parity = np.concatenate([parity, parity ^ ((1 << u) | (1 << v))])
        sizes = np.concatenate([sizes, sizes + 1])
    table = SubgraphClassTable(g, x, parity, sizes, with_C4=with_C4, exact=exact)
    logger.info("enumerated 2^%d subsets: |C0|=%d |C2|=%d", g.m, table.count(StateClass.C0), table.count(StateClass.C2))
    return table


class SpinEnsemble:
    """All 2^n zero-field Ising configurations with their Gibbs weights."""
    def __init__(self, g, beta, max_vertices=api.data.Constants.MAX_VERTICES_SPIN_SUM):
        if g.n > max_vertices:
            raise TooLarge("spin sum over 2^{} configurations exceeds the cap n <= {}".format(g.n, max_vertices))
        self.graph = g
        self.beta = beta
        configurations = np.arange(1 << g.n, dtype=np.int64)
        bits = (configurations[:, None] >> np.arange(g.n, dtype=np.int64)) & 1
        self._spins = (1 - 2 * bits).astype(np.int8)
        bonds = np.zeros(configurations.shape[0], dtype=np.int64)
        for (u, v) in g.edges:
            bonds += self._spins[:, u].astype(np.int64) * self._spins[:, v]
        self._weights = np.exp(beta * (bonds - bonds.max()))
        self._total = self._weights.sum()

    def moment(self, vertices):
        """E_beta of the product of spins over `vertices`."""
        product = np.ones(self._weights.shape[0], dtype=np.int64)
        for v in vertices:
            product *= self._spins[:, v]
        return float(np.dot(self._weights, product) / self._total)

    def susceptibility(self):
        """var(M) / n with M the total magnetization."""
        magnetization = self._spins.sum(axis=1, dtype=np.int64).astype(np.float64)
        return float(np.dot(self._weights, magnetization ** 2) / self._total / self.graph.n)


def ising_moment_bruteforce(g, beta, vertices, max_vertices=api.data.Constants.MAX_VERTICES_SPIN_SUM):
    return SpinEnsemble(g, beta, max_vertices).moment(vertices)


def verify_high_temp(g, beta, vertices, table=None, ensemble=None, raise_on_failure=True,
                     rtol=api.data.Constants.RELATIVE_TOLERANCE, atol=api.data.Constants.ABSOLUTE_TOLERANCE):
    """Spin-sum moment against lambda_x(C_W) / lambda_x(C0), x = tanh(beta)."""
    table = table or enumerate_classes(g, math.tanh(beta))
    ensemble = ensemble or SpinEnsemble(g, beta)
    lhs = ensemble.moment(vertices)
    rhs = table.get_lambda_W(vertices) / table.lambda_C0
    report = CheckReport(g)
    report.close("high_temperature_expansion", lhs, rhs,
                 {"beta": beta, "W": [v + 1 for v in sorted(vertices)]}, rtol=rtol, atol=atol)
    if raise_on_failure:
        report.raise_on_failure(Mismatch)
    return report


def verify_high_temp_all(g, beta, subset_sizes=(2, 4), table=None, ensemble=None, raise_on_failure=True,
                         rtol=api.data.Constants.RELATIVE_TOLERANCE, atol=api.data.Constants.ABSOLUTE_TOLERANCE):
    """verify_high_temp for the empty set and every vertex subset of the given sizes."""
    table = table or enumerate_classes(g, math.tanh(beta))
    ensemble = ensemble or SpinEnsemble(g, beta)
    report = CheckReport(g)
    subsets = [()]
    for k in subset_sizes:
        subsets.extend(itertools.combinations(range(g.n), k))
    for vertices in subsets:
        report.extend(verify_high_temp(g, beta, vertices, table, ensemble, False, rtol, atol))
    if raise_on_failure:
        report.raise_on_failure(Mismatch)
    return report


def ps_prob(table, edges):
    """PS measure x^|A| psi(A) / Z_x, psi = n on C0 and 2 on C2."""
    odd = table.get_odd_count(edges)
    if odd not in (0, 2):
        raise NotInW("edge set with {} odd vertices is outside W".format(odd))
    return table.psi(StateClass(odd)) * table.get_power(len(edges)) / table.Z


def susceptibility_exact(g, beta, table=None, ensemble=None,
                         rtol=api.data.Constants.RELATIVE_TOLERANCE, atol=api.data.Constants.ABSOLUTE_TOLERANCE):
    """1 / pi_x(C0), cross-checked against var(M) / n from the spin sum."""
    table = table or enumerate_classes(g, math.tanh(beta))
    ensemble = ensemble or SpinEnsemble(g, beta)
    chi = 1.0 / float(table.pi_class(StateClass.C0))
    chi_spins = ensemble.susceptibility()
    report = CheckReport(g)
    report.close("susceptibility_dual_route", chi, chi_spins, {"beta": beta}, rtol=rtol, atol=atol)
    report.raise_on_failure(CrossCheckMismatch)
    return chi


def two_point_exact(g, beta, u, v, table=None, ensemble=None,
                    rtol=api.data.Constants.RELATIVE_TOLERANCE, atol=api.data.Constants.ABSOLUTE_TOLERANCE):
    """(n/2) pi_x(C_uv) / pi_x(C0), cross-checked against the spin moment."""
    g.check_vertex(u)
    g.check_vertex(v)
    if u == v:
        raise ValueError("two-point function needs distinct vertices")
    table = table or enumerate_classes(g, math.tanh(beta))
    ensemble = ensemble or SpinEnsemble(g, beta)
    value = float(g.n / 2 * table.pi_pair(u, v) / table.pi_class(StateClass.C0))
    moment = ensemble.moment((u, v))
    report = CheckReport(g)
    report.close("two_point_dual_route", value, moment, {"beta": beta, "u": u + 1, "v": v + 1}, rtol=rtol, atol=atol)
    report.raise_on_failure(CrossCheckMismatch)
    return value


def verify_measure_bounds(g, x, table=None, raise_on_failure=True):
    """Lower bounds on the PS measure and the ratio bounds on lambda_x(C_W) / lambda_x(C0)."""
    table = table or enumerate_classes(g, x)
    x = float(table.x)
    n = g.n
    m = g.m
    Z = float(table.Z)
    report = CheckReport(g)
    parameters = {"x": x}

    pi_zero = n / Z
    report.at_least("pi_zero_lower", pi_zero, 2.0 ** -m, parameters)

    candidates = []
    for c in (StateClass.C0, StateClass.C2):
        masks = table.get_member_masks(c)
        heaviest = int(masks[-1])
        candidates.append((float(ps_prob(table, EdgeSubset(heaviest, m))), heaviest))
    (pi_min, witness) = min(candidates)
    report.at_least("pi_min_lower", pi_min, 0.5 * (x / 2) ** m, parameters,
                    witness=EdgeSubset(witness, m).labels(g))

    pi_C0 = float(table.pi_class(StateClass.C0))
    pi_C2 = float(table.pi_class(StateClass.C2))
    report.at_least("pi_C0_lower", pi_C0, 1.0 / n, parameters)
    report.close("pi_partition", pi_C0 + pi_C2, 1.0, parameters)

    for (u, v) in itertools.combinations(range(n), 2):
        d = graph_distance(g, u, v)
        report.at_least("pi_Cuv_lower", float(table.pi_pair(u, v)), 2.0 / n ** 2 * x ** d,
                        {"x": x, "u": u + 1, "v": v + 1, "distance": d})

    lambda_C0 = float(table.lambda_C0)
    (worst_ratio, worst_W) = (0.0, None)
    for (mask, counts) in table.get_boundary_groups():
        ratio = float(table.lambda_of_counts(counts)) / lambda_C0
        if ratio > worst_ratio:
            (worst_ratio, worst_W) = (ratio, [w + 1 for w in range(n) if (mask >> w) & 1])
    report.at_most("lambda_W_ratio", worst_ratio, 1.0, parameters, witness=worst_W)

    for k in table.get_boundary_sizes():
        if k == 0:
            continue
        ratio = float(table.get_lambda_k(k)) / lambda_C0
        report.at_most("lambda_k_ratio", ratio, float(comb(n, k, exact=True)), {"x": x, "k": k})

    if raise_on_failure:
        report.raise_on_failure(BoundViolation)
    return report


def verify_cycle_space(g, table=None, raise_on_failure=True):
    """|C0| = 2^(m - n + 1) for a connected graph."""
    table = table or enumerate_classes(g, 0.5)
    report = CheckReport(g)
    report.exact("cycle_space_cardinality", table.count(StateClass.C0), 2 ** (g.m - g.n + 1))
    if raise_on_failure:
        report.raise_on_failure(Mismatch)
    return report


def verify_bijection(g, vertices, F, table=None, raise_on_failure=True):
    """A -> A xor F maps C_W one-to-one onto C0 when boundary(F) = W."""
    if boundary(g, F) != set(vertices):
        raise ValueError("F {} does not have boundary {}".format(F.labels(g), [v + 1 for v in sorted(vertices)]))
    table = table or enumerate_classes(g, 0.5)
    members = table.get_class_masks(vertices)
    images = members ^ F.bits
    targets = table.get_member_masks(StateClass.C0)
    parameters = {"W": [v + 1 for v in sorted(vertices)], "F": F.labels(g)}
    report = CheckReport(g)
    report.exact("bijection_injective", int(np.unique(images).shape[0]), int(members.shape[0]), parameters)
    report.exact("bijection_onto", bool(np.array_equal(np.sort(images), np.sort(targets))), True, parameters)
    if raise_on_failure:
        report.raise_on_failure(BijectionViolation)
    return report
