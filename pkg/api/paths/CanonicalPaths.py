import concurrent.futures
import logging
from collections import namedtuple

import networkx as nx
import pandas as pd

import api.data.Constants
from api.chain.WormChain import transition_prob
from api.data.EdgeSubset import EdgeSubset
from api.data.Errors import (BoundViolation, InternalInvariant, LeavesStateSpace, NotInImage, NotInW,
                             TooLarge, TransitionNotOnPath)
from api.data.StateClass import StateClass
from api.data.WormState import WormState, boundary, toggle
from api.oracle.CheckReport import CheckReport
from api.oracle.ExactOracle import enumerate_classes

logger = logging.getLogger(__name__)

# `path` is B0 as edge indices walked from `start`; `cycles` are B1..Bk, each in unwind order.
SymdiffDecomposition = namedtuple('SymdiffDecomposition', ['start', 'path', 'cycles'])

Transition = namedtuple('Transition', ['state', 'edge'])


class CanonicalPath:
    """States s0 = I, ..., sL = F and the edge toggled at each step."""
    def __init__(self, states, edges):
        self.states = states
        self.edges = edges

    def __len__(self):
        return len(self.edges)

    def get_transitions(self):
        return [Transition(self.states[k], e) for (k, e) in enumerate(self.edges)]

    def position_of(self, transition):
        for (k, e) in enumerate(self.edges):
            if e == transition.edge and self.states[k] == transition.state:
                return k
        return None

    def dump(self, g):
        return [s.dump(g) for s in self.states]


def _shortest_path(g, edges, u, v):
    """Least shortest u-v path inside (V, edges) under the fixed subgraph order."""
    H = nx.Graph()
    H.add_nodes_from(range(g.n))
    H.add_edges_from(g.edges[e] for e in edges)
    if not nx.has_path(H, u, v):
        raise InternalInvariant("odd vertices {} and {} lie in different components".format(u + 1, v + 1))
    best = None
    for vertices in nx.all_shortest_paths(H, u, v):
        walk = [g.edge_index[(min(a, b), max(a, b))] for (a, b) in zip(vertices, vertices[1:])]
        key = tuple(sorted(walk))
        if best is None or key < best[0]:
            best = (key, tuple(walk))
    return best[1]


def _orient_cycle(g, cycle_edges):
    """Unwind order of a simple cycle: from its lowest vertex towards the lower of
       that vertex's two cycle neighbors."""
    incident = {}
    for e in cycle_edges:
        (a, b) = g.edges[e]
        incident.setdefault(a, []).append((b, e))
        incident.setdefault(b, []).append((a, e))
    start = min(incident)
    (neighbor, edge) = min(incident[start])
    order = [edge]
    current = neighbor
    while current != start:
        (neighbor, edge) = [(w, f) for (w, f) in incident[current] if f != order[-1]][0]
        order.append(edge)
        current = neighbor
    if order[0] != min(cycle_edges):
        raise InternalInvariant("cycle {} starts at edge {} but its lowest edge is {}".format(
            [g.get_edge_label(e) for e in order], g.get_edge_label(order[0]), g.get_edge_label(min(cycle_edges))))
    return tuple(order)


def _split_cycles(g, edges):
    """Greedy decomposition of an even edge set into simple cycles.

       Repeatedly walks from the lowest vertex with remaining edges, always to its
       lowest neighbor over an edge other than the one just walked, and stops at the
       first vertex that recurs on the walk. That vertex need not be the start: on a
       bowtie the walk can close the far loop first. The closed part of the walk is
       one cycle; its edges are removed and the next walk begins.
    """
    remaining = {}
    for e in edges:
        (a, b) = g.edges[e]
        remaining.setdefault(a, {})[b] = e
        remaining.setdefault(b, {})[a] = e
    cycles = []
    while any(remaining.values()):
        current = min(v for (v, adjacent) in remaining.items() if adjacent)
        trail = [current]
        walked = []
        while True:
            candidates = [w for w in sorted(remaining[current]) if not walked or remaining[current][w] != walked[-1]]
            if not candidates:
                raise InternalInvariant("edge set is not even at vertex {}".format(current + 1))
            nxt = candidates[0]
            walked.append(remaining[current][nxt])
            if nxt in trail:
                cycle = walked[trail.index(nxt):]
                break
            trail.append(nxt)
            current = nxt
        for e in cycle:
            (a, b) = g.edges[e]
            del remaining[a][b]
            del remaining[b][a]
        cycles.append(cycle)
    return sorted((_orient_cycle(g, c) for c in cycles), key=lambda c: sorted(c))


def decompose_edges(g, edges, odd):
    """Splits an edge set with odd vertices `odd` (empty or a pair) into B0 and cycles."""
    edges = EdgeSubset.from_indices(edges, g.m) if not isinstance(edges, EdgeSubset) else edges
    if odd:
        (u, v) = sorted(odd)
        path = _shortest_path(g, list(edges), u, v)
        rest = edges ^ EdgeSubset.from_indices(path, g.m)
        return SymdiffDecomposition(u, path, tuple(_split_cycles(g, list(rest))))
    return SymdiffDecomposition(None, (), tuple(_split_cycles(g, list(edges))))


def decompose(g, I, F):
    if F.boundary:
        raise NotInW("final state {} is not in C0".format(F.dump(g)))
    return decompose_edges(g, I.edges ^ F.edges, I.boundary)


def unwind_order(decomposition):
    order = list(decomposition.path)
    for cycle in decomposition.cycles:
        order.extend(cycle)
    return order


def build_path(g, I, F):
    order = unwind_order(decompose(g, I, F))
    states = [I]
    for e in order:
        try:
            states.append(toggle(g, states[-1], e))
        except LeavesStateSpace as error:
            raise InternalInvariant("canonical path leaves W: {}".format(error))
    if states[-1] != F:
        raise InternalInvariant("canonical path from {} ends at {}, not {}".format(
            I.dump(g), states[-1].dump(g), F.dump(g)))
    return CanonicalPath(states, order)


def eta(g, T, I, F, path=None):
    """I xor F xor (A u e) for the transition T = (A, A xor e) on the path from I to F."""
    if path is None:
        path = build_path(g, I, F)
    if path.position_of(T) is None:
        raise TransitionNotOnPath("transition {} toggling {} is not on the path from {} to {}".format(
            T.state.dump(g), g.get_edge_label(T.edge), I.dump(g), F.dump(g)))
    return I.edges ^ F.edges ^ T.state.edges.with_edge(T.edge)


def reconstruct(g, T, etaval):
    """Recovers (I, F) from T and eta_T(I, F)."""
    union = T.state.edges.with_edge(T.edge)
    difference = etaval ^ union
    odd = boundary(g, difference)
    if len(odd) not in (0, 2):
        raise NotInImage("{} has {} odd vertices after removing A u e".format(etaval.labels(g), len(odd)))
    try:
        order = unwind_order(decompose_edges(g, difference, tuple(odd)))
    except InternalInvariant as error:
        raise NotInImage("cannot decompose I xor F: {}".format(error))
    if T.edge not in order:
        raise NotInImage("edge {} is not on the unwinding of {}".format(g.get_edge_label(T.edge), difference.labels(g)))
    j = order.index(T.edge)
    before = EdgeSubset.from_indices(order[:j], g.m)
    after = EdgeSubset.from_indices(order[j:], g.m)
    final_edges = T.state.edges ^ after
    initial_edges = T.state.edges ^ before
    if boundary(g, final_edges) or boundary(g, initial_edges) != odd or initial_edges ^ final_edges != difference:
        raise NotInImage("{} is not eta of any pair through this transition".format(etaval.labels(g)))
    (I, F) = (WormState.from_edges(g, initial_edges), WormState.from_edges(g, final_edges))
    try:
        recomputed = eta(g, T, I, F)
    except TransitionNotOnPath:
        recomputed = None
    if recomputed != etaval:
        raise NotInImage("{} is not eta of any pair through this transition".format(etaval.labels(g)))
    return (I, F)


def all_transitions(g, table=None):
    """Every (A, e) with A and A xor e both in W."""
    table = table or enumerate_classes(g, 0.5)
    transitions = []
    for c in (StateClass.C0, StateClass.C2):
        for edges in table.get_members(c):
            A = WormState.from_edges(g, edges)
            for e in range(g.m):
                if len(set(A.boundary) ^ set(g.edges[e])) in (0, 2):
                    transitions.append(Transition(A, e))
    return transitions


def _accumulate(g, params, initial_bits, final_bits, Z, lambda_C0):
    """Congestion contributions of the pairs (I, F) for I in `initial_bits`, F in `final_bits`.

       Returns ({(A bits, e): [load, paths]}, L_max, (worst summand / eta bound, witness)).
    """
    x = params.x
    n = g.n
    pi_C0 = n * lambda_C0 / Z
    cache = {}
    table = {}
    longest = 0
    worst = (0.0, None)
    finals = [WormState(EdgeSubset(b, g.m), ()) for b in final_bits]
    for bits in initial_bits:
        I = WormState.from_edges(g, EdgeSubset(bits, g.m))
        psi_I = n if not I.boundary else 2
        pi_I = psi_I * x ** len(I.edges) / Z
        for F in finals:
            pi_F = n * x ** len(F.edges) / Z
            path = build_path(g, I, F)
            longest = max(longest, len(path))
            for (k, e) in enumerate(path.edges):
                A = path.states[k]
                key = (A.edges.bits, e)
                if key not in cache:
                    psi_A = n if not A.boundary else 2
                    cache[key] = (psi_A * x ** len(A.edges) / Z, transition_prob(g, A, path.states[k + 1], params))
                (pi_A, p) = cache[key]
                summand = pi_I * pi_F / (pi_C0 * pi_A * p)
                entry = table.setdefault(key, [0.0, 0])
                entry[0] += summand
                entry[1] += 1
                size = len(I.edges) + len(F.edges) - len(A.edges.with_edge(e))
                bound = 2 * g.max_degree / lambda_C0 * psi_I * x ** size
                if summand / bound > worst[0]:
                    worst = (summand / bound, (bits, F.edges.bits, key))
    return (table, longest, worst)


def _chunks(items, count):
    size = max(1, -(-len(items) // count))
    return [items[i:i + size] for i in range(0, len(items), size)]


class CongestionResult:
    """phi = max transition load, L_max = longest canonical path, and the per-transition table."""
    def __init__(self, graph, params, table, longest, worst_eta):
        self.graph = graph
        self.params = params
        self._table = table
        self.L_max = longest
        self.worst_eta_ratio = worst_eta[0]
        self.worst_eta_witness = worst_eta[1]
        (self.argmax, (self.phi, _)) = max(table.items(), key=lambda item: item[1][0])

    def get_load(self, state, edge):
        return self._table[(state.edges.bits, edge)][0]

    def get_transitions(self):
        return [Transition(WormState.from_edges(self.graph, EdgeSubset(bits, self.graph.m)), e)
                for (bits, e) in self._table]

    def describe_transition(self, key):
        (bits, e) = key
        A = WormState.from_edges(self.graph, EdgeSubset(bits, self.graph.m))
        return {"state": A.dump(self.graph), "edge": self.graph.get_edge_label(e)}

    def to_frame(self):
        g = self.graph
        rows = []
        for ((bits, e), (load, paths)) in sorted(self._table.items()):
            A = WormState.from_edges(g, EdgeSubset(bits, g.m))
            B = toggle(g, A, e)
            rows.append({
                "state": A.dump(g),
                "edge": g.get_edge_label(e),
                "from_class": A.get_class().name,
                "to_class": B.get_class().name,
                "paths": paths,
                "load": load
            })
        return pd.DataFrame(rows, columns=["state", "edge", "from_class", "to_class", "paths", "load"])

    def write_csv(self, filepath):
        self.to_frame().to_csv(filepath, index=False)


def congestion(g, params, workers=1, max_pairs=api.data.Constants.MAX_CONGESTION_PAIRS,
               max_edges=api.data.Constants.MAX_EDGES_ENUMERATION):
    table = enumerate_classes(g, params.x, max_edges=max_edges)
    finals = table.get_member_masks(StateClass.C0).tolist()
    initials = finals + table.get_member_masks(StateClass.C2).tolist()
    pairs = len(initials) * len(finals)
    if pairs > max_pairs:
        raise TooLarge("{} canonical paths exceed the budget {}".format(pairs, max_pairs))
    (Z, lambda_C0) = (float(table.Z), float(table.lambda_C0))
    logger.info("building %d canonical paths on %d workers", pairs, workers)

    if workers <= 1:
        partials = [_accumulate(g, params, initials, finals, Z, lambda_C0)]
    else:
        chunks = _chunks(initials, workers)
        partials = [None] * len(chunks)
        with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as executor:
            futures = {executor.submit(_accumulate, g, params, chunk, finals, Z, lambda_C0): i
                       for (i, chunk) in enumerate(chunks)}
            for future in concurrent.futures.as_completed(futures):
                partials[futures[future]] = future.result()

    merged = {}
    longest = 0
    worst = (0.0, None)
    for (partial, partial_longest, partial_worst) in partials:
        for (key, (load, paths)) in partial.items():
            entry = merged.setdefault(key, [0.0, 0])
            entry[0] += load
            entry[1] += paths
        longest = max(longest, partial_longest)
        if partial_worst[0] > worst[0]:
            worst = partial_worst
    result = CongestionResult(g, params, merged, longest, worst)
    logger.info("phi = %g over %d transitions, L_max = %d", result.phi, len(merged), longest)
    return result


def verify_congestion(g, params, result, t_rel=None, raise_on_failure=True):
    """phi <= Delta n^4, L_max <= m, every summand under its eta bound and, given the
       exact relaxation time, 4 L_max phi >= t_rel."""
    report = CheckReport(g)
    parameters = {"x": params.x}
    report.at_most("congestion_bound", result.phi, g.max_degree * g.n ** 4, parameters,
                   witness=result.describe_transition(result.argmax))
    report.at_most("path_length_bound", result.L_max, g.m, parameters)
    report.at_most("eta_summand_bound", result.worst_eta_ratio, 1.0, parameters)
    if t_rel is not None:
        report.at_least("canonical_path_relaxation_bound", 4 * result.L_max * result.phi, t_rel, parameters)
    if raise_on_failure:
        report.raise_on_failure(BoundViolation)
    return report


def _eta_images(g, transition=None):
    """eta values of every (I, F) pair, keyed by the transition of its canonical path
       they were taken at, plus the values with too many odd vertices. With `transition`
       set only that transition is collected."""
    table = enumerate_classes(g, 0.5)
    finals = [WormState(e, ()) for e in table.get_members(StateClass.C0)]
    initials = finals + [WormState.from_edges(g, e) for e in table.get_members(StateClass.C2)]
    images = {}
    outside = {}
    for I in initials:
        for F in finals:
            path = build_path(g, I, F)
            if transition is None:
                transitions = path.get_transitions()
            else:
                transitions = [transition] if path.position_of(transition) is not None else []
            for T in transitions:
                value = eta(g, T, I, F, path)
                images.setdefault(T, {}).setdefault(value, []).append((I, F))
                odd = len(boundary(g, value))
                if odd > (0 if not I.boundary else 2) + 2:
                    outside.setdefault(T, []).append((I.dump(g), F.dump(g), odd))
    return (images, outside)


def verify_injection(g, T, raise_on_failure=True):
    """eta_T is injective on the pairs whose canonical path uses T, and lands in
       W for I in C0 and in W u C4 for I in C2."""
    (images, outside) = _eta_images(g, T)
    collisions = [pairs for pairs in images.get(T, {}).values() if len(pairs) > 1]
    outside = outside.get(T, [])
    report = CheckReport(g)
    parameters = {"state": T.state.dump(g), "edge": g.get_edge_label(T.edge)}
    report.exact("eta_injective", len(collisions), 0, parameters,
                 witness=[(I.dump(g), F.dump(g)) for (I, F) in collisions[0]] if collisions else None)
    report.exact("eta_image_class", len(outside), 0, parameters, witness=outside[0] if outside else None)
    if raise_on_failure:
        report.raise_on_failure(BoundViolation)
    return report


def verify_injection_all(g, raise_on_failure=True):
    """verify_injection for every transition at once, building each canonical path a single time."""
    (images, outside) = _eta_images(g)
    collisions = [(T, pairs) for (T, values) in images.items() for pairs in values.values() if len(pairs) > 1]
    report = CheckReport(g)
    parameters = {"transitions": len(images)}
    witness = None
    if collisions:
        (T, pairs) = collisions[0]
        witness = [T.state.dump(g), g.get_edge_label(T.edge)] + [(I.dump(g), F.dump(g)) for (I, F) in pairs]
    report.exact("eta_injective", len(collisions), 0, parameters, witness=witness)
    failures = [entry for entries in outside.values() for entry in entries]
    report.exact("eta_image_class", len(failures), 0, parameters, witness=failures[0] if failures else None)
    if raise_on_failure:
        report.raise_on_failure(BoundViolation)
    return report
