import logging

import api.data.Constants
from api.data.Errors import LeavesStateSpace
from api.data.StateClass import StateClass
from api.data.WormState import classify, toggle
from .Proposal import Proposal
from .WormSampler import WormSampler

logger = logging.getLogger(__name__)

# lazy coin, pivot, neighbor, acceptance
UNIFORMS_PER_STEP = 4


def propose(g, s, rng):
    """Worm proposal: a uniform vertex (from C0) or a uniform odd vertex (from C2),
       then a uniform neighbor of it."""
    (r_pivot, r_neighbor) = rng.random(2)
    return propose_from_uniforms(g, s, r_pivot, r_neighbor)


def propose_from_uniforms(g, s, r_pivot, r_neighbor):
    if s.boundary:
        pivot = s.boundary[min(int(r_pivot * 2), 1)]
    else:
        pivot = min(int(r_pivot * g.n), g.n - 1)
    neighbors = g.adjacency[pivot]
    (neighbor, edge) = neighbors[min(int(r_neighbor * len(neighbors)), len(neighbors) - 1)]
    return Proposal(pivot, neighbor, edge)


def metropolis_factor(d_pivot, d_other, added, x):
    """Acceptance of a C2 -> C2 move pivoting at the odd vertex of degree `d_pivot`."""
    ratio = d_pivot / d_other
    value = ratio * x if added else ratio / x
    return min(value, 1.0)


def acceptance(g, s, p, params):
    (u, v) = g.edges[p.edge]
    if {u, v} != {p.pivot, p.neighbor}:
        raise ValueError("proposal {} does not match edge {}".format(p, g.get_edge_label(p.edge)))
    added = p.edge not in s.edges
    odd = set(s.boundary) ^ {u, v}
    if len(odd) not in (0, 2):
        raise LeavesStateSpace("proposal {} leaves W from {}".format(p, s.dump(g)))
    if not s.boundary or not odd:
        return params.x if added else 1.0
    if p.pivot not in s.boundary:
        raise ValueError("pivot {} is not an odd vertex of {}".format(p.pivot + 1, s.dump(g)))
    return metropolis_factor(g.degrees[p.pivot], g.degrees[p.neighbor], added, params.x)


def advance(g, s, params, uniforms):
    """One lazy Metropolis step driven by four uniforms."""
    if uniforms[0] < 0.5:
        return s
    p = propose_from_uniforms(g, s, uniforms[1], uniforms[2])
    if uniforms[3] < acceptance(g, s, p, params):
        return toggle(g, s, p.edge)
    return s


def step(g, s, params, rng):
    return advance(g, s, params, rng.random(UNIFORMS_PER_STEP))


def _off_diagonal(g, a, e, params):
    """Exact P_x(A, A xor e), or None when A xor e leaves W."""
    (u, v) = g.edges[e]
    odd = set(a.boundary) ^ {u, v}
    if len(odd) not in (0, 2):
        return None
    added = e not in a.edges
    weight = params.x if added else 1.0
    inverse = params.inverse_degrees
    if not a.boundary:
        return weight * (inverse[u] + inverse[v]) / (2 * g.n)
    if not odd:
        return weight * (inverse[u] + inverse[v]) / 4
    pivot = u if u in a.boundary else v
    other = v if pivot == u else u
    return metropolis_factor(g.degrees[pivot], g.degrees[other], added, params.x) * inverse[pivot] / 4


def _candidate_edges(g, a):
    if not a.boundary:
        return range(g.m)
    edges = set()
    for w in a.boundary:
        edges.update(e for (_, e) in g.adjacency[w])
    return sorted(edges)


def transition_row(g, a, params):
    """Nonzero entries of row A of P_x as a list of (B, probability), diagonal last."""
    row = []
    total = 0.0
    for e in _candidate_edges(g, a):
        p = _off_diagonal(g, a, e, params)
        if p is None or p == 0.0:
            continue
        row.append((toggle(g, a, e), p))
        total += p
    row.append((a, 1.0 - total))
    return row


def transition_prob(g, a, b, params):
    """Exact entry P_x(A, B) of the lazy worm kernel."""
    if a == b:
        return transition_row(g, a, params)[-1][1]
    diff = a.edges ^ b.edges
    if len(diff) != 1:
        return 0.0
    (e,) = diff.indices()
    p = _off_diagonal(g, a, e, params)
    return 0.0 if p is None else p


def run(g, s0, params, steps, rng, observer=None, chunk_size=api.data.Constants.CHUNK_SIZE):
    """Applies `steps` lazy steps from s0. `observer(t, state)` is called after each step.

       Without an observer the compiled sampler is used; both paths draw the same uniforms
       in the same chunks, so a given seed yields the same trajectory either way.
    """
    if steps < 0:
        raise ValueError("steps must be nonnegative, got {}".format(steps))
    if observer is None:
        sampler = WormSampler(g, params, s0)
        for _ in sampler.run_chunks(steps, rng, chunk_size):
            pass
        return sampler.get_state()

    s = s0
    t = 0
    remaining = steps
    while remaining > 0:
        k = min(chunk_size, remaining)
        for uniforms in rng.random((k, UNIFORMS_PER_STEP)):
            s = advance(g, s, params, uniforms)
            t += 1
            observer(t, s)
        remaining -= k
    return s


def state_class_code(g, s):
    """Integer code used by the bulk sampler: -1 for C0, else u * n + v for boundary {u, v}."""
    if classify(s) is StateClass.C0:
        return -1
    (u, v) = s.boundary
    return u * g.n + v
