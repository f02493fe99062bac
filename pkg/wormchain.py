#!/usr/bin/env python

import itertools
import logging
import math
import sys

import click
import networkx as nx
import numpy as np

import api.data.Constants
from api.chain.ChainParams import ChainParams
from api.chain.WormSampler import WormSampler
from api.data.EdgeSubset import EdgeSubset
from api.data.Errors import EstimationError, GraphError, TooLarge, VerificationFailure, WormError
from api.data.Graph import graph_distance, load_graph
from api.data.RunConfig import RunConfig
from api.data.StateClass import StateClass
from api.data.WormState import WormState
from api.estimators.EstimatorPlan import plan_correlation, plan_susceptibility
from api.estimators.Estimators import estimate_correlation, estimate_susceptibility, median_amplify
from api.generators.GraphGeneratorFactory import generate
from api.oracle.CheckReport import CheckReport
from api.oracle.ExactOracle import (SpinEnsemble, enumerate_classes, susceptibility_exact, two_point_exact,
                                    verify_bijection, verify_cycle_space, verify_high_temp_all,
                                    verify_measure_bounds)
from api.paths.CanonicalPaths import congestion, verify_congestion
from api.spectral.ChainMatrix import (absolute_gap, build_chain_matrix, check_chain, fitted_relaxation_time,
                                      relaxation_time, verify_theorem1)
from api.utils.OccupationCounter import OccupationCounter
from api.utils.ReportWriter import build_report, write_report
from api.utils.Seeding import make_rng

ARG_OUTPUT_PATH = 'OUTPUT_PATH'
ARG_THREADS = 'THREADS'

GRAPH_ARGS = ['kind', 'dims', 'graph_file', 'beta', 'x', 'seed', 'rtol', 'atol']

# dense matrices above this size are too slow to build just to pick a thinning stride
AUTO_THIN_MAX_STATES = 2000

logger = logging.getLogger(__name__)


def graph_options(f):
    """Graph source, temperature, seed, tolerance and cap options shared by every subcommand."""
    options = [
        click.argument('dims', nargs=-1, type=int),
        click.option('--gen', 'kind', type=click.Choice(api.data.Constants.GRAPH_KINDS), default=None,
                     help='Generate a canonical graph of this kind with dimensions DIMS.'),
        click.option('--graph', 'graph_file', type=click.Path(exists=True, dir_okay=False), default=None,
                     help='Edge-list file: vertex count on the first line, then one `u v` pair per line (1-based).'),
        click.option('--beta', type=float, default=None, help='Inverse temperature, in (0, inf).'),
        click.option('--x', type=float, default=None, help='tanh(beta), in (0, 1). Give this or --beta.'),
        click.option('--seed', type=int, default=None, help='Master seed; drawn from OS entropy if not set.'),
        click.option('--rtol', type=float, default=api.data.Constants.RELATIVE_TOLERANCE, show_default=True,
                     help='Relative tolerance of oracle comparisons.'),
        click.option('--atol', type=float, default=api.data.Constants.ABSOLUTE_TOLERANCE, show_default=True,
                     help='Absolute tolerance floor of oracle comparisons.'),
        click.option('--max_edges', type=int, default=api.data.Constants.MAX_EDGES_ENUMERATION, show_default=True,
                     help='Largest m for exhaustive subgraph enumeration.'),
        click.option('--max_vertices', type=int, default=api.data.Constants.MAX_VERTICES_SPIN_SUM, show_default=True,
                     help='Largest n for brute-force spin sums.'),
        click.option('--max_states', type=int, default=api.data.Constants.MAX_STATES_SPECTRAL, show_default=True,
                     help='Largest |W| for dense transition matrices.')
    ]
    for option in reversed(options):
        f = option(f)
    return f


@click.group()
@click.option('--verbose', is_flag=True, default=False, help='Log progress to stderr.')
@click.option('--threads', type=int, default=1, envvar=api.data.Constants.THREADS_ENV_VAR, show_default=True,
              help='Worker processes for median-trick replicas and congestion.')
@click.option('--output_path', default=None, help='Write the JSON report here instead of stdout.')
@click.pass_context
def cli(ctx, verbose, threads, output_path):
    if ctx.obj is None:
        ctx.obj = {}

    logging.basicConfig(level=logging.INFO if verbose else logging.WARNING, stream=sys.stderr,
                        format='%(asctime)s %(name)s %(levelname)s %(message)s')
    ctx.obj[ARG_THREADS] = threads
    ctx.obj[ARG_OUTPUT_PATH] = output_path


def _load(kind, dims, graph_file):
    if (kind is None) == (graph_file is None):
        raise click.UsageError("give exactly one of `--gen KIND DIMS...` and `--graph FILE`")
    try:
        if graph_file is not None:
            if dims:
                raise click.UsageError("DIMS only apply with --gen")
            return (load_graph(graph_file), graph_file)
        return (generate(kind, dims), "{} {}".format(kind, " ".join(str(d) for d in dims)))
    except GraphError as e:
        raise click.UsageError("{}. Check the edge list, or the generator kind and its dimensions.".format(e))


def _make_config(ctx, subcommand, kwargs):
    (g, source) = _load(kwargs['kind'], kwargs['dims'], kwargs['graph_file'])
    options = {k: v for (k, v) in kwargs.items() if k not in GRAPH_ARGS}
    try:
        return RunConfig(subcommand, g, source, beta=kwargs['beta'], x=kwargs['x'], seed=kwargs['seed'],
                         rtol=kwargs['rtol'], atol=kwargs['atol'], output_path=ctx.obj[ARG_OUTPUT_PATH],
                         threads=ctx.obj[ARG_THREADS], options=options)
    except ValueError as e:
        raise click.UsageError(str(e))


def _params(cfg):
    return ChainParams(cfg.graph, cfg.x, cfg.beta)


def _run_verify(cfg):
    g = cfg.graph
    o = cfg.options
    table = enumerate_classes(g, cfg.x, max_edges=o['max_edges'])
    ensemble = SpinEnsemble(g, cfg.beta, o['max_vertices'])
    report = CheckReport(g)
    report.extend(verify_high_temp_all(g, cfg.beta, o['orders'], table, ensemble, False, cfg.rtol, cfg.atol))
    report.close("susceptibility_dual_route", 1.0 / float(table.pi_class(StateClass.C0)), ensemble.susceptibility(),
                 {"beta": cfg.beta}, rtol=cfg.rtol, atol=cfg.atol)
    report.extend(verify_measure_bounds(g, cfg.x, table, False))
    report.extend(verify_cycle_space(g, table, False))
    nx_graph = g.to_networkx()
    for (u, v) in itertools.combinations(range(g.n), 2):
        vertices = nx.shortest_path(nx_graph, u, v)
        F = EdgeSubset.from_indices([g.edge_index[(min(a, b), max(a, b))] for (a, b) in zip(vertices, vertices[1:])], g.m)
        report.extend(verify_bijection(g, (u, v), F, table, False))
    try:
        report.extend(check_chain(build_chain_matrix(g, _params(cfg), o['max_states'], o['max_edges'], validate=False)))
    except TooLarge as e:
        logger.warning("skipping transition matrix checks: %s", e)
    failures = report.get_failures()
    return (not failures, {"checked": len(report.get_records()), "failed": len(failures),
                           "records": report.as_dicts()})


def _run_exact(cfg):
    g = cfg.graph
    o = cfg.options
    table = enumerate_classes(g, cfg.x, max_edges=o['max_edges'])
    ensemble = SpinEnsemble(g, cfg.beta, o['max_vertices'])
    chi = susceptibility_exact(g, cfg.beta, table, ensemble, cfg.rtol, cfg.atol)
    correlations = []
    for (u, v) in itertools.combinations(range(g.n), 2):
        correlations.append({
            "u": u + 1,
            "v": v + 1,
            "distance": graph_distance(g, u, v),
            "value": two_point_exact(g, cfg.beta, u, v, table, ensemble, cfg.rtol, cfg.atol)
        })
    result = {
        "chi": chi,
        "pi_C0": float(table.pi_class(StateClass.C0)),
        "pi_C2": float(table.pi_class(StateClass.C2)),
        "class_sizes": {"C0": table.count(StateClass.C0), "C2": table.count(StateClass.C2)},
        "correlations": correlations
    }
    if o['exact_arithmetic']:
        rational = enumerate_classes(g, repr(cfg.x), max_edges=o['max_edges'], exact=True)
        result["rational"] = {
            "x": str(rational.x),
            "lambda_C0": str(rational.lambda_C0),
            "lambda_C2": str(rational.lambda_C2),
            "Z": str(rational.Z),
            "chi": str(rational.Z / (g.n * rational.lambda_C0))
        }
    return (True, result)


def _class_text(g, code):
    if code < 0:
        return "C0"
    return "C2:{}-{}".format(code // g.n + 1, code % g.n + 1)


def _auto_thin(cfg, table):
    size = table.count(StateClass.C0) + table.count(StateClass.C2)
    if size > min(AUTO_THIN_MAX_STATES, cfg.options['max_states']):
        return 1
    t_rel = relaxation_time(build_chain_matrix(cfg.graph, _params(cfg), cfg.options['max_states'],
                                               cfg.options['max_edges']))
    return max(1, math.ceil(10 * t_rel))


def _run_sample(cfg):
    g = cfg.graph
    o = cfg.options
    table = enumerate_classes(g, cfg.x, max_edges=o['max_edges']) if g.m <= min(o['max_edges'], 62) else None
    thin = o['thin'] or (_auto_thin(cfg, table) if table is not None else 1)
    stride = o['stride']
    sampler = WormSampler(g, _params(cfg), WormState.zero(g))
    rng = make_rng(cfg.seed)
    counter = OccupationCounter()
    (zero_hits, size_total, t) = (0, 0, 0)

    trajectory = open(o['trajectory'], 'wt', encoding='utf-8') if o['trajectory'] else None
    try:
        for (codes, sizes, states) in sampler.run_chunks(o['steps'], rng):
            zero_hits += int(np.count_nonzero(codes == -1))
            size_total += int(sizes.sum())
            steps = t + 1 + np.arange(codes.shape[0])
            if table is not None:
                counter.add(states[steps % thin == 0])
            if trajectory is not None:
                for i in np.flatnonzero(steps % stride == 0):
                    line = "{} {} {}".format(steps[i], sizes[i], _class_text(g, codes[i]))
                    if o['dump_states']:
                        line += " " + WormState.from_edges(g, EdgeSubset(int(states[i]), g.m)).dump(g)
                    trajectory.write(line + "\n")
            t += codes.shape[0]
    finally:
        if trajectory is not None:
            trajectory.close()

    result = {
        "steps": o['steps'],
        "occupation": {"C0": zero_hits / o['steps'], "C2": 1.0 - zero_hits / o['steps']},
        "mean_size": size_total / o['steps'],
        "thin": thin
    }
    passed = True
    if table is not None:
        masks = np.concatenate([table.get_member_masks(StateClass.C0), table.get_member_masks(StateClass.C2)])
        (statistic, p_value) = counter.chi_square(masks.tolist(), table.pi_vector(masks))
        passed = p_value > api.data.Constants.CHI_SQUARE_P_THRESHOLD
        result["exact_pi_C0"] = float(table.pi_class(StateClass.C0))
        result["chi_square"] = {"statistic": statistic, "p_value": p_value, "samples": counter.get_total(),
                                "states": int(masks.shape[0])}
    return (passed, result)


def _run_estimate(cfg):
    g = cfg.graph
    o = cfg.options
    pair = tuple(v - 1 for v in o['pair']) if o['pair'] else None
    if o['eta'] is not None or o['replicas'] is not None:
        estimate = median_amplify(g, cfg.beta, o['target'], o['epsilon'], o['eta'] or 0.25, cfg.seed, pair=pair,
                                  k=o['k'], tau=o['tau'], N=o['samples'], workers=cfg.threads, replicas=o['replicas'])
        return (True, estimate.as_dict())
    if o['target'] == 'chi':
        plan = plan_susceptibility(g, o['epsilon'], o['delta'])
    else:
        k = o['k'] if o['k'] is not None else graph_distance(g, pair[0], pair[1])
        plan = plan_correlation(g, o['epsilon'], o['delta'], k, cfg.x)
    plan = plan.with_overrides(o['tau'], o['samples'])
    rng = make_rng(cfg.seed)
    if o['target'] == 'chi':
        estimate = estimate_susceptibility(g, cfg.beta, plan, rng, cfg.seed)
    else:
        estimate = estimate_correlation(g, cfg.beta, pair[0], pair[1], plan, rng, cfg.seed)
    return (True, estimate.as_dict())


def _run_spectral(cfg):
    g = cfg.graph
    o = cfg.options
    params = _params(cfg)
    cm = build_chain_matrix(g, params, o['max_states'], o['max_edges'])
    (lambda_star, gap) = absolute_gap(cm)
    deltas = list(o['deltas'])
    report = verify_theorem1(g, params, deltas, cm, raise_on_failure=False)
    mix_times = {}
    mix_bounds = {}
    for r in report.get_records():
        if r.name == "relaxation_time_bound":
            continue
        key = str(r.parameters["delta"])
        which = "from_zero" if r.name == "mixing_time_from_zero_bound" else "worst"
        mix_times.setdefault(key, {})[which] = r.lhs
        mix_bounds.setdefault(key, {})[which] = r.rhs
    result = {
        "lambda_star": lambda_star,
        "t_rel": 1.0 / gap,
        "t_rel_bound": 4.0 * g.max_degree * g.m * g.n ** 4,
        "mix_times": mix_times,
        "mix_bounds": mix_bounds,
        "states": cm.get_size(),
        "records": report.as_dicts()
    }
    if o['fit']:
        result["t_rel_fitted"] = fitted_relaxation_time(cm)
        result["t_rel_fitted_from_zero"] = fitted_relaxation_time(cm, start=WormState.zero(g))
    return (report.passed(), result)


def _run_congestion(cfg):
    g = cfg.graph
    o = cfg.options
    params = _params(cfg)
    result = congestion(g, params, workers=cfg.threads, max_pairs=o['max_pairs'], max_edges=o['max_edges'])
    t_rel = None
    try:
        t_rel = relaxation_time(build_chain_matrix(g, params, o['max_states'], o['max_edges']))
    except TooLarge as e:
        logger.warning("skipping the relaxation time comparison: %s", e)
    report = verify_congestion(g, params, result, t_rel, raise_on_failure=False)
    if o['csv']:
        result.write_csv(o['csv'])
    return (report.passed(), {
        "phi": result.phi,
        "bound": g.max_degree * g.n ** 4,
        "L_max": result.L_max,
        "m": g.m,
        "argmax": result.describe_transition(result.argmax),
        "worst_eta_ratio": result.worst_eta_ratio,
        "t_rel": t_rel,
        "records": report.as_dicts()
    })


RUNNERS = {
    "verify": _run_verify,
    "exact": _run_exact,
    "sample": _run_sample,
    "estimate": _run_estimate,
    "spectral": _run_spectral,
    "congestion": _run_congestion
}


def dispatch(cfg):
    """Runs the configured subcommand, writes its JSON report and returns the exit status."""
    try:
        (passed, result) = RUNNERS[cfg.subcommand](cfg)
    except VerificationFailure as e:
        (passed, result) = (False, {"error": str(e), "records": [r.as_dict() for r in e.records]})
    except (EstimationError, TooLarge) as e:
        click.echo("Error: {}. Adjust the tolerances, the --tau/--samples overrides or the caps.".format(e), err=True)
        return api.data.Constants.EXIT_USAGE
    except ValueError as e:
        click.echo("Error: {}. Check the option values against `{} --help`.".format(e, cfg.subcommand), err=True)
        return api.data.Constants.EXIT_USAGE
    except WormError as e:
        logger.error("%s failed: %s", cfg.subcommand, e)
        return api.data.Constants.EXIT_FAIL
    report = build_report(cfg.subcommand, cfg.graph, cfg.as_dict(), result)
    report["pass"] = passed
    write_report(report, cfg.output_path)
    return api.data.Constants.EXIT_PASS if passed else api.data.Constants.EXIT_FAIL


@cli.command(help='Check the subgraph identities and measure bounds against brute force.')
@graph_options
@click.option('--orders', type=int, multiple=True, default=(2, 4), show_default=True,
              help='Sizes of the vertex sets W whose spin moments are checked.')
@click.pass_context
def verify(ctx, **kwargs):
    ctx.exit(dispatch(_make_config(ctx, 'verify', kwargs)))


@cli.command(help='Exact susceptibility and pair correlations by enumeration.')
@graph_options
@click.option('--exact_arithmetic', is_flag=True, default=False, help='Also report the measures as exact rationals.')
@click.pass_context
def exact(ctx, **kwargs):
    ctx.exit(dispatch(_make_config(ctx, 'exact', kwargs)))


@cli.command(help='Run the worm process from the empty set and compare occupations with the exact measure.')
@graph_options
@click.option('--steps', type=int, default=api.data.Constants.DEFAULT_SAMPLE_STEPS, show_default=True,
              help='Number of lazy steps.')
@click.option('--thin', type=int, default=None, help='Keep every THIN-th state for the goodness-of-fit test; '
              'defaults to 10 relaxation times on small graphs.')
@click.option('--trajectory', default=None, help='Stream `t |A| class` lines to this file.')
@click.option('--stride', type=int, default=1, show_default=True, help='Write every STRIDE-th step of the trajectory.')
@click.option('--dump_states', is_flag=True, default=False, help='Append the edge set and odd vertices to each line.')
@click.pass_context
def sample(ctx, **kwargs):
    if kwargs['steps'] < 1 or kwargs['stride'] < 1 or (kwargs['thin'] is not None and kwargs['thin'] < 1):
        raise click.UsageError("--steps, --stride and --thin must be positive")
    ctx.exit(dispatch(_make_config(ctx, 'sample', kwargs)))


@cli.command(help='Estimate the susceptibility or a pair correlation with the worm process.')
@graph_options
@click.option('--target', type=click.Choice(api.data.Constants.TARGETS), default='chi', show_default=True)
@click.option('--pair', type=int, nargs=2, default=None, help='Vertices U V (1-based) for --target corr.')
@click.option('--epsilon', type=float, default=api.data.Constants.DEFAULT_EPSILON, show_default=True)
@click.option('--delta', type=float, default=api.data.Constants.DEFAULT_DELTA, show_default=True)
@click.option('--k', type=int, default=None, help='Distance cap of the correlation plan; defaults to d(U, V).')
@click.option('--tau', type=int, default=None, help='Override the planned burn-in.')
@click.option('--samples', type=int, default=None, help='Override the planned sample count.')
@click.option('--eta', type=float, default=None, help='Median-trick failure probability.')
@click.option('--replicas', type=int, default=None, help='Median-trick replica count, overriding --eta.')
@click.pass_context
def estimate(ctx, **kwargs):
    if kwargs['target'] == 'corr' and not kwargs['pair']:
        raise click.UsageError("--target corr needs --pair U V")
    if kwargs['samples'] is not None and kwargs['samples'] < 1:
        raise click.UsageError("--samples must be positive")
    if kwargs['tau'] is not None and kwargs['tau'] < 0:
        raise click.UsageError("--tau must be nonnegative")
    if kwargs['k'] is not None and kwargs['k'] < 1:
        raise click.UsageError("--k must be at least 1")
    if kwargs['replicas'] is not None and kwargs['replicas'] < 1:
        raise click.UsageError("--replicas must be positive")
    if kwargs['eta'] is not None and not 0.0 < kwargs['eta'] < 1.0:
        raise click.UsageError("--eta must lie in (0, 1)")
    cfg = _make_config(ctx, 'estimate', kwargs)
    if cfg.options['pair']:
        (u, v) = cfg.options['pair']
        for w in (u, v):
            if not 1 <= w <= cfg.graph.n:
                raise click.UsageError("pair vertex {} outside 1..{}".format(w, cfg.graph.n))
        if u == v:
            raise click.UsageError("--pair needs two distinct vertices")
    ctx.exit(dispatch(cfg))


@cli.command(help='Exact spectral gap and mixing times, checked against the worm process bounds.')
@graph_options
@click.option('--deltas', type=float, multiple=True, default=api.data.Constants.DEFAULT_MIXING_DELTAS,
              show_default=True, help='TV thresholds for the mixing times.')
@click.option('--fit', is_flag=True, default=False, help='Also fit the relaxation time from the TV decay.')
@click.pass_context
def spectral(ctx, **kwargs):
    for delta in kwargs['deltas']:
        if not 0.0 < delta < 1.0:
            raise click.UsageError("--deltas must lie in (0, 1), got {}".format(delta))
    ctx.exit(dispatch(_make_config(ctx, 'spectral', kwargs)))


@cli.command('congestion', help='Congestion of the canonical path family.')
@graph_options
@click.option('--max_pairs', type=int, default=api.data.Constants.MAX_CONGESTION_PAIRS, show_default=True,
              help='Largest number of canonical paths to build.')
@click.option('--csv', default=None, help='Write the per-transition loads to this CSV file.')
@click.pass_context
def congestion_command(ctx, **kwargs):
    ctx.exit(dispatch(_make_config(ctx, 'congestion', kwargs)))

if __name__ == '__main__':
    cli()
