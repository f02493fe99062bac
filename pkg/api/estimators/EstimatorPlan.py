import math

import sympy

from api.data.Errors import BadTolerance

PAPER_EXACT = "paper-exact"
MANUAL = "manual"

class EstimatorPlan:
    """Burn-in `tau` and sample count `N` for an (epsilon, delta) estimate.

       `provenance` records, per field, whether it was derived from the planning
       formulas or overridden by hand.
    """
    def __init__(self, epsilon, delta, tau, N, k=None, provenance=None):
        if tau < 0:
            raise ValueError("tau must be nonnegative, got {}".format(tau))
        if N < 1:
            raise ValueError("N must be positive, got {}".format(N))
        self.epsilon = epsilon
        self.delta = delta
        self.tau = int(tau)
        self.N = int(N)
        self.k = k
        self.provenance = dict(provenance or {"tau": PAPER_EXACT, "N": PAPER_EXACT})

    def with_overrides(self, tau=None, N=None):
        """Copy with tau and/or N replaced; replaced fields are marked manual."""
        provenance = dict(self.provenance)
        if tau is not None:
            provenance["tau"] = MANUAL
        if N is not None:
            provenance["N"] = MANUAL
        return EstimatorPlan(self.epsilon, self.delta, self.tau if tau is None else tau,
                             self.N if N is None else N, self.k, provenance)

    def is_manual(self):
        return MANUAL in self.provenance.values()

    def as_dict(self):
        return {
            "epsilon": self.epsilon,
            "delta": self.delta,
            "tau": self.tau,
            "N": self.N,
            "k": self.k,
            "provenance": self.provenance
        }

    def __repr__(self):
        return "EstimatorPlan(tau={}, N={}, provenance={})".format(self.tau, self.N, self.provenance)


def _rational(value):
    """Exact rational from a float as it was written, so 0.1 is 1/10."""
    if isinstance(value, (int, sympy.Rational)):
        return sympy.Rational(value)
    return sympy.Rational(repr(float(value)))


def _check_unit_interval(name, value):
    if not 0.0 < value < 1.0:
        raise BadTolerance("{} must lie in (0, 1), got {}".format(name, value))


def burn_in(g, delta):
    """ceil(4 (log 2 + log(2 / delta) / m) Delta m^2 n^4)."""
    _check_unit_interval("delta", delta)
    (n, m) = (g.n, g.m)
    return math.ceil(4 * (math.log(2) + math.log(2 / delta) / m) * g.max_degree * m ** 2 * n ** 4)


def sample_bound(g, epsilon, delta, ratio):
    """ceil(16 epsilon^-2 delta^-1 Delta m n^4 ratio), with ratio = ||f||_inf / E f,
       evaluated in exact rational arithmetic."""
    _check_unit_interval("epsilon", epsilon)
    _check_unit_interval("delta", delta)
    value = 16 / _rational(epsilon) ** 2 / _rational(delta) * g.max_degree * g.m * g.n ** 4 * _rational(ratio)
    return int(sympy.ceiling(value))


def plan_susceptibility(g, epsilon, delta):
    """Plan for 1 / S0: S0 to relative error epsilon / (1 + epsilon), using 1 / pi(C0) <= n."""
    _check_unit_interval("epsilon", epsilon)
    _check_unit_interval("delta", delta)
    eps = _rational(epsilon)
    N = sample_bound(g, eps / (1 + eps), _rational(delta), g.n)
    return EstimatorPlan(epsilon, delta, burn_in(g, delta), N)


def plan_correlation(g, epsilon, delta, k, x):
    """Plan for (n/2) S_uv / S0 over pairs at distance <= k: both fractions to relative
       error epsilon / (2 + epsilon) with confidence 1 - delta/2 each, using
       1 / pi(C_uv) <= (n^2 / 2) x^-k."""
    _check_unit_interval("epsilon", epsilon)
    _check_unit_interval("delta", delta)
    if k < 1:
        raise BadTolerance("distance cap k must be at least 1, got {}".format(k))
    if not 0.0 < x < 1.0:
        raise BadTolerance("x must lie in (0, 1), got {}".format(x))
    eps = _rational(epsilon)
    half_delta = _rational(delta) / 2
    ratio = sympy.Rational(g.n ** 2, 2) / _rational(x) ** k
    N = sample_bound(g, eps / (2 + eps), half_delta, ratio)
    return EstimatorPlan(epsilon, delta, burn_in(g, float(half_delta)), N, k=k)


def manual_plan(tau, N, epsilon=None, delta=None, k=None):
    return EstimatorPlan(epsilon, delta, tau, N, k, {"tau": MANUAL, "N": MANUAL})
