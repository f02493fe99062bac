import math

from api.utils.Seeding import resolve_seed

class RunConfig:
    """Resolved settings of one CLI run. Exactly one of beta and x is given; the other
       follows from x = tanh(beta). The seed is always resolved."""
    def __init__(self, subcommand, graph, graph_source, beta=None, x=None, seed=None, rtol=None, atol=None,
                 output_path=None, threads=1, options=None):
        if (beta is None) == (x is None):
            raise ValueError("give exactly one of --beta and --x")
        if beta is not None:
            if not 0.0 < beta < math.inf:
                raise ValueError("beta must lie in (0, inf), got {}".format(beta))
            x = math.tanh(beta)
            if x >= 1.0:
                raise ValueError("beta = {} is too large: tanh(beta) rounds to 1 in double precision".format(beta))
        else:
            if not 0.0 < x < 1.0:
                raise ValueError("x must lie in (0, 1), got {}".format(x))
            beta = math.atanh(x)
        self.subcommand = subcommand
        self.graph = graph
        self.graph_source = graph_source
        self.beta = beta
        self.x = x
        self.seed = resolve_seed(seed)
        self.rtol = rtol
        self.atol = atol
        self.output_path = output_path
        self.threads = max(1, threads)
        self.options = dict(options or {})

    def as_dict(self):
        d = {
            "subcommand": self.subcommand,
            "graph_source": self.graph_source,
            "beta": self.beta,
            "x": self.x,
            "seed": self.seed,
            "rtol": self.rtol,
            "atol": self.atol,
            "threads": self.threads
        }
        d.update(self.options)
        return d
