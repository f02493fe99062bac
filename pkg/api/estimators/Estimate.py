class Estimate:
    """Value of one estimator run together with the plan and seed that produced it."""
    def __init__(self, target, value, standard_error, plan, seed, fractions, steps, replicas=None):
        self.target = target
        self.value = value
        self.standard_error = standard_error
        self.plan = plan
        self.seed = seed
        self.fractions = fractions
        self.steps = steps
        self.replicas = replicas

    def relative_error(self, exact):
        return abs(self.value - exact) / abs(exact)

    def as_dict(self):
        d = {
            "target": self.target,
            "value": self.value,
            "standard_error": self.standard_error,
            "plan": self.plan.as_dict(),
            "seed": self.seed,
            "fractions": self.fractions,
            "steps": self.steps
        }
        if self.replicas is not None:
            d["replicas"] = self.replicas
        return d

    def __repr__(self):
        return "Estimate({}={} +- {})".format(self.target, self.value, self.standard_error)
