import collections

import numpy as np
from scipy.stats import chisquare

class OccupationCounter():
    """Visit counts of sampled states, keyed by edge bit pattern."""
    def __init__(self):
        self._counter = collections.Counter()
        self._total = 0

    def add(self, states):
        (keys, counts) = np.unique(states, return_counts=True)
        for (key, count) in zip(keys.tolist(), counts.tolist()):
            self._counter[key] += count
        self._total += int(states.shape[0])

    def add_state(self, bits):
        self._counter[bits] += 1
        self._total += 1

    def get_total(self):
        return self._total

    def get_count(self, bits):
        return self._counter[bits]

    def frequencies(self):
        """(bits, empirical frequency) pairs, most visited first."""
        return sorted(((key, n_key / self._total) for (key, n_key) in self._counter.items()),
                      key=lambda item: (-item[1], item[0]))

    def chi_square(self, keys, probabilities):
        """Pearson goodness of fit of the visit counts against `probabilities` over `keys`.

           Returns (statistic, p-value). Visits outside `keys` count against the fit.
        """
        observed = np.array([self._counter[k] for k in keys], dtype=np.float64)
        expected = np.asarray(probabilities, dtype=np.float64) * self._total
        if observed.sum() < self._total:
            return (float("inf"), 0.0)
        expected *= observed.sum() / expected.sum()
        (statistic, p_value) = chisquare(observed, expected)
        return (float(statistic), float(p_value))
