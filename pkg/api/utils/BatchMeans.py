import math

import numpy as np

import api.data.Constants

class BatchCounter:
    """Integer hit counters over consecutive, nearly equal batches of a run of `total` samples."""
    def __init__(self, total, batches=api.data.Constants.BATCH_COUNT):
        batches = max(1, min(batches, total))
        self._bounds = np.array([b * total // batches for b in range(batches + 1)], dtype=np.int64)
        self._counts = {}
        self.total = total

    def get_batch_sizes(self):
        return np.diff(self._bounds)

    def get_counts(self, key):
        return self._counts.setdefault(key, np.zeros(self._bounds.shape[0] - 1, dtype=np.int64))

    def get_total(self, key):
        return int(self.get_counts(key).sum())

    def accumulate(self, key, positions):
        """Counts hits at the given 0-based sample positions."""
        counts = self.get_counts(key)
        batch = np.searchsorted(self._bounds, positions, side='right') - 1
        counts += np.bincount(batch, minlength=counts.shape[0])


def mean_error(counts, sizes):
    """Batch-means standard error of the overall hit fraction."""
    if counts.shape[0] < 2:
        return math.nan
    fractions = counts / sizes
    return float(np.std(fractions, ddof=1) / math.sqrt(counts.shape[0]))


def reciprocal_error(counts, sizes):
    """Standard error of 1 / S by the delta method, S the overall hit fraction."""
    mean = counts.sum() / sizes.sum()
    return mean_error(counts, sizes) / mean ** 2


def ratio_error(numerator, denominator, sizes, scale=1.0):
    """Standard error of scale * S_a / S_b by the delta method on batch fractions."""
    if numerator.shape[0] < 2:
        return math.nan
    a = numerator / sizes
    b = denominator / sizes
    (mean_a, mean_b) = (numerator.sum() / sizes.sum(), denominator.sum() / sizes.sum())
    covariance = np.cov(a, b, ddof=1) / numerator.shape[0]
    ratio = mean_a / mean_b
    variance = ratio ** 2 * (covariance[0, 0] / mean_a ** 2 + covariance[1, 1] / mean_b ** 2
                             - 2 * covariance[0, 1] / (mean_a * mean_b))
    return float(scale * math.sqrt(max(variance, 0.0)))
