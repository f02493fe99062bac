import numpy as np

def resolve_seed(seed=None):
    """User seed, or a fresh 64-bit one drawn from OS entropy."""
    if seed is not None:
        if seed < 0:
            raise ValueError("seed must be nonnegative, got {}".format(seed))
        return int(seed)
    return int(np.random.SeedSequence().generate_state(1, dtype=np.uint64)[0])


def make_rng(seed):
    return np.random.default_rng(np.random.SeedSequence(seed))


def spawn(seed, count):
    """Independent child streams of a master seed: child i is SeedSequence(seed).spawn(count)[i]."""
    return np.random.SeedSequence(seed).spawn(count)
