"""
Generic point sampling on strata.
"""

import numpy as np
from loguru import logger

from secular_engine.eigenspace import sample_torus_zero
from utils.config import Config
from utils.error_handler import error_handler, SamplingFailed, StrataError


def _raw_point(s, rng, retries):
    z = np.exp(1j * rng.uniform(0, 2 * np.pi, s.n))
    for p in s.systems:
        z = sample_torus_zero(p, rng, z, retries)
        if z is None:
            return None
    if not s.contains(z, Config.SAMPLE_TOLERANCE):
        return None
    return z


def _covering(s, others, rng, retries):
    # strata vanishing at several independent points of s contain all of s
    draws = []
    for _ in range(retries):
        z = _raw_point(s, rng, retries)
        if z is not None:
            draws.append(z)
        if len(draws) == Config.COVER_DRAWS:
            break
    if not draws:
        return []
    return [t for t in others if all(t.contains(z) for z in draws)]


@error_handler
def sample_stratum(s, seed=None, avoid=(), retries=None):
    """
    Random generic point of a stratum.

    Coordinates outside every system are uniform on the circle; each system
    is solved on its own variables. Points lying on any stratum of `avoid`
    that does not contain the whole of `s` are rejected.

    Args:
        s (Stratum): The stratum.
        seed (int or numpy.random.Generator): Random source.
        avoid (list): Strata to stay away from.
        retries (int): Attempts before giving up.

    Returns:
        numpy.ndarray: The torus point.
    """
    if not s.systems:
        raise StrataError("stratum has no systems to sample")
    rng = np.random.default_rng(seed)
    retries = retries or Config.SAMPLE_RETRIES
    covering = _covering(s, avoid, rng, retries)
    others = [t for t in avoid if not any(t is c for c in covering)]

    for attempt in range(1, retries + 1):
        z = _raw_point(s, rng, retries)
        if z is None:
            continue
        if any(t.contains(z) for t in others):
            logger.debug(f"Sample {attempt} landed on another stratum, resampling")
            continue
        return z
    raise SamplingFailed(retries, f"on stratum {s.h.describe()}")
