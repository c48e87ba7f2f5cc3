"""Seed derivation and random generator construction.

All randomness in the package flows through numpy's PCG64 (a documented
64-bit PRNG); Gaussian draws use ``Generator.standard_normal`` (ziggurat).
Child seeds are derived with ``numpy.random.SeedSequence`` hashing over an
integer path, so any (master seed, index...) pair maps to a fixed 64-bit
seed regardless of execution order or platform.
"""

from __future__ import annotations

import numpy as np


def derive_seed(*path: int) -> int:
    """Map an integer path (master seed, indices...) to a stable 64-bit seed."""
    if not path:
        raise ValueError("derive_seed requires at least one path component")
    ss = np.random.SeedSequence([int(p) for p in path])
    return int(ss.generate_state(1, np.uint64)[0])


def make_rng(seed: int) -> np.random.Generator:
    """PCG64 generator for an explicit 64-bit seed."""
    return np.random.Generator(np.random.PCG64(int(seed)))
