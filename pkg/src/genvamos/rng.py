"""Seeded rational sampling.

All sampling goes through numpy's Philox counter-based generator keyed by a
single 64-bit seed; independent streams are derived with ``jumped``.
Rational coordinates live on the grid (1/DENOM) Z.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np

DEFAULT_SEED = 0xC0FFEE
DENOM = 64


def generator(seed: int, stream: int = 0) -> np.random.Generator:
    bitgen = np.random.Philox(seed & 0xFFFFFFFFFFFFFFFF)
    if stream:
        bitgen = bitgen.jumped(stream)
    return np.random.Generator(bitgen)


def rational_vector(gen: np.random.Generator, dim: int, lo, hi, denom: int = DENOM):
    """Uniform grid point in [lo, hi]^dim; returns (fractions, numerators)."""
    ints = gen.integers(int(lo * denom), int(hi * denom), endpoint=True, size=dim)
    ints = [int(v) for v in ints]
    return [Fraction(v, denom) for v in ints], ints


def rational_points(seed: int, count: int, dim: int, lo, hi, denom: int = DENOM, stream: int = 0):
    """Yield ``count`` tuples (point, integer numerators, denominator)."""
    gen = generator(seed, stream)
    block = gen.integers(int(lo * denom), int(hi * denom), endpoint=True, size=(count, dim))
    for row in block:
        ints = [int(v) for v in row]
        yield [Fraction(v, denom) for v in ints], ints, denom
