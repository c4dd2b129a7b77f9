"""Seeded generation of planted-pattern binary matrices with flip noise.

An instance is assembled as the Boolean product of two Bernoulli factor
matrices, with an independent Bernoulli mask flipping entries of the
product.  Everything is drawn from one seeded stream in a fixed order, so
an instance is a pure function of its spec.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .boolmat import BinaryMatrix, bool_product, elementwise

__all__ = [
    "SimulatedInstance",
    "SimulationSpec",
    "preset_grid",
    "replicate_seed",
    "simulate",
]


@dataclass(frozen=True)
class SimulationSpec:
    """Dimensions, planted-pattern count, rates, and the seed.

    p0 is the per-entry density of the planted factors; p is the rate of
    the noise mask that flips entries of their product.
    """

    n: int
    m: int
    k: int
    p0: float
    p: float
    seed: int

    def __post_init__(self):
        if self.n < 1 or self.m < 1:
            raise ValueError(f"dimensions must be positive, got "
                             f"{self.n}x{self.m}")
        if self.k < 1:
            raise ValueError(f"k must be at least 1, got {self.k}")
        for name, rate in (("p0", self.p0), ("p", self.p)):
            if not 0.0 <= rate <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {rate}")


@dataclass(frozen=True)
class SimulatedInstance:
    """Observed matrix X plus the ground truth it was assembled from.

    X equals the Boolean product of U and V wherever the noise mask E is
    zero, and its negation wherever E is one.
    """

    X: BinaryMatrix
    U: BinaryMatrix
    V: BinaryMatrix
    E: BinaryMatrix


def simulate(spec: SimulationSpec) -> SimulatedInstance:
    """Draw one instance from the spec, bit-reproducibly.

    The stream is NumPy's default generator (PCG64) seeded with
    ``spec.seed``.  Sampling order is fixed: U row-major, then V
    row-major, then E row-major, each entry one uniform draw compared
    against the rate.
    """
    rng = np.random.default_rng(spec.seed)
    u = BinaryMatrix.from_dense(rng.random((spec.n, spec.k)) < spec.p0)
    v = BinaryMatrix.from_dense(rng.random((spec.k, spec.m)) < spec.p0)
    e = BinaryMatrix.from_dense(rng.random((spec.n, spec.m)) < spec.p)
    x = elementwise("xor", bool_product(u, v), e)
    return SimulatedInstance(X=x, U=u, V=v, E=e)


def replicate_seed(base_seed: int, replicate: int) -> int:
    """Per-replicate seed of a batch: the base seed plus the index."""
    return base_seed + replicate


def preset_grid() -> list[dict]:
    """The standard benchmark grid as named parameter sets.

    Two square scales (100 and 1000), five planted patterns, two factor
    densities (0.2, 0.4), and two flip-noise rates (0, 0.01): eight
    scenarios.
    """
    grid = []
    for n in (100, 1000):
        for p0 in (0.2, 0.4):
            for p in (0.0, 0.01):
                grid.append({
                    "name": f"{n}x{n}_d{p0:g}_n{p:g}",
                    "n": n,
                    "m": n,
                    "k": 5,
                    "p0": p0,
                    "p": p,
                })
    return grid
