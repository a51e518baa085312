"""Seeded random states, observables, unitaries and channels.

All generators take a ``seed`` that is an int, a tuple of ints, or an
existing ``numpy.random.Generator``. Ints and tuples are fed to a
``SeedSequence`` driving the counter-based Philox bit generator, so
``(seed, shard, index)`` tuples give independent reproducible streams.
"""
from __future__ import annotations

import os
from typing import Sequence

import numpy as np

from .quantum import DensityMatrix, KrausChannel, Observable, UnitaryOperator

SEED_ENV = "SKEWLAB_SEED"
DEFAULT_SEED = 1


def make_rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    if isinstance(seed, (int, np.integer)):
        entropy = int(seed)
    else:
        entropy = [int(s) for s in seed]
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(entropy)))


def child_seed(seed, *path: int) -> tuple:
    """Seed tuple for a sub-stream, e.g. ``child_seed(1, shard, index)``."""
    base = (int(seed),) if isinstance(seed, (int, np.integer)) else tuple(int(s) for s in seed)
    return base + tuple(int(p) for p in path)


def resolve_seed(seed: int | None = None) -> int:
    """Explicit seed, else ``$SKEWLAB_SEED``, else the package default."""
    if seed is not None:
        return int(seed)
    env = os.environ.get(SEED_ENV)
    if env not in (None, ""):
        return int(env)
    return DEFAULT_SEED


def ginibre(shape: Sequence[int], seed) -> np.ndarray:
    """Independent standard complex Gaussian entries (E|z|^2 = 1)."""
    rng = make_rng(seed)
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


def ginibre_density(d: int, seed) -> DensityMatrix:
    g = ginibre((d, d), seed)
    gram = g @ g.conj().T
    gram = 0.5 * (gram + gram.conj().T)
    return DensityMatrix.from_matrix(gram / np.trace(gram).real)


def random_hermitian(d: int, seed) -> Observable:
    g = ginibre((d, d), seed)
    return Observable(0.5 * (g + g.conj().T))


def random_operator(d: int, seed) -> np.ndarray:
    return ginibre((d, d), seed)


def haar_unitary(d: int, seed) -> UnitaryOperator:
    q, r = np.linalg.qr(ginibre((d, d), seed))
    diag = np.diag(r)
    phases = np.where(np.abs(diag) > 0, diag / np.abs(diag), 1.0)
    return UnitaryOperator(q * phases)


def random_kraus_channel(d: int, n: int, seed) -> KrausChannel:
    """Slice a random isometry C^d -> C^(n d) into n Kraus blocks."""
    q, _ = np.linalg.qr(ginibre((n * d, d), seed))
    blocks = tuple(q[i * d:(i + 1) * d, :] for i in range(n))
    return KrausChannel(f"random_{d}x{n}", blocks)


def random_pure_bloch(seed) -> np.ndarray:
    v = make_rng(seed).standard_normal(3)
    return v / np.linalg.norm(v)
