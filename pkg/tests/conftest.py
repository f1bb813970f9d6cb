"""Shared fixtures and helpers for the lattice6 test suite."""

from __future__ import annotations

import random
import time

import pytest

from lattice6.equivalence import AffineMap
from lattice6.polytope import PointConfig
from lattice6.tablesdata import load_tables
from lattice6 import classify6


def random_unimodular(rng: random.Random, translation_bound: int = 5) -> AffineMap:
    """Random affine map of determinant +-1 built from shears, swaps and signs."""
    m = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    for _ in range(rng.randrange(4, 10)):
        i, j = rng.sample(range(3), 2)
        k = rng.randrange(-3, 4)
        for c in range(3):
            m[i][c] += k * m[j][c]
    if rng.random() < 0.5:
        i, j = rng.sample(range(3), 2)
        m[i], m[j] = m[j], m[i]
    if rng.random() < 0.5:
        i = rng.randrange(3)
        m[i] = [-x for x in m[i]]
    t = tuple(rng.randrange(-translation_bound, translation_bound + 1) for _ in range(3))
    return AffineMap(tuple(tuple(row) for row in m), t)


def apply_map(m: AffineMap, config: PointConfig) -> PointConfig:
    return PointConfig([m.apply(p) for p in config.points])


def shuffled(rng: random.Random, config: PointConfig) -> PointConfig:
    pts = list(config.points)
    rng.shuffle(pts)
    return PointConfig(pts)


@pytest.fixture(scope="session")
def bundle():
    return load_tables()


@pytest.fixture(scope="session")
def reps(bundle):
    """Table representatives keyed by class id."""
    return {row.id: row.config() for row in bundle.class_rows}


@pytest.fixture(scope="session")
def case_reports():
    """One full classification run shared by all tests, with its wall time."""
    start = time.monotonic()
    reports = classify6.run_reports()
    elapsed = time.monotonic() - start
    return tuple(reports), elapsed
