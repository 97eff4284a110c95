"""Shared helpers: preset instances and random generators for property tests."""

from __future__ import annotations

import random

import pytest

import treeshift as ts


@pytest.fixture(scope="session")
def binary():
    return ts.full_binary()


@pytest.fixture(scope="session")
def unary():
    return ts.unary_path()


@pytest.fixture(scope="session")
def ex41():
    return ts.example_4_1()


@pytest.fixture(scope="session")
def ex41_exact():
    return ts.example_4_1(exact=True)


@pytest.fixture(scope="session")
def ex72():
    return ts.example_7_2()


@pytest.fixture(scope="session")
def ex72_exact():
    return ts.example_7_2(exact=True)


@pytest.fixture(scope="session")
def bipath():
    return ts.bi_infinite_path()


def random_vertex(rng: random.Random, tree: ts.TreeModel, max_up: int = 4, max_down: int = 6):
    """A uniform-ish random canonical vertex within small bounds."""
    up = rng.randint(0, max_up) if tree.kind == ts.UNROOTED else 0
    v = ts.VertexAddress(up)
    for _ in range(rng.randint(0, max_down)):
        kids = ts.children(v, tree)
        if not kids:
            break
        v = rng.choice(kids)
    return v


def random_sparse_vector(
    rng: random.Random,
    tree: ts.TreeModel,
    size: int = 6,
    scale: float = 2.0,
    max_up: int = 3,
    max_down: int = 6,
) -> ts.SparseVector:
    entries = {}
    for _ in range(rng.randint(0, size)):
        v = random_vertex(rng, tree, max_up, max_down)
        entries[v] = rng.uniform(-scale, scale)
    return ts.SparseVector(entries)
