"""Shared fixtures for the sfpsd test suite."""

import sys
from pathlib import Path

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

import numpy as np
import pytest


@pytest.fixture
def rng():
    """Fixed-seed generator so campaigns replay identically."""
    return np.random.default_rng(20240601)


def random_gram(rng: np.random.Generator, n: int, rank: int = None) -> np.ndarray:
    """G^H G for a random complex G, PSD by construction."""
    rank = rank or n
    g = rng.standard_normal((rank, n)) + 1j * rng.standard_normal((rank, n))
    return g.conj().T @ g


def random_hermitian(rng: np.random.Generator, n: int) -> np.ndarray:
    a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return 0.5 * (a + a.conj().T)


def rel_err(a: complex, b: complex) -> float:
    return abs(a - b) / max(abs(b), 1e-300)
