"""Shared test fixtures and helpers."""

import sys
from pathlib import Path

import numpy as np
import pytest

# oracles.py lives next to the tests; make it importable no matter how
# pytest was invoked
sys.path.insert(0, str(Path(__file__).resolve().parent))


@pytest.fixture
def rng():
    """Seeded generator for test-local randomness (not the pinned streams)."""
    return np.random.default_rng(42)


def planted_line(scale=10.0):
    """The tiny 1-D instance with two far outliers used across modules.

    Four inliers near 0 and a symmetric pair at +-scale; with sigma=1,
    c1^2=1.5 (budget 9) the unique minimum-cardinality feasible indicator
    drops exactly the pair.
    """
    data = np.array([[-0.1], [-0.05], [0.05], [0.1], [scale], [-scale]])
    return data, frozenset({4, 5})


def comfortable_sigma(data_or_edge, n, c1_squared=1.5, margin=1.2):
    """Deviation scale giving the budget `margin` headroom over a scatter edge.

    Accepts either the raw top scatter eigenvalue or an (m, d) block to
    measure it from (centered on the block mean).  Used to build instances
    whose intended indicator is comfortably feasible, so solver outputs
    are near-binary.
    """
    if np.ndim(data_or_edge) == 0:
        edge = float(data_or_edge)
    else:
        block = np.asarray(data_or_edge, dtype=float)
        dev = block - block.mean(axis=0)
        scatter = dev.T @ dev
        edge = float(np.linalg.eigvalsh(0.5 * (scatter + scatter.T))[-1])
    return float(np.sqrt(margin * max(edge, 1e-12) / (c1_squared * n)))
