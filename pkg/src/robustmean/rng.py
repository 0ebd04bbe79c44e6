"""Pinned random-number generation for reproducible datasets.

Bit source: numpy's Philox 4x64-10 counter-based generator, keyed by
(seed, stream id).  Uniforms come from the generator's standard 53-bit
mapping.  Gaussians are produced by an explicit Box-Muller transform over
those uniforms rather than a library normal sampler, so the exact draw
sequence is pinned by this module's code and the generator constants
alone: for each pair, r = sqrt(-2*log1p(-u1)), theta = 2*pi*u2, yielding
(r*cos(theta), r*sin(theta)).  Uniform inputs are drawn as one block of
2*ceil(count/2) values, with u1 the even-indexed and u2 the odd-indexed
entries, and outputs interleaved in pair order.

Stream ids are fixed per dataset role so that, e.g., changing the number
of outliers never disturbs the inlier draws.
"""

import numpy as np

_MASK64 = (1 << 64) - 1

STREAM_INLIER = 0
STREAM_OUTLIER_BLOCK_ONE = 1
STREAM_OUTLIER_BLOCK_TWO = 2


def stream(seed, stream_id):
    """Generator for the given (seed, stream) pair."""
    key = np.array([int(seed) & _MASK64, int(stream_id) & _MASK64],
                   dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def gaussians(gen, count):
    """count standard normal draws via Box-Muller on gen's uniforms."""
    if count == 0:
        return np.empty(0)
    pairs = (count + 1) // 2
    u = gen.random(2 * pairs)
    u1, u2 = u[0::2], u[1::2]
    r = np.sqrt(-2.0 * np.log1p(-u1))
    theta = 2.0 * np.pi * u2
    out = np.empty(2 * pairs)
    out[0::2] = r * np.cos(theta)
    out[1::2] = r * np.sin(theta)
    return out[:count]


def gaussian_matrix(gen, n, d):
    """(n, d) standard normal matrix, row-major draw order."""
    return gaussians(gen, n * d).reshape(n, d)


def uniform_matrix(gen, n, d, low=0.0, high=1.0):
    """(n, d) matrix of U(low, high) draws, row-major draw order."""
    return low + (high - low) * gen.random(n * d).reshape(n, d)
