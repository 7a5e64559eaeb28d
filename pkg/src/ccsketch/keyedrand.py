"""Counter-based deterministic random number generation.

Every random quantity in this package is a pure function of a 64-bit seed
and a set of integer indices (coordinate, measurement, trial, ...), so any
matrix entry or draw can be regenerated on demand without storing state.
The mixing function is the splitmix64 finalizer, applied in a short chain:
one application per index being folded in, plus one per output stream.

Seed domains keep the design matrix, the measurement noise, and the
workload generator statistically disjoint even when the user passes the
same master seed to all three.
"""

from __future__ import annotations

import numpy as np

U64 = np.uint64

_GOLDEN = U64(0x9E3779B97F4A7C15)
_MIX1 = U64(0xBF58476D1CE4E5B9)
_MIX2 = U64(0x94D049BB133111EB)

# Domain tags: arbitrary fixed odd constants, one per seed domain.
DESIGN_DOMAIN = 0xD1B54A32D192ED03
NOISE_DOMAIN = 0x8CB92BA72F3D8DD7
WORKLOAD_DOMAIN = 0x2545F4914F6CDD1D

# Stream tags separating the two uniform draws behind one (i, j) entry.
_STREAM_U = U64(0x9E6C63D0876A9A35)
_STREAM_W = U64(0xC2B2AE3D27D4EB4F)

_SHIFT30 = U64(30)
_SHIFT27 = U64(27)
_SHIFT31 = U64(31)
_SHIFT11 = U64(11)
_INV53 = 2.0 ** -53
_HALF_ULP = 2.0 ** -54


def mix64(x):
    """splitmix64 finalizer on uint64 scalars or arrays (wrapping arithmetic)."""
    z = (np.asarray(x, dtype=np.uint64) + _GOLDEN)
    z = (z ^ (z >> _SHIFT30)) * _MIX1
    z = (z ^ (z >> _SHIFT27)) * _MIX2
    return z ^ (z >> _SHIFT31)


def domain_key(seed: int, domain: int) -> np.uint64:
    """Fold a domain tag into a user seed."""
    return U64(mix64(U64(seed & 0xFFFFFFFFFFFFFFFF) ^ U64(domain)))


def subkey(key, index: int) -> np.uint64:
    """Derive a child key, e.g. per trial or per coordinate."""
    return U64(mix64(U64(key) ^ (U64(index) * _GOLDEN)))


def derived_int_seed(key) -> int:
    """Plain Python int view of a key, for seeding numpy Generators."""
    return int(U64(key))


def entry_hashes(key, rows, cols):
    """Well-mixed uint64 hash for every (row, col) pair.

    rows and cols are integer arrays; the result has shape
    ``(len(rows), len(cols))``.  Each hash is a pure function of
    (key, row, col).
    """
    r = np.asarray(rows, dtype=np.uint64)
    c = np.asarray(cols, dtype=np.uint64)
    hr = mix64(U64(key) ^ (r * _MIX1))
    return mix64(hr[:, None] ^ (c[None, :] * _MIX2))


def uniform_pair_bits(key, rows, cols):
    """Two independent uint64 streams per (row, col) pair."""
    g = entry_hashes(key, rows, cols)
    return mix64(g ^ _STREAM_U), mix64(g ^ _STREAM_W)


def bits_to_unit(bits):
    """Map uint64 bits to floats in the open interval (0, 1).

    Uses the top 53 bits, offset by half an ulp so 0.0 is never produced.
    """
    return (bits >> _SHIFT11).astype(np.float64) * _INV53 + _HALF_ULP
