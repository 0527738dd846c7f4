"""SplitMix64 bit streams.

The generator is Steele, Lea & Flood's SplitMix64: the state advances by
the golden-ratio increment 0x9E3779B97F4A7C15 and each output is the
state passed through the Stafford variant-13 finalizer.  Everything here
is defined on unsigned 64-bit integers, so a seed reproduces the same
bits on any platform.
"""

from __future__ import annotations

import numpy as np

GOLDEN = 0x9E3779B97F4A7C15
MASK64 = (1 << 64) - 1


def mix64(z: int) -> int:
    """Stafford variant-13 finalizer on a 64-bit integer."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def splitmix64_words(seed: int, count: int) -> np.ndarray:
    """Return the first ``count`` outputs of SplitMix64 started at ``seed``."""
    states = (np.arange(1, count + 1, dtype=np.uint64) * np.uint64(GOLDEN)
              + np.uint64(seed & MASK64))
    z = states
    z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return z ^ (z >> np.uint64(31))


def random_bits(seed: int, count: int) -> np.ndarray:
    """``count`` fair bits as uint8; bit t is bit (t mod 64) of word t // 64."""
    words = splitmix64_words(seed, (count + 63) // 64)
    bits = (words[:, None] >> np.arange(64, dtype=np.uint64)) & np.uint64(1)
    return bits.reshape(-1)[:count].astype(np.uint8)


def derive_seed(seed: int, index: int) -> int:
    """Seed for sub-stream ``index`` of ``seed``.

    Rule: ``mix64(seed + (index + 1) * GOLDEN mod 2**64)``, i.e. output
    ``index`` of the SplitMix64 stream started at ``seed``.  Any trial of an
    experiment can therefore be regenerated on its own.
    """
    return mix64(seed + (index + 1) * GOLDEN)
