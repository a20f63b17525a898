"""Deterministic 64-bit PRNG behind every sampler in this package.

The generator is splitmix64 (Steele/Lea/Vigna): the state advances by the
golden-ratio increment ``0x9E3779B97F4A7C15`` modulo 2**64 and each output is
finalized with two xor-shift-multiply rounds.  The recurrence is tiny and
fully specified here, so seeded ensembles can be reproduced bit-for-bit from
any language, not just Python.

Stream conventions:

- ``uniform()`` maps one 64-bit output to a double in (0, 1] via
  ``((z >> 11) + 1) * 2**-53`` (never 0, so ``log`` is always safe).
- ``normal_pair()`` consumes two uniforms ``u1, u2`` and applies Box-Muller:
  ``r = sqrt(-2 ln u1)``, ``theta = 2 pi u2``, returning
  ``(r cos theta, r sin theta)`` in that order.

Samplers are pure functions of an explicit seed; there is no hidden global
stream, so parallel sweeps can partition seed ranges freely.
"""

from __future__ import annotations

import math

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB

# Seeds are plain integers, interpreted modulo 2**64.
Seed = int


class SplitMix64:
    """splitmix64 stream seeded by a 64-bit integer."""

    def __init__(self, seed: Seed):
        self._state = seed & _MASK64

    def next_uint64(self) -> int:
        self._state = (self._state + _GOLDEN) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
        return z ^ (z >> 31)

    def uniform(self) -> float:
        """Uniform double in (0, 1]."""
        return ((self.next_uint64() >> 11) + 1) * 2.0**-53

    def normal_pair(self) -> tuple[float, float]:
        """Two independent standard normals (Box-Muller)."""
        u1 = self.uniform()
        u2 = self.uniform()
        r = math.sqrt(-2.0 * math.log(u1))
        theta = 2.0 * math.pi * u2
        return r * math.cos(theta), r * math.sin(theta)

    def normals(self, n: int) -> list[float]:
        """n standard normals; the unpaired tail draw is discarded for odd n."""
        out: list[float] = []
        while len(out) < n:
            out.extend(self.normal_pair())
        return out[:n]
