"""Deterministic, seedable, counter-based random streams.

Every random decision in the package flows through the generator defined
here, so that runs are bit-reproducible across platforms and across the
scalar and vectorized code paths.  The generator is SplitMix64:

    state_{k+1} = (state_k + 0x9E3779B97F4A7C15)  mod 2^64
    output_k    = mix64(state_{k+1})

with the avalanche finalizer

    z ^= z >> 30;  z *= 0xBF58476D1CE4E5B9   (mod 2^64)
    z ^= z >> 27;  z *= 0x94D049BB133111EB   (mod 2^64)
    z ^= z >> 31

Derived quantities are defined bit-exactly on top of the u64 stream:

* unit floats:      (u >> 11) * 2**-53                (53-bit mantissa)
* bounded integers: ((u >> 32) * n) >> 32 for n < 2^32 (multiply-shift;
  rejection-free, bias below 2^-32 relative)
* Bernoulli(p):     unit float < p

Per-trial streams are derived statelessly from a master seed with
:func:`derive_trial_seed`, which applies two rounds of mix64 to
``master_seed XOR (trial_id * SEED_STRIDE)``.  Distinct trial ids give
distinct seeds (the map is a bijection composed with an injection).
"""

from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
MIX_MULT_1 = 0xBF58476D1CE4E5B9
MIX_MULT_2 = 0x94D049BB133111EB
# odd constant spacing trial ids apart before mixing
SEED_STRIDE = 0xD1342543DE82EF95

_INV_2_53 = 2.0 ** -53


def mix64(z: int) -> int:
    """One round of the SplitMix64 avalanche finalizer (64-bit)."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * MIX_MULT_1) & MASK64
    z = ((z ^ (z >> 27)) * MIX_MULT_2) & MASK64
    return z ^ (z >> 31)


def derive_trial_seed(master_seed: int, trial_id: int) -> int:
    """Stateless per-trial seed: two mix64 rounds over master ^ (id * stride)."""
    x = (master_seed ^ ((trial_id * SEED_STRIDE) & MASK64)) & MASK64
    return mix64(mix64(x))


class Stream:
    """Scalar SplitMix64 stream.  Caller-owned, single-threaded."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN_GAMMA) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * MIX_MULT_1) & MASK64
        z = ((z ^ (z >> 27)) * MIX_MULT_2) & MASK64
        return z ^ (z >> 31)

    def next_unit(self) -> float:
        """Float in [0, 1) with 53 random mantissa bits."""
        return (self.next_u64() >> 11) * _INV_2_53

    def bernoulli(self, p: float) -> bool:
        return self.next_unit() < p

    def uniform_index(self, n: int) -> int:
        """Uniform integer in [0, n) for n < 2^32, rejection-free."""
        return ((self.next_u64() >> 32) * n) >> 32


class StreamArray:
    """Vectorized SplitMix64: one independent stream per lane.

    Lane ``i`` produces exactly the same sequence as ``Stream(seeds[i])``
    as long as the per-lane consumption pattern matches; masked draws
    advance only the selected lanes.
    """

    def __init__(self, seeds):
        self.states = np.asarray(seeds, dtype=np.uint64).copy()
        self._gamma = np.uint64(GOLDEN_GAMMA)
        self._m1 = np.uint64(MIX_MULT_1)
        self._m2 = np.uint64(MIX_MULT_2)

    def __len__(self) -> int:
        return self.states.shape[0]

    def _mix(self, z):
        z = (z ^ (z >> np.uint64(30))) * self._m1
        z = (z ^ (z >> np.uint64(27))) * self._m2
        return z ^ (z >> np.uint64(31))

    def next_u64(self):
        """Advance every lane; returns a uint64 array."""
        self.states += self._gamma
        return self._mix(self.states.copy())

    def next_u64_masked(self, mask):
        """Advance only lanes where mask is True.

        Returns a full-length uint64 array whose entries are meaningful
        only at masked lanes (zeros elsewhere).
        """
        out = np.zeros_like(self.states)
        sel = self.states[mask] + self._gamma
        self.states[mask] = sel
        out[mask] = self._mix(sel)
        return out

    def next_unit(self):
        return (self.next_u64() >> np.uint64(11)) * _INV_2_53

    def bernoulli(self, p: float):
        return self.next_unit() < p

    def uniform_index_masked(self, n: int, mask):
        """Per-lane uniform index in [0, n), drawn only at masked lanes."""
        u = self.next_u64_masked(mask)
        return ((u >> np.uint64(32)) * np.uint64(n)) >> np.uint64(32)
