"""State space of the periodic raise and peel model and the tile-drop map.

A stable configuration on the even-width ring is a closed unit-step height
profile h_1..h_L above the substrate mid-line, with the parity lock
h_i = i (mod 2) and min_i (h_i - s_i) = 0 against the substrate zig-zag
s = (1, 0, 1, 0, ...): the profile touches the substrate at least once.
There are C(L, L/2) such profiles, in bijection with the balanced step
bit-sequences around the ring.

Dropping a tile at site i does one of four things:

* peak (both neighbours one below): the tile is reflected, nothing changes;
* valley (both neighbours one above): the tile is adsorbed, h_i += 2,
  unless the adsorption would complete two full layers around the ring
  (every other site already at height >= 2), in which case the two layers
  are removed bodily: a global avalanche of exactly L tiles;
* slope: the tile peels a one-tile-thick strip off the mountain from the
  arrival level upward, in the uphill direction, until the profile first
  returns to the arrival height.  The removed count includes the dropped
  tile and is always even.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum


class SiteKind(Enum):
    PEAK = "peak"
    VALLEY = "valley"
    GLOBAL_VALLEY = "global_valley"
    SLOPE_UP = "slope_up"
    SLOPE_DOWN = "slope_down"


class DropKind(Enum):
    REFLECTION = "reflection"
    ADSORPTION = "adsorption"
    LOCAL_AVALANCHE = "local_avalanche"
    GLOBAL_AVALANCHE = "global_avalanche"


def _substrate_heights(L: int) -> tuple[int, ...]:
    return tuple(1 - (i % 2) for i in range(L))


@dataclass(frozen=True)
class DyckConfig:
    """Stable configuration: width L and heights h (h[0] is site 1)."""

    L: int
    h: tuple[int, ...]

    def __post_init__(self):
        if self.L < 2 or self.L % 2:
            raise ValueError(f"lattice width must be even and >= 2, got {self.L}")
        if len(self.h) != self.L:
            raise ValueError("height profile length does not match L")
        object.__setattr__(self, "h", tuple(int(v) for v in self.h))
        for i in range(self.L):
            if abs(self.h[(i + 1) % self.L] - self.h[i]) != 1:
                raise ValueError(f"profile is not unit-step at site {i + 1}: {self.h}")
        if self.h[0] % 2 != 1:
            raise ValueError(f"parity lock broken: h_1 = {self.h[0]} must be odd")
        sub = _substrate_heights(self.L)
        gap = min(hi - si for hi, si in zip(self.h, sub))
        if gap != 0:
            raise ValueError(
                f"profile does not rest on the substrate (min gap {gap}): {self.h}")

    def height(self, i: int) -> int:
        """Height at site i (1-based, cyclic)."""
        return self.h[(i - 1) % self.L]


@dataclass(frozen=True)
class DropOutcome:
    next: DyckConfig
    tiles_removed: int
    global_avalanche: bool
    kind: DropKind


@dataclass(frozen=True)
class StateIndex:
    index: int
    L: int

    def __post_init__(self):
        if not 0 <= self.index < math.comb(self.L, self.L // 2):
            raise ValueError(
                f"index {self.index} out of range for width {self.L}")


def substrate(L: int) -> DyckConfig:
    """The minimal zig-zag configuration of width L."""
    if L < 2 or L % 2:
        raise ValueError(f"lattice width must be even and >= 2, got {L}")
    return DyckConfig(L, _substrate_heights(L))


def classify_site(c: DyckConfig, i: int) -> SiteKind:
    """Local geometry at site i decides the fate of a dropped tile."""
    L = c.L
    if not 1 <= i <= L:
        raise ValueError(f"site index {i} outside 1..{L}")
    h = c.h
    h0 = h[i - 1]
    hm = h[(i - 2) % L]
    hp = h[i % L]
    if hm == h0 - 1 and hp == h0 - 1:
        return SiteKind.PEAK
    if hm == h0 + 1 and hp == h0 + 1:
        # Adsorbing here completes two full layers iff every other site
        # already sits at height >= 2.
        if all(h[k] >= 2 for k in range(L) if k != i - 1):
            return SiteKind.GLOBAL_VALLEY
        return SiteKind.VALLEY
    if hm == h0 - 1 and hp == h0 + 1:
        return SiteKind.SLOPE_UP
    return SiteKind.SLOPE_DOWN


def drop_tile(c: DyckConfig, i: int) -> DropOutcome:
    """Apply one tile drop at site i and return the stabilized outcome."""
    L = c.L
    kind = classify_site(c, i)
    h = list(c.h)
    if kind is SiteKind.PEAK:
        return DropOutcome(c, 0, False, DropKind.REFLECTION)
    if kind is SiteKind.VALLEY:
        h[i - 1] += 2
        return DropOutcome(DyckConfig(L, tuple(h)), 0, False, DropKind.ADSORPTION)
    if kind is SiteKind.GLOBAL_VALLEY:
        h = [v - 2 for v in h]
        h[i - 1] += 2
        return DropOutcome(DyckConfig(L, tuple(h)), L, True, DropKind.GLOBAL_AVALANCHE)
    # Local avalanche: peel uphill until the profile returns to the arrival
    # height.  The scan terminates before wrapping because the profile
    # touches the substrate below h_i somewhere outside the mountain.
    step = 1 if kind is SiteKind.SLOPE_UP else -1
    h0 = h[i - 1]
    for d in range(1, L):
        j = (i - 1 + step * d) % L
        if h[j] == h0:
            break
    else:
        raise AssertionError("avalanche scan wrapped around; invalid profile")
    for k in range(1, d):
        h[(i - 1 + step * k) % L] -= 2
    return DropOutcome(DyckConfig(L, tuple(h)), d, False, DropKind.LOCAL_AVALANCHE)


def peaks_count(c: DyckConfig) -> int:
    """Number of local maxima; equals the number of reflecting sites."""
    h = c.h
    L = c.L
    return sum(
        1 for i in range(L)
        if h[i - 1] == h[i] - 1 and h[(i + 1) % L] == h[i] - 1
    )


# -- dense indexing ----------------------------------------------------------
#
# A configuration is encoded by its step bits b_k = [h_{k+1} - h_k = +1],
# k = 1..L cyclic (b_L is the wrap step).  Ranking is colexicographic on the
# positions of the up-steps, which gives O(L) rank/unrank via binomials.

def _steps_of(c: DyckConfig) -> list[int]:
    return [1 if c.h[(k + 1) % c.L] - c.h[k] == 1 else 0 for k in range(c.L)]


def _config_from_steps(L: int, bits: list[int]) -> DyckConfig:
    # Provisional profile from h_1 = 0; the unique vertical shift restoring
    # the parity lock and substrate contact is max_i(s_i - p_i), always odd.
    p = [0] * L
    for k in range(L - 1):
        p[k + 1] = p[k] + (1 if bits[k] else -1)
    sub = _substrate_heights(L)
    shift = max(s - q for s, q in zip(sub, p))
    return DyckConfig(L, tuple(q + shift for q in p))


def rank(c: DyckConfig) -> StateIndex:
    """Colex rank of the configuration's up-step set."""
    return StateIndex(_rank_steps(_steps_of(c)), c.L)


def unrank(s: StateIndex) -> DyckConfig:
    """Inverse of rank."""
    return _config_from_steps(s.L, _unrank_steps(s.index, s.L))


def _rank_steps(bits: list[int]) -> int:
    r = 0
    j = 0
    for pos, b in enumerate(bits):
        if b:
            j += 1
            r += math.comb(pos, j)
    return r


def _unrank_steps(r: int, L: int) -> list[int]:
    bits = [0] * L
    k = L // 2
    n = L
    while k > 0:
        n -= 1
        offset = math.comb(n, k)
        if r >= offset:
            r -= offset
            bits[n] = 1
            k -= 1
    return bits


def num_states(L: int) -> int:
    return math.comb(L, L // 2)


def all_configs(L: int) -> list[DyckConfig]:
    """All stable configurations of width L in rank order."""
    return [_config_from_steps(L, _unrank_steps(r, L)) for r in range(num_states(L))]


# -- serialization -----------------------------------------------------------

def to_hex(c: DyckConfig) -> str:
    """Step bit-string as hex, MSB = step from site 1 to site 2, up = 1."""
    bits = _steps_of(c)
    value = 0
    for b in bits:
        value = (value << 1) | b
    return format(value, f"0{(c.L + 3) // 4}x")


def from_hex(s: str, L: int) -> DyckConfig:
    if L < 2 or L % 2:
        raise ValueError(f"lattice width must be even and >= 2, got {L}")
    value = int(s, 16)
    if value >= 1 << L:
        raise ValueError(f"bit-string {s!r} too long for width {L}")
    bits = [(value >> (L - 1 - k)) & 1 for k in range(L)]
    if sum(bits) != L // 2:
        raise ValueError(f"bit-string {s!r} is not balanced for width {L}")
    return _config_from_steps(L, bits)
