"""Admissible lattice paths, ground states and the half-integer path bijection.

An RSOS path is a height sequence sigma_0..sigma_{N+1} whose consecutive
pairs are adjacent at the model's fusion level.  Fusion-2 paths have a
definite parity (all heights odd or all even).

Half-integer ("JM") paths live on a doubled integer grid: times 0..2N+1 and
heights 2..2k+2 stand for the half-integer times 0, 1/2, .., N+1/2 and
heights 1, 3/2, .., k+1.  Every half-step changes the doubled height by +-1,
local peaks are only allowed at integer times with integer heights, the two
endpoints sigma_0 and sigma_N are integers, and the final half-step is down.
Decimating a JM path at integer times (heights a = 2*sigma - 1, with a flat
last step appended) gives an odd-sector fusion-2 path of the model
(k+1, 2k+3); this map is a bijection and the inverse reinserts forced
midpoints, turning flat steps back into half-integer valleys.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .energy import LocalEnergyTable, local_energy_n2, path_energy
from .model import ModelSpec, band_structure, neighbors


@dataclass(frozen=True)
class RsosPath:
    spec: ModelSpec
    heights: tuple[int, ...]

    def __post_init__(self):
        nbr = neighbors(self.spec)
        if len(self.heights) < 2:
            raise ValueError("a path needs at least sigma_0 and sigma_1")
        for x, y in zip(self.heights, self.heights[1:]):
            if y not in nbr.get(x, ()):
                raise ValueError(f"inadmissible step {x} -> {y} for "
                                 f"({self.spec.m},{self.spec.m_prime})")

    @property
    def N(self) -> int:
        return len(self.heights) - 2

    def energy(self, table: LocalEnergyTable | None = None) -> int:
        if table is None:
            table = local_energy_n2(self.spec)
        return path_energy(table, self.heights)


def enumerate_paths(spec: ModelSpec, a: int, b: int, c: int,
                    N: int) -> Iterator[tuple[int, ...]]:
    """Yield every admissible sigma_0..sigma_{N+1} with boundary (a, b, c).

    Deterministic lexicographic order.  A parity mismatch between a and b at
    fusion 2, or a non-adjacent final pair (b, c), yields nothing rather than
    raising: those boundary conditions simply support no paths.
    """
    for x in (a, b, c):
        if not 1 <= x <= spec.m_prime - 1:
            raise ValueError(f"height {x} outside 1..{spec.m_prime - 1}")
    nbr = neighbors(spec)
    if c not in nbr[b]:
        return
    if spec.fusion == 2 and (a - b) % 2 != 0:
        return
    step = spec.fusion  # max height change per step

    prefix = [a]

    def reachable(x: int, steps_left: int) -> bool:
        return abs(x - b) <= step * steps_left

    def walk(steps_left: int) -> Iterator[tuple[int, ...]]:
        if steps_left == 0:
            if prefix[-1] == b:
                yield tuple(prefix) + (c,)
            return
        for y in nbr[prefix[-1]]:
            if reachable(y, steps_left - 1):
                prefix.append(y)
                yield from walk(steps_left - 1)
                prefix.pop()

    if reachable(a, N):
        yield from walk(N)


def count_paths(spec: ModelSpec, a: int, b: int, c: int, N: int) -> int:
    return sum(1 for _ in enumerate_paths(spec, a, b, c, N))


@dataclass(frozen=True)
class GroundState:
    r: int
    parity: int
    height: int

    def flat_path(self, spec: ModelSpec, N: int) -> RsosPath:
        return RsosPath(spec, (self.height,) * (N + 2))


def ground_states(spec: ModelSpec) -> list[GroundState]:
    """The 2(m-1) flat zero-energy paths, one per member of rho0 and rho1.

    Only fusion-2 models with m' > 2m have this ground-state pattern.
    """
    if spec.fusion != 2:
        raise ValueError("ground_states requires fusion level 2")
    if spec.lambda_below(2):
        raise ValueError("ground_states requires m' > 2m")
    bands = band_structure(spec)
    states = []
    for r in range(1, spec.m):
        states.append(GroundState(r, 0, bands.rho0[r - 1]))
        states.append(GroundState(r, 1, bands.rho1[r - 1]))
    return sorted(states, key=lambda g: g.height)


# ---------------------------------------------------------------------------
# Half-integer (JM) paths on the doubled grid
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class JmPath:
    """Doubled-grid storage: doubled[t] = 2 * sigma_{t/2} for t = 0..2N+1."""

    k: int
    doubled: tuple[int, ...]

    def __post_init__(self):
        k, d = self.k, self.doubled
        if k < 1:
            raise ValueError("k must be >= 1")
        if len(d) < 2 or len(d) % 2 != 0:
            raise ValueError("doubled height list must have even length >= 2")
        top = 2 * (k + 1)
        for t, x in enumerate(d):
            if not 2 <= x <= top:
                raise ValueError(f"height {Fraction(x, 2)} outside [1, {k + 1}]")
            if t > 0 and abs(x - d[t - 1]) != 1:
                raise ValueError("every half-step must change height by 1/2")
        if d[0] % 2 != 0 or d[-2] % 2 != 0:
            raise ValueError("sigma_0 and sigma_N must be integer heights")
        if d[-1] != d[-2] - 1:
            raise ValueError("the final half-step must go down")
        for t in range(1, len(d) - 1):
            if d[t - 1] < d[t] > d[t + 1] and (t % 2 != 0 or d[t] % 2 != 0):
                raise ValueError(f"local peak off the integer lattice at t={t}")

    @property
    def N(self) -> int:
        return (len(self.doubled) - 2) // 2

    def heights(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, 2) for x in self.doubled)


def jm_enumerate(k: int, s0: int, sN: int, N: int) -> Iterator[JmPath]:
    """All JM paths with sigma_0 = s0 and sigma_N = sN (integer heights).

    Enumerates raw half-steps under the height bounds and the integer-peak
    rule; this is deliberately independent of the full-step structure used by
    the bijection, so it can serve as its oracle.
    """
    if not (1 <= s0 <= k + 1 and 1 <= sN <= k + 1):
        raise ValueError("endpoints must be integer heights in 1..k+1")
    top = 2 * (k + 1)
    start, end = 2 * s0, 2 * sN
    if end - 1 < 2:
        return  # the forced final down-step would leave the strip
    if N == 0:
        if start == end:
            yield JmPath(k, (start, start - 1))
        return
    seq = [start]

    def peak_ok(t: int) -> bool:
        # called once seq[t+1] exists; checks the interior point t
        return not (seq[t - 1] < seq[t] > seq[t + 1]) or (
            t % 2 == 0 and seq[t] % 2 == 0)

    def walk(t: int) -> Iterator[JmPath]:
        if t == 2 * N:
            if seq[-1] != end:
                return
            seq.append(end - 1)
            if peak_ok(2 * N):
                yield JmPath(k, tuple(seq))
            seq.pop()
            return
        for move in (-1, 1):
            y = seq[-1] + move
            if 2 <= y <= top and abs(y - end) <= 2 * N - t:
                seq.append(y)
                if t == 0 or peak_ok(t):
                    yield from walk(t + 1)
                seq.pop()

    yield from walk(0)


def jm_to_rsos(jm: JmPath) -> RsosPath:
    """Decimate at integer times: a_j = 2*sigma_j - 1, then append a flat step."""
    spec = ModelSpec(jm.k + 1, 2 * jm.k + 3, fusion=2)
    samples = [jm.doubled[2 * j] - 1 for j in range(jm.N + 1)]
    samples.append(samples[-1])
    return RsosPath(spec, tuple(samples))


def rsos_to_jm(path: RsosPath) -> JmPath:
    """Inverse of the decimation: reinstate the forced half-integer midpoints.

    Requires a fusion-2 model with m' = 2m+1, an odd-parity path, and a flat
    final step sigma_N = sigma_{N+1}.
    """
    spec = path.spec
    if spec.fusion != 2 or spec.m_prime != 2 * spec.m + 1:
        raise ValueError("JM correspondence needs fusion 2 and m' = 2m+1")
    if any(h % 2 == 0 for h in path.heights):
        raise ValueError("JM correspondence covers the odd height sector only")
    if path.heights[-1] != path.heights[-2]:
        raise ValueError("the last step must be flat (sigma_N = sigma_{N+1})")
    k = spec.m - 1
    ints = [h + 1 for h in path.heights[:-1]]  # doubled JM heights at integer times
    doubled = []
    for j, x in enumerate(ints):
        doubled.append(x)
        if j == len(ints) - 1:
            doubled.append(x - 1)  # the dashed final half-step, always down
        elif ints[j + 1] == x:
            doubled.append(x - 1)  # flat step <-> half-integer valley
        else:
            doubled.append((x + ints[j + 1]) // 2)
    return JmPath(k, tuple(doubled))


def jm_energy(jm: JmPath) -> Fraction:
    """E = sum over half-integer j of j * w(j), w(j) = |sigma_{j+1/2} - sigma_{j-1/2}| / 2.

    The appended final half-step carries no weight (w(N + 1/2) = 0 by the
    flat-last-step convention).
    """
    d = jm.doubled
    total = Fraction(0)
    for t in range(1, len(d) - 1):
        total += Fraction(t, 2) * Fraction(abs(d[t + 1] - d[t - 1]), 4)
    return total
