"""Local energy tables H(d, a, b) and the path energy statistic.

Every table stores quarter-integer energies for exactly the admissible height
triples (d, a, b) with d ~ a and a ~ b at the model's fusion level.  Lookups
of non-admissible triples raise: a silent zero would mask path-generation
bugs.  The tables are the nonnegative-gauge forms; for n=2 the two crossing
parameter intervals lambda < pi/2 and lambda > pi/2 carry different formulas,
selected by exact rational comparison.

All energies are returned in quarter units (int), so an energy of 1/2 is the
integer 2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

from .model import ModelSpec, band_structure, neighbors

INTERVAL_BELOW = "lambda_below_pi_over_n"
INTERVAL_ABOVE = "lambda_above_pi_over_n"


@dataclass(frozen=True)
class LocalEnergyTable:
    spec: ModelSpec
    interval_tag: str
    entries: dict[tuple[int, int, int], int] = field(repr=False)

    def energy(self, d: int, a: int, b: int) -> int:
        """H(d, a, b) in quarters; raises ValueError on non-admissible triples."""
        try:
            return self.entries[(d, a, b)]
        except KeyError:
            raise ValueError(
                f"triple ({d},{a},{b}) not admissible for "
                f"({self.spec.m},{self.spec.m_prime}) at fusion {self.spec.fusion}"
            ) from None

    def triples(self):
        return self.entries.keys()


def _admissible_triples(spec: ModelSpec):
    nbr = neighbors(spec)
    for a in spec.heights:
        for d in nbr[a]:
            for b in nbr[a]:
                yield (d, a, b)


@lru_cache(maxsize=None)
def local_energy_n1(spec: ModelSpec) -> LocalEnergyTable:
    """The 1x1 local energies in the nonnegative gauge; values in {0, 1/4, 1/2}.

    H(a+1, a, a+1) = delta_a / 2        (valley at a)
    H(a-1, a, a-1) = delta_{a-1} / 2    (peak at a)
    H(a+-1, a, a-+1) = 1/2 - (delta_{a-1} + delta_a)/4
    """
    if spec.fusion != 1:
        raise ValueError("local_energy_n1 requires a fusion-1 spec")
    delta = band_structure(spec).delta
    entries: dict[tuple[int, int, int], int] = {}
    for (d, a, b) in _admissible_triples(spec):
        if d == b:
            entries[(d, a, b)] = 2 * delta[a] if d == a + 1 else 2 * delta[a - 1]
        else:
            entries[(d, a, b)] = 2 - (delta[a - 1] + delta[a])
    return _finish(spec, INTERVAL_BELOW if spec.lambda_below(1) else INTERVAL_ABOVE,
                   entries)


@lru_cache(maxsize=None)
def local_energy_n2(spec: ModelSpec) -> LocalEnergyTable:
    """The 2x2 local energies in the nonnegative gauge.

    For lambda > pi/2 the values are {0, 1/2, 1}; for lambda < pi/2 they are
    {0, 1/2, 1} as well (the straight-through constant differs between the
    intervals).  lambda = pi/2 would need m' = 2m, excluded by coprimality.
    """
    if spec.fusion != 2:
        raise ValueError("local_energy_n2 requires a fusion-2 spec")
    below = spec.lambda_below(2)
    delta = band_structure(spec).delta
    straight_const = 4 if below else 8
    entries: dict[tuple[int, int, int], int] = {}
    for (d, a, b) in _admissible_triples(spec):
        dd, db = d - a, b - a
        if dd == 0 and db == 0:
            if below:
                val = 0 if (delta[a - 1] == 0 and delta[a] == 0) else 4
            else:
                val = 0 if (delta[a - 1] == 0 or delta[a] == 0) else 4
        elif dd == 0 or db == 0:
            val = 2
        elif dd == db == 2:
            # valley at a seen from above: H(A, A-2, A) with A = a+2
            val = 4 * delta[a + 1]
        elif dd == db == -2:
            # peak at a seen from below: H(A, A+2, A) with A = a-2
            val = 4 * delta[a - 2]
        else:
            val = straight_const - 4 * (delta[a - 1] + delta[a])
        entries[(d, a, b)] = val
    return _finish(spec, INTERVAL_BELOW if below else INTERVAL_ABOVE, entries)


def local_energy(spec: ModelSpec) -> LocalEnergyTable:
    return local_energy_n1(spec) if spec.fusion == 1 else local_energy_n2(spec)


def _finish(spec, tag, entries) -> LocalEnergyTable:
    mp = spec.m_prime
    for (d, a, b), v in entries.items():
        if v < 0:
            raise AssertionError(f"negative local energy at {(d, a, b)}")
        if entries[(b, a, d)] != v:
            raise AssertionError(f"reflection symmetry broken at {(d, a, b)}")
        if entries[(mp - d, mp - a, mp - b)] != v:
            raise AssertionError(f"height reversal broken at {(d, a, b)}")
    return LocalEnergyTable(spec, tag, entries)


def apply_gauge(table: LocalEnergyTable, gauge: Mapping[int, Fraction],
                require_nonnegative: bool = False) -> LocalEnergyTable:
    """Gauge transform H'(d, a, b) = H(d, a, b) + 2 G_a - G_d - G_b.

    ``gauge`` maps heights to exact rationals; missing heights count as 0.
    The transformed energies must land back on the quarter grid.  With
    ``require_nonnegative`` any negative result raises.
    """
    entries: dict[tuple[int, int, int], int] = {}
    for (d, a, b), v in table.entries.items():
        g = (2 * Fraction(gauge.get(a, 0)) - Fraction(gauge.get(d, 0))
             - Fraction(gauge.get(b, 0)))
        new = Fraction(v, 4) + g
        q = new * 4
        if q.denominator != 1:
            raise ValueError(f"gauge takes {(d, a, b)} off the quarter grid: {new}")
        if require_nonnegative and q < 0:
            raise ValueError(f"gauge makes {(d, a, b)} negative: {new}")
        entries[(d, a, b)] = int(q)
    return LocalEnergyTable(table.spec, table.interval_tag + "+gauge", entries)


@dataclass(frozen=True)
class DualityReport:
    spec: ModelSpec
    dual_spec: ModelSpec
    constant: Fraction
    passed: bool
    failures: tuple


def duality_check(spec: ModelSpec) -> DualityReport:
    """Verify H^{m,m',n} + H^{m'-m,m',n} = n/2 triple-by-triple.

    Returns pass/fail with every offending triple listed; nothing is patched.
    """
    dual = spec.dual()
    table = local_energy(spec)
    dual_table = local_energy(dual)
    want = spec.fusion * 2  # n/2 in quarters
    failures = []
    for trip, v in table.entries.items():
        w = dual_table.entries.get(trip)
        if w is None:
            failures.append((trip, v, None))
        elif v + w != want:
            failures.append((trip, v, w))
    for trip in dual_table.entries:
        if trip not in table.entries:
            failures.append((trip, None, dual_table.entries[trip]))
    return DualityReport(spec, dual, Fraction(spec.fusion, 2), not failures,
                         tuple(failures))


def path_energy(table: LocalEnergyTable, heights: Sequence[int]) -> int:
    """E(sigma) = sum_{j=1}^{N} j * H(sigma_{j-1}, sigma_j, sigma_{j+1}), in quarters.

    ``heights`` is the full path sigma_0..sigma_{N+1}; every consecutive pair
    must be admissible, otherwise the lookup raises.
    """
    if len(heights) < 2:
        raise ValueError("a path needs at least sigma_0 and sigma_1")
    nbr = neighbors(table.spec)
    for x, y in zip(heights, heights[1:]):
        if y not in nbr.get(x, ()):
            raise ValueError(f"inadmissible step {x} -> {y}")
    total = 0
    for j in range(1, len(heights) - 1):
        total += j * table.energy(heights[j - 1], heights[j], heights[j + 1])
    return total
