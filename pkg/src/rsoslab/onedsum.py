"""One-dimensional configurational sums X_{abc}^{(N)}(q) over exact series.

Two independent routes compute the same object:

  * brute_force_X walks every admissible path and accumulates q^{E(sigma)};
  * recursive_X runs the corner-transfer recursion

        X_{abc}^{(N)} = sum_{d ~ b} q^{N H(d,b,c)} X_{adb}^{(N-1)},
        X_{abc}^{(0)} = delta_{a,b}

    bottom-up with c as the fixed outer boundary.

Both are exact; the test suite holds them equal coefficient-by-coefficient.
Exponents stay in quarter units throughout, so fusion-2 sums with a != b land
on half-integer powers without any special casing.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .energy import local_energy
from .model import ModelSpec, neighbors, sector_map
from .qseries import QSeries


@dataclass(frozen=True)
class SumTable:
    """All X_{a b c}^{(N)} for fixed final height c, keyed by (a, b)."""

    spec: ModelSpec
    N: int
    c: int
    values: dict[tuple[int, int], QSeries] = field(repr=False)

    def series(self, a: int, b: int) -> QSeries:
        return self.values.get((a, b), QSeries.zero())


def brute_force_X(spec: ModelSpec, a: int, b: int, c: int, N: int) -> QSeries:
    """Direct sum of q^{E(sigma)} over every path with boundary (a, b, c)."""
    return brute_force_table(spec, a, c, N).get(b, QSeries.zero())


def brute_force_table(spec: ModelSpec, a: int, c: int, N: int) -> dict[int, QSeries]:
    """X_{a b c}^{(N)} for every b at once, by direct path enumeration."""
    full = brute_force_tables(spec, a, N)
    return {b: QSeries(terms) for b, terms in full.get(c, {}).items()}


def brute_force_tables(spec: ModelSpec, a: int, N: int
                       ) -> dict[int, dict[int, dict[int, int]]]:
    """One DFS from height a serving every final boundary: out[c][b] = raw terms.

    Walks carry the partial energy sum_{j<N} j H; the final boundary only
    enters through the j = N term, added per closing height c at the leaves.
    """
    if not 1 <= a <= spec.m_prime - 1:
        raise ValueError("boundary height outside the strip")
    if N < 0:
        raise ValueError("N must be >= 0")
    table = local_energy(spec)
    nbr = neighbors(spec)
    out: dict[int, dict[int, dict[int, int]]] = {}

    def close(heights: list[int], energy: int) -> None:
        b = heights[-1]
        for c in nbr[b]:
            e = energy
            if N >= 1:
                e += N * table.energy(heights[-2], b, c)
            acc = out.setdefault(c, {}).setdefault(b, {})
            acc[e] = acc.get(e, 0) + 1

    def walk(heights: list[int], energy: int, step: int) -> None:
        if step == N:
            close(heights, energy)
            return
        prev = heights[-1]
        for y in nbr[prev]:
            extra = 0
            if step >= 1:
                extra = step * table.energy(heights[-2], prev, y)
            heights.append(y)
            walk(heights, energy + extra, step + 1)
            heights.pop()

    walk([a], 0, 0)
    return out


def recursive_X(spec: ModelSpec, c: int, N: int) -> SumTable:
    """CTM recursion for fixed c; returns the full (a, b) table at size N."""
    for tab in _recursion_levels(spec, c, N):
        if tab.N == N:
            return tab
    raise AssertionError("unreachable")


def recursive_series(spec: ModelSpec, a: int, b: int, c: int, N: int) -> QSeries:
    return recursive_X(spec, c, N).series(a, b)


def recursion_levels(spec: ModelSpec, c: int, N_max: int) -> list[SumTable]:
    """SumTables for every size 0..N_max (one bottom-up sweep)."""
    return list(_recursion_levels(spec, c, N_max))


def _recursion_levels(spec: ModelSpec, c: int, N_max: int):
    if not 1 <= c <= spec.m_prime - 1:
        raise ValueError("boundary height outside the strip")
    if N_max < 0:
        raise ValueError("N must be >= 0")
    table = local_energy(spec)
    nbr = neighbors(spec)
    heights = list(spec.heights)
    pairs = [(d, e) for d in heights for e in nbr[d]]

    # level[(a, d, e)] = X_{a d e}^{(k)} as a raw {quarters: coeff} dict
    level: dict[tuple[int, int, int], dict[int, int]] = {}
    for a in heights:
        for (d, e) in pairs:
            if a == d:
                level[(a, d, e)] = {0: 1}

    yield _as_sumtable(spec, 0, c, heights, nbr, level)
    for k in range(1, N_max + 1):
        nxt: dict[tuple[int, int, int], dict[int, int]] = {}
        for (d, e) in pairs:
            shifts = [(f, k * table.energy(f, d, e)) for f in nbr[d]]
            for a in heights:
                acc: dict[int, int] = {}
                for f, sh in shifts:
                    prev = level.get((a, f, d))
                    if not prev:
                        continue
                    for exp, coeff in prev.items():
                        key = exp + sh
                        acc[key] = acc.get(key, 0) + coeff
                if acc:
                    nxt[(a, d, e)] = acc
        level = nxt
        yield _as_sumtable(spec, k, c, heights, nbr, level)


def _as_sumtable(spec, k, c, heights, nbr, level) -> SumTable:
    values = {}
    for a in heights:
        for b in nbr[c]:
            raw = level.get((a, b, c))
            if raw:
                values[(a, b)] = QSeries(dict(raw))
    return SumTable(spec, k, c, values)


def normalized_sum(spec: ModelSpec, r: int, s: int, N: int) -> tuple[QSeries, int]:
    """normalize(X) at the ground-state boundary of the Kac sector (r, s).

    Returns (series with constant term at q^0, stripped exponent in quarters).
    Raises if the sector supports no paths at this size (zero sum).
    """
    a, b, c = sector_map(spec, r, s)
    x = recursive_X(spec, c, N).series(a, b)
    if x.is_zero():
        raise ValueError(f"sector (r={r}, s={s}) has no size-{N} paths")
    return x.normalize()
