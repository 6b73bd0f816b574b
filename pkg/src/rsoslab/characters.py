"""Bosonic finitized characters and their verification against lattice sums.

The finitized bosonic form attached to the Kac sector (r, s) of a fusion-2
model with m' > 2m is the reflection-alternating trinomial sum

    Xhat^{(N)} = sum_k [ q^{k(k m m' + m' r - m s)} T^{(N)}_{k m' + (b-a)/2}
                       - q^{(k m + r)(k m' + s)}   T^{(N)}_{k m' + (b+a)/2} ]

with (a, b, c) = sector heights (a = s, b = c).  Only the k with a trinomial
index of magnitude <= N contribute, which fixes the exact summation range.

The lattice sum X and the bosonic form agree after stripping each side's
lowest monomial; the stripped exponents (gammas) are reported, not assumed.
The same k-sum without trinomials, multiplied by the truncated inverse Euler
product, is the truncated Virasoro character the finitized forms stabilize
to as N grows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .model import ModelSpec, check_kac_labels, sector_map
from .onedsum import recursion_levels
from .qseries import QSeries, inv_euler_product, qtrinomial_T


# the documented verification grid: (m, m') with the largest size checked
CONJECTURE_GRID: tuple[tuple[tuple[int, int], int], ...] = (
    ((2, 5), 12), ((2, 7), 12), ((3, 7), 12), ((3, 8), 12),
    ((2, 9), 11), ((4, 9), 11),
    ((3, 10), 10),
    ((2, 11), 9), ((3, 11), 9), ((4, 11), 9), ((5, 11), 9),
)


@dataclass(frozen=True)
class Sector:
    r: int
    s: int
    a: int
    b: int
    c: int
    mu: int


def sector(spec: ModelSpec, r: int, s: int) -> Sector:
    a, b, c = sector_map(spec, r, s)
    return Sector(r, s, a, b, c, s % 2)


def _k_range(m_prime: int, half_indices: tuple[int, ...], N: int):
    """All k with |k m' + i| <= N for at least one of the given offsets i."""
    ks = set()
    for i in half_indices:
        lo = -(N + i)
        hi = N - i
        k0 = -(-lo // m_prime)  # ceil(lo / m')
        k1 = hi // m_prime
        ks.update(range(k0, k1 + 1))
    return sorted(ks)


def bosonic_finitized(spec: ModelSpec, r: int, s: int, N: int) -> QSeries:
    """The conjectured bosonic form of the size-N sector character, exact."""
    if N < 0:
        raise ValueError("N must be >= 0")
    sec = sector(spec, r, s)
    m, mp = spec.m, spec.m_prime
    i_minus = (sec.b - sec.a) // 2
    i_plus = (sec.b + sec.a) // 2
    total = QSeries.zero()
    for k in _k_range(mp, (i_minus, i_plus), N):
        e1 = k * (k * m * mp + mp * r - m * s)
        e2 = (k * m + r) * (k * mp + s)
        total = total + qtrinomial_T(N, k * mp + i_minus).shifted(4 * e1)
        total = total - qtrinomial_T(N, k * mp + i_plus).shifted(4 * e2)
    return total


@dataclass(frozen=True)
class VerifyRow:
    r: int
    s: int
    N: int
    status: str  # "pass" | "fail" | "empty"
    gamma_lattice: int | None  # quarters
    gamma_bosonic: int | None  # quarters


def verify_bosonic(spec: ModelSpec, N_max: int,
                   sectors: list[tuple[int, int]] | None = None) -> list[VerifyRow]:
    """Compare normalize(lattice X) with normalize(bosonic form) sector by sector.

    Every (r, s) in the Kac table and every N <= N_max is checked; a sector
    with no paths at some size passes vacuously when both sides vanish.
    """
    if sectors is None:
        sectors = [(r, s) for r in range(1, spec.m)
                   for s in range(1, spec.m_prime)]
    by_c: dict[int, list[tuple[int, int, int, int]]] = {}
    for (r, s) in sectors:
        a, b, c = sector_map(spec, r, s)
        by_c.setdefault(c, []).append((r, s, a, b))
    rows = []
    for c, secs in sorted(by_c.items()):
        tables = recursion_levels(spec, c, N_max)
        for (r, s, a, b) in secs:
            for tab in tables:
                x = tab.series(a, b)
                xhat = bosonic_finitized(spec, r, s, tab.N)
                if x.is_zero() or xhat.is_zero():
                    status = "empty" if (x.is_zero() and xhat.is_zero()) else "fail"
                    rows.append(VerifyRow(r, s, tab.N, status, None, None))
                    continue
                nx, gx = x.normalize()
                nh, gh = xhat.normalize()
                status = "pass" if nx == nh else "fail"
                rows.append(VerifyRow(r, s, tab.N, status, gx, gh))
    return rows


def all_pass(rows: list[VerifyRow]) -> bool:
    return all(row.status != "fail" for row in rows)


@dataclass(frozen=True)
class KacRow:
    r: int
    s: int
    N: int
    equal: bool


def kac_symmetry_check(spec: ModelSpec, N_max: int) -> list[KacRow]:
    """Exact equality of the bosonic form at (r, s) and (m-r, m'-s)."""
    rows = []
    seen = set()
    for r in range(1, spec.m):
        for s in range(1, spec.m_prime):
            key = frozenset({(r, s), (spec.m - r, spec.m_prime - s)})
            if key in seen:
                continue
            seen.add(key)
            for N in range(N_max + 1):
                lhs = bosonic_finitized(spec, r, s, N)
                rhs = bosonic_finitized(spec, spec.m - r, spec.m_prime - s, N)
                rows.append(KacRow(r, s, N, lhs == rhs))
    return rows


def virasoro_character(spec: ModelSpec, r: int, s: int, K: int) -> QSeries:
    """Normalized Virasoro character (no q^{-c/24+Delta} prefactor), truncated at q^K.

    The theta-like k-sum is clipped by the exact exponent bound; the result
    carries truncation order K.
    """
    check_kac_labels(spec, r, s)
    if K < 0:
        raise ValueError("truncation order must be >= 0")
    m, mp = spec.m, spec.m_prime
    numer: dict[int, int] = {}
    k = 0
    while True:
        hit = False
        for kk in ((k, -k) if k else (0,)):
            e1 = kk * (kk * m * mp + mp * r - m * s)
            e2 = (kk * m + r) * (kk * mp + s)
            if e1 <= K:
                numer[4 * e1] = numer.get(4 * e1, 0) + 1
                hit = True
            if e2 <= K:
                numer[4 * e2] = numer.get(4 * e2, 0) - 1
                hit = True
        if not hit and k > 0:
            break
        k += 1
    return QSeries(numer, truncation=4 * K) * inv_euler_product(K)


@dataclass(frozen=True)
class StabilizationReport:
    spec: ModelSpec
    r: int
    s: int
    sizes: tuple[int, ...]
    agreement_orders: tuple[int, ...]  # K(N), integer orders of q
    non_decreasing: bool
    prefix_match: bool


def stabilization_check(spec: ModelSpec, r: int, s: int,
                        N_list: list[int]) -> StabilizationReport:
    """Largest order K(N) at which normalize(Xhat^{(N)}) matches the Virasoro series.

    K(N) must be non-decreasing and the agreeing prefix must match exactly;
    both facts are recorded, not assumed.
    """
    orders = []
    prefix_ok = True
    for N in N_list:
        xhat = bosonic_finitized(spec, r, s, N)
        if xhat.is_zero():
            orders.append(-1)
            continue
        nx, _ = xhat.normalize()
        top = nx.degree() // 4 + 1
        ch = virasoro_character(spec, r, s, top)
        K = -1
        for t in range(top + 1):
            if nx.coeff_int(t) != ch.coeff_int(t):
                break
            K = t
        orders.append(K)
        if K < 0:
            prefix_ok = False
    non_dec = all(x <= y for x, y in zip(orders, orders[1:]))
    return StabilizationReport(spec, r, s, tuple(N_list), tuple(orders),
                               non_dec, prefix_ok)


def log_sector_heights(p: int, p_prime: int, r: int, s: int) -> tuple[int, int]:
    """Limiting sector data (a, b) for the logarithmic family (p, p').

    Same construction as the finite models: a = s and b is the parity-matched
    member of {floor(r p'/p), floor(r p'/p) + 1}.  Here r, s >= 1 are not
    capped by a Kac table.
    """
    if not (1 <= p and p_prime > 2 * p):
        raise ValueError("need 1 <= p < p'/2")
    if math.gcd(p, p_prime) != 1:
        raise ValueError("p and p' must be coprime")
    if r < 1 or s < 1:
        raise ValueError("labels r, s must be >= 1")
    rho = (r * p_prime) // p
    pair = (rho, rho + 1)
    b = pair[0] if pair[0] % 2 == s % 2 else pair[1]
    return (s, b)


def log_finitized(p: int, p_prime: int, r: int, s: int, N: int) -> QSeries:
    """Finitized Kac character of the logarithmic family: T_{(b-a)/2} - q^{rs} T_{(b+a)/2}."""
    a, b = log_sector_heights(p, p_prime, r, s)
    return (qtrinomial_T(N, (b - a) // 2)
            - qtrinomial_T(N, (b + a) // 2).shifted(4 * r * s))
