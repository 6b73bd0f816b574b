"""Model descriptors, band shading and conformal data.

A model is the coprime pair (m, m') with 2 <= m < m' together with a fusion
level n in {1, 2}.  The crossing parameter is lambda = (m'-m)pi/m'; every
interval test against pi/n is done with exact integer cross-multiplication,
never with floats.  The shading data lives in BandStructure:

    h_a    = floor(a(m'-m)/m'), the number of unshaded 1-bands below height a
    delta_a = h_{a+1} - h_a in {0, 1}; 0 exactly when the 1-band (a, a+1)
              is shaded
    rho(r) = floor(r m'/m), r = 1..m-1, the lower edges of the shaded 1-bands
    rho0/rho1: the even and odd members of the pairs {rho(r), rho(r)+1}
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache


@dataclass(frozen=True)
class ModelSpec:
    """The pair (m, m') with a fusion level of 1 or 2."""

    m: int
    m_prime: int
    fusion: int = 2

    def __post_init__(self):
        if not (2 <= self.m < self.m_prime):
            raise ValueError(f"need 2 <= m < m', got ({self.m}, {self.m_prime})")
        if math.gcd(self.m, self.m_prime) != 1:
            raise ValueError(f"m and m' must be coprime, got ({self.m}, {self.m_prime})")
        if self.fusion == 3:
            raise ValueError("3x3 fusion is not supported (local energies for n=3 "
                             "are out of scope)")
        if self.fusion not in (1, 2):
            raise ValueError(f"fusion level must be 1 or 2, got {self.fusion}")

    @property
    def lambda_frac(self) -> Fraction:
        """Crossing parameter as a fraction of pi."""
        return Fraction(self.m_prime - self.m, self.m_prime)

    def lambda_value(self) -> float:
        return math.pi * (self.m_prime - self.m) / self.m_prime

    def lambda_below(self, n: int) -> bool:
        """Exact test of lambda < pi/n.  Equality cannot occur for coprime (m, m')."""
        lhs = n * (self.m_prime - self.m)
        if lhs == self.m_prime:
            raise AssertionError("lambda == pi/n impossible for coprime m, m'")
        return lhs < self.m_prime

    def dual(self) -> "ModelSpec":
        """The model (m'-m, m') obtained from the band-shading duality."""
        if self.m_prime - self.m < 2:
            raise ValueError(f"dual of ({self.m}, {self.m_prime}) has m = "
                             f"{self.m_prime - self.m} < 2")
        return ModelSpec(self.m_prime - self.m, self.m_prime, self.fusion)

    @property
    def heights(self) -> range:
        return range(1, self.m_prime)


@dataclass(frozen=True)
class BandStructure:
    """Shading data for a model; all tuples are indexed by absolute height/band.

    ``h`` has entries for a = 0..m' (h[0] = 0, h[m'] = m'-m).  ``delta`` has
    entries for a = 0..m'-1; the physical 1-bands are a = 1..m'-2.
    """

    spec: ModelSpec
    h: tuple[int, ...]
    delta: tuple[int, ...]
    rho: tuple[int, ...]
    rho0: tuple[int, ...]
    rho1: tuple[int, ...]


@lru_cache(maxsize=None)
def band_structure(spec: ModelSpec) -> BandStructure:
    m, mp = spec.m, spec.m_prime
    h = tuple((a * (mp - m)) // mp for a in range(mp + 1))
    delta = tuple(h[a + 1] - h[a] for a in range(mp))
    rho = tuple((r * mp) // m for r in range(1, m))
    rho0, rho1 = [], []
    for p in rho:
        even, odd = (p, p + 1) if p % 2 == 0 else (p + 1, p)
        rho0.append(even)
        rho1.append(odd)
    return BandStructure(spec, h, delta, rho, tuple(rho0), tuple(rho1))


def shaded_band_count(spec: ModelSpec, n: int | None = None) -> int:
    """Number of shaded n-bands: nm - (n-1)m' - 1 when lambda < pi/n, else 0.

    The formula value is asserted against a direct scan of delta for runs of
    n consecutive zeros, so a discrepancy fails loudly.
    """
    if n is None:
        n = spec.fusion
    if n < 1:
        raise ValueError("band width must be >= 1")
    m, mp = spec.m, spec.m_prime
    formula = n * m - (n - 1) * mp - 1 if spec.lambda_below(n) else 0
    delta = band_structure(spec).delta
    scan = sum(
        1
        for a in range(1, mp - n)
        if all(delta[a + i] == 0 for i in range(n))
    )
    if formula != scan:
        raise AssertionError(
            f"shaded {n}-band count mismatch for ({m},{mp}): formula {formula}, scan {scan}")
    return formula


def central_charge(spec: ModelSpec) -> Fraction:
    """c = 1 - 6(m'-m)^2 / (m m'), exact."""
    m, mp = spec.m, spec.m_prime
    return 1 - Fraction(6 * (mp - m) ** 2, m * mp)


def check_kac_labels(spec: ModelSpec, r: int, s: int) -> None:
    if not (1 <= r <= spec.m - 1):
        raise ValueError(f"Kac label r={r} outside 1..{spec.m - 1}")
    if not (1 <= s <= spec.m_prime - 1):
        raise ValueError(f"Kac label s={s} outside 1..{spec.m_prime - 1}")


def conformal_weight(spec: ModelSpec, r: int, s: int) -> Fraction:
    """Delta_{r,s} = ((r m' - s m)^2 - (m - m')^2) / (4 m m'), exact."""
    check_kac_labels(spec, r, s)
    m, mp = spec.m, spec.m_prime
    return Fraction((r * mp - s * m) ** 2 - (m - mp) ** 2, 4 * m * mp)


def sector_map(spec: ModelSpec, r: int, s: int) -> tuple[int, int, int]:
    """Boundary heights (a, b, c) of the sector with Kac labels (r, s).

    a = s and b = c is the member of {rho(r), rho(r)+1} whose parity matches
    s; the pair consists of consecutive integers, so the member exists.
    Only defined for fusion 2 with m' > 2m.
    """
    if spec.fusion != 2:
        raise ValueError("sector_map requires fusion level 2")
    if spec.lambda_below(2):
        raise ValueError("sector_map requires m' > 2m (lambda > pi/2)")
    check_kac_labels(spec, r, s)
    bands = band_structure(spec)
    mu = s % 2
    pair = (bands.rho[r - 1], bands.rho[r - 1] + 1)
    matches = [x for x in pair if x % 2 == mu]
    if not matches:
        raise ValueError(f"sector not supported: no parity-{mu} edge for r={r}")
    b = matches[0]
    return (s, b, b)


@lru_cache(maxsize=None)
def neighbors(spec: ModelSpec) -> dict[int, tuple[int, ...]]:
    """Adjacency on heights 1..m'-1 at the model's fusion level.

    n=1: |a-b| = 1.  n=2: a-b in {0, +-2} with 4 <= a+b <= 2m'-4, which bars
    heights 1 and m'-1 from self-adjacency.
    """
    mp = spec.m_prime
    table: dict[int, tuple[int, ...]] = {}
    for a in spec.heights:
        if spec.fusion == 1:
            cand = [a - 1, a + 1]
            table[a] = tuple(b for b in cand if 1 <= b <= mp - 1)
        else:
            cand = [a - 2, a, a + 2]
            table[a] = tuple(
                b for b in cand if 1 <= b <= mp - 1 and 4 <= a + b <= 2 * mp - 4)
    return table


def adjacent(spec: ModelSpec, a: int, b: int) -> bool:
    return b in neighbors(spec).get(a, ())
