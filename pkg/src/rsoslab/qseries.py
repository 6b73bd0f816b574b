"""Exact Laurent polynomials in q with quarter-integer exponents.

A QSeries is a finite sum  sum_e  c_e * q^(e/4)  with integer exponent keys
``e`` (quarters) and arbitrary-precision integer coefficients.  All arithmetic
is exact; there is no floating point anywhere in this module.  A series can
carry an inclusive truncation order (also in quarters), in which case every
operation silently drops terms above the order and the result is marked
truncated.  Mixing a truncated and an exact operand takes the tighter
truncation.

The module also provides the q-combinatorial building blocks used elsewhere:
q-factorials (q)_n, q-multinomials [n; l, m], q-trinomials T_k^(N) and the
truncated inverse Euler product 1/(q)_oo whose coefficients are the partition
numbers.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator


class QSeries:
    """Immutable exact series in q on the quarter-exponent grid.

    ``terms`` maps quarter-exponent -> nonzero integer coefficient.
    ``truncation`` is an inclusive quarter-exponent bound, or None for an
    exact (untruncated) series.  Instances must not be mutated after
    construction; every operation returns a new object.
    """

    __slots__ = ("terms", "truncation")

    def __init__(self, terms: dict[int, int] | None = None,
                 truncation: int | None = None):
        clean: dict[int, int] = {}
        if terms:
            for e, c in terms.items():
                if not isinstance(e, int) or not isinstance(c, int):
                    raise ValueError("exponents (quarters) and coefficients must be int")
                if c != 0 and (truncation is None or e <= truncation):
                    clean[e] = c
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "truncation", truncation)

    def __setattr__(self, name, value):
        raise AttributeError("QSeries is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def _raw(cls, terms: dict[int, int], truncation: int | None) -> "QSeries":
        """Trusted constructor: ``terms`` already clean (no zeros, in range)."""
        obj = cls.__new__(cls)
        object.__setattr__(obj, "terms", terms)
        object.__setattr__(obj, "truncation", truncation)
        return obj

    @classmethod
    def zero(cls, truncation: int | None = None) -> "QSeries":
        return cls._raw({}, truncation)

    @classmethod
    def one(cls) -> "QSeries":
        return cls._raw({0: 1}, None)

    @classmethod
    def monomial(cls, quarters: int, coeff: int = 1) -> "QSeries":
        """coeff * q^(quarters/4)."""
        if coeff == 0:
            return cls.zero()
        return cls._raw({int(quarters): int(coeff)}, None)

    @classmethod
    def from_int_coeffs(cls, coeffs: Iterable[int], low: int = 0) -> "QSeries":
        """Series with integer exponents low, low+1, ... and the given coefficients."""
        terms = {4 * (low + i): int(c) for i, c in enumerate(coeffs) if c != 0}
        return cls._raw(terms, None)

    # -- basic queries -------------------------------------------------------

    @property
    def is_exact(self) -> bool:
        return self.truncation is None

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, quarters: int) -> int:
        return self.terms.get(quarters, 0)

    def coeff_int(self, n: int) -> int:
        """Coefficient of q^n for integer n."""
        return self.terms.get(4 * n, 0)

    def valuation(self) -> int:
        """Lowest exponent present, in quarters.  Errors on the zero series."""
        if not self.terms:
            raise ValueError("zero series has no valuation")
        return min(self.terms)

    def degree(self) -> int:
        """Highest exponent present, in quarters.  Errors on the zero series."""
        if not self.terms:
            raise ValueError("zero series has no degree")
        return max(self.terms)

    # -- arithmetic ----------------------------------------------------------

    @staticmethod
    def _merge_trunc(a: int | None, b: int | None) -> int | None:
        if a is None:
            return b
        if b is None:
            return a
        return min(a, b)

    def _clip(self, terms: dict[int, int], trunc: int | None) -> "QSeries":
        if trunc is not None:
            terms = {e: c for e, c in terms.items() if c != 0 and e <= trunc}
        else:
            terms = {e: c for e, c in terms.items() if c != 0}
        return QSeries._raw(terms, trunc)

    def __add__(self, other: "QSeries") -> "QSeries":
        if not isinstance(other, QSeries):
            return NotImplemented
        trunc = self._merge_trunc(self.truncation, other.truncation)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return self._clip(terms, trunc)

    def __neg__(self) -> "QSeries":
        return QSeries._raw({e: -c for e, c in self.terms.items()}, self.truncation)

    def __sub__(self, other: "QSeries") -> "QSeries":
        if not isinstance(other, QSeries):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: "QSeries") -> "QSeries":
        if not isinstance(other, QSeries):
            return NotImplemented
        trunc = self._merge_trunc(self.truncation, other.truncation)
        terms: dict[int, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                if trunc is not None and e > trunc:
                    continue
                terms[e] = terms.get(e, 0) + c1 * c2
        return self._clip(terms, trunc)

    def scale(self, k: int) -> "QSeries":
        if k == 0:
            return QSeries.zero(self.truncation)
        return QSeries._raw({e: k * c for e, c in self.terms.items()}, self.truncation)

    def shifted(self, quarters: int) -> "QSeries":
        """Multiply by q^(quarters/4)."""
        new_trunc = None if self.truncation is None else self.truncation + quarters
        return QSeries._raw({e + quarters: c for e, c in self.terms.items()}, new_trunc)

    def truncated(self, order_quarters: int) -> "QSeries":
        trunc = self._merge_trunc(self.truncation, order_quarters)
        return self._clip(dict(self.terms), trunc)

    def exact_div(self, other: "QSeries") -> "QSeries":
        """Exact polynomial division; errors unless the remainder is zero.

        Both operands must be exact.  Division proceeds from the top degree;
        every quotient coefficient must be an exact integer ratio.
        """
        if not self.is_exact or not other.is_exact:
            raise ValueError("exact_div requires untruncated operands")
        if other.is_zero():
            raise ZeroDivisionError("division by the zero series")
        if self.is_zero():
            return QSeries.zero()
        rem = dict(self.terms)
        den_deg = other.degree()
        den_lead = other.terms[den_deg]
        low = self.valuation() - other.valuation()
        quot: dict[int, int] = {}
        while rem:
            diff = max(rem) - den_deg
            if diff < low:
                raise ValueError("nonzero remainder in exact division")
            c, r = divmod(rem[max(rem)], den_lead)
            if r != 0:
                raise ValueError("non-integral quotient in exact division")
            quot[diff] = c
            for de, dc in other.terms.items():
                k = de + diff
                v = rem.get(k, 0) - dc * c
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        return QSeries._raw({e: c for e, c in quot.items() if c != 0}, None)

    # -- evaluation / normalization -------------------------------------------

    def eval_q1(self) -> int:
        """Sum of all coefficients (the value at q = 1).

        Only meaningful for exact series; a truncated series has lost terms.
        """
        if not self.is_exact:
            raise ValueError("eval_q1 is undefined for a truncated series")
        return sum(self.terms.values())

    def normalize(self) -> tuple["QSeries", int]:
        """Strip the lowest monomial: return (self / q^(v/4), v) with v the valuation."""
        if self.is_zero():
            raise ValueError("cannot normalize zero series")
        v = self.valuation()
        return self.shifted(-v), v

    # -- comparison / encoding -------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.terms == other.terms and self.truncation == other.truncation

    def __hash__(self):
        return hash((frozenset(self.terms.items()), self.truncation))

    def __getstate__(self):
        return (self.terms, self.truncation)

    def __setstate__(self, state):
        object.__setattr__(self, "terms", state[0])
        object.__setattr__(self, "truncation", state[1])

    def to_pairs(self) -> list[list]:
        """JSON encoding: [quarters, coefficient-as-decimal-string] sorted by exponent."""
        return [[e, str(self.terms[e])] for e in sorted(self.terms)]

    @classmethod
    def from_pairs(cls, pairs: Iterable[Iterable],
                   truncation: int | None = None) -> "QSeries":
        terms = {int(e): int(c) for e, c in pairs}
        return cls(terms, truncation)

    def items(self) -> Iterator[tuple[int, int]]:
        return iter(sorted(self.terms.items()))

    def __repr__(self) -> str:
        if not self.terms:
            body = "0"
        else:
            pieces = []
            for e in sorted(self.terms):
                c = self.terms[e]
                mono = _monomial_str(e)
                if mono == "1":
                    term = str(c)
                elif c == 1:
                    term = mono
                elif c == -1:
                    term = "-" + mono
                else:
                    term = f"{c}*{mono}"
                pieces.append(term)
            body = " + ".join(pieces).replace("+ -", "- ")
        if self.truncation is not None:
            exp = Fraction(self.truncation, 4)
            return f"QSeries({body} + O(q^{exp}))"
        return f"QSeries({body})"


def _monomial_str(quarters: int) -> str:
    if quarters == 0:
        return "1"
    if quarters == 4:
        return "q"
    e = Fraction(quarters, 4)
    if e.denominator == 1:
        return f"q^{e.numerator}"
    return f"q^({e})"


# ---------------------------------------------------------------------------
# q-combinatorics
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def qfactorial(n: int) -> QSeries:
    """(q)_n = prod_{k=1}^{n} (1 - q^k), with (q)_0 = 1."""
    if n < 0:
        raise ValueError("qfactorial needs n >= 0")
    if n == 0:
        return QSeries.one()
    return qfactorial(n - 1) * (QSeries.one() - QSeries.monomial(4 * n))


@lru_cache(maxsize=None)
def qmultinomial(n: int, l: int, m: int) -> QSeries:
    """[n; l, m] = (q)_n / ((q)_l (q)_m (q)_{n-l-m}), zero when any index is negative.

    The quotient is always a polynomial; the division asserts a zero remainder.
    """
    if n < 0:
        raise ValueError("qmultinomial needs n >= 0")
    r = n - l - m
    if l < 0 or m < 0 or r < 0:
        return QSeries.zero()
    return qfactorial(n).exact_div(qfactorial(l) * qfactorial(m) * qfactorial(r))


@lru_cache(maxsize=None)
def qtrinomial_T(N: int, k: int) -> QSeries:
    """T_k^(N)(q) = sum_j q^{j(j+k)} [N; j, j+k], the q-deformed trinomial.

    Counts N-step walks on A_oo with steps {+1, 0, -1} and displacement k,
    weighted by q.  Satisfies T_k = T_{-k}; zero when |k| > N.
    """
    if N < 0:
        raise ValueError("qtrinomial_T needs N >= 0")
    k = abs(k)
    if k > N:
        return QSeries.zero()
    total = QSeries.zero()
    j = 0
    while 2 * j + k <= N:
        total = total + qmultinomial(N, j, j + k).shifted(4 * j * (j + k))
        j += 1
    return total


def inv_euler_product(order: int) -> QSeries:
    """Truncated 1/(q)_oo: coefficient of q^n is the number of partitions of n.

    Computed by the bounded-coin expansion of prod_k 1/(1 - q^k); the result
    carries truncation order ``order`` (in integer powers of q).
    """
    if order < 0:
        raise ValueError("inv_euler_product needs order >= 0")
    coeffs = [0] * (order + 1)
    coeffs[0] = 1
    for k in range(1, order + 1):
        for i in range(k, order + 1):
            coeffs[i] += coeffs[i - k]
    terms = {4 * i: c for i, c in enumerate(coeffs) if c != 0}
    return QSeries(terms, truncation=4 * order)
