"""One-dimensional sums: oracle equivalence, counts, normalization."""

import random

import pytest

from rsoslab.model import ModelSpec, neighbors
from rsoslab.onedsum import (brute_force_X, brute_force_table, normalized_sum,
                             recursion_levels, recursive_X, recursive_series)
from rsoslab.paths import count_paths
from rsoslab.qseries import QSeries


def poly(*coeffs):
    return QSeries.from_int_coeffs(coeffs)


class TestBruteForce:
    def test_frozen_examples(self):
        spec = ModelSpec(2, 5)
        assert brute_force_X(spec, 3, 3, 3, 2) == poly(1, 1)
        assert brute_force_X(spec, 1, 3, 3, 3) == QSeries({2: 1, 10: 1})
        # N = 0 boundary: delta_{a,b}
        assert brute_force_X(spec, 3, 3, 3, 0) == QSeries.one()
        assert brute_force_X(spec, 1, 3, 3, 0) == QSeries.zero()

    def test_empty_boundaries_are_zero(self):
        spec = ModelSpec(2, 5)
        assert brute_force_X(spec, 2, 3, 3, 4) == QSeries.zero()  # parity
        assert brute_force_X(spec, 3, 1, 1, 4) == QSeries.zero()  # 1 !~ 1


class TestRecursion:
    def test_N0_table_is_identity(self):
        spec = ModelSpec(3, 7)
        tab = recursive_X(spec, 3, 0)
        nbr = neighbors(spec)
        for a in spec.heights:
            for b in nbr[3]:
                expect = QSeries.one() if a == b else QSeries.zero()
                assert tab.series(a, b) == expect

    def test_matches_brute_force(self):
        for pair, n_max in [((2, 5), 8), ((3, 7), 7)]:
            spec = ModelSpec(*pair)
            nbr = neighbors(spec)
            for c in spec.heights:
                tables = recursion_levels(spec, c, n_max)
                for a in spec.heights:
                    truth = {N: brute_force_table(spec, a, c, N)
                             for N in range(n_max + 1)}
                    for tab in tables:
                        for b in nbr[c]:
                            assert tab.series(a, b) == \
                                truth[tab.N].get(b, QSeries.zero())

    def test_matches_brute_force_below_half_interval(self):
        # models with lambda < pi/2 run the other n=2 energy table; spot-check
        # boundary and even-sector heights there as well
        for pair in [(5, 8), (7, 11), (5, 13)]:
            spec = ModelSpec(*pair)
            nbr = neighbors(spec)
            for c in (1, 2, spec.m_prime - 1, spec.m_prime // 2):
                levels = recursion_levels(spec, c, 5)
                for a in (1, 2, spec.m_prime - 1):
                    truth = {N: brute_force_table(spec, a, c, N)
                             for N in range(6)}
                    for tab in levels:
                        for b in nbr[c]:
                            assert tab.series(a, b) == \
                                truth[tab.N].get(b, QSeries.zero()), \
                                (pair, a, b, c, tab.N)

    def test_fusion1_matches_too(self):
        spec = ModelSpec(2, 5, 1)
        for c in spec.heights:
            for a in spec.heights:
                for b in neighbors(spec)[c]:
                    assert recursive_series(spec, a, b, c, 6) == \
                        brute_force_X(spec, a, b, c, 6)

    def test_randomized_count_identity(self):
        rng = random.Random(7041776)
        pool = [(2, 5), (3, 5), (2, 7), (3, 7), (4, 7), (2, 9), (4, 9),
                (3, 10), (4, 11), (7, 11)]
        done = 0
        while done < 120:
            m, mp = rng.choice(pool)
            fusion = rng.choice((1, 2))
            spec = ModelSpec(m, mp, fusion)
            nbr = neighbors(spec)
            a = rng.choice(list(spec.heights))
            c = rng.choice(list(spec.heights))
            if not nbr[c]:
                continue
            b = rng.choice(nbr[c])
            N = rng.randrange(0, 7)
            x = recursive_series(spec, a, b, c, N)
            assert x.eval_q1() == count_paths(spec, a, b, c, N)
            assert all(coeff > 0 for _, coeff in x.items())
            done += 1


class TestNormalizedSum:
    def test_frozen_examples(self):
        spec = ModelSpec(2, 5)
        assert normalized_sum(spec, 1, 1, 2) == (QSeries.one(), 2)
        assert normalized_sum(spec, 1, 2, 2) == (poly(1, 1), 0)
        assert normalized_sum(spec, 1, 1, 3) == (poly(1, 0, 1), 2)

    def test_zero_sector_raises(self):
        with pytest.raises(ValueError):
            normalized_sum(ModelSpec(2, 5), 1, 1, 0)

    def test_ground_sector_leading_coefficient(self):
        # the minimal path in a ground-state sector is unique
        for pair, n_max in [((2, 5), 8), ((3, 7), 8), ((4, 9), 8)]:
            spec = ModelSpec(*pair)
            for r in range(1, spec.m):
                for s in range(1, spec.m_prime):
                    for N in range(1, n_max + 1):
                        try:
                            series, _ = normalized_sum(spec, r, s, N)
                        except ValueError:
                            continue
                        assert series.coeff(0) == 1
