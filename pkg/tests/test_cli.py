"""Command-line surface and the on-disk series cache."""

import csv
import io
import json
import os
import threading


from rsoslab.cache import FORMAT_VERSION, SeriesCache, cache_key
from rsoslab.cli import main
from rsoslab.qseries import QSeries


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


class TestCacheStore:
    def test_round_trip(self, tmp_path):
        cache = SeriesCache(str(tmp_path))
        key = cache_key(m=2, m_prime=5, fusion=2, a=3, b=3, c=3, N=4,
                        method="recursive")
        series = QSeries({2: 1, 10: 10 ** 25, -4: -3})
        assert cache.get(key) is None
        cache.put(key, series)
        assert cache.get(key) == series

    def test_version_bump_misses(self, tmp_path):
        cache = SeriesCache(str(tmp_path))
        key = cache_key(m=2, m_prime=5)
        cache.put(key, QSeries({0: 1}))
        stale = dict(key, format_version=FORMAT_VERSION + 1)
        assert cache.get(stale) is None

    def test_corrupt_entry_is_a_miss(self, tmp_path, capsys):
        cache = SeriesCache(str(tmp_path))
        key = cache_key(m=2, m_prime=5)
        cache.put(key, QSeries({0: 1}))
        path = cache._path(key)
        with open(path, "w") as fh:
            fh.write("{ not json")
        assert cache.get(key) is None
        assert "corrupt" in capsys.readouterr().err
        cache.put(key, QSeries({4: 2}))
        assert cache.get(key) == QSeries({4: 2})

    def test_concurrent_writers_last_wins(self, tmp_path):
        cache = SeriesCache(str(tmp_path))
        key = cache_key(tag="race")
        errors = []

        def writer(i):
            try:
                for _ in range(40):
                    cache.put(key, QSeries({0: i}))
            except Exception as exc:  # noqa: BLE001
                errors.append(exc)

        threads = [threading.Thread(target=writer, args=(i,)) for i in (1, 2, 3)]
        for th in threads:
            th.start()
        for th in threads:
            th.join()
        assert not errors
        got = cache.get(key)
        assert got in {QSeries({0: i}) for i in (1, 2, 3)}
        assert not [f for f in os.listdir(tmp_path) if f.endswith(".tmp")]


class TestCli:
    def test_model_json(self, capsys):
        code, out = run_cli(capsys, "model", "--m", "4", "--mp", "11")
        assert code == 0
        doc = json.loads(out)
        assert doc["rho"] == [2, 5, 8]
        assert doc["rho0"] == [2, 6, 8] and doc["rho1"] == [3, 5, 9]
        assert doc["c"] == "-125/22"
        assert doc["shaded_band_counts"] == {"n1": 3, "n2": 0}

    def test_model_rejects_bad_pair(self, capsys):
        code = main(["model", "--m", "4", "--mp", "10"])
        assert code == 2
        assert "coprime" in capsys.readouterr().err

    def test_energy_csv(self, capsys):
        code, out = run_cli(capsys, "energy", "--m", "2", "--mp", "5",
                            "--fusion", "2", "--format", "csv")
        assert code == 0
        rows = list(csv.reader(io.StringIO(out)))
        assert rows[0] == ["d", "a", "b", "quarters"]
        assert ["1", "3", "1", "4"] in rows

    def test_onedsum_both_with_cache(self, capsys, tmp_path):
        args = ["onedsum", "--m", "2", "--mp", "5", "--fusion", "2",
                "--a", "3", "--b", "3", "--c", "3", "--N", "2",
                "--method", "both", "--cache-dir", str(tmp_path)]
        code, out = run_cli(capsys, *args)
        assert code == 0
        doc = json.loads(out)
        assert doc["equal"] is True
        assert doc["series"] == [[0, "1"], [4, "1"]]
        assert len(os.listdir(tmp_path)) == 2
        code2, out2 = run_cli(capsys, *args)  # served from cache
        assert code2 == 0 and json.loads(out2) == doc

    def test_output_byte_stable(self, capsys):
        _, out1 = run_cli(capsys, "verify", "--m", "2", "--mp", "5", "--N", "5",
                          "--format", "csv")
        _, out2 = run_cli(capsys, "verify", "--m", "2", "--mp", "5", "--N", "5",
                          "--format", "csv")
        assert out1 == out2

    def test_verify_csv_header_and_exit(self, capsys):
        code, out = run_cli(capsys, "verify", "--m", "2", "--mp", "7",
                            "--N", "6", "--format", "csv")
        assert code == 0
        header = out.splitlines()[0]
        assert header == "m,m_prime,r,s,N,status,gamma_lattice,gamma_bosonic"
        assert ",fail," not in out

    def test_verify_full_grid_default(self, capsys):
        # without --m/--mp the documented grid runs; cap the size to stay quick
        code, out = run_cli(capsys, "verify", "--N", "2", "--format", "csv")
        assert code == 0
        models = {tuple(line.split(",")[:2]) for line in out.splitlines()[1:]}
        assert ("2", "5") in models and ("5", "11") in models
        assert len(models) == 11

    def test_verify_jobs_parallel(self, capsys):
        _, serial = run_cli(capsys, "verify", "--m", "3", "--mp", "7", "--N", "4",
                            "--format", "csv")
        _, parallel = run_cli(capsys, "verify", "--m", "3", "--mp", "7", "--N", "4",
                              "--format", "csv", "--jobs", "2")
        assert serial == parallel

    def test_paths_and_count(self, capsys):
        code, out = run_cli(capsys, "paths", "--m", "2", "--mp", "5",
                            "--a", "3", "--b", "3", "--c", "3", "--N", "2")
        assert code == 0
        assert json.loads(out)["paths"] == [[3, 1, 3, 3], [3, 3, 3, 3]]
        code, out = run_cli(capsys, "paths", "--m", "2", "--mp", "5",
                            "--a", "3", "--b", "3", "--c", "3", "--N", "2",
                            "--count-only")
        assert json.loads(out)["count"] == 2

    def test_bosonic_and_characters(self, capsys):
        code, out = run_cli(capsys, "bosonic", "--m", "2", "--mp", "5",
                            "--r", "1", "--s", "1", "--N", "3")
        assert code == 0
        assert json.loads(out)["series"] == [[0, "1"], [8, "1"]]
        code, out = run_cli(capsys, "character", "--kind", "virasoro",
                            "--m", "2", "--mp", "5", "--r", "1", "--s", "1",
                            "--K", "6")
        assert json.loads(out)["series"] == \
            [[0, "1"], [8, "1"], [12, "1"], [16, "1"], [20, "1"], [24, "2"]]
        code, out = run_cli(capsys, "loglimit", "--p", "2", "--pp", "5",
                            "--r", "1", "--s", "1", "--N", "1")
        assert json.loads(out)["series"] == [[0, "1"]]

    def test_jm_report(self, capsys):
        code, out = run_cli(capsys, "jm", "--k", "1", "--N", "5")
        assert code == 0
        doc = json.loads(out)
        assert doc["bijection_ok"] is True
        offsets = {(c["s0"], c["sN"]): c["energy_offset"] for c in doc["classes"]}
        assert offsets[(1, 2)] == "-1/4"
        assert offsets[(2, 2)] == "0"

    def test_ybe_and_algebra(self, capsys):
        code, out = run_cli(capsys, "ybe", "--m", "2", "--mp", "5",
                            "--fusion", "2", "--samples", "4")
        assert code == 0
        doc = json.loads(out)
        assert doc["pass"] is True and doc["max_residual"] < 1e-10
        code, out = run_cli(capsys, "algebra", "--m", "2", "--mp", "5",
                            "--sites", "4")
        assert code == 0
        doc = json.loads(out)
        assert doc["pass"] is True
        assert "YYY cubic" in doc["relations"]
