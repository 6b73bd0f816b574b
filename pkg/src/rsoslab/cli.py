"""Command-line front end.

Subcommands: model, energy, paths, onedsum, bosonic, character, loglimit,
verify, jm, ybe, algebra.  Global flags: --format {json,csv}, --cache-dir,
--jobs, --tol.  Output is deterministic for fixed arguments (sorted JSON
keys, fixed CSV headers, seeded sampling) and exit status 0 means every
requested check passed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import characters, onedsum, paths, ybe
from .cache import SeriesCache, cache_key
from .energy import local_energy_n1, local_energy_n2
from .model import (ModelSpec, band_structure, central_charge, neighbors,
                    shaded_band_count)
from .qseries import QSeries


def _print_json(doc) -> None:
    print(json.dumps(doc, sort_keys=True, indent=2))


def _print_csv(header, rows) -> None:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    sys.stdout.write(out.getvalue())


def _series_doc(series: QSeries) -> dict:
    return {"series": series.to_pairs(), "truncation": series.truncation}


def _spec(args, fusion=None) -> ModelSpec:
    return ModelSpec(args.m, args.mp, fusion if fusion is not None else args.fusion)


def cmd_model(args) -> int:
    spec = ModelSpec(args.m, args.mp, 1)
    bands = band_structure(spec)
    c = central_charge(spec)
    doc = {
        "m": spec.m,
        "m_prime": spec.m_prime,
        "lambda_num": spec.m_prime - spec.m,
        "lambda_den": spec.m_prime,
        "h": list(bands.h[1:spec.m_prime]),
        "delta": list(bands.delta[1:spec.m_prime - 1]),
        "rho": list(bands.rho),
        "rho0": list(bands.rho0),
        "rho1": list(bands.rho1),
        "c": f"{c.numerator}/{c.denominator}",
        "shaded_band_counts": {
            "n1": shaded_band_count(spec, 1),
            "n2": shaded_band_count(spec, 2),
        },
    }
    if args.format == "csv":
        _print_csv(["field", "value"], [(k, json.dumps(v, sort_keys=True))
                                        for k, v in sorted(doc.items())])
    else:
        _print_json(doc)
    return 0


def cmd_energy(args) -> int:
    spec = _spec(args)
    table = local_energy_n1(spec) if spec.fusion == 1 else local_energy_n2(spec)
    rows = sorted((d, a, b, q) for (d, a, b), q in table.entries.items())
    if args.format == "json":
        _print_json({"interval": table.interval_tag,
                     "entries": [list(r) for r in rows]})
    else:
        _print_csv(["d", "a", "b", "quarters"], rows)
    return 0


def cmd_paths(args) -> int:
    spec = _spec(args)
    walk = paths.enumerate_paths(spec, args.a, args.b, args.c, args.N)
    if args.count_only:
        _print_json({"count": sum(1 for _ in walk)})
    else:
        _print_json({"paths": [list(p) for p in walk]})
    return 0


def cmd_onedsum(args) -> int:
    spec = _spec(args)
    cache = SeriesCache(args.cache_dir) if args.cache_dir else None

    def compute(method: str) -> QSeries:
        key = cache_key(m=spec.m, m_prime=spec.m_prime, fusion=spec.fusion,
                        a=args.a, b=args.b, c=args.c, N=args.N, method=method)
        if cache is not None:
            hit = cache.get(key)
            if hit is not None:
                return hit
        if method == "brute":
            series = onedsum.brute_force_X(spec, args.a, args.b, args.c, args.N)
        else:
            series = onedsum.recursive_series(spec, args.a, args.b, args.c, args.N)
        if cache is not None:
            cache.put(key, series)
        return series

    if args.method == "both":
        brute = compute("brute")
        rec = compute("recursive")
        equal = brute == rec
        doc = {"method": "both", "equal": equal, **_series_doc(rec)}
        _print_json(doc)
        return 0 if equal else 1
    series = compute(args.method)
    if args.format == "csv":
        _print_csv(["quarters", "coefficient"], series.to_pairs())
    else:
        _print_json({"method": args.method, **_series_doc(series)})
    return 0


def cmd_bosonic(args) -> int:
    spec = ModelSpec(args.m, args.mp, 2)
    _print_json(_series_doc(characters.bosonic_finitized(spec, args.r, args.s, args.N)))
    return 0


def cmd_character(args) -> int:
    if args.kind == "bosonic":
        series = characters.bosonic_finitized(ModelSpec(args.m, args.mp, 2),
                                              args.r, args.s, args.N)
    elif args.kind == "virasoro":
        series = characters.virasoro_character(ModelSpec(args.m, args.mp, 1),
                                               args.r, args.s, args.K)
    else:
        series = characters.log_finitized(args.m, args.mp, args.r, args.s, args.N)
    _print_json({"kind": args.kind, **_series_doc(series)})
    return 0


def cmd_loglimit(args) -> int:
    series = characters.log_finitized(args.p, args.pp, args.r, args.s, args.N)
    _print_json(_series_doc(series))
    return 0


def _verify_one(task):
    m, mp, n_max, c, secs = task
    spec = ModelSpec(m, mp, 2)
    tables = onedsum.recursion_levels(spec, c, n_max)
    rows = []
    for (r, s, a, b) in secs:
        for tab in tables:
            x = tab.series(a, b)
            xhat = characters.bosonic_finitized(spec, r, s, tab.N)
            if x.is_zero() or xhat.is_zero():
                status = "empty" if (x.is_zero() and xhat.is_zero()) else "fail"
                rows.append((m, mp, r, s, tab.N, status, "", ""))
                continue
            nx, gx = x.normalize()
            nh, gh = xhat.normalize()
            status = "pass" if nx == nh else "fail"
            rows.append((m, mp, r, s, tab.N, status, gx, gh))
    return rows


def cmd_verify(args) -> int:
    from .model import sector_map
    if (args.m is None) != (args.mp is None):
        raise ValueError("give both --m and --mp, or neither for the full grid")
    if args.m is None:
        grid = [(pair, args.N if args.N is not None else n_max)
                for (pair, n_max) in characters.CONJECTURE_GRID]
    else:
        if args.N is None:
            raise ValueError("--N is required with an explicit model")
        grid = [((args.m, args.mp), args.N)]
    tasks = []
    for ((m, mp), n_max) in grid:
        spec = ModelSpec(m, mp, 2)
        by_c: dict[int, list] = {}
        for r in range(1, spec.m):
            for s in range(1, spec.m_prime):
                a, b, c = sector_map(spec, r, s)
                by_c.setdefault(c, []).append((r, s, a, b))
        tasks.extend((m, mp, n_max, c, secs) for c, secs in sorted(by_c.items()))
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            chunks = list(pool.map(_verify_one, tasks))
    else:
        chunks = [_verify_one(t) for t in tasks]
    rows = sorted(r for chunk in chunks for r in chunk)
    failures = [r for r in rows if r[5] == "fail"]
    if args.format == "json":
        _print_json({"rows": [list(r) for r in rows],
                     "failures": [list(r) for r in failures],
                     "pass": not failures})
    else:
        _print_csv(["m", "m_prime", "r", "s", "N", "status",
                    "gamma_lattice", "gamma_bosonic"], rows)
    if failures:
        print(json.dumps({"failures": [list(r)[:5] for r in failures]}),
              file=sys.stderr)
        return 1
    return 0


def cmd_jm(args) -> int:
    spec = ModelSpec(args.k + 1, 2 * args.k + 3, 2)
    table = local_energy_n2(spec)
    classes = []
    ok = True
    s0s = [args.s0] if args.s0 else range(1, args.k + 2)
    sNs = [args.sN] if args.sN else range(2, args.k + 2)
    for s0 in s0s:
        for sN in sNs:
            jms = list(paths.jm_enumerate(args.k, s0, sN, args.N))
            rsos = {p for p in paths.enumerate_paths(
                spec, 2 * s0 - 1, 2 * sN - 1, 2 * sN - 1, args.N)}
            images = set()
            offsets = set()
            for p in jms:
                image = paths.jm_to_rsos(p)
                images.add(image.heights)
                if paths.rsos_to_jm(image) != p:
                    ok = False
                offsets.add(paths.jm_energy(p)
                            - Fraction(image.energy(table), 4))
            if images != rsos:
                ok = False
            if len(offsets) > 1:
                ok = False
            classes.append({
                "s0": s0, "sN": sN, "count": len(jms),
                "energy_offset": str(offsets.pop()) if len(offsets) == 1 else None,
            })
    _print_json({"k": args.k, "N": args.N, "bijection_ok": ok,
                 "classes": classes})
    return 0 if ok else 1


def cmd_ybe(args) -> int:
    spec = ModelSpec(args.m, args.mp, args.fusion)
    if args.fusion == 1:
        wset = ybe.weights_1x1(spec, args.t)
    else:
        wset = ybe.weights_2x2_closed(spec, args.t)
    lam = spec.lambda_value()
    rng = random.Random(args.seed)
    worst = 0.0
    for _ in range(args.samples):
        u = rng.uniform(0.05, 0.45) * lam
        v = rng.uniform(0.05, 0.45) * lam
        worst = max(worst, ybe.ybe_residual(wset, u, v))
    passed = worst < args.tol
    _print_json({"m": spec.m, "m_prime": spec.m_prime, "fusion": args.fusion,
                 "t": args.t, "samples": args.samples,
                 "max_residual": worst, "tol": args.tol, "pass": passed})
    return 0 if passed else 1


def cmd_algebra(args) -> int:
    spec = ModelSpec(args.m, args.mp, 2)
    residuals: dict[str, float] = {}
    for a0 in ybe.allowed_a0(spec):
        rep = ybe.build_operator_rep(spec, args.sites, a0)
        rpt = ybe.check_algebra(rep, tol=args.tol)
        for name, val in rpt.residuals.items():
            residuals[name] = max(residuals.get(name, 0.0), val)
    passed = all(v <= args.tol for v in residuals.values())
    _print_json({"m": spec.m, "m_prime": spec.m_prime, "sites": args.sites,
                 "relations": residuals, "tol": args.tol, "pass": passed})
    return 0 if passed else 1


def _add_model_args(p, fusion_default=2):
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--mp", type=int, required=True, help="m' (> m, coprime)")
    p.add_argument("--fusion", type=int, default=fusion_default, choices=(1, 2))


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rsoslab", description=__doc__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--cache-dir", default=None)
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--tol", type=float, default=1e-10)
    sub = ap.add_subparsers(dest="command", required=True, parser_class=type(ap))

    def add_parser(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    p = add_parser("model", help="band structure and conformal data")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--mp", type=int, required=True)
    p.set_defaults(func=cmd_model)

    p = add_parser("energy", help="local energy table as (d, a, b, quarters)")
    _add_model_args(p)
    p.set_defaults(func=cmd_energy)

    p = add_parser("paths", help="enumerate admissible paths")
    _add_model_args(p)
    for name in ("a", "b", "c", "N"):
        p.add_argument(f"--{name}", type=int, required=True)
    p.add_argument("--count-only", action="store_true")
    p.set_defaults(func=cmd_paths)

    p = add_parser("onedsum", help="one-dimensional configurational sum")
    _add_model_args(p)
    for name in ("a", "b", "c", "N"):
        p.add_argument(f"--{name}", type=int, required=True)
    p.add_argument("--method", choices=("brute", "recursive", "both"),
                   default="recursive")
    p.set_defaults(func=cmd_onedsum)

    p = add_parser("bosonic", help="bosonic finitized character")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--mp", type=int, required=True)
    for name in ("r", "s", "N"):
        p.add_argument(f"--{name}", type=int, required=True)
    p.set_defaults(func=cmd_bosonic)

    p = add_parser("character", help="bosonic, virasoro or log series")
    p.add_argument("--kind", choices=("bosonic", "virasoro", "log"),
                   required=True)
    p.add_argument("--m", type=int, required=True, help="m (or p for log)")
    p.add_argument("--mp", type=int, required=True, help="m' (or p' for log)")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--N", type=int, default=8)
    p.add_argument("--K", type=int, default=12, help="virasoro truncation order")
    p.set_defaults(func=cmd_character)

    p = add_parser("loglimit", help="finitized character of the log family")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--pp", type=int, required=True)
    for name in ("r", "s", "N"):
        p.add_argument(f"--{name}", type=int, required=True)
    p.set_defaults(func=cmd_loglimit)

    p = add_parser("verify", help="lattice sums vs bosonic forms, all sectors; "
                                  "without --m/--mp runs the documented grid")
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--mp", type=int, default=None)
    p.add_argument("--N", type=int, default=None, help="largest size checked")
    p.set_defaults(func=cmd_verify)

    p = add_parser("jm", help="half-integer path bijection report")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--s0", type=int, default=None)
    p.add_argument("--sN", type=int, default=None)
    p.set_defaults(func=cmd_jm)

    p = add_parser("ybe", help="Yang-Baxter residual scan")
    _add_model_args(p, fusion_default=1)
    p.add_argument("--t", type=float, default=0.0)
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_ybe)

    p = add_parser("algebra", help="fused Temperley-Lieb relation residuals")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--mp", type=int, required=True)
    p.add_argument("--sites", type=int, default=4)
    p.set_defaults(func=cmd_algebra)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
