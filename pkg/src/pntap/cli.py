"""Command-line front end: per-layer probes plus the verification suites.

Exit codes: 0 pass, 1 hard-check failure, 2 usage error, 3 resource error.
Global flags (--limit, --table-cache, --seed, --jobs, --format, --out) may
also come from a flat key=value config file via --config; explicit flags
win.  All output is deterministic for a fixed configuration.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from ._util import fmt, write_csv
from .arith import ArithmeticTables
from .characters import character_group
from .expsums import nit_scan, sifted_character_sum
from .multfunc import (
    ArchimedeanTwist,
    CharacterFunction,
    ConstantOne,
    Mobius,
    ProductFunction,
    RandomUnitDisc,
    distance,
    triangle_check,
)
from .exceptions import PntapError
from .pnt_ap import eta_q, profile_report, psi_ap
from .series import (
    SeriesContext,
    evaluate_series,
    l1_residual,
    lchi_bound_monitor,
)
from .siegel import siegel_scan, zerol1_hypothesis_check
from .sieve_weights import build_weights, mean_value, sandwich_check
from . import verify as verify_mod

GLOBAL_KEYS = ("limit", "table_cache", "seed", "jobs", "format", "out")


def parse_function(name: str, tables: ArithmeticTables):
    """NAME grammar: one | mu | nit:T | chi:Q:IDX | random:SEED, joined
    with '*' for pointwise products."""
    atoms = name.split("*")
    fs = []
    for atom in atoms:
        parts = atom.split(":")
        kind = parts[0]
        if kind == "one" and len(parts) == 1:
            fs.append(ConstantOne())
        elif kind == "mu" and len(parts) == 1:
            fs.append(Mobius())
        elif kind == "nit" and len(parts) == 2:
            fs.append(ArchimedeanTwist(float(parts[1])))
        elif kind == "chi" and len(parts) == 3:
            group = character_group(int(parts[1]))
            fs.append(CharacterFunction(group.character_by_index(int(parts[2]))))
        elif kind == "random" and len(parts) == 2:
            fs.append(RandomUnitDisc(int(parts[1]), tables))
        else:
            raise ValueError(
                f"unknown function {atom!r}; grammar: one|mu|nit:T|chi:Q:IDX|random:SEED"
            )
    out = fs[0]
    for f in fs[1:]:
        out = ProductFunction(out, f)
    return out


def read_config_file(path: str) -> dict:
    """Flat key=value lines; '#' starts a comment; keys match global flags."""
    out = {}
    with open(path) as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"bad config line (want key=value): {raw.strip()!r}")
            key, value = (s.strip() for s in line.split("=", 1))
            key = key.replace("-", "_")
            if key not in GLOBAL_KEYS:
                raise ValueError(f"unknown config key {key!r}")
            out[key] = value
    return out


def _global_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--limit", default=None, help="table limit (default 1e6)")
    parser.add_argument("--table-cache", default=None, help="tables cache file")
    parser.add_argument("--seed", default=None, help="base seed (default 20260823)")
    parser.add_argument("--jobs", default=None, help="parallelism degree")
    parser.add_argument("--format", default=None, choices=("csv", "json"))
    parser.add_argument("--out", default=None, help="artifact directory")
    parser.add_argument("--config", default=None, help="flat key=value config file")


def build_config(args) -> verify_mod.RunConfig:
    file_cfg = read_config_file(args.config) if args.config else {}

    def pick(key, default):
        flag = getattr(args, key, None)
        if flag is not None:
            return flag
        return file_cfg.get(key, default)

    return verify_mod.RunConfig(
        limit=int(float(pick("limit", 10**6))),
        table_cache=pick("table_cache", None),
        seed=int(pick("seed", 20260823)),
        jobs=int(pick("jobs", 1)),
        fmt=pick("format", "csv"),
        out=pick("out", None),
        tmax=float(getattr(args, "tmax", None) or 10.0**6),
        qmax=int(getattr(args, "qmax", None) or 3000),
    )


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common)
    p = argparse.ArgumentParser(prog="pntap", parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    chars = sub.add_parser("characters", parents=[common])
    chars_sub = chars.add_subparsers(dest="characters_cmd", required=True)
    clist = chars_sub.add_parser("list", parents=[common])
    clist.add_argument("--modulus", type=int, required=True)
    clist.add_argument("--real-only", action="store_true")
    clist.add_argument("--json", action="store_true")

    dist = sub.add_parser("distance", parents=[common])
    dist.add_argument("--f", required=True)
    dist.add_argument("--g", required=True)
    dist.add_argument("--y", type=float, required=True)
    dist.add_argument("--x", type=float, required=True)

    fuzz = sub.add_parser("triangle-fuzz", parents=[common])
    fuzz.add_argument("--count", type=int, default=1000)
    fuzz.add_argument("--x", type=float, default=10.0**5)
    fuzz.add_argument("--csv", default=None)

    ser = sub.add_parser("series", parents=[common])
    ser_sub = ser.add_subparsers(dest="series_cmd", required=True)
    seval = ser_sub.add_parser("eval", parents=[common])
    seval.add_argument("--f", required=True)
    seval.add_argument("--y", type=float, default=2.0)
    seval.add_argument("--sigma", type=float, required=True)
    seval.add_argument("--t", type=float, default=0.0)
    seval.add_argument("--k", type=int, default=0)
    seval.add_argument("--tol", type=float, default=None)

    mon = sub.add_parser("monitor", parents=[common])
    mon.add_argument("kind", choices=("l1", "lchil1", "lchil2", "lchil3"))
    mon.add_argument("--q", type=int, required=True)
    mon.add_argument("--csv", default=None)

    exps = sub.add_parser("expsum", parents=[common])
    exps_sub = exps.add_subparsers(dest="expsum_cmd", required=True)
    nit = exps_sub.add_parser("nit-scan", parents=[common])
    nit.add_argument("--tmin", type=float, default=10.0)
    nit.add_argument("--tmax", type=float, default=10.0**6)
    nit.add_argument("--samples", type=int, default=6)
    nit.add_argument("--csv", default=None)
    chin = exps_sub.add_parser("chinit", parents=[common])
    chin.add_argument("--q", type=int, required=True)
    chin.add_argument("--chi-index", type=int, required=True)
    chin.add_argument("--t", type=float, default=0.0)
    chin.add_argument("--x", type=float, required=True)
    chin.add_argument("--y", type=float, default=10.0)

    sieve = sub.add_parser("sieve", parents=[common])
    sieve_sub = sieve.add_subparsers(dest="sieve_cmd", required=True)
    sv = sieve_sub.add_parser("verify", parents=[common])
    sv.add_argument("--y", type=float, required=True)
    sv.add_argument("--u", type=float, required=True)
    sv.add_argument("--nmax", type=int, default=10**5)
    sv.add_argument("--csv", default=None)

    sg = sub.add_parser("siegel", parents=[common])
    sg_sub = sg.add_subparsers(dest="siegel_cmd", required=True)
    scan = sg_sub.add_parser("scan", parents=[common])
    scan.add_argument("--qmax", type=int, default=300)
    scan.add_argument("--tol", type=float, default=None)
    scan.add_argument("--primitive-only", action="store_true")
    scan.add_argument("--csv", default=None)
    z = sg_sub.add_parser("zerol1-check", parents=[common])
    z.add_argument("--q1", type=int, required=True)
    z.add_argument("--q2", type=int, required=True)
    z.add_argument("--nmax", type=int, default=10**4)

    pap = sub.add_parser("pnt-ap", parents=[common])
    pap.add_argument("--q", type=int)
    pap.add_argument("--a", type=int)
    pap.add_argument("--x", type=float)
    pap_sub = pap.add_subparsers(dest="pnt_ap_cmd")
    prof = pap_sub.add_parser("profile", parents=[common])
    prof.add_argument("--q-set", required=True)
    prof.add_argument("--x-grid", required=True)
    prof.add_argument("--csv", default=None)

    eta = sub.add_parser("eta", parents=[common])
    eta.add_argument("--q", type=int, required=True)
    eta.add_argument("--tol", type=float, default=None)

    ver = sub.add_parser("verify", parents=[common])
    ver.add_argument("suite", choices=verify_mod.SUITE_NAMES + ("all",))
    ver.add_argument("--tmax", type=float, default=None)
    ver.add_argument("--qmax", type=int, default=None)
    return p


def _tail_terms_for_tol(tol: float | None) -> int:
    if tol is None:
        return 10
    for m in range(1, 13):
        if (1.0 / 32 + 1.0 / m) * 32.0 ** (-m) * 32.0 / 31.0 <= tol:
            return m
    return 12


def _emit_rows(args, header, rows, path):
    if path:
        write_csv(path, header, rows)
        print(f"wrote {len(rows)} rows to {path}")
    else:
        print(",".join(header))
        for row in rows:
            print(",".join(fmt(v) for v in row))


def _cmd_characters(args, config) -> int:
    group = character_group(args.modulus)
    chis = group.real_characters() if args.real_only else list(group.characters())
    records = [
        {
            "index": chi.index,
            "exponents": list(chi.exponents),
            "conductor": chi.conductor,
            "order": chi.order,
            "principal": chi.is_principal,
            "real": chi.is_real,
            "primitive": chi.is_primitive,
        }
        for chi in chis
    ]
    if args.json:
        print(json.dumps(records, indent=1, sort_keys=True))
    else:
        for r in records:
            flags = [
                name
                for name in ("principal", "real", "primitive")
                if r[name]
            ]
            exps = ",".join(str(e) for e in r["exponents"])
            print(
                f"chi:{args.modulus}:{r['index']} exponents=({exps})"
                f" conductor={r['conductor']} order={r['order']}"
                f" flags={'|'.join(flags) or '-'}"
            )
    return 0


def _cmd_distance(args, config) -> int:
    tables = verify_mod.get_tables(config)
    f = parse_function(args.f, tables)
    g = parse_function(args.g, tables)
    value = distance(f, g, args.y, args.x, tables)
    print(
        f"D({f.label},{g.label};{fmt(args.y)},{fmt(args.x)}) = {fmt(value)}"
        f" (squared {fmt(value * value)})"
    )
    return 0


def _cmd_triangle_fuzz(args, config) -> int:
    tables = verify_mod.get_tables(config)
    x = min(args.x, float(tables.limit))
    rows = []
    worst = math.inf
    for i in range(args.count):
        sf, sg = config.seed + 2 * i, config.seed + 2 * i + 1
        f = RandomUnitDisc(sf, tables)
        g = RandomUnitDisc(sg, tables)
        _, _, slack = triangle_check(f, g, 2.0, x, tables)
        worst = min(worst, slack)
        rows.append((sf, slack))
    _emit_rows(args, ["seed", "slack"], rows, args.csv)
    print(f"min slack over {args.count} pairs: {fmt(worst)}")
    return 0 if worst >= -1e-12 else 1


def _cmd_series_eval(args, config) -> int:
    tables = verify_mod.get_tables(config)
    f = parse_function(args.f, tables)
    ctx = SeriesContext(f, args.y, tables)
    sv = evaluate_series(ctx, complex(args.sigma, args.t), k=args.k, tol=args.tol)
    print(
        f"L_y^({args.k})(s,{f.label}) at s={fmt(args.sigma)}+{fmt(args.t)}i,"
        f" y={fmt(args.y)}: {fmt(sv.value)}"
        f" certificate={fmt(sv.certificate)} cutoff={sv.cutoff}"
    )
    return 0


def _cmd_monitor(args, config) -> int:
    tables = verify_mod.get_tables(config)
    group = character_group(args.q)
    if args.kind == "l1":
        header = ["f", "y", "x", "t", "log_abs_l", "prime_sum", "residual"]
        rows = []
        x_grid = [10.0**k for k in range(2, 7) if 10.0**k <= tables.limit]
        for chi in group.characters():
            f = CharacterFunction(chi)
            for y in (2.0, 10.0):
                rep = l1_residual(f, x_grid, (0.0, 1.0, -1.0, 5.0, -5.0), y, tables)
                rows.extend(
                    (r.f_label, r.y, r.x, r.t, r.log_abs_l, r.prime_sum, r.residual)
                    for r in rep.rows
                )
        _emit_rows(args, header, rows, args.csv)
        return 0
    k = int(args.kind[-1])
    header = [
        "chi",
        "sigma",
        "t",
        "lhs_derivative",
        "shape_derivative",
        "ratio_derivative",
        "lhs_logderiv",
        "shape_logderiv",
        "ratio_logderiv",
    ]
    rows = []
    for chi in group.characters():
        if chi.is_principal:
            continue
        rep = lchi_bound_monitor(chi, k, 10.0, tables, nmax=min(10**5, tables.limit))
        rows.extend(
            (
                f"chi:{args.q}:{chi.index}",
                r.sigma,
                r.t,
                r.lhs_derivative,
                r.shape_derivative,
                r.ratio_derivative,
                r.lhs_logderiv,
                r.shape_logderiv,
                r.ratio_logderiv,
            )
            for r in rep.rows
        )
    _emit_rows(args, header, rows, args.csv)
    return 0


def _cmd_nit_scan(args, config) -> int:
    if args.samples < 2 or args.tmin < 2.0 or args.tmax < args.tmin:
        raise ValueError("need samples >= 2 and 2 <= tmin <= tmax")
    ratio = (args.tmax / args.tmin) ** (1.0 / (args.samples - 1))
    ts = [args.tmin * ratio**i for i in range(args.samples)]
    ncap = min(10**6, config.limit)
    Ns = [2**j for j in range(1, 20) if 2**j <= ncap]
    rows = nit_scan(ts, Ns, shifts=(0.0, 0.5, 1.0))
    csv_rows = [
        (r.N, r.t, r.shift, r.magnitude, r.ceiling, r.ceiling - r.magnitude)
        for r in rows
    ]
    _emit_rows(args, ["N", "t", "u", "magnitude", "ceiling", "margin"], csv_rows, args.csv)
    worst = max(rows, key=lambda r: r.ratio)
    print(
        f"worst ratio {fmt(worst.ratio)} at N={worst.N} t={fmt(worst.t)}"
        f" u={fmt(worst.shift)}"
    )
    return 0


def _cmd_chinit(args, config) -> int:
    tables = verify_mod.get_tables(config)
    group = character_group(args.q)
    chi = group.character_by_index(args.chi_index)
    row = sifted_character_sum(chi, args.y, args.x, args.t, tables)
    print(
        f"chi:{args.q}:{args.chi_index} y={fmt(args.y)} x={fmt(args.x)}"
        f" t={fmt(args.t)}: S={fmt(row.total)} main={fmt(row.main)}"
        f" discrepancy={fmt(row.discrepancy)} shape_ratio={fmt(row.shape_ratio)}"
    )
    return 0


def _cmd_sieve_verify(args, config) -> int:
    tables = verify_mod.get_tables(config)
    w = build_weights(args.y, args.u, tables)
    rep = sandwich_check(w, min(args.nmax, tables.limit), tables)
    mv = mean_value(w, tables)
    if args.csv:
        write_csv(
            args.csv,
            ["d", "nu", "lambda_plus", "lambda_minus"],
            list(zip(w.d, w.nu, w.lambda_plus, w.lambda_minus)),
        )
    print(
        f"y={fmt(args.y)} u={fmt(args.u)} D={fmt(w.D)} support={len(w.d)}"
        f" truncation_bites={fmt(w.truncation_bites)}"
    )
    print(
        f"sandwich n <= {rep.x}: pointwise_ok={fmt(rep.pointwise_ok)}"
        f" violations={rep.violations} sifted_equality={fmt(rep.sifted_equality_ok)}"
        f" totals {rep.lower_total} <= {rep.indicator_total} <= {rep.upper_total}"
    )
    print(
        f"mean value: minus={fmt(mv.minus_sum)} main={fmt(mv.product_main)}"
        f" plus={fmt(mv.plus_sum)} fitted_c={fmt(mv.fitted_c)}"
    )
    return 0 if rep.pointwise_ok and rep.sifted_equality_ok else 1


def _cmd_siegel_scan(args, config) -> int:
    scan = siegel_scan(
        args.qmax,
        primitive_only=args.primitive_only,
        tail_terms=_tail_terms_for_tol(args.tol),
    )
    if args.csv:
        write_csv(
            args.csv,
            ["modulus", "chi_index", "conductor", "l_value", "sqrtq_l"],
            [
                (r.modulus, r.chi_index, r.conductor, r.l_value, r.sqrtq_l)
                for r in scan.rows
            ],
        )
        print(f"wrote {len(scan.rows)} rows to {args.csv}")
    print(
        f"qmax={args.qmax} rows={len(scan.rows)} min_l={fmt(scan.min_l)}"
        f" min_sqrtq_l={fmt(scan.min_sqrtq_l)}"
        f" fitted_exponent={fmt(scan.fitted_exponent)}"
    )
    return 0 if scan.min_l > 0.0 else 1


def _first_real_nonprincipal(q: int):
    group = character_group(q)
    for chi in group.real_characters():
        if not chi.is_principal:
            return chi
    raise ValueError(f"no real non-principal character mod {q}")


def _cmd_zerol1(args, config) -> int:
    tables = verify_mod.get_tables(config)
    chi1 = _first_real_nonprincipal(args.q1)
    chi2 = _first_real_nonprincipal(args.q2)
    rep = zerol1_hypothesis_check(chi1, chi2, min(args.nmax, tables.limit), tables)
    print(
        f"chi:{args.q1}:{chi1.index} x chi:{args.q2}:{chi2.index} n <= {rep.limit}:"
        f" nonneg={fmt(rep.nonneg_ok)} ceiling={fmt(rep.ceiling_ok)}"
        f" min={rep.min_value} series({fmt(rep.series_sigma)})={fmt(rep.series_value)}"
    )
    return 0 if rep.nonneg_ok and rep.ceiling_ok else 1


def _cmd_pnt_ap(args, config) -> int:
    if getattr(args, "pnt_ap_cmd", None) == "profile":
        tables = verify_mod.get_tables(config)
        q_set = [int(s) for s in args.q_set.split(",")]
        x_grid = [float(s) for s in args.x_grid.split(",")]
        rows = profile_report(q_set, x_grid, tables)
        header = ["q", "a", "x", "psi", "main", "error", "normalized", "fitted_cA"]
        flat = [
            (r.q, r.a, r.x, r.psi, r.main, r.error, r.normalized, r.fitted_cA)
            for r in rows
        ]
        _emit_rows(args, header, flat, args.csv)
        for q in sorted({r.q for r in rows}):
            for x in x_grid:
                worst = max(
                    (r.normalized for r in rows if r.q == q and r.x == x),
                    default=0.0,
                )
                print(f"q={q} x={fmt(x)} max_a normalized error {fmt(worst)}")
        return 0
    if args.q is None or args.a is None or args.x is None:
        raise ValueError("pnt-ap needs --q, --a and --x (or the profile subcommand)")
    tables = verify_mod.get_tables(config)
    psi = psi_ap(args.x, args.q, args.a, tables)
    phi_q = int(tables.totient[args.q]) if args.q > 1 else 1
    main = args.x / phi_q
    err = psi - main
    print(
        f"psi({fmt(args.x)};{args.q},{args.a}) = {fmt(psi)} main={fmt(main)}"
        f" error={fmt(err)} normalized={fmt(abs(err) * phi_q / args.x)}"
    )
    return 0


def _cmd_eta(args, config) -> int:
    value = eta_q(args.q)
    print(f"eta({args.q}) = {fmt(value) if value is not None else 'none'}")
    return 0


def _cmd_verify(args, config) -> int:
    result = verify_mod.run(config, suites=(args.suite,))
    text = verify_mod.render_text(result)
    sys.stdout.write(text)
    if config.out:
        paths = verify_mod.write_artifacts(result, config.out)
        for path in paths:
            print(f"artifact {path}")
    return 0 if result.passed else 1


def main(argv=None) -> int:
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on usage errors
        return int(exc.code or 0)
    try:
        config = build_config(args)
        if args.command == "characters":
            return _cmd_characters(args, config)
        if args.command == "distance":
            return _cmd_distance(args, config)
        if args.command == "triangle-fuzz":
            return _cmd_triangle_fuzz(args, config)
        if args.command == "series":
            return _cmd_series_eval(args, config)
        if args.command == "monitor":
            return _cmd_monitor(args, config)
        if args.command == "expsum":
            if args.expsum_cmd == "nit-scan":
                return _cmd_nit_scan(args, config)
            return _cmd_chinit(args, config)
        if args.command == "sieve":
            return _cmd_sieve_verify(args, config)
        if args.command == "siegel":
            if args.siegel_cmd == "scan":
                return _cmd_siegel_scan(args, config)
            return _cmd_zerol1(args, config)
        if args.command == "pnt-ap":
            return _cmd_pnt_ap(args, config)
        if args.command == "eta":
            return _cmd_eta(args, config)
        if args.command == "verify":
            return _cmd_verify(args, config)
        raise ValueError(f"unhandled command {args.command!r}")
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (PntapError, MemoryError) as exc:
        print(f"resource error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
