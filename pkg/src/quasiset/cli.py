"""
quasiset command line.

    quasiset facets   --config d10.cfg
    quasiset gen      --config d10.cfg --out d10.csv
    quasiset validate --config d10.cfg --oracle
    quasiset bench    --config y3.cfg

Exit status: 0 success, 1 validation failure, 2 usage or configuration error.
"""

import argparse
import logging
import sys
import time

import numpy as np

from . import analysis, export
from .config import ConfigError, parse_config
from .generator import TruncationError
from .pipeline import Pipeline, oracle_agreement
from .strip import never_active

SYMMETRY_RTOL = 1e-6


def _kv(key, value, out):
    if isinstance(value, float):
        value = format(value, ".12g")
    print(f"{key} = {value}", file=out)


def _load(args):
    with open(args.config, encoding="utf-8") as fh:
        cfg = parse_config(fh.read())
    return cfg, Pipeline.from_spec(cfg.group)


def _generate(cfg, p):
    return p.generate(cfg.radius, cfg.slack, cfg.max_points)


def cmd_facets(cfg, p, args, out):
    for key, value in p.strip.summary().items():
        _kv(key, value, out)
    _kv("k", p.cluster.k, out)
    _kv("n", p.cluster.n, out)
    return 0


def cmd_gen(cfg, p, args, out):
    q = _generate(cfg, p)
    report = analysis.covering_check(q, p.strip, p.embedding)
    if cfg.format == "csv":
        text = export.csv_text(q, report.occupation)
    elif cfg.format == "svg":
        text = export.svg_text(q)
    else:
        text = export.xyz_text(q)
    path = args.out or cfg.out
    if path is None or path == "-":
        out.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        print(f"wrote {len(q)} points to {path}", file=sys.stderr)
    return 0


def cmd_validate(cfg, p, args, out):
    q = _generate(cfg, p)
    ok = True
    report = analysis.covering_check(q, p.strip, p.embedding)
    _kv("points", len(q), out)
    _kv("collisions", q.collisions, out)
    for key, value in report.as_dict().items():
        if key != "points":
            _kv(key, value, out)
    _kv("occupation_definition", "fraction of the 2k positions q+c occupied by points of the set", out)
    if report.violations:
        ok = False

    tol = SYMMETRY_RTOL * p.embedding.kappa
    r_test = analysis.interior_limit(q)
    if r_test > 0 and np.any(np.linalg.norm(q.points, axis=1) <= r_test):
        gens = p.cluster.spec.generators()
        checks = [("generator_a", gens[0]), ("generator_b", gens[1])]
        checks.append(("inversion", -np.eye(p.cluster.n)))
        for name, g in checks:
            defect = analysis.symmetry_defect(q, g, r_test)
            _kv(f"symmetry_defect_{name}", defect, out)
            ok &= defect <= tol
    else:
        _kv("symmetry_defect", "skipped (radius too small for an interior patch)", out)

    if args.oracle:
        xs = _oracle_sample(q, p.cluster.k)
        diff, unexplained = oracle_agreement(p, xs)
        _kv("oracle_points", len(xs), out)
        _kv("oracle_disagreements", diff, out)
        _kv("oracle_unexplained", unexplained, out)
        idle = never_active(p.strip, xs) & ~p.strip.degenerate
        _kv("tuples_never_active", int(idle.sum()), out)
        ok &= unexplained == 0

    _kv("status", "ok" if ok else "FAILED", out)
    return 0 if ok else 1


def _oracle_sample(q, k):
    """Generated sources together with all their +-e_i neighbours."""
    steps = np.vstack([np.eye(k, dtype=np.int64), -np.eye(k, dtype=np.int64)])
    xs = (q.sources[:, None, :] + steps[None, :, :]).reshape(-1, k)
    return np.unique(np.vstack([q.sources, xs]), axis=0)


def cmd_bench(cfg, p, args, out):
    t0 = time.perf_counter()
    q = _generate(cfg, p)
    wall = time.perf_counter() - t0
    _kv("points", len(q), out)
    _kv("lattice_points_visited", q.visited, out)
    _kv("wall_time_s", wall, out)
    _kv("points_per_s", len(q) / wall if wall > 0 else float("inf"), out)
    return 0


COMMANDS = {
    "gen": cmd_gen,
    "validate": cmd_validate,
    "facets": cmd_facets,
    "bench": cmd_bench,
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="quasiset", description="Quasiperiodic point sets from G-clusters."
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--config", required=True, help="run configuration file")
        sp.add_argument("--out", help="output path, overrides 'out' in the config")
        if name == "validate":
            sp.add_argument(
                "--oracle", action="store_true", help="cross-check membership with the slow oracle"
            )
    return parser


def main(argv=None, out=None):
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        cfg, p = _load(args)
    except (ConfigError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"cannot read config: {exc}", file=sys.stderr)
        return 2
    try:
        return COMMANDS[args.command](cfg, p, args, out)
    except TruncationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 1


def main_entry():
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
