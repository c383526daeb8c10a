"""
Command line front end.

    dyndeg verify FILE...      verify instance files, assert curated ones
    dyndeg random              randomized key-equality campaign
    dyndeg catalog             dump the curated catalog as a batch file
    dyndeg report FILE...      tabulate degrees and entropies

Exit codes: 0 success, 1 assertion failure, 2 input error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys

from .algebra import AlbertType
from .degrees import DegreeReport, verify_main_theorem
from .errors import ConfigInvalid, DyndegError, SchemaError
from .instances import (GeneratorConfig, catalog, parse_document,
                        random_instance, serialize_batch, serialize_instance)

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2
DEFAULT_TOL = 1e-8

# per-type parameter ranges for random campaigns: blocks of side <= 4, e0 <= 3
RANDOM_DEFAULTS = {
    AlbertType.I: dict(e0_range=(1, 3), n_range=(1, 4)),
    AlbertType.II: dict(e0_range=(1, 3), n_range=(1, 2)),
    AlbertType.III: dict(e0_range=(1, 3), n_range=(1, 4)),
    AlbertType.IV: dict(e0_range=(1, 3), d_range=(1, 2), n_range=(1, 2)),
}


class InputError(Exception):
    pass


def _fmt(x):
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    if isinstance(x, float):
        return repr(x)
    return str(x)


def _json_value(x):
    if isinstance(x, float) and not math.isfinite(x):
        return None
    return x


def report_row(r: DegreeReport) -> dict:
    row = {"label": r.label, "g": r.g, "type_summary": r.type_summary}
    for i, c in enumerate(r.chi):
        row[f"chi_{i}"] = float(c)
    row.update(lambda1=float(r.lambda1), degree=int(r.degree), h_et=float(r.h_et),
               h_alg_partial=float(r.h_alg_partial), key_eq_residual=float(r.key_eq_residual),
               theorem_residual=float(r.theorem_residual), pairing_ok=bool(r.pairing_ok))
    return row


def report_columns(max_2g):
    return (["label", "g", "type_summary"] + [f"chi_{i}" for i in range(max_2g + 1)]
            + ["lambda1", "degree", "h_et", "h_alg_partial", "key_eq_residual",
               "theorem_residual", "pairing_ok"])


def render(rows, columns, fmt) -> str:
    if fmt == "json":
        out = [{k: _json_value(row[k]) for k in columns if k in row} for row in rows]
        return json.dumps(out, indent=2) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([_fmt(row[k]) if k in row else "" for k in columns])
    return buf.getvalue()


def _emit(text, out):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_paths(paths):
    instances = []
    for path in paths:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"{path}: {exc.strerror}") from exc
        try:
            instances.extend(parse_document(text))
        except SchemaError as exc:
            raise InputError(f"{path}: {exc}") from exc
    return instances


def _tol(value):
    tol = float(value)
    if not (0 < tol <= 1e-2):
        raise argparse.ArgumentTypeError(f"tolerance must lie in (0, 1e-2], got {value}")
    return tol


def _default_tol():
    env = os.environ.get("DYNDEG_TOL")
    return env if env is not None else DEFAULT_TOL


# -- commands -----------------------------------------------------------------

def cmd_verify(paths, tol=DEFAULT_TOL, fmt="csv", fail_fast=False, out=None) -> int:
    """One report row per instance; exit 1 iff an asserted instance fails."""
    try:
        instances = _load_paths(paths)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    rows, failed = [], False
    for inst in instances:
        try:
            r = verify_main_theorem(inst, tol)
        except DyndegError as exc:
            row = {"label": inst.label, "g": inst.g, "type_summary": inst.type_summary(),
                   "asserted": inst.assert_theorem, "status": f"error: {exc}"}
            ok = not inst.assert_theorem
        else:
            row = report_row(r)
            row["asserted"] = r.asserted
            ok = r.passed or not r.asserted
            row["status"] = ("pass" if r.passed else "fail") if r.asserted else "reported"
        rows.append(row)
        if not ok:
            failed = True
            if fail_fast:
                break
    max_2g = max((2 * inst.g for inst in instances), default=0)
    _emit(render(rows, report_columns(max_2g) + ["asserted", "status"], fmt), out)
    return EXIT_FAIL if failed else EXIT_OK


def cmd_report(paths, fmt="csv", out=None) -> int:
    try:
        instances = _load_paths(paths)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    rows = [report_row(verify_main_theorem(inst)) for inst in instances]
    max_2g = max((2 * inst.g for inst in instances), default=0)
    _emit(render(rows, report_columns(max_2g), fmt), out)
    return EXIT_OK


def cmd_random(types=tuple(AlbertType), count=200, seed=1, tol=DEFAULT_TOL, fmt="csv",
               fail_fast=False, out=None, distribution="uniform") -> int:
    """
    Matrix-level key equality on ``count`` random instances per type.

    Instance ``k`` of a type uses seed ``seed + k``.  Exit 1 on the first
    failure with ``fail_fast``, otherwise after the whole campaign, with the
    failing seeds and instances written to stderr.
    """
    rows, failures = [], []
    for t in types:
        t = AlbertType(t)
        passed, worst, worst_seed = 0, 0.0, None
        for k in range(count):
            s = seed + k
            cfg = GeneratorConfig(t, seed=s, entry_distribution=distribution, **RANDOM_DEFAULTS[t])
            inst = random_instance(cfg)
            try:
                res = verify_main_theorem(inst, tol).key_eq_residual
            except DyndegError:
                res = math.inf
            if res <= tol:
                passed += 1
            else:
                failures.append((t, s, res, inst))
            if worst_seed is None or res > worst:
                worst, worst_seed = res, s
            if failures and fail_fast:
                break
        rows.append({
            "type": t.value, "count": count, "passed": passed, "max_residual": float(worst),
            "worst_seed": "" if worst_seed is None else worst_seed,
            "reproduce": "" if worst_seed is None else
            f"dyndeg random --types {t.value} --seed {worst_seed} --count 1 --tol {tol!r}",
        })
        if failures and fail_fast:
            break
    columns = ["type", "count", "passed", "max_residual", "worst_seed", "reproduce"]
    _emit(render(rows, columns, fmt), out)
    for t, s, res, inst in failures:
        print(f"FAIL type={t.value} seed={s} residual={res!r}", file=sys.stderr)
        sys.stderr.write(serialize_instance(inst))
    return EXIT_FAIL if failures else EXIT_OK


def cmd_catalog(out=None) -> int:
    _emit(serialize_batch([entry.instance for entry in catalog()]), out)
    return EXIT_OK


# -- entry point --------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dyndeg", description=__doc__.split("\n\n")[0].strip())
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, tol=True):
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--out", help="write output here instead of stdout")
        if tol:
            p.add_argument("--tol", type=_tol, default=_default_tol(),
                           help="relative tolerance (default 1e-8, or $DYNDEG_TOL)")
            p.add_argument("--fail-fast", action="store_true")

    p = sub.add_parser("verify", help="verify instance files")
    p.add_argument("paths", nargs="+")
    common(p)

    p = sub.add_parser("random", help="randomized key-equality campaign")
    p.add_argument("--types", default="I,II,III,IV", help="comma separated Albert types")
    p.add_argument("--count", type=int, default=200)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--distribution", choices=("uniform", "normal"), default="uniform")
    common(p)

    p = sub.add_parser("catalog", help="write the curated catalog as JSON")
    p.add_argument("--out")

    p = sub.add_parser("report", help="tabulate degrees and entropies")
    p.add_argument("paths", nargs="+")
    common(p, tol=False)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if hasattr(args, "tol"):
            args.tol = _tol(args.tol)
    except argparse.ArgumentTypeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK

    if args.command == "verify":
        return cmd_verify(args.paths, args.tol, args.format, args.fail_fast, args.out)
    if args.command == "report":
        return cmd_report(args.paths, args.format, args.out)
    if args.command == "catalog":
        return cmd_catalog(args.out)
    try:
        types = [AlbertType(t.strip()) for t in args.types.split(",") if t.strip()]
        if args.count < 0:
            raise ConfigInvalid("count must be non-negative")
    except (ValueError, ConfigInvalid) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return cmd_random(types, args.count, args.seed, args.tol, args.format,
                      args.fail_fast, args.out, args.distribution)


if __name__ == "__main__":
    sys.exit(main())
