"""Command-line interface.

Subcommands::

    springerloc compute --lambda 2,1 [--format json|csv|text] [--degree-bound D]
                        [--mode auto|echelon|syzygy-free] [--out FILE]
                        [--no-cache] [--max-n N]
    springerloc verify  [--n-max N] [--format json|text]
    springerloc table   --n N [--format json|csv|text]

Exit codes: 0 success; 1 a verification or certificate failure (a structured
diagnostic naming the failing stage, and degree when known, goes to stderr);
2 malformed usage or input; 3 a guardrail refusal.

Reports are wrapped in an envelope carrying ``schema_version``, the echoed
invocation, per-stage timings in milliseconds, and a cache flag.  Rational
numbers serialize as strings ("3/2"); characters are keyed by cycle-type
strings ("2,1").  Envelopes are cached under ``$SPRINGER_CACHE_DIR`` (default
``~/.cache/springerloc``) keyed by shape, degree bound, mode and schema
version; writes are atomic (temp file then rename).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
import time
from fractions import Fraction
from pathlib import Path

from .errors import (CertificateError, ConventionError, GuardrailError,
                     MalformedInputError, SpringerlocError, StabilityError)
from .gporacle import oracle_cross_check
from .locengine import GradedCharacter
from .springer import (SpringerReport, equivariance_check,
                       kostka_foulkes_table, springer_compute)
from .symgroup import Partition, partitions_of

SCHEMA_VERSION = "1"
SOFT_MAX_N = 6


# ---------------------------------------------------------------------------
# Serialization (rationals as strings, shapes and classes as "3,2,1" strings).
# ---------------------------------------------------------------------------

def _frac(s: Fraction) -> str:
    return str(s)


def character_to_json(ch: GradedCharacter) -> dict:
    return {
        "shape": ch.shape.to_string(),
        "degrees": list(ch.degrees),
        "classes": [ct.to_string() for ct in ch.cycle_types],
        "values": [[_frac(v) for v in row] for row in ch.values],
        "q_dims": list(ch.q_dims),
    }


def character_from_json(data: dict) -> GradedCharacter:
    return GradedCharacter(
        Partition.from_string(data["shape"]),
        tuple(int(d) for d in data["degrees"]),
        tuple(Partition.from_string(s) for s in data["classes"]),
        tuple(tuple(Fraction(v) for v in row) for row in data["values"]),
        tuple(int(q) for q in data["q_dims"]),
    )


def report_to_json(rep: SpringerReport) -> dict:
    return {
        "shape": rep.shape.to_string(),
        "n": rep.shape.n,
        "fixed_point_count": rep.fixed_point_count,
        "degree_bound": rep.degree_bound,
        "mode": rep.mode,
        "poincare": list(rep.poincare),
        "character": character_to_json(rep.character),
        "multiplicities": [
            {mu.to_string(): m for mu, m in row} for row in rep.multiplicities
        ],
        "certificates": {name: ok for name, ok in rep.certificates},
        "conventions": {name: ok for name, ok in rep.conventions},
        "timings_ms": {name: round(ms, 3) for name, ms in rep.timings_ms},
    }


def report_from_json(data: dict) -> SpringerReport:
    return SpringerReport(
        shape=Partition.from_string(data["shape"]),
        fixed_point_count=int(data["fixed_point_count"]),
        degree_bound=int(data["degree_bound"]),
        mode=data["mode"],
        poincare=tuple(int(c) for c in data["poincare"]),
        character=character_from_json(data["character"]),
        multiplicities=tuple(
            tuple((Partition.from_string(mu), int(m))
                  for mu, m in row.items())
            for row in data["multiplicities"]),
        certificates=tuple((k, bool(v))
                           for k, v in data["certificates"].items()),
        conventions=tuple((k, bool(v))
                          for k, v in data["conventions"].items()),
        timings_ms=tuple((k, float(v))
                         for k, v in data["timings_ms"].items()),
    )


def _poly_str(coeffs) -> str:
    bits = []
    for d, c in enumerate(coeffs):
        if not c:
            continue
        if d == 0:
            bits.append(str(c))
        else:
            q = "q" if d == 1 else f"q^{d}"
            bits.append(q if c == 1 else f"{c}{q}")
    return " + ".join(bits) if bits else "0"


# ---------------------------------------------------------------------------
# Cache.
# ---------------------------------------------------------------------------

def cache_directory() -> Path:
    return Path(os.environ.get("SPRINGER_CACHE_DIR",
                               os.path.expanduser("~/.cache/springerloc")))


def _cache_path(shape: Partition, degree_bound: int, mode: str) -> Path:
    key = shape.to_string().replace(",", "_")
    return cache_directory() / (
        f"compute-{key}-d{degree_bound}-{mode}-v{SCHEMA_VERSION}.json")


def _cache_load(path: Path) -> dict | None:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            envelope = json.load(fh)
    except (OSError, json.JSONDecodeError):
        return None
    if envelope.get("schema_version") != SCHEMA_VERSION:
        return None
    return envelope


def _cache_store(path: Path, envelope: dict) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump(envelope, fh, indent=2, sort_keys=True)
        os.replace(tmp, path)
    except OSError:
        try:
            os.unlink(tmp)
        except OSError:
            pass


# ---------------------------------------------------------------------------
# Rendering.
# ---------------------------------------------------------------------------

def _render_compute_text(rep: SpringerReport) -> str:
    lines = [
        f"shape            {rep.shape.to_string()}   (n = {rep.shape.n})",
        f"fixed words      {rep.fixed_point_count}",
        f"engine mode      {rep.mode}",
        f"Poincare polynomial  {_poly_str(rep.poincare)}",
        "graded character (rows: degree; columns: cycle type):",
    ]
    ch = rep.character
    header = "  deg | " + "  ".join(f"{ct.to_string():>8}" for ct in ch.cycle_types)
    lines.append(header)
    for d in ch.degrees:
        row = "  ".join(f"{str(v):>8}" for v in ch.values[d])
        lines.append(f"  {d:>3} | {row}")
    lines.append("irreducible multiplicities by degree:")
    for d, row in enumerate(rep.multiplicities):
        inside = ", ".join(f"{mu.to_string()}: {m}" for mu, m in row) or "-"
        lines.append(f"  degree {d}: {inside}")
    lines.append("certificates: " + ", ".join(
        f"{name}={'ok' if ok else 'FAILED'}" for name, ok in rep.certificates))
    return "\n".join(lines)


def _render_compute_csv(rep: SpringerReport) -> str:
    lines = ["degree,cycle_type,trace"]
    ch = rep.character
    for d in ch.degrees:
        for ct, v in zip(ch.cycle_types, ch.values[d]):
            lines.append(f"{d},\"{ct.to_string()}\",{v}")
    return "\n".join(lines)


def _render_table_text(table) -> str:
    lines = [f"graded multiplicity table for n = {table.n}", table.note, ""]
    width = max(len(_poly_str(c)) for row in table.entries for c in row)
    width = max(width, max(len(s.to_string()) for s in table.row_shapes))
    header = " " * (width + 2) + "| " + " | ".join(
        f"{lam.to_string():>{width}}" for lam in table.column_shapes)
    lines.append(header)
    lines.append("-" * len(header))
    for mu, row in zip(table.row_shapes, table.entries):
        cells = " | ".join(f"{_poly_str(c):>{width}}" for c in row)
        lines.append(f"{mu.to_string():>{width}}  | {cells}")
    return "\n".join(lines)


def _table_to_json(table) -> dict:
    by_row = {mu.to_string(): {lam.to_string(): list(table.entry(mu, lam))
                               for lam in table.column_shapes}
              for mu in table.row_shapes}
    by_col = {lam.to_string(): {mu.to_string(): list(table.entry(mu, lam))
                                for mu in table.row_shapes}
              for lam in table.column_shapes}
    return {"schema_version": SCHEMA_VERSION, "n": table.n, "note": table.note,
            "by_row_shape": by_row, "by_column_shape": by_col}


def _render_table_csv(table) -> str:
    head = "mu\\lambda," + ",".join(f"\"{lam.to_string()}\""
                                    for lam in table.column_shapes)
    lines = [head]
    for mu, row in zip(table.row_shapes, table.entries):
        cells = ",".join(f"\"{_poly_str(c)}\"" for c in row)
        lines.append(f"\"{mu.to_string()}\",{cells}")
    return "\n".join(lines)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)


# ---------------------------------------------------------------------------
# Subcommands.
# ---------------------------------------------------------------------------

def _cmd_compute(args: argparse.Namespace) -> int:
    shape = Partition.from_string(args.shape)
    if shape.n > args.max_n:
        raise GuardrailError("rank n", shape.n, args.max_n)
    if shape.n > SOFT_MAX_N:
        print(f"warning: n = {shape.n} exceeds the well-tested range "
              f"(n <= {SOFT_MAX_N}); expect long runtimes", file=sys.stderr)
    degree_bound = args.degree_bound
    if degree_bound is None:
        degree_bound = shape.top_degree()

    cache_file = _cache_path(shape, degree_bound, args.mode)
    envelope = None if args.no_cache else _cache_load(cache_file)
    cache_hit = envelope is not None
    if envelope is None:
        t0 = time.perf_counter()
        rep = springer_compute(shape, degree_bound, mode=args.mode,
                               max_n=max(args.max_n, shape.n))
        wall = (time.perf_counter() - t0) * 1000.0
        envelope = {
            "schema_version": SCHEMA_VERSION,
            "invocation": {"command": "compute", "lambda": shape.to_string(),
                           "degree_bound": degree_bound, "mode": args.mode},
            "report": report_to_json(rep),
            "timings_ms": {**dict(rep.timings_ms), "total": round(wall, 3)},
        }
        if not args.no_cache:
            _cache_store(cache_file, envelope)
    rep = report_from_json(envelope["report"])

    if args.format == "json":
        shown = dict(envelope)
        shown["cache_hit"] = cache_hit
        _emit(json.dumps(shown, indent=2, sort_keys=True), args.out)
    elif args.format == "csv":
        _emit(_render_compute_csv(rep), args.out)
    else:
        _emit(_render_compute_text(rep), args.out)
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    results = []
    failed = False
    for n in range(1, args.n_max + 1):
        for lam in partitions_of(n):
            t0 = time.perf_counter()
            cross = oracle_cross_check(lam)
            equi = equivariance_check(lam)
            ms = (time.perf_counter() - t0) * 1000.0
            ok = cross.passed and equi.passed
            failed = failed or not ok
            results.append({
                "shape": lam.to_string(),
                "passed": ok,
                "oracle_match": cross.passed,
                "equivariance": equi.passed,
                "dims": list(cross.engine_dims),
                "mismatches": list(cross.mismatches)[:5],
                "ms": round(ms, 1),
            })
    if args.format == "json":
        print(json.dumps({"schema_version": SCHEMA_VERSION,
                          "invocation": {"command": "verify",
                                         "n_max": args.n_max},
                          "passed": not failed, "results": results},
                         indent=2, sort_keys=True))
    else:
        for r in results:
            flag = "PASS" if r["passed"] else "FAIL"
            print(f"{flag}  shape={r['shape']:<12} dims={r['dims']} "
                  f"oracle={'ok' if r['oracle_match'] else 'MISMATCH'} "
                  f"equivariance={'ok' if r['equivariance'] else 'BROKEN'} "
                  f"({r['ms']:.0f} ms)")
            for m in r["mismatches"]:
                print(f"      {m}")
        print(("all shapes verified" if not failed else
               "verification FAILED"), f"through n = {args.n_max}")
    return 0 if not failed else 1


def _cmd_table(args: argparse.Namespace) -> int:
    if args.n > args.max_n:
        raise GuardrailError("rank n", args.n, args.max_n)
    table = kostka_foulkes_table(args.n, max_n=max(args.max_n, args.n))
    if args.format == "json":
        _emit(json.dumps(_table_to_json(table), indent=2, sort_keys=True),
              args.out)
    elif args.format == "csv":
        _emit(_render_table_csv(table), args.out)
    else:
        _emit(_render_table_text(table), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="springerloc",
        description="Springer Weyl-group representations by fixed-point "
                    "localization, with an independent Tanisaki-ideal oracle.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_compute = sub.add_parser(
        "compute", help="graded character and certificates for one shape")
    p_compute.add_argument("--lambda", dest="shape", required=True,
                           metavar="PARTS",
                           help="partition as comma-separated parts, e.g. 2,1")
    p_compute.add_argument("--format", choices=("json", "csv", "text"),
                           default="text")
    p_compute.add_argument("--degree-bound", type=int, default=None,
                           help="truncation degree (default: n(lambda))")
    p_compute.add_argument("--mode",
                           choices=("auto", "echelon", "syzygy-free"),
                           default="auto")
    p_compute.add_argument("--out", default=None, help="write output to file")
    p_compute.add_argument("--no-cache", action="store_true")
    p_compute.add_argument("--max-n", type=int, default=SOFT_MAX_N,
                           help="refuse shapes of larger rank (exit 3)")
    p_compute.set_defaults(func=_cmd_compute)

    p_verify = sub.add_parser(
        "verify", help="cross-check engine against the oracle on all shapes")
    p_verify.add_argument("--n-max", type=int, default=5)
    p_verify.add_argument("--format", choices=("json", "text"),
                          default="text")
    p_verify.set_defaults(func=_cmd_verify)

    p_table = sub.add_parser(
        "table", help="graded multiplicity (Kostka-Foulkes) table for rank n")
    p_table.add_argument("--n", type=int, required=True)
    p_table.add_argument("--format", choices=("json", "csv", "text"),
                         default="text")
    p_table.add_argument("--out", default=None)
    p_table.add_argument("--max-n", type=int, default=SOFT_MAX_N)
    p_table.set_defaults(func=_cmd_table)
    return parser


def _diagnostic(exc: SpringerlocError) -> dict:
    info: dict = {"error": type(exc).__name__, "message": str(exc)}
    if isinstance(exc, CertificateError):
        info["stage"] = exc.stage
        if exc.degree is not None:
            info["degree"] = exc.degree
        if exc.partial is not None:
            info["partial_dims"] = list(exc.partial)
    if isinstance(exc, GuardrailError):
        info.update({"what": exc.what, "value": exc.value, "limit": exc.limit})
    return info


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GuardrailError as exc:
        print(json.dumps(_diagnostic(exc)), file=sys.stderr)
        return 3
    except MalformedInputError as exc:
        print(json.dumps(_diagnostic(exc)), file=sys.stderr)
        return 2
    except (CertificateError, ConventionError, StabilityError,
            SpringerlocError) as exc:
        print(json.dumps(_diagnostic(exc)), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
