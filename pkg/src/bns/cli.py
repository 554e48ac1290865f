"""Command-line front end.

Examples::

    bns --pd "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)" --integral --primes 2,3
    bns --batch knots9.csv --field 0 --json --jobs 4
    bns --dt "4 6 2" --kh-table
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import signal
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from bns.algebra.rings import is_prime
from bns.diagram import PlanarDiagram, mirror, parse_pd
from bns.errors import BNSError
from bns.invariants import full_report, khovanov_table, s_over_field, thinness

log = logging.getLogger("bns")


class JobTimeout(Exception):
    pass


@dataclass
class JobSpec:
    fields: list[int] = field(default_factory=list)
    integral: bool = False
    kh_table: bool = False
    kh_range: tuple[int, int] | None = None
    thin: tuple[int, int] | None = None
    primes: list[int] = field(default_factory=list)
    mirror: bool = False
    basepoint: int | None = None
    timeout: float | None = None

    @property
    def wants_report(self) -> bool:
        return self.integral or not (self.fields or self.kh_table or self.thin)


@dataclass
class Entry:
    name: str
    text: str


# -- input -----------------------------------------------------------------


def _balanced(s: str) -> bool:
    return s.count("(") == s.count(")") and s.count("[") == s.count("]")


def read_batch(path: str) -> list[Entry]:
    """Rows ``name,pd`` (the pd may be quoted; extra columns are ignored)."""
    p = Path(path)
    if not p.exists():
        bundled = resources.files("bns") / "data" / path
        if bundled.is_file():
            text = bundled.read_text()
        else:
            raise FileNotFoundError(path)
    else:
        text = p.read_text()
    out = []
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    for row in csv.reader(io.StringIO("\n".join(lines))):
        if not row:
            continue
        name = row[0].strip()
        if name.lower() == "name" and len(row) > 1 and row[1].strip().lower() in ("pd", "code"):
            continue
        if len(row) < 2:
            raise ValueError(f"batch row {row!r} has no diagram column")
        i, pd = 2, row[1]
        # an unquoted PD code is spread over several columns
        while i < len(row) and (not _balanced(pd) or row[i].strip().upper().startswith("X(")):
            pd += ("," if not _balanced(pd) else " ") + row[i]
            i += 1
        out.append(Entry(name, pd.strip()))
    return out


# -- work ------------------------------------------------------------------


def _alarm(signum, frame):
    raise JobTimeout()


def compute(D: PlanarDiagram, spec: JobSpec) -> dict:
    out: dict = {}
    if spec.wants_report:
        out.update(full_report(D, spec.primes).to_json())
    elif spec.fields:
        for c in spec.fields:
            if c == 0:
                out["s_rational"] = s_over_field(D, 0)
            else:
                out.setdefault("s_mod_p", {})[str(c)] = s_over_field(D, c)
    if spec.kh_table:
        lo, hi = spec.kh_range or (None, None)
        table = khovanov_table(D, lo, hi)
        out["kh_table"] = [
            {"h": h, "q": q, "rank": g.rank, "torsion": list(g.torsion)} for (h, q), g in sorted(table.items())
        ]
    if spec.thin:
        t = thinness(D, *spec.thin)
        out["thinness"] = {"n": t.n, "torsion": t.torsion, "diagonals": list(t.diagonals)}
    return out


def run_entry(args: tuple[Entry, JobSpec, bool]) -> dict:
    entry, spec, is_mirror = args
    rec: dict = {"name": entry.name, "mirror": is_mirror}
    start = time.perf_counter()
    old = None
    if spec.timeout:
        old = signal.signal(signal.SIGALRM, _alarm)
        signal.setitimer(signal.ITIMER_REAL, spec.timeout)
    try:
        D = parse_pd(entry.text, basepoint=spec.basepoint)
        if is_mirror:
            D = mirror(D)
        rec["diagram"] = D.to_pd()
        rec.update(compute(D, spec))
        rec["status"] = "ok"
    except JobTimeout:
        rec["status"] = "timeout"
    except (BNSError, ValueError) as exc:
        rec["status"] = "error"
        rec["error"] = f"{type(exc).__name__}: {exc}"
    finally:
        if spec.timeout:
            signal.setitimer(signal.ITIMER_REAL, 0)
            signal.signal(signal.SIGALRM, old)
    rec["wall_time"] = round(time.perf_counter() - start, 3)
    return rec


def run(entries: list[Entry], spec: JobSpec, jobs: int = 1) -> list[dict]:
    tasks = []
    for e in entries:
        tasks.append((e, spec, False))
        if spec.mirror:
            tasks.append((e, spec, True))
    if jobs <= 1 or len(tasks) <= 1:
        return [run_entry(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(run_entry, tasks))


# -- output ----------------------------------------------------------------


def format_text(rec: dict) -> str:
    name = rec["name"] + (" (mirror)" if rec["mirror"] else "")
    if rec["status"] != "ok":
        return f"{name}: {rec['status']}" + (f" ({rec['error']})" if "error" in rec else "")
    parts = []
    if "s_rational" in rec:
        parts.append(f"s^Q={rec['s_rational']}")
    for p, v in rec.get("s_mod_p", {}).items():
        parts.append(f"s^F{p}={v}")
    if "graded_length" in rec:
        s_z = ",".join(str(x) for x in [rec["s_rational"], *rec["torsion_orders"]])
        parts.append(f"s^Z=({s_z})")
        parts.append(f"gl={rec['graded_length']}")
        for p, v in rec["sigma_p"].items():
            parts.append(f"Sigma_{p}={v}")
        parts.append(f"g4>={rec['genus_lower_bound']}")
    if "thinness" in rec:
        t = rec["thinness"]
        parts.append(f"thin: {t['n']} diagonals" + (", torsion" if t["torsion"] else ""))
    lines = [f"{name}: " + "  ".join(parts) + f"  [{rec['wall_time']:.2f}s]"]
    if "kh_table" in rec:
        lines.append(format_kh_table(rec["kh_table"]))
    return "\n".join(lines)


def format_kh_table(cells: list[dict]) -> str:
    from bns.algebra.graded import group_string

    if not cells:
        return "  (zero)"
    hs = sorted({c["h"] for c in cells})
    qs = sorted({c["q"] for c in cells}, reverse=True)
    grid = {(c["h"], c["q"]): group_string(c["rank"], c["torsion"]) for c in cells}
    hs = list(range(hs[0], hs[-1] + 1))
    width = max(6, max(len(v) for v in grid.values()) + 1)
    lines = ["  q\\h " + "".join(f"{h:>{width}}" for h in hs)]
    for q in qs:
        lines.append(f"  {q:>4} " + "".join(f"{grid.get((h, q), ''):>{width}}" for h in hs))
    return "\n".join(lines)


# -- entry point -----------------------------------------------------------


def _primes(text: str) -> list[int]:
    try:
        ps = [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad prime list {text!r}") from None
    for p in ps:
        if not is_prime(p):
            raise argparse.ArgumentTypeError(f"{p} is not prime")
    return ps


def _characteristic(text: str) -> int:
    c = int(text)
    if c != 0 and not is_prime(c):
        raise argparse.ArgumentTypeError(f"{c} is neither 0 nor a prime")
    return c


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="bns", description="Integral and field Rasmussen invariants of knots.")
    src = ap.add_argument_group("input")
    src.add_argument("--pd", action="append", default=[], help="PD code, e.g. 'X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)'")
    src.add_argument("--dt", action="append", default=[], help="DT code, e.g. '4 6 2'")
    src.add_argument("--batch", action="append", default=[], help="CSV file of name,pd rows ('#' comments)")
    what = ap.add_argument_group("invariants")
    what.add_argument("--field", action="append", type=_characteristic, default=[], metavar="CHAR",
                      help="s over Q (0) or F_p; repeatable")
    what.add_argument("--integral", action="store_true", help="integral s, graded length and the full report")
    what.add_argument("--kh-table", action="store_true", help="reduced integral Khovanov homology")
    what.add_argument("--kh-range", nargs=2, type=int, metavar=("HMIN", "HMAX"), help="degrees for --kh-table")
    what.add_argument("--thin", nargs=2, type=int, metavar=("K", "L"), help="diagonal spread in degrees K..L")
    what.add_argument("--primes", type=_primes, default=None, help="comma separated primes for the report")
    opt = ap.add_argument_group("options")
    opt.add_argument("--mirror", action="store_true", help="also process the mirror of every input")
    opt.add_argument("--basepoint", type=int, help="basepoint edge label")
    opt.add_argument("--json", action="store_true", help="JSON output, one list of records")
    opt.add_argument("--jobs", type=int, default=1, help="worker processes for batches")
    opt.add_argument("--timeout-secs", type=float, default=None, help="per-diagram time limit")
    return ap


def main(argv: list[str] | None = None) -> int:
    level = os.environ.get("BNS_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), format="%(levelname)s %(name)s: %(message)s")
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.jobs < 1:
        ap.error("--jobs must be at least 1")
    entries = [Entry(f"pd{i + 1}" if len(args.pd) > 1 else "pd", t) for i, t in enumerate(args.pd)]
    entries += [Entry(f"dt{i + 1}" if len(args.dt) > 1 else "dt", "dt:" + t) for i, t in enumerate(args.dt)]
    for path in args.batch:
        try:
            entries += read_batch(path)
        except (OSError, ValueError) as exc:
            print(f"bns: cannot read batch {path}: {exc}", file=sys.stderr)
            return 2
    if not entries:
        ap.error("no input; use --pd, --dt or --batch")
    primes = args.primes if args.primes is not None else ([] if args.field else [2, 3])
    spec = JobSpec(
        fields=args.field,
        integral=args.integral,
        kh_table=args.kh_table,
        kh_range=tuple(args.kh_range) if args.kh_range else None,
        thin=tuple(args.thin) if args.thin else None,
        primes=primes,
        mirror=args.mirror,
        basepoint=args.basepoint,
        timeout=args.timeout_secs,
    )
    records = run(entries, spec, args.jobs)
    if args.json:
        json.dump(records, sys.stdout, indent=1, sort_keys=True)
        sys.stdout.write("\n")
    else:
        for rec in records:
            print(format_text(rec))
    return 0 if all(r["status"] == "ok" for r in records) else 1


if __name__ == "__main__":
    raise SystemExit(main())
