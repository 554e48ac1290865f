"""Regenerate the bundled knot corpus and the test reference tables.

Reads the KnotInfo export (``knotinfo_data_complete.csv``, ``|``-delimited)
and writes

* ``src/bns/data/knots9.csv``: the prime knots up to nine crossings with the
  reference ``s_rational`` computed by the reduction-free oracle in
  ``tests/oracles.py`` (cross-checked against KnotInfo's Rasmussen column);
* ``src/bns/data/special.csv``: the fourteen-crossing knots, from DT codes;
* ``tests/data/knotinfo_kh.csv``: KnotInfo's DT codes, Rasmussen invariants
  and reduced and unreduced integral Khovanov vectors for the same knots.

Usage::

    python scripts/build_corpus.py path/to/knotinfo_data_complete.csv
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "tests"))

from oracles import oracle_h0_pieces  # noqa: E402

from bns.diagram import from_crossings, parse_pd  # noqa: E402

# Hoste-Thistlethwaite alphabetical DT codes (as distributed with SnapPy).
SPECIAL = [
    ("14n19265", "nanbhEmGkCiaLfNdJ", "Z/2 graded piece below s over Q"),
    ("14n22180", "nancEhflAJKbMNIdG", "Whitehead double of the trefoil"),
    ("14ns1", "nancEhflAJKbMNIdG", "same diagram as 14n22180"),
]


def read_knotinfo(path: str) -> list[dict]:
    csv.field_size_limit(1 << 30)
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh, delimiter="|"))
    # the first data row holds column descriptions
    return [r for r in rows[1:] if r["name"] and r["name"][0].isdigit()]


def s_reference(D) -> int:
    pieces = oracle_h0_pieces(D)
    free = [q for q, g in pieces.items() if g == "Z"]
    if len(free) != 1:
        raise SystemExit(f"oracle found {len(free)} free pieces")
    return free[0]


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("knotinfo", help="knotinfo_data_complete.csv")
    ap.add_argument("--max-crossings", type=int, default=9)
    ap.add_argument("--special-only", action="store_true", help="only rewrite special.csv")
    args = ap.parse_args(argv)

    rows = [r for r in read_knotinfo(args.knotinfo) if 3 <= int(r["crossing_number"]) <= args.max_crossings]
    data = ROOT / "src" / "bns" / "data"
    tdata = ROOT / "tests" / "data"
    data.mkdir(parents=True, exist_ok=True)
    tdata.mkdir(parents=True, exist_ok=True)

    if not args.special_only:
        write_tables(rows, data, tdata)
    write_special(data)
    return 0


def write_tables(rows: list[dict], data: Path, tdata: Path) -> None:
    with open(data / "knots9.csv", "w", newline="") as fh, open(tdata / "knotinfo_kh.csv", "w", newline="") as kh:
        fh.write("# prime knots from KnotInfo PD codes; s_rational from the reduction-free oracle\n")
        out = csv.writer(fh, lineterminator="\n")
        out.writerow(["name", "pd", "s_rational"])
        kout = csv.writer(kh, lineterminator="\n")
        kout.writerow(["name", "dt", "rasmussen", "reduced", "unreduced"])
        for r in rows:
            D = from_crossings(json.loads(r["pd_notation"]))
            s = s_reference(D)
            if s != int(r["rasmussen_invariant"]):
                raise SystemExit(f"{r['name']}: oracle s={s}, KnotInfo {r['rasmussen_invariant']}")
            out.writerow([r["name"], D.to_pd(), s])
            kout.writerow([
                r["name"],
                r["dt_notation"],
                r["rasmussen_invariant"],
                r["khovanov_reduced_integral_vector"],
                r["khovanov_unreduced_integral_vector"],
            ])
            print(r["name"], s, flush=True)


def write_special(data: Path) -> None:
    with open(data / "special.csv", "w", newline="") as fh:
        fh.write("# fourteen-crossing knots decoded from alphabetical DT codes\n")
        out = csv.writer(fh, lineterminator="\n")
        out.writerow(["name", "pd", "note"])
        for name, dt, note in SPECIAL:
            D = parse_pd("dt:" + dt)
            out.writerow([name, D.to_pd(), note])


if __name__ == "__main__":
    raise SystemExit(main())
