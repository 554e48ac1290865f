"""Reference knots and KnotInfo data shared by the tests."""

from __future__ import annotations

import csv
import json
from functools import lru_cache
from pathlib import Path

from bns.corpus import knots, special
from bns.diagram import parse_pd

DATA = Path(__file__).parent / "data"

LEFT_TREFOIL = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)"
FIGURE_EIGHT = "X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)"
HOPF = "X(4,1,3,2) X(2,3,1,4)"


@lru_cache(maxsize=None)
def knotinfo() -> dict[str, dict]:
    """KnotInfo rows keyed by name; Khovanov vectors decoded to ``{(h, q): (rank, torsion)}``."""
    out = {}
    with open(DATA / "knotinfo_kh.csv", newline="") as fh:
        for row in csv.DictReader(fh):
            out[row["name"]] = {
                "dt": row["dt"],
                "rasmussen": int(row["rasmussen"]),
                "reduced": _decode(row["reduced"]),
                "unreduced": _decode(row["unreduced"]),
            }
    return out


def _decode(text: str) -> dict[tuple[int, int], tuple[int, tuple[int, ...]]]:
    """Entries ``[torsion, multiplicity, h, q]`` (torsion 0 means free)."""
    out: dict[tuple[int, int], tuple[int, tuple[int, ...]]] = {}
    for tors, mult, h, q in json.loads(text):
        rank, t = out.get((h, q), (0, ()))
        if tors == 0:
            rank += mult
        else:
            t = tuple(sorted(t + (tors,) * mult))
        out[(h, q)] = (rank, t)
    return out


@lru_cache(maxsize=None)
def diagram(name: str):
    if name == "unknot":
        return parse_pd("unknot")
    for k in knots():
        if k.name == name:
            return k.diagram
    return special()[name].diagram


def corpus(max_crossings: int = 9):
    return [(k.name, k.diagram) for k in knots(max_crossings)]
