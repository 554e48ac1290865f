"""The bundled knot tables.

``knots9.csv`` holds the prime knots up to nine crossings with their
reference ``s_rational``; ``special.csv`` holds a few fourteen-crossing knots.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from importlib import resources

from bns.diagram import PlanarDiagram, parse_pd


@dataclass(frozen=True)
class CorpusKnot:
    name: str
    pd: str
    extra: dict

    @property
    def diagram(self) -> PlanarDiagram:
        return parse_pd(self.pd)

    @property
    def crossing_count(self) -> int:
        return self.pd.count("X")


def load_table(filename: str) -> list[CorpusKnot]:
    text = (resources.files("bns") / "data" / filename).read_text()
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    out = []
    for row in csv.DictReader(io.StringIO("\n".join(lines))):
        name, pd = row.pop("name"), row.pop("pd")
        out.append(CorpusKnot(name, pd, row))
    return out


def knots(max_crossings: int = 9) -> list[CorpusKnot]:
    return [k for k in load_table("knots9.csv") if k.crossing_count <= max_crossings]


def special() -> dict[str, CorpusKnot]:
    return {k.name: k for k in load_table("special.csv")}


def lookup(name: str) -> CorpusKnot:
    for k in load_table("knots9.csv") + load_table("special.csv"):
        if k.name == name:
            return k
    raise KeyError(name)
