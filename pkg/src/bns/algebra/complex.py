"""Filtered cochain complexes of free modules with sparse differentials."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from bns.algebra.matrix import SparseIntMatrix


@dataclass
class FilteredComplex:
    """A finitely generated free cochain complex with a q-filtration.

    ``q[h]`` lists the filtration degree of each generator in degree ``h``;
    ``d[h][i]`` maps the index of a degree-``h+1`` generator to its coefficient
    in the differential of generator ``i`` of degree ``h``.  The filtration
    ``F_q`` is the span of the generators of degree at least ``q``.
    """

    q: dict[int, list[int]] = field(default_factory=dict)
    d: dict[int, list[dict[int, int]]] = field(default_factory=dict)
    parity: int | None = None
    names: dict[int, list] | None = None

    def __post_init__(self):
        for h, qs in self.q.items():
            self.d.setdefault(h, [{} for _ in qs])

    @property
    def degrees(self) -> list[int]:
        return sorted(h for h, qs in self.q.items() if qs)

    def size(self, h: int) -> int:
        return len(self.q.get(h, ()))

    def rank(self) -> int:
        return sum(len(v) for v in self.q.values())

    def qs(self, h: int) -> list[int]:
        return self.q.get(h, [])

    def differential(self, h: int) -> list[dict[int, int]]:
        return self.d.get(h, [{} for _ in self.qs(h)])

    def matrix(self, h: int) -> SparseIntMatrix:
        """``d_h`` as a matrix with rows indexed by degree ``h+1``."""
        return SparseIntMatrix.from_columns(self.differential(h), self.size(h + 1))

    def check(self) -> None:
        """Assert ``d^2 = 0``, filtration monotonicity and the q-parity."""
        for h in self.q:
            col = self.differential(h)
            qs, qt = self.qs(h), self.qs(h + 1)
            for i, c in enumerate(col):
                for j, v in c.items():
                    if j >= len(qt):
                        raise AssertionError(f"d_{h} of generator {i} hits missing generator {j}")
                    if qt[j] < qs[i]:
                        raise AssertionError(f"d_{h} lowers q: {qs[i]} -> {qt[j]}")
                    if not v:
                        raise AssertionError("stored zero coefficient")
            nxt = self.differential(h + 1)
            for i, c in enumerate(col):
                acc: dict[int, int] = {}
                for j, v in c.items():
                    if j < len(nxt):
                        for k, w in nxt[j].items():
                            acc[k] = acc.get(k, 0) + v * w
                if any(acc.values()):
                    raise AssertionError(f"d_{h + 1} d_{h} != 0 on generator {i}")
            if self.parity is not None:
                if any((x - self.parity) % 2 for x in qs):
                    raise AssertionError("q parity violated")

    def filtration_jumps(self) -> set[int]:
        out = set()
        for h in self.q:
            qs, qt = self.qs(h), self.qs(h + 1)
            for i, c in enumerate(self.differential(h)):
                for j in c:
                    out.add(qt[j] - qs[i])
        return out

    def graded_part(self) -> FilteredComplex:
        """The q-preserving part of the differential, as a graded complex."""
        d = {}
        for h in self.q:
            qs, qt = self.qs(h), self.qs(h + 1)
            d[h] = [{j: v for j, v in c.items() if qt[j] == qs[i]} for i, c in enumerate(self.differential(h))]
        return FilteredComplex(dict(self.q), d, self.parity, self.names)

    def truncate(self, lo: int, hi: int) -> FilteredComplex:
        """Keep degrees ``lo..hi``; the differential out of ``hi`` is dropped."""
        q = {h: list(v) for h, v in self.q.items() if lo <= h <= hi}
        d = {h: [dict(c) for c in self.differential(h)] if h < hi else [{} for _ in q[h]] for h in q}
        names = {h: self.names[h] for h in q if h in self.names} if self.names else None
        return FilteredComplex(q, d, self.parity, names)

    def shifted(self, dq: int) -> FilteredComplex:
        q = {h: [x + dq for x in v] for h, v in self.q.items()}
        parity = None if self.parity is None else (self.parity + dq) % 2
        return FilteredComplex(q, {h: [dict(c) for c in v] for h, v in self.d.items()}, parity, self.names)

    # -- dump format ------------------------------------------------------

    def to_dump(self) -> str:
        """``g <id> h=<h> q=<q>`` lines, then ``d <from> <to> <coeff>`` lines."""
        ids = {}
        lines = []
        for h in self.degrees:
            for i, x in enumerate(self.q[h]):
                ids[(h, i)] = len(ids)
                lines.append(f"g {ids[(h, i)]} h={h} q={x}")
        for h in self.degrees:
            for i, c in enumerate(self.differential(h)):
                for j, v in sorted(c.items()):
                    lines.append(f"d {ids[(h, i)]} {ids[(h + 1, j)]} {v}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_dump(cls, text: str | Iterable[str], parity: int | None = None) -> FilteredComplex:
        lines = text.splitlines() if isinstance(text, str) else list(text)
        where: dict[str, tuple[int, int]] = {}
        q: dict[int, list[int]] = {}
        entries = []
        for n, raw in enumerate(lines, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            try:
                if parts[0] == "g" and len(parts) == 4:
                    gid = parts[1]
                    h = int(parts[2].removeprefix("h="))
                    qq = int(parts[3].removeprefix("q="))
                    if gid in where:
                        raise ValueError(f"duplicate generator {gid}")
                    q.setdefault(h, []).append(qq)
                    where[gid] = (h, len(q[h]) - 1)
                elif parts[0] == "d" and len(parts) == 4:
                    entries.append((parts[1], parts[2], int(parts[3])))
                else:
                    raise ValueError("unknown record")
            except (ValueError, IndexError) as exc:
                raise ValueError(f"line {n}: {raw!r}: {exc}") from None
        C = cls(q, {}, parity)
        for a, b, v in entries:
            if a not in where or b not in where:
                raise ValueError(f"entry {a} -> {b} names an unknown generator")
            (ha, ia), (hb, ib) = where[a], where[b]
            if hb != ha + 1:
                raise ValueError(f"entry {a} -> {b} does not raise h by one")
            if v:
                col = C.d[ha][ia]
                col[ib] = col.get(ib, 0) + v
                if not col[ib]:
                    del col[ib]
        if parity is None:
            pars = {x % 2 for v in q.values() for x in v}
            C.parity = pars.pop() if len(pars) == 1 else None
        return C


def tensor(A: FilteredComplex, B: FilteredComplex, hmin: int | None = None, hmax: int | None = None) -> FilteredComplex:
    """Tensor product over the integers; degrees and filtrations add.

    ``d(a ⊗ b) = da ⊗ b + (-1)^|a| a ⊗ db``.  With ``hmin``/``hmax`` only those
    degrees are kept and the differential out of ``hmax`` is dropped.
    """
    pairs = [(ha, hb) for ha in A.degrees for hb in B.degrees]
    degs = sorted({ha + hb for ha, hb in pairs})
    lo = degs[0] if hmin is None else hmin
    hi = degs[-1] if hmax is None else hmax
    index: dict[int, dict[tuple[int, int, int, int], int]] = {}
    q: dict[int, list[int]] = {}
    for h in range(lo, hi + 1):
        gens = []
        for ha in A.degrees:
            hb = h - ha
            if hb not in B.q:
                continue
            for i, qa in enumerate(A.qs(ha)):
                for j, qb in enumerate(B.qs(hb)):
                    gens.append(((ha, i, hb, j), qa + qb))
        index[h] = {g: t for t, (g, _) in enumerate(gens)}
        q[h] = [x for _, x in gens]
    d: dict[int, list[dict[int, int]]] = {}
    for h in range(lo, hi + 1):
        cols = [{} for _ in q[h]]
        if h < hi:
            tgt = index[h + 1]
            for (ha, i, hb, j), t in index[h].items():
                col = cols[t]
                for k, v in A.differential(ha)[i].items():
                    col[tgt[(ha + 1, k, hb, j)]] = v
                s = -1 if ha % 2 else 1
                for k, v in B.differential(hb)[j].items():
                    key = tgt[(ha, i, hb + 1, k)]
                    col[key] = col.get(key, 0) + s * v
        d[h] = cols
    parity = None
    if A.parity is not None and B.parity is not None:
        parity = (A.parity + B.parity) % 2
    return FilteredComplex(q, d, parity)
