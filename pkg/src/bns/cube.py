"""The cube of resolutions of a diagram.

A smoothing chooses the 0- or 1-resolution at every crossing.  For a crossing
``(a, b, c, d)`` the 0-resolution joins ``a`` with ``b`` and ``c`` with ``d``;
the 1-resolution joins ``a`` with ``d`` and ``b`` with ``c``.  With the PD
orientation conventions the oriented resolution takes 0 at positive crossings
and 1 at negative ones.

Internally smoothings are bit masks (bit ``k`` is crossing ``k``).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterator, Sequence

from bns.diagram import PlanarDiagram
from bns.errors import NonPlanarData

MERGE, SPLIT = "merge", "split"


@dataclass(frozen=True)
class Smoothing:
    bits: tuple[int, ...]

    @property
    def weight(self) -> int:
        return sum(self.bits)

    @property
    def mask(self) -> int:
        return sum(1 << k for k, b in enumerate(self.bits) if b)

    @classmethod
    def from_mask(cls, mask: int, n: int) -> Smoothing:
        return cls(tuple((mask >> k) & 1 for k in range(n)))


@dataclass(frozen=True)
class CircleSet:
    circle_count: int
    edge_to_circle: dict[int, int]
    split_parity: int


@dataclass(frozen=True)
class SurgeryEdge:
    source: Smoothing
    target: Smoothing
    crossing: int
    kind: str
    sign: int
    circle_map: tuple[int, ...]
    """Target circle of each source circle."""


def edge_sign(mask: int, k: int) -> int:
    """Khovanov sign of flipping bit ``k``: one factor -1 per earlier 1-bit."""
    return -1 if bin(mask & ((1 << k) - 1)).count("1") & 1 else 1


class Cube:
    """Cached circle data for all smoothings of one diagram."""

    def __init__(self, D: PlanarDiagram):
        self.diagram = D
        self.n = D.crossing_count
        self.edges = D.edges
        self.m = len(self.edges)
        idx = D.edge_index
        self.xing = [tuple(idx[e] for e in x) for x in D.crossings]
        self.circles = lru_cache(maxsize=1 << 16)(self._circles)
        self.c0 = self.circles(0)[0]

    def _circles(self, mask: int) -> tuple[int, tuple[int, ...]]:
        """``(count, circle of each edge index)``; circles numbered by first edge."""
        if self.n == 0:
            return 1, ()
        parent = list(range(self.m))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for k, (a, b, c, d) in enumerate(self.xing):
            if (mask >> k) & 1:
                pairs = ((a, d), (b, c))
            else:
                pairs = ((a, b), (c, d))
            for u, w in pairs:
                ru, rw = find(u), find(w)
                if ru != rw:
                    parent[ru] = rw
        label: dict[int, int] = {}
        out = []
        for i in range(self.m):
            r = find(i)
            if r not in label:
                label[r] = len(label)
            out.append(label[r])
        return len(label), tuple(out)

    def split_parity(self, mask: int) -> int:
        w = bin(mask).count("1")
        return ((w + self.circles(mask)[0] - self.c0) // 2) & 1

    def surgery(self, mask: int, k: int):
        """Data of the cube edge leaving ``mask`` at crossing ``k`` (bit must be 0).

        Returns ``(target, sign, kind, circle_map, touched)``: for a merge
        ``touched`` is the pair of source circles; for a split it is the source
        circle followed by the two target circles, the one through position 0
        of the crossing first.
        """
        target = mask | (1 << k)
        _, cv = self.circles(mask)
        cw_count, cw = self.circles(target)
        a, b, c, d = self.xing[k]
        count_v = self.circles(mask)[0]
        cmap = [0] * count_v
        for i, ci in enumerate(cv):
            cmap[ci] = cw[i]
        if cv[a] != cv[c]:
            kind = MERGE
            touched = (cv[a], cv[c])
        else:
            kind = SPLIT
            touched = (cv[a], cw[a], cw[b])
        return target, edge_sign(mask, k), kind, tuple(cmap), touched


def resolve(D: PlanarDiagram, v: Smoothing) -> CircleSet:
    if len(v.bits) != D.crossing_count:
        raise ValueError("smoothing length differs from crossing count")
    cube = Cube(D)
    count, circ = cube.circles(v.mask)
    e2c = {e: circ[i] for i, e in enumerate(cube.edges)}
    return CircleSet(count, e2c, cube.split_parity(v.mask))


def iter_cube_edges(D: PlanarDiagram) -> Iterator[SurgeryEdge]:
    cube = Cube(D)
    n = cube.n
    for mask in range(1 << n):
        for k in range(n):
            if (mask >> k) & 1:
                continue
            target, sign, kind, cmap, _ = cube.surgery(mask, k)
            yield SurgeryEdge(
                Smoothing.from_mask(mask, n), Smoothing.from_mask(target, n), k, kind, sign, cmap
            )


def cube_edges(D: PlanarDiagram) -> list[SurgeryEdge]:
    return list(iter_cube_edges(D))


def masks_of_weight(n: int, w: int) -> list[int]:
    """All ``n``-bit masks with ``w`` ones, in lexicographic order of bit vectors."""
    if w < 0 or w > n:
        return []
    out = []
    for ones in combinations(range(n), w):
        out.append(sum(1 << k for k in ones))
    out.sort(key=lambda m: tuple((m >> k) & 1 for k in range(n)))
    return out


# -- orientations and nesting ---------------------------------------------


def all_orientations(D: PlanarDiagram) -> list[tuple[bool, ...]]:
    """Every choice of reversal flags, one flag per component."""
    c = D.component_count
    return [tuple(bool((r >> i) & 1) for i in range(c)) for r in range(1 << c)]


def oriented_sign(D: PlanarDiagram, k: int, orientation: Sequence[bool]) -> int:
    under, over = D.crossing_strands(k)
    flip = orientation[under] != orientation[over]
    return -D.signs[k] if flip else D.signs[k]


def oriented_smoothing(D: PlanarDiagram, orientation: Sequence[bool] | None = None) -> Smoothing:
    """Resolution in which every circle inherits the orientation."""
    if orientation is None:
        orientation = (False,) * D.component_count
    return Smoothing(
        tuple(0 if oriented_sign(D, k, orientation) > 0 else 1 for k in range(D.crossing_count))
    )


def _regions(D: PlanarDiagram, mask: int) -> tuple[list[int], int]:
    """Region of every face in the smoothing, and the number of regions."""
    faces = D.faces
    fc = D.corner_face
    parent = list(range(len(faces)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for k in range(D.crossing_count):
        i, j = (0, 2) if (mask >> k) & 1 else (1, 3)
        parent[find(fc[(k, i)])] = find(fc[(k, j)])
    label: dict[int, int] = {}
    region = []
    for f in range(len(faces)):
        r = find(f)
        label.setdefault(r, len(label))
        region.append(label[r])
    return region, len(label)


def circle_nesting(D: PlanarDiagram, v: Smoothing, orientation: Sequence[bool] | None = None):
    """Nesting depth and clockwise flag of every circle of ``v``.

    Depth counts the circles separating a circle from the unbounded region,
    which is the region of the face on the left of the smallest edge.
    Returns two lists indexed by circle.
    """
    if D.crossing_count == 0:
        return [0], [False]
    if orientation is None:
        orientation = (False,) * D.component_count
    cube = Cube(D)
    count, circ = cube.circles(v.mask)
    region, nreg = _regions(D, v.mask)
    if nreg != count + 1:
        raise NonPlanarData(f"{count} circles bound {nreg} regions")
    comp = D.edge_component
    sides = [None] * count  # (left region, right region) under the orientation
    for i, e in enumerate(cube.edges):
        lf, rf = region[D.left_face(e)], region[D.right_face(e)]
        if orientation[comp[e]]:
            lf, rf = rf, lf
        c = circ[i]
        if sides[c] is None:
            sides[c] = (lf, rf)
        elif sides[c] != (lf, rf):
            raise NonPlanarData(f"circle {c} does not bound consistent regions")
    adj: dict[int, list[tuple[int, int]]] = {}
    for c, (lf, rf) in enumerate(sides):
        adj.setdefault(lf, []).append((c, rf))
        adj.setdefault(rf, []).append((c, lf))
    root = region[D.left_face(min(D.edges))]
    depth = [0] * count
    clockwise = [False] * count
    seen = {root: 0}
    stack = [root]
    while stack:
        r = stack.pop()
        for c, other in adj.get(r, ()):
            if other in seen:
                continue
            seen[other] = seen[r] + 1
            depth[c] = seen[r]
            clockwise[c] = sides[c][0] == r
            stack.append(other)
    if len(seen) != nreg:
        raise NonPlanarData("region graph of the smoothing is not connected")
    return depth, clockwise


def nesting_parity(
    D: PlanarDiagram, v: Smoothing, circle: int, orientation: Sequence[bool] | None = None
) -> int:
    """``i(C)``: nesting depth plus one if ``C`` runs clockwise, mod 2."""
    depth, clockwise = circle_nesting(D, v, orientation)
    return (depth[circle] + int(clockwise[circle])) & 1
