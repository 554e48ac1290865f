"""Oriented knot and link diagrams given by planar diagram (PD) codes.

A crossing is a 4-tuple of edge labels ``(a, b, c, d)`` listed counterclockwise,
starting at the incoming under-strand.  The under-strand runs ``a -> c``; the
over-strand runs ``d -> b`` (positive crossing) or ``b -> d`` (negative crossing).
This is the KnotTheory/KnotInfo convention, so table entries import verbatim::

    >>> D = parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)")
    >>> D.n_plus, D.n_minus, D.component_count
    (0, 3, 1)
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Iterable, Sequence

from bns.errors import (
    EdgeMultiplicity,
    InconsistentOrientation,
    MalformedToken,
    NonPlanarData,
    NotAKnot,
)

IN, OUT = 1, 0

_TOKEN = re.compile(r"X\s*[\(\[]\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*[\)\]]")
_SEPARATORS = re.compile(r"[\s,;]*")

Crossing = tuple[int, int, int, int]


@dataclass(frozen=True)
class PlanarDiagram:
    """An oriented link diagram with a basepoint.

    ``crossings`` is empty only for the crossingless unknot.
    """

    crossings: tuple[Crossing, ...]
    basepoint_edge: int | None = None
    _orientation: dict = field(default=None, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if self._orientation is None:
            object.__setattr__(self, "_orientation", _orient(self.crossings))
        if self.basepoint_edge is None and self.crossings:
            object.__setattr__(self, "basepoint_edge", min(self.edges))
        if self.crossings and self.basepoint_edge not in self.incidences:
            raise ValueError(f"basepoint {self.basepoint_edge} is not an edge of the diagram")

    # -- basic data -------------------------------------------------------

    @property
    def crossing_count(self) -> int:
        return len(self.crossings)

    @cached_property
    def incidences(self) -> dict[int, list[tuple[int, int]]]:
        """Edge label -> its two ``(crossing, position)`` incidences."""
        inc: dict[int, list[tuple[int, int]]] = {}
        for k, x in enumerate(self.crossings):
            for pos, e in enumerate(x):
                inc.setdefault(e, []).append((k, pos))
        return inc

    @cached_property
    def edges(self) -> tuple[int, ...]:
        return tuple(sorted(self.incidences))

    @property
    def edge_count(self) -> int:
        return len(self.incidences)

    @cached_property
    def edge_index(self) -> dict[int, int]:
        """Edge label -> dense index 0..edge_count-1 (sorted by label)."""
        return {e: i for i, e in enumerate(self.edges)}

    def tail(self, e: int) -> tuple[int, int]:
        """Incidence where edge ``e`` leaves a crossing."""
        return self._orientation["tail"][e]

    def head(self, e: int) -> tuple[int, int]:
        """Incidence where edge ``e`` enters a crossing."""
        return self._orientation["head"][e]

    @cached_property
    def signs(self) -> tuple[int, ...]:
        """Crossing signs; +1 when the over-strand leaves through position 1."""
        head = self._orientation["head"]
        return tuple(
            -1 if head[x[1]] == (k, 1) else 1 for k, x in enumerate(self.crossings)
        )

    @property
    def n_plus(self) -> int:
        return sum(1 for s in self.signs if s > 0)

    @property
    def n_minus(self) -> int:
        return sum(1 for s in self.signs if s < 0)

    @property
    def writhe(self) -> int:
        return sum(self.signs)

    @cached_property
    def components(self) -> tuple[tuple[int, ...], ...]:
        """Edges of each component, in traversal order, ordered by minimal label."""
        if not self.crossings:
            return ((),)
        seen: set[int] = set()
        comps = []
        for start in self.edges:
            if start in seen:
                continue
            comp = []
            e = start
            while e not in seen:
                seen.add(e)
                comp.append(e)
                k, pos = self.head(e)
                e = self.crossings[k][(pos + 2) % 4]
            comps.append(tuple(comp))
        return tuple(comps)

    @property
    def component_count(self) -> int:
        return len(self.components)

    @cached_property
    def edge_component(self) -> dict[int, int]:
        return {e: i for i, comp in enumerate(self.components) for e in comp}

    def crossing_strands(self, k: int) -> tuple[int, int]:
        """Component indices of the (under, over) strands at crossing ``k``."""
        a, b, _, _ = self.crossings[k]
        return self.edge_component[a], self.edge_component[b]

    def is_knot(self) -> bool:
        return self.component_count == 1

    def require_knot(self) -> None:
        if not self.is_knot():
            raise NotAKnot(f"diagram has {self.component_count} components")

    def with_basepoint(self, edge: int) -> PlanarDiagram:
        return replace(self, basepoint_edge=edge)

    # -- planar structure -------------------------------------------------

    @cached_property
    def faces(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """Faces as cycles of corners ``(crossing, i)``.

        Corner ``i`` of a crossing sits between positions ``i`` and ``i+1``.  Each
        face is traversed with the face on the right-hand side.
        """
        inc = self.incidences
        nxt = {}
        for k, x in enumerate(self.crossings):
            for i in range(4):
                e = x[(i + 1) % 4]
                p, q = inc[e]
                other = q if p == (k, (i + 1) % 4) else p
                nxt[(k, i)] = other
        faces = []
        seen: set[tuple[int, int]] = set()
        for corner in sorted(nxt):
            if corner in seen:
                continue
            cyc = []
            c = corner
            while c not in seen:
                seen.add(c)
                cyc.append(c)
                c = nxt[c]
            if c != corner:
                raise NonPlanarData("face tracing did not close up")
            faces.append(tuple(cyc))
        n = len(self.crossings)
        pieces = self._graph_pieces()
        if n and n - 2 * n + len(faces) != 2 * pieces:
            raise NonPlanarData(
                f"{len(faces)} faces for {n} crossings in {pieces} pieces: not planar"
            )
        return tuple(faces)

    def _graph_pieces(self) -> int:
        parent = list(range(len(self.crossings)))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for (k1, _), (k2, _) in self.incidences.values():
            parent[find(k1)] = find(k2)
        return len({find(k) for k in range(len(self.crossings))})

    @cached_property
    def corner_face(self) -> dict[tuple[int, int], int]:
        return {c: f for f, cyc in enumerate(self.faces) for c in cyc}

    def left_face(self, e: int) -> int:
        """Face on the left of edge ``e`` with respect to its orientation."""
        k, pos = self.tail(e)
        return self.corner_face[(k, pos)]

    def right_face(self, e: int) -> int:
        k, pos = self.tail(e)
        return self.corner_face[(k, (pos - 1) % 4)]

    # -- serialization ----------------------------------------------------

    def to_pd(self) -> str:
        if not self.crossings:
            return "unknot"
        return " ".join("X(%d,%d,%d,%d)" % x for x in self.crossings)

    def __str__(self) -> str:
        return self.to_pd()


def _orient(crossings: Sequence[Crossing]) -> dict:
    """Assign head and tail incidences to every edge, or raise."""
    inc: dict[int, list[tuple[int, int]]] = {}
    for k, x in enumerate(crossings):
        if len(x) != 4:
            raise MalformedToken(f"crossing {x} does not have 4 entries")
        for pos, e in enumerate(x):
            if not isinstance(e, int) or e <= 0:
                raise MalformedToken(f"edge label {e!r} is not a positive integer")
            inc.setdefault(e, []).append((k, pos))
    for e, where in inc.items():
        if len(where) != 2:
            raise EdgeMultiplicity(f"edge {e} occurs {len(where)} times")

    state: dict[tuple[int, int], int] = {}
    queue: list[tuple[int, int]] = []

    def assign(slot, value):
        old = state.get(slot)
        if old is None:
            state[slot] = value
            queue.append(slot)
        elif old != value:
            k, pos = slot
            e = crossings[k][pos]
            raise InconsistentOrientation(f"edge {e} would need two heads or two tails")

    def propagate():
        while queue:
            k, pos = queue.pop()
            value = state[(k, pos)]
            e = crossings[k][pos]
            p, q = inc[e]
            assign(q if p == (k, pos) else p, 1 - value)
            if pos in (1, 3):
                assign((k, 4 - pos), 1 - value)

    for k in range(len(crossings)):
        assign((k, 0), IN)
        assign((k, 2), OUT)
    propagate()
    # components that only ever pass over are oriented arbitrarily
    for k in range(len(crossings)):
        if (k, 1) not in state:
            assign((k, 1), OUT)
            propagate()

    head, tail = {}, {}
    for slot, value in state.items():
        e = crossings[slot[0]][slot[1]]
        (head if value == IN else tail)[e] = slot
    return {"head": head, "tail": tail}


UNKNOT = PlanarDiagram(())


# -- parsing ---------------------------------------------------------------


def parse_pd(text: str, basepoint: int | None = None) -> PlanarDiagram:
    """Parse ``X(a,b,c,d)`` tokens (or the word ``unknot``) into a diagram.

    A ``dt:`` prefix switches to DT notation, see :func:`parse_dt`.
    """
    s = text.strip()
    if s.lower().startswith("dt:"):
        return parse_dt(s[3:], basepoint=basepoint)
    if s.lower() in ("unknot", "o", ""):
        if basepoint is not None:
            raise ValueError("the crossingless unknot has no edges for a basepoint")
        return UNKNOT
    if s.upper().startswith("PD"):
        s = s[2:].strip()
        if s[:1] in "[(" and s[-1:] in "])":
            s = s[1:-1]
    crossings = []
    pos = 0
    while pos < len(s):
        m = _SEPARATORS.match(s, pos)
        pos = m.end()
        if pos >= len(s):
            break
        m = _TOKEN.match(s, pos)
        if m is None:
            raise MalformedToken(f"cannot parse PD code near {s[pos:pos + 20]!r}")
        crossings.append(tuple(int(g) for g in m.groups()))
        pos = m.end()
    if not crossings:
        raise MalformedToken(f"no crossings found in {text!r}")
    return PlanarDiagram(tuple(crossings), basepoint_edge=basepoint)


def from_crossings(crossings: Iterable[Sequence[int]], basepoint: int | None = None) -> PlanarDiagram:
    return PlanarDiagram(tuple(tuple(int(e) for e in x) for x in crossings), basepoint_edge=basepoint)


def parse_dt(text: str, basepoint: int | None = None) -> PlanarDiagram:
    """Parse a Dowker-Thistlethwaite code of a knot, e.g. ``"4 6 2"``.

    A positive even entry means the strand passes under at its even label.
    The planar embedding is found by a planarity test.  Of the two mirror-image
    embeddings we keep the one where, turning clockwise at the first crossing
    from the incoming strand at label 1, the next strand met leaves the even
    partner label.  This matches the chirality of the KnotInfo PD codes.
    """
    word = text.strip()
    if re.fullmatch(r"[a-zA-Z]{3,}", word):
        nums = _decode_alphabetical_dt(word)
    else:
        nums = [int(t) for t in re.findall(r"-?\d+", text)]
    if not nums:
        raise MalformedToken(f"no DT entries in {text!r}")
    return dt_to_diagram(nums, basepoint=basepoint)


def _decode_alphabetical_dt(word: str) -> list[int]:
    """Knotscape letter form: crossing count, component count, component
    lengths, then one letter per odd label (a=2, b=4, ...; capital = negative)."""
    n = ord(word[0].lower()) - ord("a") + 1
    comps = ord(word[1].lower()) - ord("a") + 1
    if comps != 1:
        raise MalformedToken(f"{word!r} describes a {comps}-component link")
    body = word[3:]
    if ord(word[2].lower()) - ord("a") + 1 != n or len(body) != n:
        raise MalformedToken(f"inconsistent lengths in alphabetical DT code {word!r}")
    return [(2 if ch.islower() else -2) * (ord(ch.lower()) - ord("a") + 1) for ch in body]


def dt_to_diagram(code: Sequence[int], basepoint: int | None = None) -> PlanarDiagram:
    import networkx as nx

    n = len(code)
    evens = [abs(a) for a in code]
    if sorted(evens) != list(range(2, 2 * n + 1, 2)):
        raise MalformedToken(f"DT code {list(code)} is not a pairing of odd and even labels")
    m = 2 * n
    crossing_of = {}
    even_under = {}
    for k, a in enumerate(code):
        crossing_of[2 * k + 1] = k
        crossing_of[abs(a)] = k
        even_under[k] = a > 0

    def edge_in(p):  # edge entering passage p
        return m if p == 1 else p - 1

    g = nx.Graph()
    for k in range(n):
        i, j = 2 * k + 1, abs(code[k])
        rim = [("in", i), ("in", j), ("out", i), ("out", j)]
        for r in rim:
            g.add_edge(("c", k), r)
        for r1, r2 in zip(rim, rim[1:] + rim[:1]):
            g.add_edge(r1, r2)
    for p in range(1, m + 1):
        q = p % m + 1
        g.add_edge(("out", p), ("e", p))
        g.add_edge(("e", p), ("in", q))

    planar, emb = nx.check_planarity(g)
    if not planar:
        raise NonPlanarData(f"DT code {list(code)} is not realizable")

    def ccw(k):
        order = list(emb.neighbors_cw_order(("c", k)))
        order.reverse()
        return order

    # fix the global reflection at the crossing of label 1
    first = ccw(crossing_of[1])
    j1 = abs(code[0])
    i0 = first.index(("in", 1))
    flip = first[(i0 + 1) % 4] == ("out", j1)

    crossings = []
    for k in range(n):
        order = ccw(k)
        if flip:
            order.reverse()
        i, j = 2 * k + 1, abs(code[k])
        under = j if even_under[k] else i
        start = order.index(("in", under))
        order = order[start:] + order[:start]
        crossings.append(
            tuple(edge_in(p) if kind == "in" else p for kind, p in order)
        )
    return PlanarDiagram(tuple(crossings), basepoint_edge=basepoint)


# -- transformations -------------------------------------------------------


def mirror(D: PlanarDiagram) -> PlanarDiagram:
    """Switch every crossing, keeping the planar projection and orientation."""
    out = []
    for (a, b, c, d), s in zip(D.crossings, D.signs):
        out.append((d, a, b, c) if s > 0 else (b, c, d, a))
    return PlanarDiagram(tuple(out), basepoint_edge=D.basepoint_edge)


def connected_sum(D1: PlanarDiagram, D2: PlanarDiagram) -> PlanarDiagram:
    """Splice two knot diagrams together at their basepoint edges.

    The result keeps the basepoint of ``D1``.
    """
    D1.require_knot()
    D2.require_knot()
    if not D2.crossings:
        return D1
    if not D1.crossings:
        return D2
    shift = max(D1.edges)
    relabel = {e: e + shift for e in D2.edges}
    e1 = D1.basepoint_edge
    e2 = D2.basepoint_edge
    new_edge = relabel[e2]
    # D1: A -e1-> B, D2: C -e2-> E.  Result: A -e1-> E ... C -new-> B
    bk, bpos = D1.head(e1)
    ek, epos = D2.head(e2)
    first = [list(x) for x in D1.crossings]
    first[bk][bpos] = new_edge
    second = [[relabel[e] for e in x] for x in D2.crossings]
    second[ek][epos] = e1
    crossings = [tuple(x) for x in first + second]
    return PlanarDiagram(tuple(crossings), basepoint_edge=e1)


def relabel_consecutive(D: PlanarDiagram) -> PlanarDiagram:
    """Renumber edges 1..2n along the components, starting at the basepoint."""
    if not D.crossings:
        return D
    order = []
    comps = sorted(D.components, key=lambda c: D.basepoint_edge not in c)
    for comp in comps:
        if D.basepoint_edge in comp:
            i = comp.index(D.basepoint_edge)
            comp = comp[i:] + comp[:i]
        order.extend(comp)
    new = {e: i + 1 for i, e in enumerate(order)}
    return PlanarDiagram(
        tuple(tuple(new[e] for e in x) for x in D.crossings), basepoint_edge=1
    )


def reidemeister1(D: PlanarDiagram, edge: int, kind: int = 0) -> PlanarDiagram:
    """Add a kink on ``edge``.

    ``kind`` in 0..3 picks the sign of the new crossing and on which side of
    the edge the loop sits.
    """
    if not D.crossings:
        # a kink on the crossingless unknot
        return from_crossings([[(1, 2, 2, 1), (1, 1, 2, 2), (2, 2, 1, 1), (2, 1, 1, 2)][kind]])
    top = max(D.edges)
    loop, after = top + 1, top + 2
    hk, hpos = D.head(edge)
    rows = [list(x) for x in D.crossings]
    rows[hk][hpos] = after
    e = edge
    kink = [
        (e, loop, loop, after),  # under first, negative
        (e, after, loop, loop),  # under first, positive
        (loop, loop, after, e),  # over first, positive
        (loop, e, after, loop),  # over first, negative
    ][kind]
    rows.append(list(kink))
    return from_crossings(rows, basepoint=D.basepoint_edge)


def reidemeister2(D: PlanarDiagram, face: int, e: int, f: int) -> PlanarDiagram:
    """Push edge ``e`` over edge ``f`` across ``face`` (both on its boundary)."""
    cyc = D.faces[face]
    steps = {}
    for k, i in cyc:
        x = D.crossings[k]
        start = (k, (i + 1) % 4)
        lbl = x[(i + 1) % 4]
        p, q = D.incidences[lbl]
        end = q if p == start else p
        steps.setdefault(lbl, (start, end))
    if e == f or e not in steps or f not in steps:
        raise ValueError(f"edges {e}, {f} are not two distinct edges of face {face}")
    (se, te), (sf, tf) = steps[e], steps[f]
    top = max(D.edges)
    e2, e3, f2, f3 = top + 1, top + 2, top + 3, top + 4
    rows = [list(x) for x in D.crossings]
    # e keeps its label at its traversal start, f likewise
    rows[te[0]][te[1]] = e3
    rows[tf[0]][tf[1]] = f3
    e1, f1 = e, f
    # counterclockwise orders derived with the face on the right of the walk
    at_p = [e1, f3, e2, f2]
    at_q = [e3, f2, e2, f1]
    f_forward = D.tail(f) == sf
    if f_forward:
        p_in, q_in = f2, f1
    else:
        p_in, q_in = f3, f2

    def rotate(order, first):
        i = order.index(first)
        return tuple(order[i:] + order[:i])

    rows.append(list(rotate(at_p, p_in)))
    rows.append(list(rotate(at_q, q_in)))
    return from_crossings(rows, basepoint=D.basepoint_edge)


def whitehead_double(D: PlanarDiagram, twists: int, clasp: int = 1) -> PlanarDiagram:
    """The ``twists``-twisted Whitehead double of a knot with a clasp of sign ``clasp``.

    Every crossing of ``D`` becomes four crossings of two parallel strands.  The
    blackboard framing of the doubled band is the writhe, so ``twists - writhe``
    full twists are added on the basepoint edge, next to the clasp.  With
    ``clasp=1`` the unknot gives twist knots: ``twists=-1`` the right-handed
    trefoil and ``twists=1`` the figure-eight.
    """
    D.require_knot()
    if clasp not in (1, -1):
        raise ValueError("clasp must be +1 or -1")
    labels = iter(range(1, 1 << 30))
    parent: dict[int, int] = {}
    rows: list[list[int]] = []  # each row starts at one end of its under-strand

    def fresh() -> int:
        e = next(labels)
        parent[e] = e
        return e

    def find(e: int) -> int:
        while parent[e] != e:
            parent[e] = parent[parent[e]]
            e = parent[e]
        return e

    def join(a: int, b: int) -> None:
        parent[find(a)] = find(b)

    # ends[k, i] = (right, left) strand ends of the band at position i of crossing k,
    # seen looking out of the crossing; they are counterclockwise in that order
    ends = {}
    for k in range(D.crossing_count):
        for i in range(4):
            ends[k, i] = (fresh(), fresh())
        top, bottom, west, east = fresh(), fresh(), fresh(), fresh()
        # the under band runs horizontally (positions 0 -> 2), the over band vertically
        rows.append([ends[k, 0][0], west, top, ends[k, 3][1]])
        rows.append([top, east, ends[k, 2][1], ends[k, 3][0]])
        rows.append([ends[k, 0][1], ends[k, 1][0], bottom, west])
        rows.append([bottom, ends[k, 1][1], ends[k, 2][0], east])

    if D.crossings:
        e = D.basepoint_edge
        (tk, ti), (hk, hi) = D.tail(e), D.head(e)
        start_r, start_l = ends[tk, ti]
        stop_r, stop_l = ends[hk, hi]
        for other in D.edges:
            if other == e:
                continue
            (ak, ai), (bk, bi) = D.tail(other), D.head(other)
            join(ends[ak, ai][1], ends[bk, bi][0])
            join(ends[ak, ai][0], ends[bk, bi][1])
    else:
        start_r, start_l = fresh(), fresh()
        stop_r, stop_l = start_l, start_r

    # the clasp: a hook closing the incoming pair interlocks with a hook closing
    # the outgoing pair; s1 and s2 run between the two clasp crossings
    wl, wr, el, er, s1, s2 = (fresh() for _ in range(6))
    join(start_l, wl)
    join(start_r, wr)
    if clasp < 0:
        rows.append([er, s1, s2, wr])
        rows.append([s1, el, wl, s2])
    else:
        rows.append([wr, er, s1, s2])
        rows.append([s2, s1, el, wl])
    left, right = el, er
    extra = twists - D.writhe
    for _ in range(2 * abs(extra)):
        out_l, out_r = fresh(), fresh()
        if extra < 0:
            rows.append([left, right, out_r, out_l])
        else:
            rows.append([out_l, left, right, out_r])
        left, right = out_l, out_r
    join(left, stop_r)
    join(right, stop_l)

    rows = [[find(e) for e in row] for row in rows]
    return _orient_rows(rows)


def _orient_rows(rows: list[list[int]]) -> PlanarDiagram:
    """Rotate rows that start at the outgoing end of their under-strand.

    Each row is counterclockwise and starts at one end of its under-strand; the
    knot is walked once to find which end is incoming.
    """
    where: dict[int, list[tuple[int, int]]] = {}
    for k, row in enumerate(rows):
        for i, e in enumerate(row):
            where.setdefault(e, []).append((k, i))
    entered = set()
    k, i = 0, 0
    while (k, i) not in entered:
        entered.add((k, i))
        out = (k, (i + 2) % 4)
        a, b = where[rows[out[0]][out[1]]]
        k, i = b if a == out else a
    if len(entered) != 2 * len(rows):
        raise NotAKnot("the doubled diagram is not connected")
    crossings = [row if (k, 0) in entered else row[2:] + row[:2] for k, row in enumerate(rows)]
    return relabel_consecutive(from_crossings(crossings))
