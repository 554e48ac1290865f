"""The filtered Bar-Natan complex of a diagram over the integers.

The Frobenius algebra is ``A = Z[x]/(x^2 - x)`` with ``deg 1 = 1``,
``deg x = -1`` and

    m(1⊗1) = 1,  m(1⊗x) = m(x⊗1) = x,  m(x⊗x) = x,
    Δ(1) = 1⊗x + x⊗1 - 1⊗1,            Δ(x) = x⊗x.

``m(x⊗x)`` and the ``-1⊗1`` term of ``Δ(1)`` raise q by two; every other term
preserves it.  A generator is a smoothing together with a label per circle,
encoded as the pair ``(mask, xmask)`` where bit ``i`` of ``xmask`` says that
circle ``i`` carries ``x``.  The reduced complex is spanned by the generators
whose basepoint circle carries ``x``; its q-degrees are shifted up by one.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Sequence

from bns.algebra.complex import FilteredComplex
from bns.algebra.gauss import drop_targets, reduce_pair
from bns.algebra.rings import ZZ
from bns.cube import (
    MERGE,
    Cube,
    Smoothing,
    all_orientations,
    circle_nesting,
    masks_of_weight,
    oriented_smoothing,
)
from bns.diagram import PlanarDiagram

log = logging.getLogger(__name__)

Key = tuple[int, int]
Chain = dict[Key, int]


def _popcount(x: int) -> int:
    return bin(x).count("1")


@dataclass(frozen=True)
class BNGenerator:
    smoothing: Smoothing
    labels: tuple[str, ...]
    h: int
    q: int


class BNComplex:
    """Generators and differential of the (reduced) Bar-Natan complex of ``D``.

    Nothing is materialized up front; generators of one homological degree and
    the differential of individual generators are produced on demand.
    """

    def __init__(self, D: PlanarDiagram, reduced: bool = False, khovanov_only: bool = False):
        if reduced and not D.is_knot() and D.crossing_count == 0:
            raise ValueError("reduced complex needs a basepoint")
        self.diagram = D
        self.reduced = reduced
        self.khovanov_only = khovanov_only
        self.cube = Cube(D)
        self.n = D.crossing_count
        self.n_plus = D.n_plus
        self.n_minus = D.n_minus
        self.bp = D.edge_index[D.basepoint_edge] if self.n else None
        self._surgery: dict[tuple[int, int], tuple] = {}

    # -- generators -------------------------------------------------------

    @property
    def hmin(self) -> int:
        return -self.n_minus

    @property
    def hmax(self) -> int:
        return self.n_plus

    def basepoint_circle(self, mask: int) -> int:
        if self.n == 0:
            return 0
        return self.cube.circles(mask)[1][self.bp]

    def q_of(self, key: Key) -> int:
        mask, xmask = key
        c = self.cube.circles(mask)[0]
        w = _popcount(mask)
        q = c - 2 * _popcount(xmask) + w + self.n_plus - 2 * self.n_minus
        return q + 1 if self.reduced else q

    def h_of(self, key: Key) -> int:
        return _popcount(key[0]) - self.n_minus

    def generators(self, h: int) -> list[Key]:
        """Degree-``h`` generators, lexicographic in (smoothing bits, labels)."""
        out = []
        for mask in masks_of_weight(self.n, h + self.n_minus):
            c = self.cube.circles(mask)[0]
            fixed = 1 << self.basepoint_circle(mask) if self.reduced else 0
            labels = [x for x in range(1 << c) if x & fixed == fixed]
            labels.sort(key=lambda x: tuple((x >> i) & 1 for i in range(c)))
            out.extend((mask, x) for x in labels)
        return out

    def describe(self, key: Key) -> BNGenerator:
        mask, xmask = key
        c = self.cube.circles(mask)[0]
        labels = tuple("x" if (xmask >> i) & 1 else "1" for i in range(c))
        return BNGenerator(Smoothing.from_mask(mask, self.n), labels, self.h_of(key), self.q_of(key))

    # -- differential -----------------------------------------------------

    def _edge(self, mask: int, k: int):
        data = self._surgery.get((mask, k))
        if data is None:
            data = self.cube.surgery(mask, k)
            self._surgery[(mask, k)] = data
        return data

    def clear_cache(self) -> None:
        self._surgery.clear()

    def differential(self, key: Key) -> Chain:
        mask, xmask = key
        out: Chain = {}
        keep_raising = not self.khovanov_only
        for k in range(self.n):
            if (mask >> k) & 1:
                continue
            target, sign, kind, cmap, touched = self._edge(mask, k)
            rest = 0
            for i, j in enumerate(cmap):
                if (xmask >> i) & 1:
                    rest |= 1 << j
            if kind == MERGE:
                i, j = touched
                xi, xj = (xmask >> i) & 1, (xmask >> j) & 1
                if xi and xj and not keep_raising:
                    continue
                t = (target, rest)
                out[t] = out.get(t, 0) + sign
            else:
                s, m1, m2 = touched
                b1, b2 = 1 << m1, 1 << m2
                base = rest & ~(b1 | b2)
                if (xmask >> s) & 1:
                    t = (target, base | b1 | b2)
                    out[t] = out.get(t, 0) + sign
                else:
                    for t in ((target, base | b2), (target, base | b1)):
                        out[t] = out.get(t, 0) + sign
                    if keep_raising:
                        t = (target, base)
                        out[t] = out.get(t, 0) - sign
        return {t: v for t, v in out.items() if v}

    def apply(self, chain: Chain) -> Chain:
        out: Chain = {}
        for key, c in chain.items():
            for t, v in self.differential(key).items():
                out[t] = out.get(t, 0) + c * v
        return {t: v for t, v in out.items() if v}

    # -- whole complexes --------------------------------------------------

    def full(self, hmin: int | None = None, hmax: int | None = None) -> FilteredComplex:
        """The complex in degrees ``hmin..hmax`` without any reduction."""
        hmin = self.hmin if hmin is None else hmin
        hmax = self.hmax if hmax is None else hmax
        q, d, names = {}, {}, {}
        gens = {h: self.generators(h) for h in range(hmin, hmax + 1)}
        for h in range(hmin, hmax + 1):
            names[h] = gens[h]
            q[h] = [self.q_of(g) for g in gens[h]]
            if h < hmax:
                index = {g: i for i, g in enumerate(gens[h + 1])}
                d[h] = [{index[t]: v for t, v in self.differential(g).items()} for g in gens[h]]
            else:
                d[h] = [{} for _ in gens[h]]
        return FilteredComplex(q, d, self._parity(), names)

    def _parity(self) -> int | None:
        if not self.diagram.is_knot():
            return None
        return 0 if self.reduced else 1

    def reduced_levels(self, hmin: int, hmax: int, ring=ZZ) -> FilteredComplex:
        """Degrees ``hmin..hmax`` built one at a time with Gauss elimination.

        The differential out of ``hmax`` is not built, so the result computes
        cohomology correctly in degrees ``hmin+1..hmax-1``.
        """
        hmin = max(hmin, self.hmin)
        hmax = min(hmax, self.hmax)
        q, d, names = {}, {}, {}
        if hmin > hmax:
            return FilteredComplex({}, {}, self._parity())
        cur = self.generators(hmin)
        for h in range(hmin, hmax + 1):
            qs = [self.q_of(g) for g in cur]
            if h == hmax:
                q[h], names[h], d[h] = qs, cur, [{} for _ in cur]
                break
            nxt = self.generators(h + 1)
            index = {g: i for i, g in enumerate(nxt)}
            cols = [{index[t]: v for t, v in self.differential(g).items()} for g in cur]
            self.clear_cache()
            qt = [self.q_of(g) for g in nxt]
            nnz = sum(len(c) for c in cols)
            kept_s, kept_t, cols = reduce_pair(cols, qs, qt, ring)
            if h - 1 in d:
                d[h - 1] = drop_targets(d[h - 1], kept_s)
            log.info(
                "degree %d: %d x %d generators, %d entries -> %d x %d",
                h, len(cur), len(nxt), nnz, len(kept_s), len(kept_t),
            )
            q[h] = [qs[i] for i in kept_s]
            names[h] = [cur[i] for i in kept_s]
            d[h] = cols
            cur = [nxt[j] for j in kept_t]
        return FilteredComplex(q, d, self._parity(), names)

    # -- involution and the maps T, S ---------------------------------------

    def split_parity(self, mask: int) -> int:
        return self.cube.split_parity(mask)

    def involution(self, chain: Chain) -> Chain:
        """``I = (-1)^{e_S} I'`` with ``I'(1) = 1`` and ``I'(x) = 1 - x``."""
        out: Chain = {}
        for (mask, xmask), c in chain.items():
            s = -c if self.split_parity(mask) else c
            # expand the product of (1 - x) over the x-labelled circles
            sub = xmask
            while True:
                t = (mask, sub)
                v = -s if _popcount(sub) & 1 else s
                out[t] = out.get(t, 0) + v
                if sub == 0:
                    break
                sub = (sub - 1) & xmask
        return {t: v for t, v in out.items() if v}

    def times_x(self, chain: Chain) -> Chain:
        """Multiplication by ``x`` on the basepoint circle."""
        out: Chain = {}
        for (mask, xmask), c in chain.items():
            t = (mask, xmask | (1 << self.basepoint_circle(mask)))
            out[t] = out.get(t, 0) + c
        return {t: v for t, v in out.items() if v}

    def tmap(self, chain: Chain) -> Chain:
        """``T(u) = x I(u)``, landing in the reduced complex."""
        return self.times_x(self.involution(chain))

    def splitting(self, chain: Chain) -> Chain:
        """``S(xu) = xu + I(xu)`` for a reduced chain ``xu``."""
        out = dict(chain)
        for t, v in self.involution(chain).items():
            out[t] = out.get(t, 0) + v
        return {t: v for t, v in out.items() if v}

    def is_reduced_chain(self, chain: Chain) -> bool:
        return all((x >> self.basepoint_circle(m)) & 1 for m, x in chain)

    def epsilon(self, keys: Iterable[Key] | None = None) -> dict[int, int]:
        """The sign ``eps_j`` (keyed by ``j mod 4``) with ``(id + eps_j I)(F_j) ⊆ F_{j+2}``.

        Each generator of degree ``j`` gives ``(-1)^(e_S + #x + 1)``; a
        disagreement between generators raises.
        """
        if keys is None:
            keys = [g for h in range(self.hmin, self.hmax + 1) for g in self.generators(h)]
        eps: dict[int, int] = {}
        for key in keys:
            mask, xmask = key
            e = (self.split_parity(mask) + _popcount(xmask) + 1) & 1
            value = -1 if e else 1
            j = self.q_of(key) % 4
            if eps.setdefault(j, value) != value:
                raise AssertionError(f"eps_{j} is not constant")
        return eps

    # -- Lee generators ---------------------------------------------------

    def lee_generator(self, orientation: Sequence[bool] | None = None) -> LeeGenerator:
        D = self.diagram
        if orientation is None:
            orientation = (False,) * D.component_count
        v = oriented_smoothing(D, orientation)
        depth, clockwise = circle_nesting(D, v, orientation)
        parity = [(a + int(b)) & 1 for a, b in zip(depth, clockwise)]
        x0 = sum(1 << i for i, p in enumerate(parity) if p == 0)
        x1 = sum(1 << i for i, p in enumerate(parity) if p == 1)
        mask = v.mask
        chain: Chain = {}
        sub = x1
        while True:
            chain[(mask, x0 | sub)] = -1 if _popcount(sub) & 1 else 1
            if sub == 0:
                break
            sub = (sub - 1) & x1
        return LeeGenerator(tuple(orientation), chain, tuple(parity))


@dataclass(frozen=True)
class LeeGenerator:
    orientation: tuple[bool, ...]
    chain: dict
    parity: tuple[int, ...]
    """``i(C)`` of every circle of the oriented smoothing."""


def build_unreduced(D: PlanarDiagram) -> FilteredComplex:
    return BNComplex(D).full()


def build_reduced(D: PlanarDiagram) -> FilteredComplex:
    return BNComplex(D, reduced=True).full()


def involution(D: PlanarDiagram, u: Chain) -> Chain:
    return BNComplex(D).involution(u)


def tmap(D: PlanarDiagram, u: Chain) -> Chain:
    return BNComplex(D).tmap(u)


def lee_generator(D: PlanarDiagram, orientation: Sequence[bool] | None = None) -> LeeGenerator:
    return BNComplex(D).lee_generator(orientation)


def lee_generators(D: PlanarDiagram) -> list[LeeGenerator]:
    B = BNComplex(D)
    return [B.lee_generator(o) for o in all_orientations(D)]
