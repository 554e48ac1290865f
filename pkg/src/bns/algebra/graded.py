"""Associated graded groups of the induced filtration on cohomology.

For a filtered complex ``C`` and a degree ``h`` let ``Z_q = ker d_h ∩ F_q`` and
``A_q`` be its image in ``H^h(C)``.  The graded pieces are ``A_q / A_{q+2}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from bns.algebra.complex import FilteredComplex
from bns.algebra.matrix import SparseIntMatrix, _smith_dense, elementary_divisors_rows, smith_normal_form
from bns.algebra.rings import ZZ
from bns.errors import NonCyclicPiece


@dataclass(frozen=True)
class GradedPiece:
    """A finitely generated abelian group ``Z^rank + sum Z/t``; a vector space over a field."""

    q: int
    rank: int = 0
    torsion: tuple[int, ...] = ()

    @property
    def kind(self) -> str:
        if self.rank == 0 and not self.torsion:
            return "zero"
        if self.rank == 1 and not self.torsion:
            return "free"
        if self.rank == 0 and len(self.torsion) == 1:
            return "cyclic"
        return "other"

    @property
    def is_zero(self) -> bool:
        return self.kind == "zero"

    @property
    def order(self) -> int | None:
        """Order of a finite piece (1 for zero), ``None`` when infinite."""
        if self.rank:
            return None
        n = 1
        for t in self.torsion:
            n *= t
        return n

    def __str__(self) -> str:
        return group_string(self.rank, self.torsion)


def group_string(rank: int, torsion) -> str:
    parts = []
    if rank:
        parts.append("Z" if rank == 1 else f"Z^{rank}")
    parts.extend(f"Z/{t}" for t in torsion)
    return " + ".join(parts) if parts else "0"


def _sub(a, b, ring):
    return a - b if ring is ZZ else ring.normalize(a - b)


class FilteredKernel:
    """A basis of ``ker d_h`` adapted to the filtration, with change of basis.

    Columns are processed in order of decreasing q.  Column operations never
    touch a column once it has become zero, so the kernel vectors found after
    all columns of degree >= q span ``Z_q`` exactly.
    """

    def __init__(self, cols: list[dict[int, int]], qs: list[int], ring=ZZ):
        self.ring = ring
        n = len(cols)
        self.order = sorted(range(n), key=lambda i: -qs[i])
        img = [dict(cols[i]) for i in self.order]
        if ring is not ZZ:
            img = [{k: ring.normalize(v) for k, v in c.items() if ring.normalize(v)} for c in img]
        vinv = [{self.order[t]: 1} for t in range(n)]  # rows of V^-1 in original coordinates
        pivots: dict[int, int] = {}
        kernel: list[int] = []
        levels: list[int] = []
        for t in range(n):
            while img[t]:
                r = min(img[t])
                p = pivots.get(r)
                if p is None:
                    pivots[r] = t
                    break
                a, b = img[p][r], img[t][r]
                if ring is not ZZ or b % a == 0:
                    c = b // a if ring is ZZ else ring.normalize(b * ring.inv(a))
                    _axpy(img[t], img[p], -c, ring)
                    _axpy(vinv[p], vinv[t], c, ring)
                    continue
                g, s, u = _xgcd(a, b)
                # [p, t] <- [p, t] @ [[s, -b/g], [u, a/g]]
                ag, bg = a // g, b // g
                new_p = _comb(img[p], s, img[t], u)
                new_t = _comb(img[p], -bg, img[t], ag)
                img[p], img[t] = new_p, new_t
                vp = _comb(vinv[p], ag, vinv[t], bg)
                vt = _comb(vinv[p], -u, vinv[t], s)
                vinv[p], vinv[t] = vp, vt
            if not img[t]:
                kernel.append(t)
                levels.append(qs[self.order[t]])
        self.kernel = kernel
        self.levels = levels
        self.vinv = vinv
        self.pivot_columns = set(pivots.values())

    def count_at_least(self, q: int) -> int:
        """Number of kernel basis vectors spanning ``Z_q``."""
        return sum(1 for x in self.levels if x >= q)

    def coordinates(self, x: dict[int, int]) -> list[int]:
        """Coordinates of a cocycle in the kernel basis."""
        ring = self.ring
        out = []
        for t in self.kernel:
            row = self.vinv[t]
            s = 0
            for k, v in x.items():
                w = row.get(k)
                if w:
                    s += w * v
            out.append(s if ring is ZZ else ring.normalize(s))
        for t in self.pivot_columns:
            row = self.vinv[t]
            s = sum(row.get(k, 0) * v for k, v in x.items())
            if (s if ring is ZZ else ring.normalize(s)):
                raise AssertionError("vector is not a cocycle")
        return out


def _axpy(y: dict, x: dict, c, ring):
    """y += c * x"""
    for k, v in x.items():
        nv = y.get(k, 0) + c * v
        if ring is not ZZ:
            nv = ring.normalize(nv)
        if nv:
            y[k] = nv
        elif k in y:
            del y[k]


def _comb(x: dict, a: int, y: dict, b: int) -> dict:
    out = {}
    if a:
        for k, v in x.items():
            out[k] = a * v
    if b:
        for k, v in y.items():
            nv = out.get(k, 0) + b * v
            if nv:
                out[k] = nv
            elif k in out:
                del out[k]
    return {k: v for k, v in out.items() if v}


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """``(g, s, t)`` with ``s a + t b = g = gcd(a, b) > 0``."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    x, y = a, b
    while y:
        k = x // y
        x, y = y, x - k * y
        s0, s1 = s1, s0 - k * s1
        t0, t1 = t1, t0 - k * t1
    if x < 0:
        x, s0, t0 = -x, -s0, -t0
    return x, s0, t0


class FilteredCohomology:
    """``H^h`` of a filtered complex presented on an adapted kernel basis."""

    def __init__(self, C: FilteredComplex, h: int, ring=ZZ):
        self.ring = ring
        self.h = h
        qs = C.qs(h)
        self.qrange = (min(qs), max(qs)) if qs else (0, -1)
        self.step = 2 if C.parity is not None else 1
        self.K = FilteredKernel(C.differential(h), qs, ring)
        self.r = len(self.K.kernel)
        self.boundaries = [self.K.coordinates(c) for c in C.differential(h - 1) if c]

    def levels(self) -> list[int]:
        lo, hi = self.qrange
        return list(range(hi, lo - 1, -self.step))

    # -- integers ---------------------------------------------------------

    def pieces_generic(self) -> list[GradedPiece]:
        out = []
        for q in self.levels():
            top = self.K.count_at_least(q + self.step)
            here = self.K.count_at_least(q)
            rank, tors = _subquotient(self.boundaries, top, here - top, self.r)
            out.append(GradedPiece(q, rank, tuple(tors)))
        return out

    def total_group(self) -> tuple[int, tuple[int, ...]]:
        rank, tors = _subquotient(self.boundaries, 0, self.r, self.r)
        return rank, tuple(tors)

    def rank_one_functional(self) -> list[int] | None:
        """``phi: Z -> Z`` with kernel the boundaries, when ``H^h`` is ``Z``."""
        r = self.r
        if r == 0:
            return None
        if not self.boundaries:
            return [1] if r == 1 else None
        B = SparseIntMatrix.from_dense([list(row) for row in zip(*self.boundaries)], len(self.boundaries))
        U, S, _ = smith_normal_form(B)
        diag = [S[i, i] for i in range(min(S.rows, S.cols))]
        nz = [x for x in diag if x]
        if len(nz) != r - 1 or any(x != 1 for x in nz):
            return None
        return [U[r - 1, j] for j in range(r)]

    def pieces_rank_one(self) -> list[GradedPiece] | None:
        phi = self.rank_one_functional()
        if phi is None:
            return None
        out = []
        for q in self.levels():
            m_top = _gcd(phi[: self.K.count_at_least(q + self.step)])
            m_here = _gcd(phi[: self.K.count_at_least(q)])
            if m_here == 0:
                out.append(GradedPiece(q))
            elif m_top == 0:
                out.append(GradedPiece(q, 1))
            elif m_top == m_here:
                out.append(GradedPiece(q))
            else:
                out.append(GradedPiece(q, 0, (m_top // m_here,)))
        return out

    # -- fields -----------------------------------------------------------

    def image_dims(self) -> dict[int, int]:
        """``dim A_q`` for every level q."""
        ring = self.ring
        base = _field_rank([dict(enumerate(b)) for b in self.boundaries], ring)
        out = {}
        for q in self.levels():
            n = self.K.count_at_least(q)
            vecs = [dict(enumerate(b)) for b in self.boundaries] + [{i: 1} for i in range(n)]
            out[q] = _field_rank(vecs, ring) - base
        return out

    def pieces_field(self) -> list[GradedPiece]:
        dims = self.image_dims()
        out = []
        for q in self.levels():
            out.append(GradedPiece(q, dims[q] - dims.get(q + self.step, 0)))
        return out


def _gcd(values) -> int:
    g = 0
    for v in values:
        g = gcd(g, v)
    return g


def _subquotient(boundaries: list[list[int]], drop: int, keep: int, r: int):
    """Structure of ``(Z_keep + B) / B`` after killing the first ``drop`` coordinates.

    Coordinates are in ``Z^r``; ``Z_keep`` spans coordinates ``drop..drop+keep-1``.
    Returns ``(rank, torsion)``.
    """
    if keep == 0:
        return 0, []
    vecs = [b[drop:] for b in boundaries]
    vecs = [v for v in vecs if any(v)]
    # columns of the boundary lattice whose part below the kept block vanishes
    inside = _lattice_with_zero_tail(vecs, keep)
    rows = [{} for _ in range(keep)]
    for j, v in enumerate(inside):
        for i in range(keep):
            if v[i]:
                rows[i][j] = v[i]
    divs = elementary_divisors_rows(rows)
    rank = keep - len(divs)
    return rank, [d for d in divs if d > 1]


def _lattice_with_zero_tail(vecs: list[list[int]], keep: int) -> list[list[int]]:
    """Generators of the sublattice of ``span(vecs)`` with zero entries past ``keep``."""
    work = [list(v) for v in vecs]
    n = len(work[0]) if work else 0
    pivots: dict[int, int] = {}
    out = []
    for t in range(len(work)):
        v = work[t]
        while True:
            r = next((i for i in range(keep, n) if v[i]), None)
            if r is None:
                break
            p = pivots.get(r)
            if p is None:
                pivots[r] = t
                break
            w = work[p]
            a, b = w[r], v[r]
            if b % a == 0:
                c = b // a
                work[t] = v = [x - c * y for x, y in zip(v, w)]
                continue
            g, s, u = _xgcd(a, b)
            ag, bg = a // g, b // g
            work[p] = [s * x + u * y for x, y in zip(w, v)]
            work[t] = v = [-bg * x + ag * y for x, y in zip(w, v)]
        if all(x == 0 for x in v[keep:]):
            out.append(v)
    return out


def _field_rank(vecs: list[dict[int, int]], ring) -> int:
    pivots: dict[int, dict] = {}
    rank = 0
    for v in vecs:
        v = {k: ring.normalize(x) for k, x in v.items() if ring.normalize(x)}
        while v:
            r = min(v)
            p = pivots.get(r)
            if p is None:
                pivots[r] = v
                rank += 1
                break
            c = ring.normalize(v[r] * ring.inv(p[r]))
            _axpy(v, p, -c, ring)
    return rank


def graded_pieces(
    C: FilteredComplex,
    h: int,
    ring=ZZ,
    method: str = "auto",
    require_cyclic: bool = False,
) -> list[GradedPiece]:
    """Graded pieces of ``H^h`` from the highest to the lowest generator q.

    Over the integers ``method`` selects the general subquotient computation
    (``"generic"``), the shortcut for ``H^h = Z`` (``"rank1"``), or the shortcut
    when it applies (``"auto"``).  Over a field the pieces are vector spaces.
    """
    F = FilteredCohomology(C, h, ring)
    if ring.is_field:
        return F.pieces_field()
    pieces = None
    if method in ("auto", "rank1"):
        pieces = F.pieces_rank_one()
        if pieces is None and method == "rank1":
            raise ValueError(f"H^{h} is not infinite cyclic")
    if pieces is None:
        pieces = F.pieces_generic()
    if require_cyclic:
        for piece in pieces:
            if piece.kind == "other":
                raise NonCyclicPiece(f"piece at q={piece.q} is {piece}")
    return pieces


@dataclass(frozen=True)
class Group:
    rank: int
    torsion: tuple[int, ...] = ()

    def __str__(self) -> str:
        return group_string(self.rank, self.torsion)


def homology(C: FilteredComplex, h: int, ring=ZZ) -> dict[int, Group]:
    """Cohomology of the q-preserving part of the differential, per q.

    Over a field the torsion is always empty and ``rank`` is the dimension.
    Only nonzero groups are returned.
    """
    out = {}
    qs_h = C.qs(h)
    for q in sorted(set(qs_h)):
        src = [i for i, x in enumerate(qs_h) if x == q]
        out_rows = _block(C, h, src, q)
        rank_out = _rank(out_rows, ring)
        prev_src = [i for i, x in enumerate(C.qs(h - 1)) if x == q]
        in_rows = _block(C, h - 1, prev_src, q)
        if ring is ZZ:
            divs = elementary_divisors_rows(in_rows)
            rank_in = len(divs)
            tors = tuple(d for d in divs if d > 1)
        else:
            rank_in = _rank(in_rows, ring)
            tors = ()
        r = len(src) - rank_out - rank_in
        if r or tors:
            out[q] = Group(r, tors)
    return out


def _block(C: FilteredComplex, h: int, src: list[int], q: int) -> list[dict[int, int]]:
    """Rows of the q-preserving block of ``d_h`` restricted to ``src`` columns."""
    qt = C.qs(h + 1)
    col = C.differential(h)
    rows: dict[int, dict[int, int]] = {}
    for t, i in enumerate(src):
        for j, v in col[i].items():
            if qt[j] == q:
                rows.setdefault(j, {})[t] = v
    return list(rows.values())


def _rank(rows: list[dict[int, int]], ring) -> int:
    if ring is ZZ:
        return len(elementary_divisors_rows(rows))
    return _field_rank(rows, ring)
