"""Filtered Gauss elimination.

Cancelling an invertible entry ``d(a)[b]`` between generators of equal
filtration degree removes ``a`` and ``b`` and replaces the differential of
every other ``c`` by ``d(c) - d(c)[b] * u^-1 * d(a)``.  Only the differential
between the degrees of ``a`` and ``b`` changes, so a complex can be reduced
one degree at a time while it is being built.
"""

from __future__ import annotations

from bns.algebra.complex import FilteredComplex
from bns.algebra.rings import ZZ


def reduce_pair(cols: list[dict[int, int]], qs: list[int], qt: list[int], ring=ZZ):
    """Cancel equal-q unit entries of one differential as long as any remain.

    ``cols[i]`` is the differential of source ``i`` (target index -> coefficient)
    and is modified in place.  Returns ``(kept_sources, kept_targets, cols)`` where
    ``cols`` is re-indexed to the kept generators.
    """
    normalize = ring.normalize
    if ring is not ZZ:
        for c in cols:
            for j in list(c):
                v = normalize(c[j])
                if v:
                    c[j] = v
                else:
                    del c[j]
    rows: dict[int, set[int]] = {}
    for i, c in enumerate(cols):
        for j in c:
            rows.setdefault(j, set()).add(i)
    alive = [True] * len(cols)
    dead_t: set[int] = set()
    is_unit = ring.is_unit
    progress = True
    while progress:
        progress = False
        order = sorted((i for i in range(len(cols)) if alive[i] and cols[i]), key=lambda i: len(cols[i]))
        for a in order:
            if not alive[a]:
                continue
            ca = cols[a]
            qa = qs[a]
            best = None
            for b, v in ca.items():
                if qt[b] == qa and is_unit(v):
                    n = len(rows[b])
                    if best is None or n < best[0]:
                        best = (n, b)
                        if n == 1:
                            break
            if best is None:
                continue
            b = best[1]
            uinv = ring.inv(ca[b])
            for c in list(rows[b]):
                if c == a:
                    continue
                cc = cols[c]
                f = cc[b] * uinv
                if ring is not ZZ:
                    f = normalize(f)
                for e, v in ca.items():
                    nv = cc.get(e, 0) - f * v
                    if ring is not ZZ:
                        nv = normalize(nv)
                    if nv:
                        if e not in cc:
                            rows[e].add(c)
                        cc[e] = nv
                    elif e in cc:
                        del cc[e]
                        rows[e].discard(c)
            for e in ca:
                rows[e].discard(a)
            cols[a] = {}
            alive[a] = False
            dead_t.add(b)
            progress = True
    kept_s = [i for i in range(len(cols)) if alive[i]]
    kept_t = [j for j in range(len(qt)) if j not in dead_t]
    tmap = {j: t for t, j in enumerate(kept_t)}
    new_cols = [{tmap[j]: v for j, v in cols[i].items()} for i in kept_s]
    return kept_s, kept_t, new_cols


def drop_targets(cols: list[dict[int, int]], kept: list[int]) -> list[dict[int, int]]:
    """Re-index columns to the kept targets, dropping entries into removed ones."""
    new = {j: t for t, j in enumerate(kept)}
    return [{new[j]: v for j, v in c.items() if j in new} for c in cols]


def gauss_reduce(C: FilteredComplex, ring=ZZ) -> FilteredComplex:
    """A filtered homotopy equivalent complex with no equal-q unit entries left."""
    degs = C.degrees
    if not degs:
        return FilteredComplex({}, {}, C.parity)
    q = {h: list(C.qs(h)) for h in degs}
    names = {h: list(C.names[h]) for h in degs} if C.names else None
    src = {h: list(range(C.size(h))) for h in degs}  # surviving original indices
    out_d: dict[int, list[dict[int, int]]] = {}
    for h in degs:
        qs = [C.qs(h)[i] for i in src[h]]
        if h + 1 not in q:
            out_d[h] = [{} for _ in src[h]]
            continue
        qt = C.qs(h + 1)
        cols = [dict(C.differential(h)[i]) for i in src[h]]
        kept_s, kept_t, cols = reduce_pair(cols, qs, qt, ring)
        if h - 1 in out_d:
            out_d[h - 1] = drop_targets(out_d[h - 1], kept_s)
        src[h] = [src[h][i] for i in kept_s]
        src[h + 1] = [src[h + 1][j] for j in kept_t]
        out_d[h] = cols
    newq = {h: [C.qs(h)[i] for i in src[h]] for h in degs}
    newnames = {h: [names[h][i] for i in src[h]] for h in degs} if names else None
    return FilteredComplex(newq, out_d, C.parity, newnames)
