"""Rasmussen invariants over fields and over the integers.

Everything is read off degree 0 of the reduced Bar-Natan complex, whose
cohomology is a single copy of the coefficient ring.  The complex is only
built in degrees -2..1 and Gauss-reduced while it is assembled.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable, Sequence

from bns.algebra.complex import FilteredComplex, tensor
from bns.algebra.gauss import gauss_reduce
from bns.algebra.graded import GradedPiece, Group, graded_pieces, homology
from bns.algebra.rings import ZZ, prime_factors, ring_for
from bns.bncomplex import BNComplex
from bns.diagram import PlanarDiagram
from bns.errors import InconsistentReport, NonCyclicPiece

ComplexSource = Callable[[object], FilteredComplex]


@dataclass
class SInvariantReport:
    s_rational: int
    s_mod_p: dict[int, int] = field(default_factory=dict)
    graded_length: int = 0
    torsion_orders: list[int] = field(default_factory=list)
    sigma_p: dict[int, int] = field(default_factory=dict)
    genus_lower_bound: int = 0

    @property
    def s_integral(self) -> tuple[int, ...]:
        return (self.s_rational, *self.torsion_orders)

    def to_json(self) -> dict:
        out = asdict(self)
        out["s_mod_p"] = {str(p): v for p, v in sorted(self.s_mod_p.items())}
        out["sigma_p"] = {str(p): v for p, v in sorted(self.sigma_p.items())}
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    def check(self) -> None:
        """Raise :class:`InconsistentReport` if a relation between the fields fails."""
        problems = []
        if self.s_rational % 2:
            problems.append("s_rational is odd")
        if bool(self.torsion_orders) != (self.graded_length > 0) or len(self.torsion_orders) != self.graded_length:
            problems.append("torsion_orders does not match graded_length")
        for p, s in self.s_mod_p.items():
            if s % 2:
                problems.append(f"s over F{p} is odd")
        for p, sig in self.sigma_p.items():
            if p in self.s_mod_p and 2 * sig != self.s_rational - self.s_mod_p[p]:
                problems.append(f"sigma_{p} disagrees with the field invariants")
            if self.graded_length < sig:
                problems.append(f"graded length {self.graded_length} below sigma_{p} = {sig}")
        if self.genus_lower_bound != genus_bound(self.s_rational, self.graded_length):
            problems.append("genus bound mismatch")
        if problems:
            raise InconsistentReport("; ".join(problems))


def genus_bound(s: int, gl: int) -> int:
    return max(abs(s // 2 - gl), abs(s) // 2)


# -- the degree-0 complex --------------------------------------------------


def h0_complex(D: PlanarDiagram, ring=ZZ) -> FilteredComplex:
    """Gauss-reduced reduced complex in degrees -2..1 (cohomology exact in degree 0)."""
    D.require_knot()
    return BNComplex(D, reduced=True).reduced_levels(-2, 1, ring)


def full_reduced_complex(D: PlanarDiagram, ring=ZZ) -> FilteredComplex:
    """The whole reduced complex, Gauss-reduced degree by degree."""
    D.require_knot()
    B = BNComplex(D, reduced=True)
    return B.reduced_levels(B.hmin, B.hmax, ring)


def connected_sum_h0_complex(diagrams: Sequence[PlanarDiagram], ring=ZZ) -> FilteredComplex:
    """Degree -2..1 complex of a connected sum, as a tensor product.

    Splicing knot diagrams at their basepoints gives a reduced complex that is
    the tensor product of the reduced complexes of the summands, so each
    summand can be Gauss-reduced on its own first.
    """
    if not diagrams:
        raise ValueError("empty connected sum")
    acc = full_reduced_complex(diagrams[0], ring)
    for i, D in enumerate(diagrams[1:], 1):
        last = i == len(diagrams) - 1
        nxt = full_reduced_complex(D, ring)
        T = tensor(acc, nxt, -2, 1) if last else tensor(acc, nxt)
        acc = gauss_reduce(T, ring)
    if len(diagrams) == 1:
        acc = acc.truncate(-2, 1)
    return acc


def h0_pieces(source, ring=ZZ, method: str = "auto") -> list[GradedPiece]:
    """Graded pieces of reduced degree-0 cohomology.

    ``source`` is a knot diagram or a callable mapping a ring to its degree
    -2..1 complex.
    """
    C = source(ring) if callable(source) else h0_complex(source, ring)
    return graded_pieces(C, 0, ring, method=method, require_cyclic=not ring.is_field)


def _source(D) -> Callable:
    if callable(D):
        return D
    return lambda ring: h0_complex(D, ring)


# -- invariants ------------------------------------------------------------


def s_from_field_pieces(pieces: Iterable[GradedPiece]) -> int:
    top = [p.q for p in pieces if p.rank]
    if len(top) != 1:
        raise InconsistentReport(f"expected one nonzero piece over a field, got {len(top)}")
    return top[0]


def s_over_field(D, characteristic: int) -> int:
    """``s`` over Q (characteristic 0) or over F_p."""
    if characteristic is None:
        raise ValueError("characteristic must be 0 or a prime")
    ring = ring_for(characteristic)
    return s_from_field_pieces(h0_pieces(_source(D), ring))


def integral_from_pieces(pieces: Sequence[GradedPiece]) -> tuple[int, int, list[int]]:
    """``(s_rational, graded_length, torsion_orders)`` from the integral pieces."""
    free = [p for p in pieces if p.kind == "free"]
    if len(free) != 1 or any(p.kind == "other" for p in pieces):
        raise NonCyclicPiece("degree-0 pieces: " + ", ".join(f"{p.q}:{p}" for p in pieces))
    s = free[0].q
    below = {p.q: p for p in pieces if p.q < s}
    nonzero = [s - p.q for p in below.values() if not p.is_zero]
    if any(p.q > s and not p.is_zero for p in pieces):
        raise InconsistentReport("nonzero piece above the free piece")
    gl = max(nonzero) // 2 if nonzero else 0
    orders = [below[s - 2 * l].order if s - 2 * l in below else 1 for l in range(1, gl + 1)]
    return s, gl, orders


def s_integral(D) -> SInvariantReport:
    s, gl, orders = integral_from_pieces(h0_pieces(_source(D), ZZ))
    return SInvariantReport(s, {}, gl, orders, {}, genus_bound(s, gl))


def is_graded_p_torsion_free(D, p: int) -> bool:
    return all(piece.order is None or piece.order % p for piece in h0_pieces(_source(D), ZZ))


def full_report(D, primes: Iterable[int] = (2, 3)) -> SInvariantReport:
    """Every invariant: s over Q, over F_p for the requested primes and for
    the primes dividing a torsion order, the integral tuple, Σ_p and the genus bound."""
    source = _source(D)
    s, gl, orders = integral_from_pieces(h0_pieces(source, ZZ))
    s_q = s_from_field_pieces(h0_pieces(source, ring_for(0)))
    if s_q != s:
        raise InconsistentReport(f"s over Q is {s_q} but the free integral piece sits at {s}")
    wanted = set(primes)
    for n in orders:
        wanted.update(prime_factors(n))
    s_p = {p: s_from_field_pieces(h0_pieces(source, ring_for(p))) for p in sorted(wanted)}
    sigma = {p: (s - v) // 2 for p, v in s_p.items()}
    rep = SInvariantReport(s, s_p, gl, orders, sigma, genus_bound(s, gl))
    rep.check()
    return rep


# -- Khovanov homology -----------------------------------------------------


def khovanov_table(
    D: PlanarDiagram, hmin: int | None = None, hmax: int | None = None, reduced: bool = True, ring=ZZ
) -> dict[tuple[int, int], Group]:
    """Nonzero Khovanov groups ``{(h, q): group}`` in degrees ``hmin..hmax``."""
    B = BNComplex(D, reduced=reduced, khovanov_only=True)
    lo = B.hmin if hmin is None else max(hmin, B.hmin)
    hi = B.hmax if hmax is None else min(hmax, B.hmax)
    C = B.reduced_levels(lo - 1, hi + 1, ring)
    out = {}
    for h in range(lo, hi + 1):
        for q, g in homology(C, h, ring).items():
            out[(h, q)] = g
    return out


@dataclass(frozen=True)
class Thinness:
    n: int
    torsion: bool
    diagonals: tuple[int, ...]

    def is_thin(self, n: int) -> bool:
        """Supported on ``n`` adjacent diagonals and torsion free."""
        return self.n <= n and not self.torsion


def thinness(D: PlanarDiagram, k: int | None = None, l: int | None = None) -> Thinness:
    """Spread of the diagonals ``q - 2h`` of reduced Khovanov homology in degrees ``k..l``."""
    D.require_knot()
    table = khovanov_table(D, k, l, reduced=True)
    diags = sorted({q - 2 * h for (h, q) in table})
    torsion = any(g.torsion for g in table.values())
    n = (diags[-1] - diags[0]) // 2 + 1 if diags else 0
    return Thinness(n, torsion, tuple(diags))
