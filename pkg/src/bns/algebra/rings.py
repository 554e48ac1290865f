"""Coefficient rings: the integers, prime fields and the rationals.

Elements are plain Python ints, except that the rationals use
:class:`fractions.Fraction` once a non-integral value appears.
"""

from __future__ import annotations

from fractions import Fraction


class Integers:
    characteristic = None
    is_field = False
    name = "Z"

    def normalize(self, a):
        return a

    def is_unit(self, a) -> bool:
        return a == 1 or a == -1

    def inv(self, a):
        if a == 1 or a == -1:
            return a
        raise ZeroDivisionError(f"{a} is not a unit in Z")

    def __eq__(self, other):
        return type(other) is Integers

    def __hash__(self):
        return hash("Z")

    def __repr__(self):
        return "Integers()"


class PrimeField:
    is_field = True

    def __init__(self, p: int):
        if p < 2 or any(p % k == 0 for k in range(2, int(p**0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.name = f"F{p}"

    def normalize(self, a):
        return a % self.p

    def is_unit(self, a) -> bool:
        return a % self.p != 0

    def inv(self, a):
        return pow(a, -1, self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"


class Rationals:
    characteristic = 0
    is_field = True
    name = "Q"

    def normalize(self, a):
        if isinstance(a, Fraction) and a.denominator == 1:
            return a.numerator
        return a

    def is_unit(self, a) -> bool:
        return a != 0

    def inv(self, a):
        if a == 1 or a == -1:
            return int(a)
        return self.normalize(Fraction(1) / a)

    def __eq__(self, other):
        return type(other) is Rationals

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "Rationals()"


ZZ = Integers()
QQ = Rationals()


def ring_for(characteristic: int | None):
    """``None`` gives the integers, 0 the rationals, a prime ``p`` the field F_p."""
    if characteristic is None:
        return ZZ
    if characteristic == 0:
        return QQ
    return PrimeField(characteristic)


def is_prime(n: int) -> bool:
    return n >= 2 and all(n % k for k in range(2, int(n**0.5) + 1))


def prime_factors(n: int) -> list[int]:
    n = abs(n)
    out = []
    k = 2
    while k * k <= n:
        if n % k == 0:
            out.append(k)
            while n % k == 0:
                n //= k
        k += 1
    if n > 1:
        out.append(n)
    return out
