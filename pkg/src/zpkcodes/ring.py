"""Arithmetic in the residue ring Z_{p^k}.

Ring elements are plain Python ints in ``[0, q)``.  Everything the theory
states as an integer is computed exactly; the character sums are evaluated
in double precision and only serve as a cross-check.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

UNIT_GUARD = 10**6
CHAR_TOL = 1e-9


class NumericalInstabilityError(ArithmeticError):
    pass


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class RingSpec:
    """The ring Z_{p^k}; ``q`` is derived."""

    p: int
    k: int
    q: int = field(init=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.p, int) or not is_prime(self.p):
            raise ValueError(f"p={self.p!r} is not a prime")
        if not isinstance(self.k, int) or self.k < 1:
            raise ValueError(f"k={self.k!r} must be an integer >= 1")
        object.__setattr__(self, "q", self.p**self.k)

    def __str__(self):
        return f"Z_{self.q}" if self.k == 1 else f"Z_{self.p}^{self.k}"

    @classmethod
    def from_modulus(cls, q: int) -> "RingSpec":
        for p in range(2, q + 1):
            if q % p == 0:
                k = 0
                m = q
                while m % p == 0:
                    m //= p
                    k += 1
                if m != 1:
                    raise ValueError(f"{q} is not a prime power")
                return cls(p, k)
        raise ValueError(f"{q} is not a prime power")

    def reduce(self, x: int) -> int:
        return x % self.q

    def valuation(self, x: int) -> int:
        """p-adic valuation of x in Z_{p^k}; the zero element has valuation k."""
        x %= self.q
        if x == 0:
            return self.k
        v = 0
        while x % self.p == 0:
            x //= self.p
            v += 1
        return v

    def is_unit(self, x: int) -> bool:
        return x % self.p != 0

    def inverse(self, u: int) -> int:
        if not self.is_unit(u):
            raise ZeroDivisionError(f"{u} is not a unit of {self}")
        return pow(u, -1, self.q)

    @cached_property
    def unit_list(self) -> tuple[int, ...]:
        if self.q > UNIT_GUARD:
            raise ValueError(f"q={self.q} exceeds the unit materialisation guard {UNIT_GUARD}")
        return tuple(x for x in range(self.q) if x % self.p)


def units(spec: RingSpec) -> list[int]:
    """Units of Z_{p^k} in ascending order."""
    return list(spec.unit_list)


def hom_weight(x: int, spec: RingSpec) -> int:
    """Homogeneous weight of a ring element.

    The value is always an integer: for k = 1 every nonzero element lies in
    p^{k-1} Z_q and gets weight 1, so the fractional branch never fires.
    """
    x %= spec.q
    if x == 0:
        return 0
    if x % spec.p ** (spec.k - 1) == 0:
        return spec.p ** (spec.k - 1)
    return (spec.p - 1) * spec.p ** (spec.k - 2)


def hom_weight_table(spec: RingSpec) -> list[int]:
    return [hom_weight(x, spec) for x in range(spec.q)]


def char_value(a: int, spec: RingSpec) -> complex:
    """Generating character exp(2 pi i a / q)."""
    return cmath.exp(2j * math.pi * (a % spec.q) / spec.q)


def hom_weight_via_characters(x: int, spec: RingSpec, tol: float = CHAR_TOL) -> float:
    total = sum(char_value(x * u, spec) for u in spec.unit_list)
    if abs(total.imag) > tol:
        raise NumericalInstabilityError(
            f"character sum for x={x} in {spec} has imaginary part {total.imag:.3e}"
        )
    return float(gamma(spec)) - total.real / spec.p


def gamma(spec: RingSpec) -> Fraction:
    """Average homogeneous weight (p-1) p^(k-2); fractional when k = 1."""
    return Fraction(spec.p - 1) * Fraction(spec.p) ** (spec.k - 2)


def unit_sum_reps(t: int, spec: RingSpec, ordered: bool = False) -> int:
    """Count ways of writing the unit t as a sum of two units, by brute force.

    Unordered mode counts each pair {u, v} once, including u == v.
    """
    t %= spec.q
    if not spec.is_unit(t):
        raise ValueError(f"{t} is not a unit of {spec}")
    count = 0
    for u in spec.unit_list:
        v = (t - u) % spec.q
        if not spec.is_unit(v):
            continue
        if ordered or u <= v:
            count += 1
    return count


def lemma_unit_sum_formula(spec: RingSpec) -> Fraction:
    """(p^k - 2 p^(k-1) + 1) / 2, exactly; non-integral for p = 2."""
    p, k = spec.p, spec.k
    return Fraction(p**k - 2 * p ** (k - 1) + 1, 2)
