"""Exact truncated power series in q.

A :class:`TruncatedSeries` stores its coefficients as integer numerators over
one shared positive denominator, kept in lowest terms.  Everything the
package computes (Eisenstein series, theta powers, MacMahon sums) has small
denominators, so the integer representation keeps convolutions cheap while
remaining exact.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import accumulate
from math import gcd
from numbers import Rational
from operator import add, mul
from typing import Iterable, Sequence

__all__ = [
    "TruncatedSeries",
    "ModSeries",
    "make_series",
    "add_series",
    "mul_series",
    "invert",
    "derive",
    "power",
    "substitute_power",
    "reduce_mod",
    "coefficient",
    "divide_one_minus_power",
]


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"coefficients must be exact rationals, got {type(value).__name__}")


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


class TruncatedSeries:
    """A power series a_0 + a_1 q + ... + a_N q^N known exactly up to q^N.

    Arithmetic between two series truncates to the smaller order.  Instances
    are immutable.
    """

    __slots__ = ("_num", "_den", "_fracs")

    def __init__(self, coeffs: Iterable, order: int | None = None):
        fracs = [_as_fraction(c) for c in coeffs]
        if order is None:
            order = len(fracs) - 1
        if order < 0:
            raise ValueError("order must be non-negative")
        if len(fracs) > order + 1:
            raise ValueError(f"{len(fracs)} coefficients do not fit in order {order}")
        fracs.extend([Fraction(0)] * (order + 1 - len(fracs)))
        den = 1
        for c in fracs:
            den = _lcm(den, c.denominator)
        nums = [c.numerator * (den // c.denominator) for c in fracs]
        self._set(nums, den)

    def _set(self, nums: list[int], den: int) -> None:
        if den < 0:
            nums = [-x for x in nums]
            den = -den
        g = gcd(den, *nums)
        if g > 1:
            nums = [x // g for x in nums]
            den //= g
        self._num = tuple(nums)
        self._den = den
        self._fracs = None

    @classmethod
    def from_integers(cls, nums: Sequence[int], den: int = 1) -> "TruncatedSeries":
        """Build from integer numerators over a common denominator (no copying checks)."""
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if not nums:
            raise ValueError("a series needs at least one coefficient")
        obj = cls.__new__(cls)
        obj._set(list(nums), den)
        return obj

    @classmethod
    def zero(cls, order: int) -> "TruncatedSeries":
        return cls.from_integers([0] * (order + 1))

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        return cls.from_integers([1] + [0] * order)

    @classmethod
    def constant(cls, value, order: int) -> "TruncatedSeries":
        return cls([value], order)

    # -- views -----------------------------------------------------------
    @property
    def order(self) -> int:
        return len(self._num) - 1

    @property
    def numerators(self) -> tuple[int, ...]:
        return self._num

    @property
    def denominator(self) -> int:
        return self._den

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        if self._fracs is None:
            d = self._den
            self._fracs = tuple(Fraction(x, d) for x in self._num)
        return self._fracs

    def is_integral(self) -> bool:
        return self._den == 1

    def __len__(self) -> int:
        return len(self._num)

    def __getitem__(self, n: int) -> Fraction:
        if not 0 <= n <= self.order:
            raise IndexError(f"coefficient index {n} outside 0..{self.order}")
        return Fraction(self._num[n], self._den)

    def __iter__(self):
        return iter(self.coeffs)

    def valuation(self) -> int | None:
        """Exponent of the first nonzero coefficient, or None for the zero series."""
        for n, x in enumerate(self._num):
            if x:
                return n
        return None

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise ValueError(f"cannot extend a series of order {self.order} to {order}")
        return TruncatedSeries.from_integers(self._num[: order + 1], self._den)

    def __repr__(self) -> str:
        shown = ", ".join(str(c) for c in self.coeffs[:8])
        tail = ", ..." if self.order >= 8 else ""
        return f"TruncatedSeries([{shown}{tail}], order={self.order})"

    def __eq__(self, other) -> bool:
        if isinstance(other, TruncatedSeries):
            return self._den == other._den and self._num == other._num
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self._num, self._den))

    def first_mismatch(self, other: "TruncatedSeries", order: int | None = None):
        """First index n <= order where the two series differ, else None."""
        top = min(self.order, other.order) if order is None else order
        if top > min(self.order, other.order):
            raise ValueError("comparison order exceeds an operand's order")
        d1, d2 = self._den, other._den
        for n in range(top + 1):
            if self._num[n] * d2 != other._num[n] * d1:
                return n
        return None

    # -- arithmetic ------------------------------------------------------
    def _coerce(self, other) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            return other
        return TruncatedSeries.constant(_as_fraction(other), self.order)

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return add_series(self, other)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries.from_integers([-x for x in self._num], self._den)

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return add_series(self, -other)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return mul_series(self, other)
        try:
            c = _as_fraction(other)
        except TypeError:
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, TruncatedSeries):
            return mul_series(self, invert(other))
        c = _as_fraction(other)
        if c == 0:
            raise ZeroDivisionError("division of a series by zero")
        return self.scale(1 / c)

    def __pow__(self, k: int):
        return power(self, k)

    def scale(self, c) -> "TruncatedSeries":
        c = _as_fraction(c)
        return TruncatedSeries.from_integers(
            [x * c.numerator for x in self._num], self._den * c.denominator
        )

    def shift(self, k: int) -> "TruncatedSeries":
        """Multiply by q^k, keeping the order."""
        if k < 0:
            raise ValueError("shift must be non-negative")
        n = len(self._num)
        nums = [0] * min(k, n) + list(self._num[: max(n - k, 0)])
        return TruncatedSeries.from_integers(nums, self._den)


class ModSeries:
    """Coefficients of a series reduced modulo m, each in [0, m)."""

    __slots__ = ("modulus", "residues")

    def __init__(self, residues: Iterable[int], modulus: int):
        if modulus < 2:
            raise ValueError("modulus must be at least 2")
        self.modulus = modulus
        self.residues = tuple(r % modulus for r in residues)

    @property
    def order(self) -> int:
        return len(self.residues) - 1

    def __getitem__(self, n: int) -> int:
        return self.residues[n]

    def __len__(self) -> int:
        return len(self.residues)

    def __eq__(self, other) -> bool:
        if isinstance(other, ModSeries):
            return self.modulus == other.modulus and self.residues == other.residues
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.modulus, self.residues))

    def __repr__(self) -> str:
        return f"ModSeries({list(self.residues[:10])}{'...' if len(self) > 10 else ''}, mod {self.modulus})"

    def _check(self, other: "ModSeries") -> int:
        if self.modulus != other.modulus:
            raise ValueError("moduli differ")
        return min(self.order, other.order)

    def __add__(self, other: "ModSeries") -> "ModSeries":
        top = self._check(other)
        return ModSeries(map(add, self.residues[: top + 1], other.residues[: top + 1]), self.modulus)

    def __mul__(self, other: "ModSeries") -> "ModSeries":
        top = self._check(other)
        return ModSeries(_convolve(self.residues, other.residues, top), self.modulus)

    def is_zero(self) -> bool:
        return not any(self.residues)


def _convolve(a: Sequence[int], b: Sequence[int], top: int) -> list[int]:
    """Integer Cauchy product truncated at q^top; zero entries of `a` are skipped."""
    out = [0] * (top + 1)
    bl = list(b[: top + 1])
    for i in range(top + 1):
        ai = a[i]
        if ai:
            out[i:] = map(add, out[i:], map(ai.__mul__, bl[: top + 1 - i]))
    return out


def make_series(coeffs: Sequence, order: int) -> TruncatedSeries:
    """Series with the given low coefficients, zero-filled up to q^order."""
    if order < 0:
        raise ValueError("order must be non-negative")
    return TruncatedSeries(coeffs, order)


def add_series(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    top = min(a.order, b.order)
    da, db = a.denominator, b.denominator
    if da == db:
        nums = list(map(add, a.numerators[: top + 1], b.numerators[: top + 1]))
        return TruncatedSeries.from_integers(nums, da)
    den = _lcm(da, db)
    fa, fb = den // da, den // db
    nums = [x * fa + y * fb for x, y in zip(a.numerators[: top + 1], b.numerators[: top + 1])]
    return TruncatedSeries.from_integers(nums, den)


def mul_series(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product, truncated to the smaller order."""
    top = min(a.order, b.order)
    # iterate over the sparser operand
    na, nb = a.numerators, b.numerators
    if sum(1 for x in na[: top + 1] if x) > sum(1 for x in nb[: top + 1] if x):
        na, nb = nb, na
    return TruncatedSeries.from_integers(_convolve(na, nb, top), a.denominator * b.denominator)


def invert(a: TruncatedSeries) -> TruncatedSeries:
    """Multiplicative inverse; the constant term must be nonzero."""
    nums, den = a.numerators, a.denominator
    a0 = nums[0]
    if a0 == 0:
        raise ZeroDivisionError("series with zero constant term is not invertible")
    top = a.order
    if a0 in (1, -1):
        # integer recurrence b_n = -a0 * sum_{k>=1} A_k b_{n-k}
        b = [a0]
        for n in range(1, top + 1):
            s = sum(map(mul, nums[1 : n + 1], reversed(b)))
            b.append(-a0 * s)
        return TruncatedSeries.from_integers([x * den for x in b])
    coeffs = a.coeffs
    c0 = coeffs[0]
    inv = [1 / c0]
    for n in range(1, top + 1):
        s = sum(coeffs[k] * inv[n - k] for k in range(1, n + 1))
        inv.append(-s / c0)
    return TruncatedSeries(inv)


def derive(a: TruncatedSeries) -> TruncatedSeries:
    """The Euler derivation D = q d/dq."""
    return TruncatedSeries.from_integers([n * x for n, x in enumerate(a.numerators)], a.denominator)


def power(a: TruncatedSeries, k: int) -> TruncatedSeries:
    if k < 0:
        return power(invert(a), -k)
    result = TruncatedSeries.one(a.order)
    base = a
    while k:
        if k & 1:
            result = mul_series(result, base)
        k >>= 1
        if k:
            base = mul_series(base, base)
    return result


def substitute_power(a: TruncatedSeries, k: int) -> TruncatedSeries:
    """a(q^k), truncated at the original order."""
    if k < 1:
        raise ValueError("substitution exponent must be positive")
    top = a.order
    nums = [0] * (top + 1)
    for n, x in enumerate(a.numerators[: top // k + 1]):
        nums[n * k] = x
    return TruncatedSeries.from_integers(nums, a.denominator)


def reduce_mod(a: TruncatedSeries, m: int) -> ModSeries:
    """Reduce every coefficient modulo m; denominators must be invertible mod m."""
    if m < 2:
        raise ValueError("modulus must be at least 2")
    den = a.denominator
    if gcd(den, m) == 1:
        inv = pow(den, -1, m)
        return ModSeries((x * inv for x in a.numerators), m)
    out = []
    for n, c in enumerate(a.coeffs):
        if gcd(c.denominator, m) != 1:
            raise ValueError(f"coefficient of q^{n} ({c}) has a denominator not invertible mod {m}")
        out.append(c.numerator * pow(c.denominator, -1, m))
    return ModSeries(out, m)


def coefficient(a: TruncatedSeries, n: int) -> Fraction:
    return a[n]


def divide_one_minus_power(nums: list[int], k: int, times: int = 1) -> list[int]:
    """Divide an integer coefficient list by (1 - q^k)^times in place and return it.

    Division by 1 - q^k is a running sum along each residue class mod k.
    """
    for _ in range(times):
        for r in range(k):
            nums[r::k] = accumulate(nums[r::k])
    return nums
