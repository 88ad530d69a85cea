"""MacMahon-type partition series and their brute-force oracles.

The families are read off marker-variable products: the coefficient of x^t in

    prod_k (1 + x q^k/(1-q^k)^2)          gives U_{2t},
    prod_k (1 - x q^k/(1-q^k)^2)^{-1}     gives U*_{2t},
    prod_{k odd} (1 + x q^k/(1-q^k)^2)    gives C_{2t}.

Only components up to the requested t are kept, so one sweep over k costs
O(N) per component and factor.  Multiplying by q^k/(1-q^k)^2 is a shift
followed by two running sums along residue classes mod k.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, prod
from operator import add
from types import MappingProxyType
from typing import Iterator, Mapping, Sequence

from .generators import euler_product, lambert
from .graded import partitions_of
from .series import TruncatedSeries, divide_one_minus_power, mul_series

__all__ = [
    "MarkedSeries",
    "Partition",
    "macmahon_u",
    "macmahon_u_star",
    "macmahon_c",
    "macmahon_u_two",
    "marked_product",
    "u_star_single_sum",
    "u_star_from_u",
    "multiplicity_oracle",
    "partitions_with_sizes",
    "family_sum",
    "family_bound",
    "lowest_exponent",
    "umbral_eval",
    "poly_from_roots",
    "FAMILIES",
    "MULTIPLICITY_GUARD",
]

FAMILIES = ("u", "u_star", "c", "u_two")
MULTIPLICITY_GUARD = 80


@dataclass(frozen=True)
class MarkedSeries:
    """Components of a series in q and a marker x, truncated at x^marker_bound."""

    marker_bound: int
    components: tuple[TruncatedSeries, ...]

    def __post_init__(self):
        if len(self.components) != self.marker_bound + 1:
            raise ValueError("need exactly marker_bound + 1 components")
        if len({c.order for c in self.components}) > 1:
            raise ValueError("components must share one truncation order")

    @property
    def order(self) -> int:
        return self.components[0].order

    def __getitem__(self, j: int) -> TruncatedSeries:
        return self.components[j]

    def at_one(self) -> TruncatedSeries:
        """Sum of all components (the marker set to 1)."""
        total = self.components[0]
        for c in self.components[1:]:
            total = total + c
        return total


def _times_kernel(g: Sequence[int], k: int, order: int) -> list[int]:
    """g * q^k/(1-q^k)^2, truncated."""
    if k > order:
        return [0] * (order + 1)
    h = [0] * k + list(g[: order + 1 - k])
    return divide_one_minus_power(h, k, 2)


def _is_zero_below(g: Sequence[int], top: int) -> bool:
    return not any(g[: top + 1])


@lru_cache(maxsize=None)
def marked_product(kind: str, t: int, order: int) -> MarkedSeries:
    """The marker product for kind "u", "u_star" or "c", up to x^t and q^order."""
    if kind not in ("u", "u_star", "c"):
        raise ValueError(f"unknown marker product {kind!r}")
    comps = [[0] * (order + 1) for _ in range(t + 1)]
    comps[0][0] = 1
    ks = range(1, order + 1, 2) if kind == "c" else range(1, order + 1)
    for k in ks:
        if kind == "u_star":
            # geometric factor: new[j] = old[j] + kernel * new[j-1], ascending j
            for j in range(1, t + 1):
                src = comps[j - 1]
                if _is_zero_below(src, order - k):
                    break
                comps[j] = list(map(add, comps[j], _times_kernel(src, k, order)))
        else:
            for j in range(t, 0, -1):
                src = comps[j - 1]
                if _is_zero_below(src, order - k):
                    continue
                comps[j] = list(map(add, comps[j], _times_kernel(src, k, order)))
    return MarkedSeries(t, tuple(TruncatedSeries.from_integers(c) for c in comps))


def macmahon_u(t: int, order: int) -> TruncatedSeries:
    """U_{2t} = sum over 1 <= k_1 < ... < k_t of prod q^{k_i}/(1-q^{k_i})^2."""
    return marked_product("u", t, order)[t]


def macmahon_u_star(t: int, order: int) -> TruncatedSeries:
    """U*_{2t}: the same sum over weakly increasing k_1 <= ... <= k_t."""
    return marked_product("u_star", t, order)[t]


def macmahon_c(t: int, order: int) -> TruncatedSeries:
    """C_{2t}: the U_{2t} sum restricted to odd k_i."""
    return marked_product("c", t, order)[t]


@lru_cache(maxsize=None)
def _u_two_prefactor(order: int) -> TruncatedSeries:
    """(q)_inf / (q^2)_inf^2."""
    nums = [0] * (order + 1)
    nums[0] = 1
    for k in range(2, order + 1, 2):
        divide_one_minus_power(nums, k, 2)
    return mul_series(euler_product(1, order), TruncatedSeries.from_integers(nums))


def _u_two_inner(t_values, order: int) -> TruncatedSeries:
    nums = [0] * (order + 1)
    n = 0
    while n * (n + 1) // 2 <= order:
        nums[n * (n + 1) // 2] += sum(comb(n + t, 2 * t) for t in t_values)
        n += 1
    return TruncatedSeries.from_integers(nums)


def macmahon_u_two(t: int, order: int) -> TruncatedSeries:
    """U_{2t}(2; q) = (q)_inf/(q^2)_inf^2 * sum_n C(n+t, 2t) q^{n(n+1)/2}."""
    if t < 0:
        raise ValueError("t must be non-negative")
    return mul_series(_u_two_prefactor(order), _u_two_inner([t], order))


def u_star_single_sum(t: int, order: int) -> TruncatedSeries:
    """sum_{n>=1} (-1)^{n-1} (1+q^n) q^{C(n,2)+tn} / (1-q^n)^{2t}."""
    if t < 1:
        raise ValueError("t must be positive")
    total = [0] * (order + 1)
    n = 1
    while n * (n - 1) // 2 + t * n <= order:
        e = n * (n - 1) // 2 + t * n
        h = [0] * (order + 1)
        h[e] = 1
        if e + n <= order:
            h[e + n] = 1
        divide_one_minus_power(h, n, 2 * t)
        sign = 1 if n % 2 else -1
        total = [a + sign * b for a, b in zip(total, h)]
        n += 1
    return TruncatedSeries.from_integers(total)


def u_star_from_u(t: int, order: int) -> TruncatedSeries:
    """U*_{2t} from U_2..U_{2t} through the e/h convolution.

    (-1)^t * sum over partitions (1^{m_1} ... t^{m_t}) of t of
    (-1)^{sum m} * multinomial(sum m; m_1..m_t) * prod U_{2k}^{m_k}.
    """
    if t == 0:
        return TruncatedSeries.one(order)
    us = marked_product("u", t, order)
    total = TruncatedSeries.zero(order)
    for parts in partitions_of(t):
        length = sum(parts.values())
        coef = factorial(length) // prod(factorial(m) for m in parts.values())
        term = TruncatedSeries.one(order)
        for k, m in parts.items():
            for _ in range(m):
                term = mul_series(term, us[k])
        total = total + term * ((-1) ** (t + length) * coef)
    return total


# -- enumeration oracle ---------------------------------------------------------------
@dataclass(frozen=True)
class Partition:
    """A partition stored as {part size: multiplicity}."""

    multiplicities: Mapping[int, int]

    def __post_init__(self):
        if any(m < 1 or s < 1 for s, m in self.multiplicities.items()):
            raise ValueError("parts and multiplicities must be positive")
        object.__setattr__(self, "multiplicities", MappingProxyType(dict(self.multiplicities)))

    @property
    def total(self) -> int:
        return sum(s * m for s, m in self.multiplicities.items())

    @property
    def distinct_sizes(self) -> int:
        return len(self.multiplicities)

    def multiplicity_product(self) -> int:
        return prod(self.multiplicities.values())


def partitions_with_sizes(n: int, t: int, parts: str = "all") -> Iterator[Partition]:
    """Partitions of n with exactly t distinct part sizes, from the chosen parity class."""
    if parts not in ("all", "odd"):
        raise ValueError("parts must be 'all' or 'odd'")
    step = 2 if parts == "odd" else 1

    def sizes_below(limit: int):
        s = limit - 1
        if parts == "odd" and s % 2 == 0:
            s -= 1
        while s >= 1:
            yield s
            s -= step

    def least(k: int) -> int:
        # smallest total of k distinct allowed sizes
        return k * k if parts == "odd" else k * (k + 1) // 2

    def rec(remaining: int, limit: int, left: int, chosen: dict[int, int]):
        if left == 0:
            if remaining == 0:
                yield Partition(chosen)
            return
        for s in sizes_below(limit):
            if s * 1 + least(left - 1) > remaining:
                continue
            if least(left) > s * left + remaining:
                break
            for m in range(1, (remaining - least(left - 1)) // s + 1):
                chosen[s] = m
                yield from rec(remaining - s * m, s, left - 1, chosen)
                del chosen[s]

    yield from rec(n, n + 1, t, {})


def multiplicity_oracle(t: int, n: int, parts: str = "all") -> int:
    """Sum of products of part multiplicities over partitions of n with t distinct sizes.

    A direct recursion on the definition: pick the largest size s and its
    multiplicity m, weight by m, recurse on the rest with sizes below s.
    """
    if n > MULTIPLICITY_GUARD:
        raise ValueError(f"enumeration is capped at n = {MULTIPLICITY_GUARD}")
    if n < 0 or t < 0:
        raise ValueError("n and t must be non-negative")
    if parts not in ("all", "odd"):
        raise ValueError("parts must be 'all' or 'odd'")
    return _weighted_count(n, n + 1, t, parts == "odd")


@lru_cache(maxsize=None)
def _weighted_count(remaining: int, limit: int, left: int, odd: bool) -> int:
    if left == 0:
        return 1 if remaining == 0 else 0
    total = 0
    for s in range(1, min(limit, remaining + 1)):
        if odd and s % 2 == 0:
            continue
        for m in range(1, remaining // s + 1):
            total += m * _weighted_count(remaining - s * m, s, left - 1, odd)
    return total


# -- family sums ----------------------------------------------------------------------
def lowest_exponent(family: str, t: int) -> int:
    """Exponent of the first nonzero term of the t-th family member."""
    if family == "u" or family == "u_two":
        return t * (t + 1) // 2
    if family == "u_star":
        return t
    if family == "c":
        return t * t
    raise ValueError(f"unknown family {family!r}")


def family_bound(family: str, order: int) -> int:
    """Largest t whose member can be nonzero below q^order."""
    t = 0
    while lowest_exponent(family, t + 1) <= order:
        t += 1
    return t


def _product_at_one(family: str, order: int) -> TruncatedSeries:
    s = [0] * (order + 1)
    s[0] = 1
    if family in ("u", "c"):
        ks = range(1, order + 1, 2) if family == "c" else range(1, order + 1)
        for k in ks:
            s = list(map(add, s, _times_kernel(s, k, order)))
        return TruncatedSeries.from_integers(s)
    # 1/(1 - q^k/(1-q^k)^2) = (1-q^k)^2 / (1 - 3q^k + q^{2k})
    for k in range(1, order + 1):
        for n in range(order, k - 1, -1):
            s[n] -= 2 * s[n - k] - (s[n - 2 * k] if n >= 2 * k else 0)
        for n in range(k, order + 1):
            s[n] += 3 * s[n - k] - (s[n - 2 * k] if n >= 2 * k else 0)
    return TruncatedSeries.from_integers(s)


def family_sum(family: str, order: int, method: str = "members") -> TruncatedSeries:
    """sum_{t>=0} of a family, exact to q^order.

    ``method="members"`` adds the members t = 0..T one by one, with T from the
    lowest-exponent laws.  ``method="product"`` evaluates the generating
    product with the marker set to 1 (for u_two: adds the inner binomial sums
    before applying the common prefactor); it is much faster and serves as a
    second route.
    """
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    T = family_bound(family, order)
    if method == "members":
        if family == "u_two":
            total = TruncatedSeries.zero(order)
            for t in range(T + 1):
                total = total + macmahon_u_two(t, order)
            return total
        return marked_product(family, T, order).at_one()
    if method == "product":
        if family == "u_two":
            return mul_series(_u_two_prefactor(order), _u_two_inner(range(T + 1), order))
        return _product_at_one(family, order)
    raise ValueError(f"unknown method {method!r}")


# -- umbral evaluation -----------------------------------------------------------------
def poly_from_roots(roots: Sequence[int]) -> list[int]:
    """Coefficients (constant term first) of prod (S - r)."""
    coeffs = [1]
    for r in roots:
        nxt = [0] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            nxt[i + 1] += c
            nxt[i] -= r * c
        coeffs = nxt
    return coeffs


def umbral_eval(poly, order: int) -> TruncatedSeries:
    """Replace S^m by S_m = sum sigma_m(n) q^n (m >= 1); a constant c becomes c * 1.

    `poly` is a coefficient sequence (constant term first) or a {power: coeff} map.
    """
    items = poly.items() if isinstance(poly, Mapping) else enumerate(poly)
    total = TruncatedSeries.zero(order)
    for m, c in items:
        if not c:
            continue
        if m == 0:
            total = total + TruncatedSeries.constant(Fraction(c), order)
        else:
            total = total + lambert(m, order) * c
    return total
