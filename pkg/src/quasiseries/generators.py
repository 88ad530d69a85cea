"""Named q-series: Eisenstein series, Euler products, theta powers and friends.

Theta_2 carries the fractional prefactor q^(1/4), so only its fourth power is
ever built: the fourth power of 2*sum u^((2n+1)^2) has every exponent
divisible by 4, and reindexing u^4 -> q gives an honest integer-exponent
series.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, isqrt

from .series import TruncatedSeries, mul_series, power, substitute_power

__all__ = [
    "bernoulli",
    "divisor_power_sum",
    "eisenstein",
    "euler_product",
    "naive_euler_product",
    "theta",
    "big_theta",
    "theta_xy",
    "g2",
    "lambert",
    "power_quotient_sum",
    "h_series",
    "PLAIN",
    "DOUBLED",
]

PLAIN = "plain"
DOUBLED = "doubled"

_bernoulli_cache: list[Fraction] = [Fraction(1)]


def bernoulli(n: int) -> Fraction:
    """B_n from sum_{k=0}^{n} C(n+1, k) B_k = 0 (so B_1 = -1/2)."""
    if n < 0:
        raise ValueError("Bernoulli index must be non-negative")
    cache = _bernoulli_cache
    for m in range(len(cache), n + 1):
        if m >= 3 and m % 2:
            cache.append(Fraction(0))
            continue
        s = sum(comb(m + 1, k) * cache[k] for k in range(m))
        cache.append(-s / (m + 1))
    return cache[n]


def divisor_power_sum(k: int, n: int) -> int:
    """sigma_k(n) = sum of d^k over the divisors d of n."""
    if n < 1:
        raise ValueError("sigma_k(n) needs n >= 1")
    total = 0
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            e = n // d
            total += d**k
            if e != d:
                total += e**k
    return total


def _sigma_list(k: int, order: int) -> list[int]:
    out = [0] * (order + 1)
    for d in range(1, order + 1):
        dk = d**k
        for m in range(d, order + 1, d):
            out[m] += dk
    return out


@lru_cache(maxsize=None)
def lambert(j: int, order: int) -> TruncatedSeries:
    """S_j = sum_{m>=1} m^j q^m / (1 - q^m) = sum sigma_j(n) q^n."""
    if j < 0:
        raise ValueError("j must be non-negative")
    return TruncatedSeries.from_integers(_sigma_list(j, order))


@lru_cache(maxsize=None)
def eisenstein(k: int, order: int) -> TruncatedSeries:
    """E_{2k} = 1 - (4k / B_{2k}) * sum sigma_{2k-1}(n) q^n."""
    if k < 1:
        raise ValueError("Eisenstein index k must be positive")
    factor = Fraction(4 * k) / bernoulli(2 * k)
    sig = _sigma_list(2 * k - 1, order)
    sig[0] = 0
    nums = [-x * factor.numerator for x in sig]
    nums[0] = factor.denominator
    return TruncatedSeries.from_integers(nums, factor.denominator)


@lru_cache(maxsize=None)
def euler_product(m: int, order: int) -> TruncatedSeries:
    """(q^m; q^m)_inf via the pentagonal number theorem."""
    if m < 1:
        raise ValueError("m must be positive")
    nums = [0] * (order + 1)
    nums[0] = 1
    k = 1
    while True:
        e1 = m * k * (3 * k - 1) // 2
        if e1 > order:
            break
        sign = -1 if k % 2 else 1
        nums[e1] += sign
        e2 = m * k * (3 * k + 1) // 2
        if e2 <= order:
            nums[e2] += sign
        k += 1
    return TruncatedSeries.from_integers(nums)


def naive_euler_product(m: int, order: int) -> TruncatedSeries:
    """prod_{k<=order} (1 - q^(mk)) by direct multiplication (test oracle)."""
    nums = [0] * (order + 1)
    nums[0] = 1
    for k in range(1, order // m + 1):
        e = m * k
        for n in range(order, e - 1, -1):
            nums[n] -= nums[n - e]
    return TruncatedSeries.from_integers(nums)


@lru_cache(maxsize=None)
def theta(variant: str, order: int) -> TruncatedSeries:
    """theta_3, theta_4, or the fourth power of theta_2 ("two_pow4")."""
    if variant in ("three", "four"):
        nums = [0] * (order + 1)
        nums[0] = 1
        sign = -1 if variant == "four" else 1
        m = 1
        while m * m <= order:
            nums[m * m] = 2 * sign**m
            m += 1
        return TruncatedSeries.from_integers(nums)
    if variant == "two_pow4":
        top = 4 * order + 3
        base = [0] * (top + 1)
        n = 0
        while (2 * n + 1) ** 2 <= top:
            base[(2 * n + 1) ** 2] = 2
            n += 1
        u = TruncatedSeries.from_integers(base)
        fourth = power(u, 4).numerators
        return TruncatedSeries.from_integers([fourth[4 * i] for i in range(order + 1)])
    raise ValueError(f"unknown theta variant {variant!r}")


def theta_xy(order: int) -> tuple[TruncatedSeries, TruncatedSeries]:
    """The pair X = theta_2^4, Y = theta_3^4."""
    return theta("two_pow4", order), _theta3_fourth(order)


@lru_cache(maxsize=None)
def _theta3_fourth(order: int) -> TruncatedSeries:
    return power(theta("three", order), 4)


@lru_cache(maxsize=None)
def _xy_monomial(r: int, s: int, order: int) -> TruncatedSeries:
    x, y = theta_xy(order)
    return mul_series(power(x, r), power(y, s))


def big_theta(r: int, s: int, order: int, diag: str = PLAIN) -> TruncatedSeries:
    """Theta_{r,s} = X^r Y^s + X^s Y^r; on the diagonal r == s the `diag` flag
    chooses between the single product (plain) and twice it (doubled)."""
    if r < 0 or s < 0:
        raise ValueError("Theta indices must be non-negative")
    if diag not in (PLAIN, DOUBLED):
        raise ValueError(f"diag must be {PLAIN!r} or {DOUBLED!r}")
    if r == s:
        mono = _xy_monomial(r, r, order)
        return mono * 2 if diag == DOUBLED else mono
    return _xy_monomial(r, s, order) + _xy_monomial(s, r, order)


@lru_cache(maxsize=None)
def g2(order: int) -> TruncatedSeries:
    """G_2(q) = 2 E_2(q^2) - E_2(q)."""
    e2 = eisenstein(1, order)
    return substitute_power(e2, 2) * 2 - e2


def power_quotient_sum(t: int, p: int, order: int) -> TruncatedSeries:
    """sum_{k>=1} q^(tk) / (1 - q^k)^p, expanded by the binomial series.

    q^(tk)/(1-q^k)^p = sum_{m>=0} C(m+p-1, p-1) q^(k(t+m)).
    """
    if t < 1 or p < 0:
        raise ValueError("need t >= 1 and p >= 0")
    nums = [0] * (order + 1)
    for k in range(1, order // t + 1):
        m = 0
        e = k * t
        while e <= order:
            nums[e] += comb(m + p - 1, p - 1) if p else (1 if m == 0 else 0)
            m += 1
            e += k
    return TruncatedSeries.from_integers(nums)


def h_series(r: int, order: int) -> TruncatedSeries:
    """H_r = sum_{k>=1} q^(rk) / (1 - q^k)^(2r)."""
    if r < 1:
        raise ValueError("r must be positive")
    return power_quotient_sum(r, 2 * r, order)
