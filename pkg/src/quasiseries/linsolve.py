"""Exact solve for a target series as a combination of basis series.

Rows are q-coefficients, scaled to integers and eliminated fraction-free
(cross-multiplication followed by content removal).  Rows are fed in one at a
time, so an inconsistent system is reported at the first coefficient index
that breaks it.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

from .series import TruncatedSeries

__all__ = ["InconsistentSystemError", "solve_combination", "DEFAULT_GUARD"]

DEFAULT_GUARD = 16


class InconsistentSystemError(ValueError):
    """The target is not in the span of the columns (first failure at `index`)."""

    def __init__(self, index: int, message: str | None = None):
        self.index = index
        super().__init__(message or f"target leaves the span at q^{index}")


def _content_free(row: list[int]) -> list[int]:
    g = gcd(*row)
    if g > 1:
        return [x // g for x in row]
    return row


def solve_combination(
    target: TruncatedSeries,
    columns: Sequence[TruncatedSeries],
    guard: int = DEFAULT_GUARD,
) -> list[Fraction]:
    """Return x with sum x_j * columns[j] == target up to target.order.

    At least len(columns) + guard coefficients must be available.  The
    solution is fixed by the leading rows and then checked against every
    coefficient up to the common order.
    """
    m = len(columns)
    order = min([target.order] + [c.order for c in columns])
    if order + 1 < m + guard:
        raise ValueError(
            f"need at least {m + guard} coefficients for {m} unknowns, have {order + 1}"
        )
    if m == 0:
        bad = target.valuation()
        if bad is not None and bad <= order:
            raise InconsistentSystemError(bad)
        return []

    dens = [c.denominator for c in columns] + [target.denominator]
    scale = 1
    for d in dens:
        scale = scale // gcd(scale, d) * d
    factors = [scale // d for d in dens]
    series = list(columns) + [target]

    pivots: dict[int, list[int]] = {}
    used = 0
    for n in range(order + 1):
        if len(pivots) == m and used >= m + guard:
            break
        row = [s.numerators[n] * f for s, f in zip(series, factors)]
        used += 1
        for col in sorted(pivots):
            if row[col]:
                prow = pivots[col]
                a, b = prow[col], row[col]
                row = _content_free([a * x - b * y for x, y in zip(row, prow)])
        lead = next((j for j in range(m) if row[j]), None)
        if lead is None:
            if row[m]:
                raise InconsistentSystemError(n)
            continue
        pivots[lead] = _content_free(row)

    if len(pivots) < m:
        raise ValueError(
            f"basis columns are not independent up to q^{order}: rank {len(pivots)} < {m}"
        )

    x = [Fraction(0)] * m
    for col in sorted(pivots, reverse=True):
        prow = pivots[col]
        acc = Fraction(prow[m]) - sum(prow[j] * x[j] for j in range(col + 1, m))
        x[col] = acc / prow[col]

    # full residual check up to the common order
    combo = TruncatedSeries.zero(order)
    for xj, col in zip(x, columns):
        if xj:
            combo = combo + col.truncate(order) * xj
    bad = combo.first_mismatch(target.truncate(order))
    if bad is not None:
        raise InconsistentSystemError(bad)
    return x
