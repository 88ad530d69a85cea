"""Coefficient recursions and weight sequences.

Three triple-indexed tables are built here, each by a single sweep over
weight levels (every right-hand side only looks one level down):

* ``cv``       -- integer coefficients of V_{2t} on E_2^a E_4^b E_6^c,
                  graded by a + 2b + 3c;
* ``cc``       -- coefficients of D^t(theta_4)/theta_4 on E_2^a Theta_{b,c},
                  graded by a + b + c, stored only for canonical keys b <= c;
* ``cc_tilde`` -- the same quotient on E_2^a G_2^b E_4^c, graded by a + b + 2c.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from types import MappingProxyType
from typing import Callable, Iterator, Mapping, Sequence

__all__ = [
    "CoeffTable",
    "cv_table",
    "cv_tilde_table",
    "cc_table",
    "cc_tilde_table",
    "elementary_symmetric",
    "v_weights",
    "v_weights_recurrence",
    "w_weights",
    "cv_closed_ratio",
    "pochhammer",
    "triples_of_weight",
]

Key = tuple[int, int, int]

GRADINGS: dict[str, tuple[int, int, int]] = {
    "cv": (1, 2, 3),
    "cv_tilde": (1, 2, 3),
    "cc": (1, 1, 1),
    "cc_tilde": (1, 1, 2),
}


@dataclass(frozen=True)
class CoeffTable:
    """A finished recursion table; ``entries`` is read-only."""

    recursion_id: str
    entries: Mapping[Key, Fraction]
    max_weight: int
    grading: tuple[int, int, int] = field(default=(1, 1, 1))

    def __post_init__(self):
        object.__setattr__(self, "entries", MappingProxyType(dict(self.entries)))

    def __getitem__(self, key: Key) -> Fraction:
        if any(i < 0 for i in key):
            return Fraction(0)
        if self.recursion_id == "cc":
            key = canonical(key)
        if self.weight(key) > self.max_weight:
            raise KeyError(f"{key} lies above the table's weight bound {self.max_weight}")
        return self.entries.get(key, Fraction(0))

    def weight(self, key: Key) -> int:
        return sum(g * i for g, i in zip(self.grading, key))

    def level(self, w: int) -> dict[Key, Fraction]:
        """All entries on one weight level."""
        return {k: v for k, v in self.entries.items() if self.weight(k) == w}

    def rows(self) -> Iterator[tuple[int, int, int, int, int]]:
        for key in sorted(self.entries):
            v = self.entries[key]
            yield (*key, v.numerator, v.denominator)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["alpha", "beta", "gamma", "num", "den"])
        writer.writerows(self.rows())
        return buf.getvalue()


def canonical(key: Key) -> Key:
    a, b, c = key
    return (a, b, c) if b <= c else (a, c, b)


def triples_of_weight(w: int, grading: Sequence[int], canonical_only: bool = False) -> list[Key]:
    """All (a, b, c) >= 0 with grading . (a, b, c) == w, in lexicographic order."""
    ga, gb, gc = grading
    out = []
    for a in range(w // ga + 1):
        for b in range((w - ga * a) // gb + 1):
            rest = w - ga * a - gb * b
            if rest % gc == 0:
                c = rest // gc
                if not canonical_only or b <= c:
                    out.append((a, b, c))
    return out


def _sweep(
    recursion_id: str,
    t_max: int,
    step: Callable[[Key, Callable[[Key], Fraction]], Fraction],
    canonical_only: bool = False,
) -> CoeffTable:
    grading = GRADINGS[recursion_id]
    table: dict[Key, Fraction] = {(0, 0, 0): Fraction(1)}

    def get(key: Key) -> Fraction:
        if min(key) < 0:
            return Fraction(0)
        if canonical_only:
            key = canonical(key)
        return table.get(key, Fraction(0))

    for w in range(1, t_max + 1):
        for key in triples_of_weight(w, grading, canonical_only):
            table[key] = step(key, get)
    return CoeffTable(recursion_id, table, t_max, grading)


def _cv_step(key: Key, c: Callable[[Key], Fraction]) -> Fraction:
    a, b, g = key
    return (
        (2 * a + 8 * b + 12 * g - 1) * c((a - 1, b, g))
        - 2 * (a + 1) * c((a + 1, b - 1, g))
        - 8 * (b + 1) * c((a, b + 1, g - 1))
        - 12 * (g + 1) * c((a, b - 2, g + 1))
    )


def cv_table(t_max: int) -> CoeffTable:
    """c_v(a, b, c) for every a + 2b + 3c <= t_max."""
    return _sweep("cv", t_max, _cv_step)


def _cv_tilde_step(key: Key, c: Callable[[Key], Fraction]) -> Fraction:
    a, b, g = key
    return (
        (Fraction(a, 12) + Fraction(b, 3) + Fraction(g, 2) - Fraction(1, 24)) * c((a - 1, b, g))
        - Fraction(a + 1, 12) * c((a + 1, b - 1, g))
        - Fraction(b + 1, 3) * c((a, b + 1, g - 1))
        - Fraction(g + 1, 2) * c((a, b - 2, g + 1))
    )


def cv_tilde_table(t_max: int) -> CoeffTable:
    """Coefficients of D^t(eta)/eta on E_2^a E_4^b E_6^c (no 24-power prefactor)."""
    return _sweep("cv_tilde", t_max, _cv_tilde_step)


def _cc_step(key: Key, c: Callable[[Key], Fraction]) -> Fraction:
    a, b, g = key
    return (
        Fraction(2 * a + 4 * b + 4 * g - 1, 24) * c((a - 1, b, g))
        + Fraction(20 * g - 4 * b + 3, 24) * c((a, b - 1, g))
        + Fraction(20 * b - 4 * g + 3, 24) * c((a, b, g - 1))
        - Fraction(7 * (a + 1), 6) * c((a + 1, b - 1, g - 1))
        - Fraction(a + 1, 12) * c((a + 1, b - 2, g))
        - Fraction(a + 1, 12) * c((a + 1, b, g - 2))
    )


def cc_table(t_max: int) -> CoeffTable:
    """c_c on canonical keys (b <= c) for a + b + c <= t_max.

    Every lookup on the right-hand side is canonicalized first; the ordered
    (uncanonicalized) reading does not reproduce the weight-4 example.
    """
    return _sweep("cc", t_max, _cc_step, canonical_only=True)


def _cc_tilde_step(key: Key, c: Callable[[Key], Fraction], e4_weight: int = 24) -> Fraction:
    a, b, g = key
    return (
        Fraction(2 * a + 4 * b + 8 * g - 1, 24) * c((a - 1, b, g))
        + Fraction(e4_weight * g - 8 * b + 7, 24) * c((a, b - 1, g))
        - Fraction(a + 1, 12) * c((a + 1, b, g - 1))
        + Fraction(b + 1, 6) * c((a, b + 1, g - 1))
        - Fraction(4 * (g + 1), 3) * c((a, b - 3, g + 1))
    )


def cc_tilde_table(t_max: int, variant: str = "corrected") -> CoeffTable:
    """Coefficients on E_2^a G_2^b E_4^c for a + b + 2c <= t_max.

    The G_2-raising term carries (24c - 8b + 7)/24: the G_2 that
    D(E_4) = (E_2 E_4 - 4 G_2^3 + 3 G_2 E_4)/3 contributes gives +c on top of
    the -1/24 and -(b-1)/3 from D(theta_4)/theta_4 and D(G_2).  The variant
    ``"printed"`` uses (8c - 8b + 7)/24 instead; the two agree on levels
    0..2 and differ from level 3 on.
    """
    if variant == "corrected":
        step = _cc_tilde_step
    elif variant == "printed":
        def step(key, c):
            return _cc_tilde_step(key, c, e4_weight=8)
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return _sweep("cc_tilde", t_max, step)


def elementary_symmetric(values: Sequence, k: int) -> Fraction:
    """e_k(values) by the usual one-pass update of e_0..e_k."""
    if not 0 <= k <= len(values):
        raise ValueError(f"k={k} outside 0..{len(values)}")
    e = [Fraction(1)] + [Fraction(0)] * k
    for x in values:
        for j in range(k, 0, -1):
            e[j] += e[j - 1] * x
    return e[k]


def v_weights_recurrence(t: int) -> list[Fraction]:
    """v_t(1..t) from v_t(k) = (t-1)^2 v_{t-1}(k) + v_{t-1}(k-1), v_1 = (1)."""
    if t < 1:
        raise ValueError("t must be positive")
    v = [Fraction(0), Fraction(1)]  # index k = 0..1 at t = 1
    for s in range(2, t + 1):
        nxt = [Fraction(0)] * (s + 1)
        for k in range(1, s + 1):
            prev_k = v[k] if k < len(v) else 0
            nxt[k] = (s - 1) ** 2 * prev_k + v[k - 1]
        v = nxt
    return v[1:]


def v_weights(t: int) -> list[Fraction]:
    """v_t(k) = e_{t-k}(0^2, 1^2, ..., (t-1)^2) for k = 1..t.

    Computed from the closed form and cross-checked against the recurrence.
    """
    if t < 1:
        raise ValueError("t must be positive")
    squares = [j * j for j in range(t)]
    closed = [elementary_symmetric(squares, t - k) for k in range(1, t + 1)]
    rec = v_weights_recurrence(t)
    if closed != rec:
        raise ArithmeticError(f"v_{t}: closed form {closed} disagrees with recurrence {rec}")
    return closed


def w_weights(t: int) -> list[Fraction]:
    """w_a(t) for a = 0..t."""
    if t < 0:
        raise ValueError("t must be non-negative")
    prefactor = Fraction(comb(2 * t, t), 16**t * (2 * t + 1))
    inv_odd_squares = [Fraction(1, (2 * l + 1) ** 2) for l in range(t)]
    return [prefactor * elementary_symmetric(inv_odd_squares, a) for a in range(t + 1)]


def pochhammer(x, n: int) -> Fraction:
    out = Fraction(1)
    for i in range(n):
        out *= x + i
    return out


def cv_closed_ratio(alpha: int, beta: int, gamma: int) -> Fraction:
    """(1 + 4b + 6c)_{2a} / (2^a a!), the claimed value of c_v(a,b,c)/c_v(0,b,c)."""
    return pochhammer(Fraction(1 + 4 * beta + 6 * gamma), 2 * alpha) / (2**alpha * factorial(alpha))
