from __future__ import annotations

import os
import sys
from fractions import Fraction

from hypothesis import settings, strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from quasiseries.series import TruncatedSeries  # noqa: E402

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

small_fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@st.composite
def series(draw, order=None, unit=False):
    n = draw(st.integers(0, 16)) if order is None else order
    coeffs = draw(st.lists(small_fractions, min_size=n + 1, max_size=n + 1))
    if unit:
        coeffs[0] = draw(st.sampled_from([Fraction(1), Fraction(-1), Fraction(2), Fraction(-3, 2)]))
    return TruncatedSeries(coeffs, n)


@st.composite
def series_pair(draw, unit=False):
    n = draw(st.integers(0, 16))
    return draw(series(order=n, unit=unit)), draw(series(order=n))


def pytest_terminal_summary(terminalreporter):
    lines = []
    for outcome in ("passed", "failed"):
        for rep in terminalreporter.stats.get(outcome, []):
            if getattr(rep, "when", "call") != "call":
                continue
            for key, value in getattr(rep, "user_properties", []):
                if key == "criterion":
                    lines.append((value[0], f"criterion {value[0]:2d}: {'PASS' if outcome == 'passed' else 'FAIL'}  {value[1]}"))
    if lines:
        terminalreporter.write_sep("=", "acceptance criteria")
        for _, line in sorted(lines):
            terminalreporter.write_line(line)
