"""Acceptance gate: every shipped guarantee, one test per criterion.

Each criterion prints its pass/fail line; the assertion carries the details.
The literal all-pairs cross-oracle run at 6 vertices (~3.6e8 pairs) lives
behind the ``slow`` marker; the default criterion 5 run is exhaustive through
5 vertices and structured at 6 (see ``toricgs.acceptance``).
"""

import pytest

from toricgs import acceptance


@pytest.mark.parametrize(
    "criterion", acceptance.CRITERIA, ids=[f.__name__ for f in acceptance.CRITERIA]
)
def test_criterion(criterion):
    result = criterion()
    print(result.line())
    assert result.passed, result.line()


@pytest.mark.slow
def test_criterion_5_full_six_vertices():
    result = acceptance.criterion_5_cross_oracle(full_six=True)
    print(result.line())
    assert result.passed, result.line()
