"""Acceptance criteria A1-A7 at their stated tolerances and time limits."""

from __future__ import annotations

import pytest

from gammafilt import acceptance
from gammafilt.cli import corrupted_is2

from .conftest import ACCEPTANCE_RESULTS

CRITERIA = {
    "A1": acceptance.a1_shadow_catalogs,
    "A2": acceptance.a2_witness_polynomials,
    "A3": acceptance.a3_series_oracle,
    "A4": acceptance.a4_clt_table,
    "A5": acceptance.a5_distribution,
    "A6": acceptance.a6_properties,
    "A7": acceptance.a7_growth_rate,
}


@pytest.mark.parametrize("name", sorted(CRITERIA))
def test_criterion(name):
    result = CRITERIA[name]()
    ACCEPTANCE_RESULTS.append(result)
    print(result.line())
    assert result.passed, result.measured


def test_corrupted_is2_fails_witness_check():
    result = acceptance.a2_witness_polynomials(corrupted_is2())
    assert not result.passed
    assert "P2 match=False" in result.measured
