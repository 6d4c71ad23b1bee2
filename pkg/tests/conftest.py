from __future__ import annotations

import pytest

from pntap.arith import build_tables


@pytest.fixture(scope="session")
def tables_small():
    """Tables to 1.2e5 — enough for the x = 1e5 distance/series ranges."""
    return build_tables(120_000)


@pytest.fixture(scope="session")
def tables_med():
    return build_tables(1_000_000)
