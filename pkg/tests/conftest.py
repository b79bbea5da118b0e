"""Shared fixtures.

Tests that install a cache table or poison the memo must not leak state
into other tests: the module-level memo dictionaries are process-wide.
"""

import pytest

from psi_ehrhart.intersection_core import (
    psi_memo_clear,
    psi_memo_install,
    psi_memo_items,
)
from psi_ehrhart.lvalue_poly import (
    lpoly_memo_clear,
    lpoly_memo_install,
    lpoly_memo_items,
)


@pytest.fixture
def isolated_memos():
    """Snapshot both memo tables, hand the test a clean slate, restore
    afterwards."""
    psi_saved = psi_memo_items()
    lpoly_saved = lpoly_memo_items()
    psi_memo_clear()
    lpoly_memo_clear()
    try:
        yield
    finally:
        psi_memo_clear()
        lpoly_memo_clear()
        psi_memo_install(psi_saved)
        lpoly_memo_install(lpoly_saved)
