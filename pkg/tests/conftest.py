from functools import lru_cache

import pytest

from cyclosum.classes import partition
from cyclosum.cyclonum import compute_all, compute_minimal
from cyclosum.field import build_index_table, field_for_q
from cyclosum.params import make_order_spec


@lru_cache(maxsize=None)
def setup(l, variant, q):
    """(field, table, spec, partition, full matrix, minimal values) for one configuration."""
    f = field_for_q(q)
    table = build_index_table(f)
    spec = make_order_spec(l, variant, f)
    part = partition(spec)
    return f, table, spec, part, compute_all(spec, table), compute_minimal(spec, table, part)


@pytest.fixture
def cfg():
    return setup


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for line in lines:
        terminalreporter.write_line(line)
