from __future__ import annotations

import io

import pytest
from hypothesis import assume, strategies as st

from lehmerdefect import cli
from lehmerdefect.pairs import LehmerPair, validate_ab


def fib(n: int) -> int:
    """Independent Fibonacci oracle (direct recurrence, no package code)."""
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


@st.composite
def valid_pairs(draw, limit: int = 10_000) -> LehmerPair:
    """Validated pairs with |a|, |b| <= limit."""
    a = draw(st.integers(-limit, limit).filter(bool))
    q = draw(st.integers(-((limit - a) // 4), (limit + a) // 4).filter(bool))
    res = validate_ab(a, a - 4 * q)
    assume(isinstance(res, LehmerPair))
    return res


@pytest.fixture
def run_cli():
    def runner(*argv: str) -> tuple[int, str, str]:
        out, err = io.StringIO(), io.StringIO()
        code = cli.run(list(argv), stdout=out, stderr=err)
        return code, out.getvalue(), err.getvalue()

    return runner
