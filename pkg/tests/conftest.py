"""Shared naive reference implementations.

These are deliberately dumb: single steps on plain tuples and a
full-memory orbit walk that stores every visited state.  They are the
independent ground truth the fast implementations are checked against.
"""

from __future__ import annotations

import pytest


def naive_step(comps: tuple[int, ...], m: int) -> tuple[int, ...]:
    n = len(comps)
    return tuple((comps[i] + comps[(i + 1) % n]) % m for i in range(n))


def naive_orbit(comps: tuple[int, ...], m: int, limit: int = 10**6):
    """(pre_period, cycle_length) by remembering every visited tuple."""
    seen = {}
    cur = comps
    k = 0
    while cur not in seen:
        seen[cur] = k
        cur = naive_step(cur, m)
        k += 1
        if k > limit:
            raise RuntimeError("naive orbit walk exceeded its limit")
    first = seen[cur]
    return first, k - first


def naive_on_cycle(comps: tuple[int, ...], m: int) -> bool:
    pre, _ = naive_orbit(comps, m)
    return pre == 0


@pytest.fixture(scope="session")
def small_grid():
    """(m, n) pairs small enough for exhaustive or naive checks."""
    return [(m, n) for m in range(2, 13) for n in range(1, 7)]
