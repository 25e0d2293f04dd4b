"""The saturation game on Sperner families (antichains) of subsets of [n].

Subsets are sorted tuples; the board lists all ``2^n`` of them ordered by
size and then lexicographically, so ``()`` comes first.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Iterator

from .engine import Role, RoleAssignment
from .errors import ParameterError, ResourceLimitError, StateError
from .solver import MinimaxCore

SPERNER_SOLVE_MAX_N = 4


def _subset(F: Iterable[int], n: int) -> frozenset:
    s = frozenset(F)
    if any(isinstance(x, bool) or not isinstance(x, int) or not 1 <= x <= n for x in s):
        raise ParameterError(f"{sorted(s)} is not a subset of [{n}]")
    return s


def comparable(a: frozenset, b: frozenset) -> bool:
    return a <= b or b <= a


def all_subsets(n: int) -> list[tuple[int, ...]]:
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise ParameterError(f"n must be a non-negative integer, got {n!r}")
    return [c for r in range(n + 1) for c in itertools.combinations(range(1, n + 1), r)]


def is_antichain(family: Iterable[frozenset]) -> bool:
    fam = list(family)
    return all(not comparable(a, b) for a, b in itertools.combinations(fam, 2)) and len(
        set(fam)
    ) == len(fam)


def sperner_legal_moves(claimed: Iterable[Iterable[int]], n: int) -> Iterator[tuple[int, ...]]:
    """Unclaimed subsets comparable to no claimed set."""
    fam = [_subset(F, n) for F in claimed]
    if not is_antichain(fam):
        raise StateError("claimed family is not an antichain")
    for G in all_subsets(n):
        g = frozenset(G)
        if not any(comparable(g, F) for F in fam):
            yield G


def neighborhood_NF(F: Iterable[int], n: int) -> list[tuple[int, ...]]:
    """``{F - x + y : x in F, y not in F}``, in lexicographic order."""
    f = _subset(F, n)
    if not f or len(f) == n:
        raise ParameterError("the neighbourhood is defined only for proper non-empty F")
    out = {tuple(sorted((f - {x}) | {y})) for x in f for y in range(1, n + 1) if y not in f}
    return sorted(out)


def max_comparable_capture(F: Iterable[int], n: int) -> int:
    """Largest number of neighbours of ``F`` that one set ``G`` incomparable
    to ``F`` can make illegal, over all such ``G``.

    Slow opens with ``F``; if Fast's reply ``G`` kills at most ``c`` of the
    ``|F|(n - |F|)`` neighbours, Slow still has many moves left.
    """
    f = _subset(F, n)
    if len(f) != n // 2:
        raise ParameterError(f"F must have size floor(n/2) = {n // 2}, got {len(f)}")
    nbrs = [frozenset(x) for x in neighborhood_NF(f, n)]
    best = 0
    for G in all_subsets(n):
        g = frozenset(G)
        if comparable(g, f):
            continue
        best = max(best, sum(1 for h in nbrs if comparable(h, g)))
    return best


def slow_opening(n: int) -> tuple[int, ...]:
    return tuple(range(1, n // 2 + 1))


def _parse_first(first) -> RoleAssignment:
    if isinstance(first, RoleAssignment):
        return first
    if isinstance(first, Role):
        return RoleAssignment(first)
    return RoleAssignment.parse(str(first))


def sperner_core(n: int, first) -> tuple[list[tuple[int, ...]], MinimaxCore]:
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise ParameterError(f"n must be a non-negative integer, got {n!r}")
    if n > SPERNER_SOLVE_MAX_N:
        raise ResourceLimitError(f"Sperner solve supports n <= {SPERNER_SOLVE_MAX_N}, got {n}")
    board = all_subsets(n)
    sets = [frozenset(b) for b in board]
    compat = []
    for a in sets:
        compat.append(sum(1 << j for j, b in enumerate(sets) if not comparable(a, b)))
    return board, MinimaxCore(compat, lambda claimed: claimed.bit_count(), _parse_first(first))


def solve_sperner(n: int, first) -> int:
    """Exact game value, scored by the size of the final maximal antichain."""
    _, core = sperner_core(n, first)
    return core.value(0)


def sperner_principal_variation(n: int, first) -> list[tuple[int, ...]]:
    board, core = sperner_core(n, first)
    return [board[i] for i in core.principal_variation(0)]

