"""Exact minimax values for tiny boards.

A position is the set of claimed board items, stored as a bit mask over the
board's index order.  Legality and the terminal score depend only on that
set, so the memo table is keyed by the mask alone; whose turn it is follows
from its popcount.  There is deliberately no pruning: this is the oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import networkx as nx

from .engine import GameKind, GameState, Role, RoleAssignment, Strategy
from .errors import ParameterError, ResourceLimitError, StateError
from .setfam import KSet, Params, gen_ksubsets, min_cover_of_masks

DEFAULT_SOLVER_CAP = 24


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class MinimaxCore:
    """Memoized minimax over "claim an item compatible with all claimed items".

    ``compat[i]`` is the mask of items that may coexist with item ``i``; the
    legal moves of a position are the unclaimed items compatible with every
    claimed one.  ``score`` maps a terminal claimed mask to an integer.
    """

    def __init__(self, compat: Sequence[int], score: Callable[[int], int], roles: RoleAssignment):
        self.compat = list(compat)
        self.size = len(self.compat)
        self.full = (1 << self.size) - 1
        self.score = score
        self.roles = roles
        self.memo: dict[int, int] = {}

    def legal(self, claimed: int) -> int:
        allowed = self.full
        for i in _bits(claimed):
            allowed &= self.compat[i]
        return allowed & ~claimed

    def value(self, claimed: int = 0) -> int:
        hit = self.memo.get(claimed)
        if hit is not None:
            return hit
        moves = self.legal(claimed)
        if not moves:
            v = self.score(claimed)
        else:
            vals = [self.value(claimed | (1 << i)) for i in _bits(moves)]
            role = self.roles.role_at(claimed.bit_count())
            v = min(vals) if role is Role.MIN else max(vals)
        self.memo[claimed] = v
        return v

    def best_move(self, claimed: int) -> int | None:
        """Lowest-index optimal move, or None at a terminal position."""
        target = self.value(claimed)
        for i in _bits(self.legal(claimed)):
            if self.value(claimed | (1 << i)) == target:
                return i
        return None

    def principal_variation(self, claimed: int = 0) -> list[int]:
        line = []
        while True:
            i = self.best_move(claimed)
            if i is None:
                return line
            line.append(i)
            claimed |= 1 << i


@dataclass
class SolveResult:
    value: int
    principal_variation: list[KSet]
    positions_expanded: int
    params: Params | None = None
    kind: GameKind | None = None
    roles: RoleAssignment | None = None

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "principal_variation": [list(s.elements) for s in self.principal_variation],
            "positions_expanded": self.positions_expanded,
        }


@dataclass
class IntersectingBoard:
    params: Params
    sets: list[KSet] = field(init=False)
    index: dict[KSet, int] = field(init=False)
    compat: list[int] = field(init=False)

    def __post_init__(self):
        self.sets = list(gen_ksubsets(self.params))
        self.index = {s: i for i, s in enumerate(self.sets)}
        self.compat = []
        for a in self.sets:
            m = 0
            for j, b in enumerate(self.sets):
                if a.mask & b.mask and a != b:
                    m |= 1 << j
            self.compat.append(m)

    def family_masks(self, claimed: int) -> list[int]:
        return [self.sets[i].mask for i in _bits(claimed)]

    def encode(self, sets) -> int:
        claimed = 0
        for s in sets:
            claimed |= 1 << self.index[s]
        return claimed


def _scorer(board: IntersectingBoard, kind: GameKind) -> Callable[[int], int]:
    if kind is GameKind.SATURATION:
        return lambda claimed: claimed.bit_count()
    cache: dict[int, int] = {}

    def tau(claimed: int) -> int:
        if claimed not in cache:
            cache[claimed] = min_cover_of_masks(board.family_masks(claimed))[0] if claimed else 0
        return cache[claimed]

    return tau


def _check_cap(p: Params, cap: int) -> None:
    if p.board_size > cap:
        raise ResourceLimitError(
            f"exact solve needs C({p.n},{p.k}) = {p.board_size} <= {cap} board elements"
        )


def build_core(p: Params, kind: GameKind, roles: RoleAssignment, cap: int = DEFAULT_SOLVER_CAP):
    _check_cap(p, cap)
    board = IntersectingBoard(p)
    return board, MinimaxCore(board.compat, _scorer(board, GameKind(kind)), roles)


def solve(
    p: Params,
    kind: GameKind,
    roles: RoleAssignment,
    *,
    cap: int = DEFAULT_SOLVER_CAP,
    start: Sequence[KSet] = (),
) -> SolveResult:
    """Exact value of the game from ``start`` (the empty board by default).

    The side to move at ``start`` is fixed by its length and ``roles``.
    """
    board, core = build_core(p, kind, roles, cap)
    claimed = board.encode(start)
    if len(start) != claimed.bit_count():
        raise StateError("start position repeats a set")
    if any(not a.mask & b.mask for a in start for b in start):
        raise StateError("start position is not intersecting")
    value = core.value(claimed)
    pv = [board.sets[i] for i in core.principal_variation(claimed)]
    return SolveResult(value, pv, len(core.memo), p, GameKind(kind), roles)


@dataclass
class SanityReport:
    value: int
    ekr_upper: int
    sat_lower: int
    smallest_maximal: list[KSet]

    @property
    def passed(self) -> bool:
        return self.sat_lower <= self.value <= self.ekr_upper


def smallest_maximal_family(p: Params, cap: int = DEFAULT_SOLVER_CAP) -> list[KSet]:
    """A smallest maximal intersecting family, by listing all maximal cliques
    of the "meets" graph on the board."""
    _check_cap(p, cap)
    board = IntersectingBoard(p)
    g = nx.Graph()
    g.add_nodes_from(range(len(board.sets)))
    for i, m in enumerate(board.compat):
        g.add_edges_from((i, j) for j in _bits(m) if j > i)
    best = min((sorted(c) for c in nx.find_cliques(g)), key=lambda c: (len(c), c))
    return [board.sets[i] for i in best]


def bounds_sanity(p: Params, result: SolveResult) -> SanityReport:
    """Check ``sat <= value <= C(n-1, k-1)`` for a solved saturation game."""
    if result.kind is not None and result.kind is not GameKind.SATURATION:
        raise ParameterError("bounds_sanity applies to the saturation game only")
    if 2 * p.k > p.n:
        raise ParameterError(f"the EKR bound needs 2k <= n, got n={p.n}, k={p.k}")
    low = smallest_maximal_family(p)
    return SanityReport(result.value, math.comb(p.n - 1, p.k - 1), len(low), low)


class SolverStrategy(Strategy):
    """Optimal play read off the exact solver (lowest optimal move)."""

    name = "solver"

    def __init__(self, kind: GameKind, cap: int = DEFAULT_SOLVER_CAP):
        self.kind = GameKind(kind)
        self.cap = cap

    def start(self, params, role, moves_first):
        super().start(params, role, moves_first)
        first = role if moves_first else role.other
        self.board, self.core = build_core(params, self.kind, RoleAssignment(first), self.cap)

    def move(self, state: GameState):
        i = self.core.best_move(self.board.encode(state.claimed))
        return None if i is None else self.board.sets[i]
