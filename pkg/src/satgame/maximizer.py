"""The Maximizer's strategy for the tau-game.

For ``s = floor(sqrt(k))`` rounds the Maximizer keeps every point in at most
two of the Maximizer's own sets.  Each move splits as ``M_i = M1_i ∪ M2_i``:

* ``M1_i`` comes from a fixed schedule of ``l + 1 = s`` blocks of size
  ``l`` over ``U = [l(l+1)/2]``, any two of which meet in exactly one point,
  all these points being different;
* ``M2_i`` (size ``k - l``, outside ``U``) picks one point of every
  minimizer set that is not yet of degree two, and is padded with fresh
  points.

With maximum degree two over ``s`` sets, every cover has at least ``s / 2``
points.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field, replace

from .engine import GameState, Role, Strategy
from .errors import ConsistencyError, ParameterError, StateError, UniverseTooSmall
from .setfam import KSet, Params, min_cover_of_masks


@dataclass(frozen=True)
class M1Schedule:
    l: int
    blocks: tuple[tuple[int, ...], ...]

    @property
    def U(self) -> frozenset:
        return frozenset(x for b in self.blocks for x in b)


def build_m1_schedule(k: int) -> M1Schedule:
    """Blocks ``B_1..B_{l+1}`` with ``l = floor(sqrt(k)) - 1``.

    ``B_1 = [l]``; block ``i`` takes the ``(i-1)``-th smallest point of each
    earlier block and ``l - i + 1`` new points, the new points being the
    smallest unused integers.
    """
    if isinstance(k, bool) or not isinstance(k, int) or k < 4:
        raise ParameterError(f"the block schedule needs k >= 4, got {k!r}")
    l = math.isqrt(k) - 1
    blocks: list[tuple[int, ...]] = []
    nxt = 1
    for i in range(1, l + 2):
        shared = [blocks[j][i - 2] for j in range(i - 1)]
        new = list(range(nxt, nxt + l - i + 1))
        nxt += len(new)
        blocks.append(tuple(sorted(shared + new)))
    return M1Schedule(l, tuple(blocks))


def rounds_for(k: int) -> int:
    return math.isqrt(k)


def tau_lower_bound(k: int) -> int:
    return math.ceil(rounds_for(k) / 2)


def universe_ok(n: int, k: int) -> bool:
    """``n >= k^(3/2)`` in exact integer arithmetic."""
    return n * n >= k**3


@dataclass(frozen=True)
class MaximizerMemory:
    params: Params
    moves_first: bool
    schedule: M1Schedule
    role: Role = Role.MAX
    round: int = 0
    own: tuple[KSet, ...] = ()
    m2_history: tuple[frozenset, ...] = ()
    degree_table: dict = field(default_factory=dict)
    new_degree2: tuple[int, ...] = ()

    @property
    def finished(self) -> bool:
        return self.round >= self.schedule.l + 1


def new_memory(params: Params, moves_first: bool, role: Role = Role.MAX) -> MaximizerMemory:
    if not universe_ok(params.n, params.k):
        raise UniverseTooSmall(
            f"Maximizer strategy needs n >= k^(3/2) = {params.k ** 1.5:.2f}, got n={params.n}"
        )
    return MaximizerMemory(params, moves_first, build_m1_schedule(params.k), role)


def maximizer_move(state: GameState, mem: MaximizerMemory) -> tuple[KSet, MaximizerMemory]:
    p = state.params
    k, n = p.k, p.n
    if state.to_move is not mem.role:
        raise StateError("it is not the Maximizer's turn")
    if mem.finished:
        raise StateError(f"strategy covers only {mem.schedule.l + 1} rounds")
    i = mem.round + 1
    l = mem.schedule.l
    U = mem.schedule.U
    block = set(mem.schedule.blocks[i - 1])

    m2_deg = Counter()
    for part in mem.m2_history:
        m2_deg.update(part)
    hot = {x for x, d in m2_deg.items() if d >= 2}
    forbidden = U | hot

    chosen: set[int] = set()
    for m in state.moves_of(mem.role.other):
        if chosen & set(m):
            continue
        eligible = sorted(set(m) - forbidden, key=lambda x: (m2_deg[x], x))
        if not eligible:
            raise ConsistencyError(f"minimizer set {m} has no point outside U and degree-2 points")
        # a point new to the second parts does not create a degree-2 point
        chosen.add(eligible[0])

    need = k - l - len(chosen)
    if need < 0:
        raise ConsistencyError("more minimizer sets than room in the second part")
    used_any = set()
    used_max = set()
    for idx, s in enumerate(state.claimed):
        used_any.update(s)
        if state.owner(idx) is mem.role:
            used_max.update(s)
    blocked = U | chosen
    # fresh points first, then points seen only in minimizer sets
    fresh = [x for x in range(1, n + 1) if x not in blocked and x not in used_any]
    spare = [x for x in range(1, n + 1) if x not in blocked and x in used_any and x not in used_max]
    pool = fresh + spare
    if len(pool) < need:
        raise ConsistencyError("not enough points to pad the second part")
    core = block | chosen
    move = None
    # the first padding is almost always unclaimed; later ones only matter on tiny boards
    for pad in itertools.islice(itertools.combinations(pool, need), 10_000):
        cand = KSet(tuple(sorted(core.union(pad))), n)
        if cand not in state.claimed:
            move = cand
            break
    if move is None:
        raise ConsistencyError("every padding of the second part gives a claimed set")
    m2 = frozenset(move.elements) - block
    table = Counter(mem.degree_table)
    table.update(move.elements)
    new_hot = sum(1 for x in chosen if m2_deg[x] == 1)
    new = replace(
        mem,
        round=i,
        own=mem.own + (move,),
        m2_history=mem.m2_history + (m2,),
        degree_table=dict(table),
        new_degree2=mem.new_degree2 + (new_hot,),
    )
    return move, new


@dataclass
class PropsReport:
    round: int
    results: dict[str, bool]
    degree2: int
    witnesses: dict[str, list] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.results.values())


def check_props_123(mem: MaximizerMemory, i: int) -> PropsReport:
    """Check (1)-(3) on the first ``i`` second parts.

    (1) at most ``i^2 / 2`` points of degree two, (2) no point of degree three
    or more, (3) no second part meets ``U``.
    """
    if i > mem.round:
        raise StateError(f"only {mem.round} rounds played, cannot check round {i}")
    parts = mem.m2_history[:i]
    deg = Counter()
    for part in parts:
        deg.update(part)
    twos = sorted(x for x, d in deg.items() if d == 2)
    threes = sorted(x for x, d in deg.items() if d >= 3)
    U = mem.schedule.U
    in_u = sorted(x for part in parts for x in part if x in U)
    results = {"1": 2 * len(twos) <= i * i, "2": not threes, "3": not in_u}
    wit = {"1": twos if not results["1"] else [], "2": threes, "3": in_u}
    return PropsReport(i, results, len(twos), wit)


def certify_tau_lower(mem: MaximizerMemory, exact: bool = True) -> int:
    """Lower bound ``ceil((l+1)/2)`` on the covering number of any family
    containing the Maximizer's ``l + 1`` sets.

    The bound follows from ``|family| / max degree <= tau`` with max degree 2;
    both are re-verified, and with ``exact`` the covering number of the
    Maximizer's own sets is computed and compared as well.
    """
    l = mem.schedule.l
    if mem.round < l + 1:
        raise StateError(f"bound needs {l + 1} Maximizer moves, only {mem.round} made")
    sets = mem.own[: l + 1]
    deg = Counter()
    for s in sets:
        deg.update(s.elements)
    if max(deg.values()) > 2:
        raise ConsistencyError("a point lies in three Maximizer sets")
    bound = math.ceil(len(sets) / 2)
    if exact:
        tau, _ = min_cover_of_masks([s.mask for s in sets])
        if tau < bound:
            raise ConsistencyError(f"exact covering number {tau} is below the bound {bound}")
    return bound


class MaximizerStrategy(Strategy):
    name = "maximizer"
    strategic = True

    def __init__(self, check: bool = True):
        self.check = check

    def start(self, params, role, moves_first):
        super().start(params, role, moves_first)
        self.memory = new_memory(params, moves_first, role)

    @property
    def done(self) -> bool:
        return self.memory.finished

    def move(self, state):
        if self.memory.finished:
            return None
        mv, self.memory = maximizer_move(state, self.memory)
        if self.check:
            rep = check_props_123(self.memory, self.memory.round)
            if not rep.passed:
                raise ConsistencyError(f"Maximizer properties broken at round {rep.round}: {rep.witnesses}")
        return mv

    def report(self):
        mem = self.memory
        out = {"degree_table": dict(mem.degree_table)}
        if mem.finished:
            out["tau_lower"] = certify_tau_lower(mem, exact=False)
        return out
