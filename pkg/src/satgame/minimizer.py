"""The minimizer's strategy for the tau-game.

The minimizer keeps two point sets: ``C``, which only grows and eventually
becomes the cover of a disjointness certificate, and ``A``, a reservoir of
points of the minimizer's first set (the *anchor*) that already met some opponent set.
Each minimizer move is ``C`` plus at most one extra point plus fresh points, so
the last ``k + 1`` sets have pairwise disjoint residues outside the final
cover, which caps the covering number of every intersecting extension.

Rounds are numbered by the index of the minimizer's set: ``m_0, m_1, ...``
when the minimizer opens and ``m_1, m_2, ...`` when the opponent opens.  In both orders
``M_i`` is the opponent set played just before ``m_i`` and the anchor is the
minimizer's first set.  When the opponent opens, the anchor is ``m_1``, the round-2 rule
is applied directly to ``m_2`` (it already meets ``M_1``), the case rules run
through round ``k + 1`` and the certificate closes at ``m_{k+2}``.

All free choices are resolved by taking the smallest eligible point; fresh
points are the smallest integers not yet used by any claimed set.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

from .engine import GameState, Role, Strategy, apply_move
from .errors import ConsistencyError, ParameterError, StateError, UniverseTooSmall
from .setfam import CoverCertificate, KSet, Params, first_legal_move


def min_universe(k: int) -> int:
    return 2 * k * (k + 2)


def claim5_bound(i: int, k: int | None = None) -> int:
    """Upper bound on ``|C_i|`` after round ``i``: ``3 + floor(2(i-2)/3)``."""
    if isinstance(i, bool) or not isinstance(i, int) or i < 2 or (k is not None and i > k):
        raise ParameterError(f"round index must satisfy 2 <= i <= k, got {i}")
    return 3 + (2 * (i - 2)) // 3


def cover_bound(k: int, moves_first: bool) -> int:
    return math.ceil(2 * k / 3) + (3 if moves_first else 4)


# case labels recorded per round
ANCHOR, ROUND1, ROUND2_KEEP, ROUND2_GROW = "anchor", "round1", "round2:a1", "round2:c2"
I_MET, I_NEW_A, I_FROM_A, II = "I.1", "I.2", "I.3", "II"
FINAL = "final"


@dataclass(frozen=True)
class MinimizerMemory:
    params: Params
    moves_first: bool
    role: Role = Role.MIN
    anchor: KSet | None = None
    A: frozenset = frozenset()
    C: frozenset = frozenset()
    a1: int | None = None
    round: int = -1
    uncovered_M: int | None = None
    cases: dict = field(default_factory=dict)
    history: dict = field(default_factory=dict)
    certificate: CoverCertificate | None = None

    @property
    def first_round(self) -> int:
        return 0 if self.moves_first else 1

    @property
    def final_round(self) -> int:
        return self.params.k + 1 + self.first_round

    @property
    def finished(self) -> bool:
        return self.certificate is not None


def new_memory(params: Params, moves_first: bool, role: Role = Role.MIN) -> MinimizerMemory:
    if params.n < min_universe(params.k):
        raise UniverseTooSmall(
            f"minimizer strategy needs n >= 2k(k+2) = {min_universe(params.k)}, got n={params.n}"
        )
    return MinimizerMemory(params, moves_first, role, round=-1 if moves_first else 0)


def _history(state: GameState, mem: MinimizerMemory) -> tuple[dict[int, KSet], list]:
    """``(mine, theirs)`` with ``mine[i] = m_i`` and ``theirs[i] = M_i``."""
    own = state.moves_of(mem.role)
    opp = state.moves_of(mem.role.other)
    first = mem.first_round
    mine = {i + first: s for i, s in enumerate(own)}
    return mine, [None] + opp


def _fresh(state: GameState, count: int, avoid=()) -> list[int]:
    if count < 0:
        raise ConsistencyError("cover already has k points; no room for the move")
    used = set(avoid)
    for s in state.claimed:
        used.update(s.elements)
    out = []
    x = 1
    n = state.params.n
    while len(out) < count:
        if x > n:
            raise ConsistencyError("ran out of fresh points")
        if x not in used:
            out.append(x)
        x += 1
    return out


def _make(state: GameState, core) -> KSet:
    """``core`` padded with fresh points.

    The strategy needs room for at least one fresh point; when ``core`` already
    has k points an adversary can have claimed exactly that set (this happens
    for k <= 4, where the cover may reach k - 1 points).
    """
    core = set(core)
    k = state.params.k
    if len(core) > k:
        raise ConsistencyError(f"cover part {sorted(core)} exceeds k={k} points")
    pts = core | set(_fresh(state, k - len(core), avoid=core))
    move = KSet(tuple(sorted(pts)), state.params.n)
    if move in state.claimed:
        raise ConsistencyError(f"no fresh point left: forced move {move} is already claimed")
    return move


def minimizer_move(
    state: GameState, mem: MinimizerMemory, check: bool = False
) -> tuple[KSet, MinimizerMemory]:
    """Next minimizer move and updated memory.

    The anchor is the lexicographically smallest legal set; round 1 (only when
    the minimizer opens) and round 2 use the opening rules; later rounds follow
    Case I (three subcases) or Case II; the last round completes the
    certificate.  With ``check`` set, properties a)-d) are asserted after the
    move and a violation raises :class:`ConsistencyError`.
    """
    if state.to_move is not mem.role:
        raise StateError("it is not the minimizer's turn")
    if mem.finished:
        raise StateError("strategy already completed its certificate")
    mine, theirs = _history(state, mem)
    r = mem.first_round + len(mine)
    if mem.round != r - 1:
        raise StateError(f"memory is at round {mem.round} but the game expects round {r}")

    if r == mem.first_round:
        move = first_legal_move(state.claimed)
        if move is None:
            raise StateError("no legal move for the anchor")
        a1 = None if mem.moves_first else min(set(move) & set(theirs[1]))
        new = replace(mem, anchor=move, a1=a1, round=r, cases={r: ANCHOR})
        return move, new

    anchor = set(mem.anchor)
    Ms = set(theirs[r])

    if r == 1:
        a1 = min(anchor & Ms)
        move = _make(state, {a1})
        return move, replace(mem, a1=a1, round=1, cases={**mem.cases, 1: ROUND1})

    if r == 2:
        a1 = mem.a1
        if a1 in Ms:
            C, case = frozenset({a1}), ROUND2_KEEP
        else:
            c2 = min(set(theirs[1]) & Ms)
            C, case = frozenset({a1, c2}), ROUND2_GROW
        move = _make(state, C)
        A = frozenset()
    elif r < mem.final_round:
        A, C = mem.A, mem.C
        # Case II: an earlier opponent set misses C
        missed = [j for j in range(1, r) if not C & set(theirs[j])]
        if missed:
            c = min(Ms & set(theirs[missed[0]]))
            move = _make(state, C | {c})
            A, C, case = A - {c}, C | {c}, II
        elif C & Ms:
            move = _make(state, C)
            case = I_MET
        else:
            options = sorted((Ms & anchor) - A)
            if options:
                a = options[0]
                move = _make(state, C | {a})
                A, case = A | {a}, I_NEW_A
            else:
                a = min(Ms & anchor)
                move = _make(state, C | {a})
                A, C, case = A - {a}, C | {a}, I_FROM_A
    else:
        return _close(state, mem, mine, theirs, r)

    unmet = [j for j in range(1, r + 1) if not C & set(theirs[j])]
    new = replace(
        mem, A=frozenset(A), C=frozenset(C), round=r,
        cases={**mem.cases, r: case},
        history={**mem.history, r: (frozenset(A), frozenset(C))},
        uncovered_M=unmet[0] if unmet else None,
    )
    if check:
        _check_after(state, move, new)
    return move, new


def _close(state, mem, mine, theirs, r):
    """Closing move: add one point of the last opponent set if C misses an opponent set."""
    cover = set(mem.C)
    Ms = set(theirs[r])
    missed = [j for j in range(1, r) if not cover & set(theirs[j])]
    if missed:
        cover.add(min(Ms & set(theirs[missed[0]])))
    elif not cover & Ms:
        residues = set()
        for i, s in mine.items():
            if i > mem.first_round:
                residues |= set(s) - cover
        spare = sorted(Ms - residues)
        cover.add(spare[0] if spare else min(Ms))
    move = _make(state, cover)
    witnesses = tuple(s for i, s in sorted(mine.items()) if i > mem.first_round) + (move,)
    cert = CoverCertificate(tuple(sorted(cover)), witnesses)
    new = replace(mem, round=r, cases={**mem.cases, r: FINAL}, certificate=cert)
    return move, new


def _check_after(state: GameState, move: KSet, mem: MinimizerMemory) -> None:
    report = check_abcd(apply_move(state, move), mem)
    if not report.passed:
        raise ConsistencyError(f"minimizer invariant broken at round {mem.round}: {report.failures}")


@dataclass
class AbcdReport:
    round: int
    results: dict[str, bool]
    witnesses: dict[str, list] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.results.values())

    @property
    def failures(self) -> dict[str, list]:
        return {k: self.witnesses.get(k, []) for k, ok in self.results.items() if not ok}


def check_abcd(state: GameState, mem: MinimizerMemory) -> AbcdReport:
    """Evaluate properties a)-d) for the current round against the game history.

    Defined for the rounds that carry ``A`` and ``C`` (2 up to the round before
    the closing move); other rounds pass vacuously.
    """
    i = mem.round
    names = ("a", "b", "c", "d")
    if i < 2 or i >= mem.final_round:
        return AbcdReport(i, {x: True for x in names})
    mine, theirs = _history(state, mem)
    if i not in mine or len(theirs) <= i:
        return AbcdReport(i, {x: False for x in names}, {x: ["history shorter than round"] for x in names})
    A, C = set(mem.A), set(mem.C)
    anchor = set(mem.anchor)
    first = mem.first_round
    results, wit = {}, {}

    # a)
    bad = []
    if not A <= anchor:
        bad.append(("A not inside anchor", sorted(A - anchor)))
    prev = mem.history.get(i - 1)
    if i >= 3 and prev is not None:
        prevC = set(prev[1])
        if not prevC <= C:
            bad.append(("C shrank", sorted(prevC - C)))
        if len(C) > len(prevC) + 1:
            bad.append(("C grew by more than one", len(C) - len(prevC)))
    results["a"], wit["a"] = not bad, bad

    # b)
    later = [j for j in sorted(mine) if first < j <= i]
    parts = [("anchor", anchor - (A | C))] + [(j, set(mine[j]) - C) for j in later]
    bad = [name for name, part in parts if not part]
    seen: dict[int, object] = {}
    for name, part in parts:
        for x in part:
            if x in seen:
                bad.append((seen[x], name, x))
            seen[x] = name
    results["b"], wit["b"] = not bad, bad

    own = [set(mine[j]) for j in sorted(mine) if j <= i]
    opp = [set(theirs[j]) for j in range(1, i + 1)]

    # c)
    AC = A | C
    bad = [sorted(s) for s in own + opp if not AC & s]
    results["c"], wit["c"] = not bad, bad

    # d)
    bad = [sorted(s) for s in own if not C & s]
    missed = [sorted(s) for s in opp if not C & s]
    if len(missed) > 1:
        bad.extend(missed)
    results["d"], wit["d"] = not bad, bad
    return AbcdReport(i, results, wit)


def case_counts(mem: MinimizerMemory, i: int) -> tuple[int, int, int]:
    """``(alpha, beta, gamma)`` over rounds ``3..i``.

    alpha counts rounds where ``C`` did not grow, beta rounds where it grew in
    Case I, gamma the Case II rounds.
    """
    labels = [mem.cases.get(j) for j in range(3, i + 1)]
    alpha = sum(c in (I_MET, I_NEW_A) for c in labels)
    beta = sum(c == I_FROM_A for c in labels)
    gamma = sum(c == II for c in labels)
    return alpha, beta, gamma


def finalize_cover(state: GameState, mem: MinimizerMemory) -> CoverCertificate:
    """The certificate produced by the closing move (k+2 own moves in total)."""
    if mem.certificate is None:
        made = max(0, mem.round - mem.first_round + 1)
        raise StateError(
            f"certificate needs {state.params.k + 2} minimizer moves, only {made} made"
        )
    return mem.certificate


class MinimizerStrategy(Strategy):
    name = "minimizer"
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
        mv, self.memory = minimizer_move(state, self.memory, check=self.check)
        return mv

    def report(self):
        mem = self.memory
        return {
            "certificate": mem.certificate,
            "cases": dict(mem.cases),
            "cover_sizes": {i: len(c) for i, (_, c) in mem.history.items()},
        }
