"""Referee and runner for the saturation game and the tau-game.

Seat ``A`` always makes the first move; :class:`RoleAssignment` says whether
that first mover is the score-minimizing side (Fast / minimizer) or the
score-maximizing side (Slow / Maximizer).
"""

from __future__ import annotations

import enum
import json
import random
from dataclasses import dataclass, field
from typing import Any, Callable

from .errors import ForfeitError, ParameterError, ResourceLimitError, RuleViolation
from .setfam import (
    CoverCertificate,
    KSet,
    Params,
    SetFamily,
    covering_number,
    first_legal_move,
    legal_moves,
)

DEFAULT_FULL_PLAY_CAP = 10**6
# boards up to this size are enumerated so the random baseline is uniform
UNIFORM_RANDOM_LIMIT = 5000


class GameKind(enum.Enum):
    SATURATION = "saturation"
    TAU = "tau"


class Role(enum.Enum):
    MIN = "min"
    MAX = "max"

    @property
    def other(self) -> "Role":
        return Role.MAX if self is Role.MIN else Role.MIN


class Mode(enum.Enum):
    FULL = "full"
    CERTIFY = "certify"


@dataclass(frozen=True)
class RoleAssignment:
    first_mover: Role

    def role_at(self, turn_index: int) -> Role:
        return self.first_mover if turn_index % 2 == 0 else self.first_mover.other

    @classmethod
    def parse(cls, text: str) -> "RoleAssignment":
        key = text.strip().lower()
        if key in ("min", "minimizer", "fast", "f", "m"):
            return cls(Role.MIN)
        if key in ("max", "maximizer", "slow", "s"):
            return cls(Role.MAX)
        raise ParameterError(f"unknown first mover {text!r}")


@dataclass(frozen=True)
class GameState:
    params: Params
    claimed: SetFamily
    kind: GameKind
    roles: RoleAssignment

    @property
    def turn_index(self) -> int:
        return len(self.claimed)

    @property
    def to_move(self) -> Role:
        return self.roles.role_at(self.turn_index)

    def owner(self, index: int) -> Role:
        """Role of the player who claimed ``claimed.members[index]``."""
        return self.roles.role_at(index)

    def moves_of(self, role: Role) -> list[KSet]:
        return [s for i, s in enumerate(self.claimed) if self.owner(i) is role]

    def is_terminal(self) -> bool:
        return first_legal_move(self.claimed) is None


def new_game(p: Params, kind: GameKind, roles: RoleAssignment) -> GameState:
    if not isinstance(p, Params):
        raise ParameterError("new_game expects Params")
    return GameState(p, SetFamily(p), GameKind(kind), roles)


def apply_move(state: GameState, move: KSet) -> GameState:
    p = state.params
    if not isinstance(move, KSet) or move.n != p.n or len(move) != p.k:
        raise RuleViolation(f"{move!s} is not a {p.k}-subset of [{p.n}]", move=move)
    if move in state.claimed:
        raise RuleViolation(f"{move} has already been claimed", move=move, witness=move)
    bad = state.claimed.first_disjoint(move)
    if bad is not None:
        raise RuleViolation(f"{move} is disjoint from claimed set {bad}", move=move, witness=bad)
    return GameState(p, state.claimed.add(move), state.kind, state.roles)


def score_family(fam: SetFamily, kind: GameKind) -> int:
    if kind is GameKind.SATURATION:
        return len(fam)
    if len(fam) == 0:
        return 0
    return covering_number(fam)[0]


# --------------------------------------------------------------------------
# strategies


class Strategy:
    """Stateful policy for one seat.

    ``move`` returns a legal k-set, or None to hand off.  A strategy whose
    ``done`` flag is set has no strategic phase left; the runner then plays
    lexicographic-first moves for it.  Baseline strategies are never strategic,
    so they count as done from the start.
    """

    name = "strategy"
    strategic = False

    def start(self, params: Params, role: Role, moves_first: bool) -> None:
        self.params = params
        self.role = role
        self.moves_first = moves_first

    @property
    def done(self) -> bool:
        return not self.strategic

    def move(self, state: GameState) -> KSet | None:
        raise NotImplementedError

    def report(self) -> dict[str, Any]:
        return {}


class LexFirst(Strategy):
    name = "lex-first"

    def move(self, state):
        return first_legal_move(state.claimed)


class GreedyStar(Strategy):
    """Lexicographically smallest legal set through a point fixed at the first move."""

    name = "greedy-star"

    def start(self, params, role, moves_first):
        super().start(params, role, moves_first)
        self.center = None

    def move(self, state):
        if self.center is not None:
            s = first_legal_move(state.claimed, containing=(self.center,))
            if s is not None:
                return s
        s = first_legal_move(state.claimed)
        if s is not None and self.center is None:
            self.center = s.elements[0]
        return s


class RandomLegal(Strategy):
    """Seeded random legal moves.

    Small boards are enumerated and sampled uniformly; on larger boards the
    move is the first legal set under a random relabelling of the universe.
    """

    name = "random"

    def __init__(self, seed: int = 0):
        self.seed = seed

    def start(self, params, role, moves_first):
        super().start(params, role, moves_first)
        self.rng = random.Random(self.seed)

    def move(self, state):
        p = state.params
        if p.board_size <= UNIFORM_RANDOM_LIMIT:
            options = list(legal_moves(state.claimed))
            return self.rng.choice(options) if options else None
        order = list(range(1, p.n + 1))
        self.rng.shuffle(order)
        return first_legal_move(state.claimed, order=order)


class Evasive(Strategy):
    """Adversarial baseline: prefers points lying in few claimed sets.

    Each move is the first legal set under an ordering of the universe by
    current point degree (ties broken by a seeded shuffle), so it meets the
    claimed sets through their private points and dodges shared ones.
    """

    name = "evasive"

    def __init__(self, seed: int = 0):
        self.seed = seed

    def start(self, params, role, moves_first):
        super().start(params, role, moves_first)
        self.rng = random.Random(self.seed)

    def move(self, state):
        p = state.params
        degree = [0] * (p.n + 1)
        for s in state.claimed:
            for x in s:
                degree[x] += 1
        order = list(range(1, p.n + 1))
        self.rng.shuffle(order)
        order.sort(key=lambda x: (degree[x] == 0, degree[x]))
        return first_legal_move(state.claimed, order=order)


class Scripted(Strategy):
    """Replays a fixed list of moves, then hands off."""

    name = "scripted"

    def __init__(self, moves):
        self.script = [tuple(m) for m in moves]

    def start(self, params, role, moves_first):
        super().start(params, role, moves_first)
        self.pos = 0

    def move(self, state):
        if self.pos >= len(self.script):
            return None
        m = self.script[self.pos]
        self.pos += 1
        return KSet(tuple(sorted(m)), state.params.n)


def baseline_strategies(seed: int = 0) -> dict[str, Strategy]:
    return {
        "random": RandomLegal(seed),
        "greedy-star": GreedyStar(),
        "lex-first": LexFirst(),
        "evasive": Evasive(seed),
    }


# --------------------------------------------------------------------------
# transcripts


@dataclass
class Transcript:
    params: Params
    kind: GameKind
    roles: RoleAssignment
    moves: list[tuple[str, KSet]]
    score: int
    final_family: SetFamily
    mode: Mode
    seed: int | None = None
    certificate: CoverCertificate | None = None
    degree_table: dict[int, int] | None = None
    fallback_moves: int = 0
    game: str = "intersecting"
    extra: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {
            "game": self.game,
            "kind": self.kind.value,
            "n": self.params.n,
            "k": self.params.k,
            "first": "A",
            "first_role": self.roles.first_mover.value,
            "moves": [{"player": seat, "set": list(s.elements)} for seat, s in self.moves],
            "score": self.score,
            "certificate": None if self.certificate is None else self.certificate.to_dict(),
            "degree_table": None
            if self.degree_table is None
            else {str(x): d for x, d in sorted(self.degree_table.items())},
            "fallback_moves": self.fallback_moves,
            "mode": self.mode.value,
            "seed": self.seed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False) + "\n"

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "Transcript":
        p = Params(d["n"], d["k"])
        first_role = Role(d.get("first_role", "min"))
        if d.get("first", "A") == "B":
            first_role = first_role.other
        moves = [(m["player"], p.kset(m["set"])) for m in d["moves"]]
        cert = d.get("certificate")
        table = d.get("degree_table")
        return cls(
            params=p,
            kind=GameKind(d["kind"]),
            roles=RoleAssignment(first_role),
            moves=moves,
            score=d["score"],
            final_family=SetFamily(p, tuple(s for _, s in moves)),
            mode=Mode(d["mode"]),
            seed=d.get("seed"),
            certificate=None if cert is None else CoverCertificate.from_dict(cert, p),
            degree_table=None if table is None else {int(x): v for x, v in table.items()},
            fallback_moves=d.get("fallback_moves", 0),
            game=d.get("game", "intersecting"),
        )

    @classmethod
    def from_json(cls, text: str) -> "Transcript":
        return cls.from_dict(json.loads(text))


def replay(t: Transcript) -> GameState:
    """Re-apply a transcript's moves through the referee."""
    state = new_game(t.params, t.kind, t.roles)
    for _, s in t.moves:
        state = apply_move(state, s)
    return state


# --------------------------------------------------------------------------
# runner


def run_game(
    p: Params,
    kind: GameKind,
    roles: RoleAssignment,
    strat_a: Strategy,
    strat_b: Strategy,
    mode: Mode = Mode.FULL,
    *,
    seed: int | None = None,
    cap: int = DEFAULT_FULL_PLAY_CAP,
    on_move: Callable[[str, GameState], None] | None = None,
) -> Transcript:
    """Play one game, seat A first.

    FULL plays until the claimed family is maximal.  CERTIFY stops as soon as
    every strategic seat has handed off and reports the certificates.
    ``on_move(seat, state)`` is called after every applied move.
    """
    mode = Mode(mode)
    if mode is Mode.FULL and p.board_size > cap:
        raise ResourceLimitError(
            f"full play needs C({p.n},{p.k}) = {p.board_size} <= cap {cap}; use certify mode"
        )
    state = new_game(p, kind, roles)
    seats = {"A": strat_a, "B": strat_b}
    strat_a.start(p, roles.first_mover, True)
    strat_b.start(p, roles.first_mover.other, False)
    handed_off = {"A": False, "B": False}
    moves: list[tuple[str, KSet]] = []
    fallback = 0

    while first_legal_move(state.claimed) is not None:
        if mode is Mode.CERTIFY and all(s.done or handed_off[k] for k, s in seats.items()):
            break
        seat = "A" if state.turn_index % 2 == 0 else "B"
        strat = seats[seat]
        mv = None
        if not handed_off[seat]:
            mv = strat.move(state)
            if mv is None:
                handed_off[seat] = True
        if mv is None:
            mv = first_legal_move(state.claimed)
            fallback += 1
        try:
            state = apply_move(state, mv)
        except RuleViolation as exc:
            raise ForfeitError(
                f"seat {seat} ({strat.name}) played an illegal move: {exc}",
                seat=seat,
                strategy=strat.name,
            ) from exc
        moves.append((seat, mv))
        if on_move is not None:
            on_move(seat, state)

    cert = None
    table = None
    for s in seats.values():
        r = s.report()
        cert = r.get("certificate", cert)
        table = r.get("degree_table", table)
    return Transcript(
        params=p,
        kind=kind,
        roles=roles,
        moves=moves,
        score=score_family(state.claimed, kind),
        final_family=state.claimed,
        mode=mode,
        seed=seed,
        certificate=cert,
        degree_table=table,
        fallback_moves=fallback,
    )
