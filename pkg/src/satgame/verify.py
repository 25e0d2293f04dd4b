"""Verification suites behind ``satgame verify``.

Each suite returns :class:`CheckRow` records (suite, instance, measured,
bound, pass).  Rows carry no timings so that repeated runs print identical
output.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .engine import (
    GameKind,
    GreedyStar,
    Mode,
    RandomLegal,
    Role,
    RoleAssignment,
    Strategy,
    run_game,
)
from .errors import SatGameError
from .maximizer import (
    MaximizerStrategy,
    certify_tau_lower,
    check_props_123,
    rounds_for,
)
from .minimizer import (
    MinimizerStrategy,
    check_abcd,
    claim5_bound,
    cover_bound,
    min_universe,
)
from .setfam import (
    Params,
    SetFamily,
    check_disjointness_certificate,
    check_size_bounds,
    complete_to_maximal,
    covering_number,
    covering_number_exhaustive,
    degree_chain_violations,
    gen_ksubsets,
    legal_moves,
    min_cover_of_masks,
)
from .solver import bounds_sanity, solve
from .sperner import (
    max_comparable_capture,
    neighborhood_NF,
    slow_opening,
    solve_sperner,
)


@dataclass(frozen=True)
class CheckRow:
    suite: str
    instance: str
    measured: object
    bound: object
    passed: bool

    def as_list(self) -> list:
        return [self.suite, self.instance, self.measured, self.bound, self.passed]


def all_passed(rows: Iterable[CheckRow]) -> bool:
    return all(r.passed for r in rows)


def _roles(minimizer_first: bool) -> RoleAssignment:
    return RoleAssignment(Role.MIN if minimizer_first else Role.MAX)


# --------------------------------------------------------------------------
# exact k = 2 values


def suite_solver(ns: Sequence[int] = (4, 5, 6, 7)) -> list[CheckRow]:
    rows = []
    for n in ns:
        p = Params(n, 2)
        fast = solve(p, GameKind.SATURATION, RoleAssignment(Role.MIN))
        slow = solve(p, GameKind.SATURATION, RoleAssignment(Role.MAX))
        rows.append(CheckRow("solver", f"n={n} k=2 fast first", fast.value, 3, fast.value == 3))
        rows.append(CheckRow("solver", f"n={n} k=2 slow first", slow.value, n - 1, slow.value == n - 1))
        for name, res in (("fast", fast), ("slow", slow)):
            rep = bounds_sanity(p, res)
            rows.append(
                CheckRow(
                    "solver",
                    f"n={n} k=2 {name} first: sat <= value <= EKR",
                    rep.value,
                    f"[{rep.sat_lower}, {rep.ekr_upper}]",
                    rep.passed,
                )
            )
    return rows


# --------------------------------------------------------------------------
# minimizer certificates


def minimizer_game(k: int, minimizer_first: bool, opponent: Strategy) -> tuple[int, list[str]]:
    """Play the minimizer against ``opponent`` at ``n = 2k(k+2)`` and return
    ``(certificate size, problems)``; problems is empty on success."""
    p = Params(min_universe(k), k)
    mini = MinimizerStrategy(check=False)
    problems: list[str] = []

    def watch(seat, state):
        if state.owner(state.turn_index - 1) is not Role.MIN:
            return
        mem = mini.memory
        rep = check_abcd(state, mem)
        if not rep.passed:
            problems.append(f"round {mem.round}: a)-d) failed {sorted(rep.failures)}")
        if 2 <= mem.round <= k and len(mem.C) > claim5_bound(mem.round, k):
            problems.append(f"round {mem.round}: |C|={len(mem.C)} > {claim5_bound(mem.round, k)}")

    a, b = (mini, opponent) if minimizer_first else (opponent, mini)
    try:
        t = run_game(p, GameKind.TAU, _roles(minimizer_first), a, b, Mode.CERTIFY, on_move=watch)
        cert = mini.memory.certificate
    except SatGameError as exc:
        return -1, problems + [f"{type(exc).__name__}: {exc}"]
    if cert is None:
        return -1, problems + ["game ended before the closing move"]
    if not check_disjointness_certificate(cert, p):
        problems.append("certificate is not valid")
    if t.certificate != cert:
        problems.append("transcript certificate differs")
    return cert.size, problems


def _opponents(k: int, seeds: int, with_maximizer: bool) -> list[tuple[str, Callable[[], list[Strategy]]]]:
    out = []
    if with_maximizer:
        out.append(("maximizer", lambda: [MaximizerStrategy(check=False)]))
    out.append((f"random x{seeds}", lambda: [RandomLegal(s) for s in range(seeds)]))
    out.append(("greedy-star", lambda: [GreedyStar()]))
    return out


def suite_minimizer(ks: Sequence[int] = range(3, 10), seeds: int = 100) -> list[CheckRow]:
    rows = []
    for k in ks:
        for first in (True, False):
            bound = cover_bound(k, first)
            order = "min first" if first else "min second"
            # the Maximizer strategy is defined only for k >= 4
            for label, make in _opponents(k, seeds, with_maximizer=k >= 4):
                worst, problems = 0, []
                for opp in make():
                    size, probs = minimizer_game(k, first, opp)
                    worst = max(worst, size)
                    if size > bound:
                        probs.append(f"|cover|={size} > {bound}")
                    problems.extend(probs)
                inst = f"k={k} n={min_universe(k)} {order} vs {label}"
                if problems:
                    inst += f" [{problems[0]}]"
                rows.append(CheckRow("minimizer", inst, worst, bound, not problems))
    return rows


# --------------------------------------------------------------------------
# Maximizer lower bound


def maximizer_universe(k: int) -> int:
    """Smallest ``n`` with ``n >= k^(3/2)``."""
    n = math.isqrt(k**3)
    return n if n * n >= k**3 else n + 1


def maximizer_game(k: int, n: int, maximizer_first: bool, opponent: Strategy) -> tuple[int, list[str]]:
    """Play the Maximizer's ``l + 1`` rounds and return ``(exact tau of the
    Maximizer's sets, problems)``."""
    p = Params(n, k)
    mx = MaximizerStrategy(check=False)
    problems: list[str] = []

    def watch(seat, state):
        if state.owner(state.turn_index - 1) is not Role.MAX:
            return
        rep = check_props_123(mx.memory, mx.memory.round)
        if not rep.passed:
            bad = sorted(x for x, ok in rep.results.items() if not ok)
            problems.append(f"round {rep.round}: properties {bad} failed")

    a, b = (mx, opponent) if maximizer_first else (opponent, mx)
    try:
        run_game(p, GameKind.TAU, _roles(not maximizer_first), a, b, Mode.CERTIFY, on_move=watch)
        mem = mx.memory
        lower = certify_tau_lower(mem, exact=False)
    except SatGameError as exc:
        return -1, problems + [f"{type(exc).__name__}: {exc}"]
    l = mem.schedule.l
    if len(mem.schedule.U) != l * (l + 1) // 2:
        problems.append(f"|U|={len(mem.schedule.U)} != {l * (l + 1) // 2}")
    deg = max(mem.degree_table.values())
    if deg > 2:
        problems.append(f"max degree {deg} > 2")
    tau = min_cover_of_masks([s.mask for s in mem.own])[0]
    if tau < lower:
        problems.append(f"tau={tau} < {lower}")
    return tau, problems


def suite_maximizer(ks: Sequence[int] = (4, 9, 16, 25), seeds: int = 100) -> list[CheckRow]:
    rows = []
    for k in ks:
        bound = math.ceil(rounds_for(k) / 2)
        for first in (True, False):
            order = "max first" if first else "max second"
            n_small = maximizer_universe(k)
            # the minimizer strategy itself needs n >= 2k(k+2)
            n_min = max(min_universe(k), n_small)
            cases = [("minimizer", n_min, [MinimizerStrategy(check=False)])]
            cases.append((f"random x{seeds}", n_small, [RandomLegal(s) for s in range(seeds)]))
            for label, n, opps in cases:
                worst, problems = None, []
                for opp in opps:
                    tau, probs = maximizer_game(k, n, first, opp)
                    worst = tau if worst is None else min(worst, tau)
                    problems.extend(probs)
                inst = f"k={k} n={n} {order} vs {label}"
                if problems:
                    inst += f" [{problems[0]}]"
                rows.append(CheckRow("maximizer", inst, worst, bound, not problems))
    return rows


# --------------------------------------------------------------------------
# size bounds and degree chain on maximal families


def intersecting_graph_families(n: int) -> list[SetFamily]:
    """Every non-empty intersecting family of 2-subsets of [n]: the non-empty
    subsets of stars, and triangles."""
    p = Params(n, 2)
    seen: set[frozenset] = set()
    out = []
    for c in range(1, n + 1):
        star = [p.kset((min(c, x), max(c, x))) for x in range(1, n + 1) if x != c]
        for r in range(1, len(star) + 1):
            for sub in itertools.combinations(star, r):
                key = frozenset(sub)
                if key not in seen:
                    seen.add(key)
                    out.append(SetFamily(p, tuple(sorted(sub))))
    for t in itertools.combinations(range(1, n + 1), 3):
        tri = tuple(p.kset(e) for e in itertools.combinations(t, 2))
        out.append(SetFamily(p, tri))
    return out


def random_intersecting(p: Params, rng: random.Random, max_len: int) -> SetFamily:
    fam = SetFamily(p)
    for _ in range(rng.randint(1, max_len)):
        options = list(legal_moves(fam))
        if not options:
            break
        fam = fam.add(rng.choice(options))
    return fam


def maximal_family_sweep(
    ns2: Sequence[int] = range(2, 11), ns3: Sequence[int] = range(6, 13), starts3: int = 200, seed: int = 0
) -> Iterable[tuple[str, SetFamily]]:
    for n in ns2:
        for i, start in enumerate(intersecting_graph_families(n)):
            yield f"k=2 n={n} start {i}", complete_to_maximal(start)
    rng = random.Random(seed)
    for n in ns3:
        p = Params(n, 3)
        for i in range(starts3):
            yield f"k=3 n={n} start {i}", complete_to_maximal(random_intersecting(p, rng, 4))


def suite_bounds(**sweep) -> list[CheckRow]:
    """Size bounds and degree chain over the maximal-family sweep, one row
    per (k, n) and property."""
    size_fail: dict[str, list] = {}
    chain_fail: dict[str, list] = {}
    counts: dict[str, int] = {}
    for name, fam in maximal_family_sweep(**sweep):
        key = name.rsplit(" start", 1)[0]
        counts[key] = counts.get(key, 0) + 1
        rep = check_size_bounds(fam)
        if not rep.passed:
            size_fail.setdefault(key, []).append((name, rep.lower, rep.size, rep.upper))
        bad = degree_chain_violations(fam, rep.tau)
        if bad:
            chain_fail.setdefault(key, []).append((name, bad[0]))
    rows = []
    for key, total in counts.items():
        sf, cf = size_fail.get(key, []), chain_fail.get(key, [])
        rows.append(CheckRow("bounds", f"{key}: C(n-t,k-t) <= |F| <= k^t C(n-t,k-t)", f"{total - len(sf)}/{total}", f"{total}/{total}", not sf))
        rows.append(CheckRow("degrees", f"{key}: d_j <= k d_(j+1)", f"{total - len(cf)}/{total}", f"{total}/{total}", not cf))
    return rows


# --------------------------------------------------------------------------
# oracle agreement


def random_oracle_family(rng: random.Random) -> SetFamily:
    k = rng.randint(2, 4)
    n = rng.randint(k + 1, 10)
    p = Params(n, k)
    fam = random_intersecting(p, rng, rng.randint(1, 8))
    if rng.random() < 0.3:
        fam = complete_to_maximal(fam)
    return fam


def suite_oracle(count: int = 1000, seed: int = 0) -> list[CheckRow]:
    rng = random.Random(seed)
    tau_bad = legal_bad = 0
    for _ in range(count):
        fam = random_oracle_family(rng)
        if covering_number(fam)[0] != covering_number_exhaustive(fam)[0]:
            tau_bad += 1
        fast = list(legal_moves(fam))
        slow = [s for s in gen_ksubsets(fam.params) if s not in fam and all(s.mask & m for m in fam.masks)]
        if fast != slow:
            legal_bad += 1
    return [
        CheckRow("oracle", f"{count} families n<=10: covering number vs exhaustive", tau_bad, 0, tau_bad == 0),
        CheckRow("oracle", f"{count} families n<=10: legal moves vs board filter", legal_bad, 0, legal_bad == 0),
    ]


# --------------------------------------------------------------------------
# Sperner game


def suite_sperner() -> list[CheckRow]:
    rows = []
    for n in range(1, 5):
        v = solve_sperner(n, "fast")
        rows.append(CheckRow("sperner", f"n={n} fast first", v, 1, v == 1))
    for n in range(2, 5):
        v = solve_sperner(n, "slow")
        rows.append(CheckRow("sperner", f"n={n} slow first >= n/2", v, n / 2, v >= n / 2))
    for n in range(2, 11):
        F = slow_opening(n)
        size = len(neighborhood_NF(F, n))
        want = (n // 2) * ((n + 1) // 2)
        rows.append(CheckRow("sperner", f"n={n} |N_F| for |F|={n // 2}", size, want, size == want))
        cap = max_comparable_capture(F, n)
        rows.append(CheckRow("sperner", f"n={n} max capture", cap, (n + 1) // 2, cap == (n + 1) // 2))
    return rows


SUITES: dict[str, Callable[..., list[CheckRow]]] = {
    "solver": suite_solver,
    "minimizer": suite_minimizer,
    "maximizer": suite_maximizer,
    "bounds": suite_bounds,
    "oracle": suite_oracle,
    "sperner": suite_sperner,
}
