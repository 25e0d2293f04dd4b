import itertools

import pytest
from hypothesis import given, settings, strategies as st

from satgame.engine import GameKind, Role, RoleAssignment, apply_move, new_game, run_game, score_family
from satgame.errors import ParameterError, ResourceLimitError, StateError
from satgame.setfam import Params, gen_ksubsets, legal_moves, SetFamily
from satgame.solver import SolverStrategy, bounds_sanity, smallest_maximal_family, solve

FAST = RoleAssignment(Role.MIN)
SLOW = RoleAssignment(Role.MAX)


@pytest.mark.parametrize("n", [4, 5, 6, 7])
def test_k2_closed_forms(n):
    assert solve(Params(n, 2), GameKind.SATURATION, FAST).value == 3
    assert solve(Params(n, 2), GameKind.SATURATION, SLOW).value == n - 1


def test_n3_is_forced():
    # the whole board is one triangle, so both orders score 3
    assert solve(Params(3, 2), GameKind.SATURATION, SLOW).value == 3


def test_tau_maximizer_first_n5():
    assert solve(Params(5, 2), GameKind.TAU, SLOW).value == 2


@pytest.mark.parametrize("n,k", [(4, 2), (5, 2), (6, 2), (7, 2), (5, 3), (6, 3)])
@pytest.mark.parametrize("roles", [FAST, SLOW])
def test_tau_values_in_range(n, k, roles):
    v = solve(Params(n, k), GameKind.TAU, roles).value
    assert 1 <= v <= k


def test_cap():
    with pytest.raises(ResourceLimitError):
        solve(Params(8, 3), GameKind.SATURATION, FAST)
    assert solve(Params(8, 2), GameKind.SATURATION, FAST, cap=28).value == 3


def test_principal_variation_is_lexicographic():
    r = solve(Params(5, 2), GameKind.SATURATION, FAST)
    assert [s.elements for s in r.principal_variation] == [(1, 2), (1, 3), (2, 3)]
    assert r.positions_expanded > 0


@pytest.mark.parametrize("n,k", [(4, 2), (5, 2), (6, 2), (6, 3)])
@pytest.mark.parametrize("kind", list(GameKind))
@pytest.mark.parametrize("roles", [FAST, SLOW])
def test_principal_variation_replays_to_value(n, k, kind, roles):
    p = Params(n, k)
    r = solve(p, kind, roles)
    state = new_game(p, kind, roles)
    for s in r.principal_variation:
        state = apply_move(state, s)
    assert list(legal_moves(state.claimed)) == []
    assert score_family(state.claimed, kind) == r.value


@pytest.mark.parametrize("kind", list(GameKind))
def test_solver_strategies_reproduce_value(kind):
    p = Params(6, 2)
    for roles in (FAST, SLOW):
        t = run_game(p, kind, roles, SolverStrategy(kind), SolverStrategy(kind))
        assert t.score == solve(p, kind, roles).value


@given(st.data())
@settings(max_examples=40)
def test_value_independent_of_history_order(data):
    n = data.draw(st.integers(4, 6))
    k = data.draw(st.integers(2, 3 if n == 6 else 2))
    kind = data.draw(st.sampled_from(list(GameKind)))
    p = Params(n, k)
    fam = SetFamily(p)
    for _ in range(data.draw(st.integers(1, 4))):
        options = list(legal_moves(fam))
        if not options:
            break
        fam = fam.add(data.draw(st.sampled_from(options)))
    perm = data.draw(st.permutations(fam.members))
    a = solve(p, kind, FAST, start=fam.members).value
    assert solve(p, kind, FAST, start=perm).value == a


def test_bad_start():
    p = Params(5, 2)
    with pytest.raises(StateError):
        solve(p, GameKind.SATURATION, FAST, start=[p.kset([1, 2]), p.kset([3, 4])])


class TestBoundsSanity:
    def test_ekr_tight(self):
        p = Params(5, 2)
        rep = bounds_sanity(p, solve(p, GameKind.SATURATION, SLOW))
        assert rep.passed and (rep.value, rep.ekr_upper) == (4, 4)

    def test_fast_n6(self):
        p = Params(6, 2)
        rep = bounds_sanity(p, solve(p, GameKind.SATURATION, FAST))
        assert rep.passed and (rep.value, rep.ekr_upper) == (3, 5)

    def test_n4_smallest_maximal(self):
        p = Params(4, 2)
        assert len(smallest_maximal_family(p)) == 3
        assert bounds_sanity(p, solve(p, GameKind.SATURATION, FAST)).sat_lower == 3

    def test_smallest_maximal_matches_enumeration(self):
        p = Params(5, 2)
        board = list(gen_ksubsets(p))
        sizes = [
            r
            for r in range(1, len(board) + 1)
            for fam in itertools.combinations(board, r)
            if SetFamily(p, fam).is_intersecting() and not list(legal_moves(SetFamily(p, fam)))
        ]
        assert len(smallest_maximal_family(p)) == min(sizes) == 3

    def test_half_universe(self):
        # for n = 2k a maximal family takes one set of every complementary pair
        assert len(smallest_maximal_family(Params(6, 3))) == 10

    def test_rejects(self):
        p = Params(5, 3)
        with pytest.raises(ParameterError):
            bounds_sanity(p, solve(p, GameKind.SATURATION, FAST))
        q = Params(5, 2)
        with pytest.raises(ParameterError):
            bounds_sanity(q, solve(q, GameKind.TAU, FAST))
