import pytest
from hypothesis import given, settings, strategies as st

from satgame.engine import (
    Evasive,
    GameKind,
    GreedyStar,
    LexFirst,
    Mode,
    RandomLegal,
    Role,
    RoleAssignment,
    Scripted,
    Transcript,
    apply_move,
    baseline_strategies,
    new_game,
    replay,
    run_game,
    score_family,
)
from satgame.errors import ForfeitError, ParameterError, ResourceLimitError, RuleViolation
from satgame.minimizer import MinimizerStrategy
from satgame.setfam import Params, SetFamily, check_disjointness_certificate, is_maximal_intersecting
from satgame.solver import SolverStrategy

MIN_FIRST = RoleAssignment(Role.MIN)
MAX_FIRST = RoleAssignment(Role.MAX)


def test_new_game_is_empty():
    s = new_game(Params(5, 2), GameKind.SATURATION, MIN_FIRST)
    assert len(s.claimed) == 0 and s.turn_index == 0 and s.to_move is Role.MIN
    t = new_game(Params(30, 3), GameKind.TAU, MIN_FIRST)
    assert t.turn_index == 0


def test_new_game_bad_params():
    with pytest.raises(ParameterError):
        new_game(Params(2, 3), GameKind.TAU, MIN_FIRST)


class TestApplyMove:
    def test_appends(self, p42):
        s = new_game(p42, GameKind.SATURATION, MIN_FIRST)
        s2 = apply_move(s, p42.kset([1, 2]))
        assert s2.claimed.as_lists() == [[1, 2]]
        assert len(s.claimed) == 0
        assert s2.to_move is Role.MAX

    def test_disjoint_names_member(self, p42):
        s = apply_move(new_game(p42, GameKind.SATURATION, MIN_FIRST), p42.kset([1, 2]))
        with pytest.raises(RuleViolation) as exc:
            apply_move(s, p42.kset([3, 4]))
        assert exc.value.witness == p42.kset([1, 2])

    def test_duplicate(self, p42):
        s = apply_move(new_game(p42, GameKind.SATURATION, MIN_FIRST), p42.kset([1, 2]))
        with pytest.raises(RuleViolation):
            apply_move(s, p42.kset([1, 2]))

    def test_wrong_size_or_universe(self, p42):
        s = new_game(p42, GameKind.SATURATION, MIN_FIRST)
        with pytest.raises(RuleViolation):
            apply_move(s, Params(5, 2).kset([1, 2]))


class TestRoles:
    @pytest.mark.parametrize("text,role", [("fast", Role.MIN), ("Min", Role.MIN), ("slow", Role.MAX), ("M", Role.MIN), ("maximizer", Role.MAX)])
    def test_parse(self, text, role):
        assert RoleAssignment.parse(text).first_mover is role

    def test_parse_rejects(self):
        with pytest.raises(ParameterError):
            RoleAssignment.parse("both")

    def test_alternation(self):
        assert [MAX_FIRST.role_at(i) for i in range(3)] == [Role.MAX, Role.MIN, Role.MAX]


class TestBaselines:
    def test_random_is_seeded(self, p42):
        def first(seed):
            s = RandomLegal(seed)
            s.start(p42, Role.MIN, True)
            return s.move(new_game(p42, GameKind.SATURATION, MIN_FIRST))

        assert first(7) == first(7)

    def test_greedy_star_opens_lexicographically(self):
        p = Params(7, 3)
        g = GreedyStar()
        g.start(p, Role.MIN, True)
        assert g.move(new_game(p, GameKind.TAU, MIN_FIRST)).elements == (1, 2, 3)

    def test_lex_first_reply(self, p42):
        s = apply_move(new_game(p42, GameKind.SATURATION, MIN_FIRST), p42.kset([1, 2]))
        lf = LexFirst()
        lf.start(p42, Role.MAX, False)
        assert lf.move(s).elements == (1, 3)

    @given(st.integers(0, 10**6), st.integers(4, 7), st.integers(2, 3))
    @settings(max_examples=30)
    def test_baselines_always_legal(self, seed, n, k):
        p = Params(n, k)
        for name, strat in baseline_strategies(seed).items():
            other = RandomLegal(seed + 1)
            t = run_game(p, GameKind.SATURATION, MIN_FIRST, strat, other)
            assert is_maximal_intersecting(t.final_family), name

    def test_random_on_large_board_uses_shuffled_order(self):
        p = Params(40, 4)
        r = RandomLegal(3)
        r.start(p, Role.MIN, True)
        assert len(r.move(new_game(p, GameKind.TAU, MIN_FIRST))) == 4

    def test_evasive_avoids_shared_points(self):
        p = Params(6, 2)
        e = Evasive(0)
        e.start(p, Role.MIN, True)
        s = new_game(p, GameKind.TAU, MAX_FIRST)
        for mv in ([1, 2], [1, 3]):
            s = apply_move(s, p.kset(mv))
        # lex-first would take {1,4}; the evasive player meets both sets away from 1
        assert e.move(s).elements == (2, 3)


class TestRunGame:
    def test_scripted_replay(self):
        p = Params(3, 2)
        t = run_game(p, GameKind.SATURATION, MIN_FIRST, Scripted([(1, 2), (2, 3)]), Scripted([(1, 3)]))
        assert len(t.moves) == 3 and t.score == 3 and t.fallback_moves == 0
        assert [seat for seat, _ in t.moves] == ["A", "B", "A"]

    def test_handoff_falls_back_to_lex_first(self):
        p = Params(5, 2)
        t = run_game(p, GameKind.SATURATION, MIN_FIRST, Scripted([(2, 3)]), Scripted([]))
        assert t.moves[1][1].elements == (1, 2)
        assert t.fallback_moves == len(t.moves) - 1

    def test_forfeit(self, p42):
        with pytest.raises(ForfeitError) as exc:
            run_game(p42, GameKind.SATURATION, MIN_FIRST, Scripted([(1, 2)]), Scripted([(3, 4)]))
        assert exc.value.seat == "B" and exc.value.strategy == "scripted"

    def test_cap(self):
        with pytest.raises(ResourceLimitError):
            run_game(Params(40, 8), GameKind.TAU, MIN_FIRST, LexFirst(), LexFirst())

    def test_solver_backed_slow_first_scores_n_minus_1(self):
        p = Params(5, 2)
        t = run_game(p, GameKind.SATURATION, MAX_FIRST, SolverStrategy("saturation"), SolverStrategy("saturation"))
        assert t.score == 4

    def test_certify_minimizer_vs_random(self):
        p = Params(30, 3)
        t = run_game(p, GameKind.TAU, MIN_FIRST, MinimizerStrategy(), RandomLegal(1), Mode.CERTIFY, seed=1)
        assert t.certificate is not None and t.certificate.size <= 5
        assert check_disjointness_certificate(t.certificate, p)
        assert len(t.moves) == 2 * (p.k + 2) - 1

    @given(st.integers(0, 10**6), st.integers(4, 8), st.integers(2, 3), st.sampled_from(list(GameKind)), st.booleans())
    @settings(max_examples=40)
    def test_full_play_properties(self, seed, n, k, kind, min_first):
        p = Params(n, k)
        roles = MIN_FIRST if min_first else MAX_FIRST
        t = run_game(p, kind, roles, RandomLegal(seed), Evasive(seed + 1), seed=seed)
        assert is_maximal_intersecting(t.final_family)
        assert t.score == score_family(t.final_family, kind)
        state = replay(t)
        assert state.claimed == t.final_family and state.turn_index == len(t.moves)
        assert Transcript.from_json(t.to_json()).to_json() == t.to_json()

    def test_transcript_round_trip_with_certificate(self):
        p = Params(30, 3)
        t = run_game(p, GameKind.TAU, MAX_FIRST, RandomLegal(4), MinimizerStrategy(), Mode.CERTIFY, seed=4)
        back = Transcript.from_dict(t.to_dict())
        assert back.to_dict() == t.to_dict()
        assert back.certificate == t.certificate
        assert back.final_family == t.final_family


@given(st.integers(0, 10**6))
@settings(max_examples=25)
def test_claimed_family_stays_intersecting(seed):
    p = Params(7, 3)
    seen = []
    run_game(p, GameKind.TAU, MIN_FIRST, RandomLegal(seed), RandomLegal(seed + 9),
             on_move=lambda seat, s: seen.append((s.claimed.is_intersecting(), s.turn_index == len(s.claimed))))
    assert seen and all(a and b for a, b in seen)


def test_score_kinds():
    p = Params(5, 2)
    tri = SetFamily.of(p, [(1, 2), (1, 3), (2, 3)])
    assert score_family(tri, GameKind.SATURATION) == 3
    assert score_family(tri, GameKind.TAU) == 2
