import math
import random

import pytest

from mb3.core import INFINITY, DomainError, MarkedHypergraph, ceil_log2
from mb3.oracle import minimax, winner
from mb3.solver import (
    BREAKER,
    MAKER,
    Position,
    breaker_best,
    decide,
    decide_forest,
    engine_move,
    forcing_line,
    forest_breaker_reply,
    maker_best,
    play,
    replay,
    selfplay,
    tau_exact,
    tau_upper_bound,
)
from mb3.structures import (
    find_fully_marked_edge,
    find_shortest_nunchaku,
    shortest_nunchaku_length,
)

from conftest import necklace_board, nunchaku_board, path_board, random_small


class TestDecide:
    def test_nunchaku_any_length_maker(self):
        for L in range(1, 6):
            assert decide(nunchaku_board(L)).winner == MAKER

    def test_necklace_any_length_maker(self):
        for L in range(2, 6):
            assert decide(necklace_board(L)).winner == MAKER

    def test_empty_edges_breaker(self):
        h = MarkedHypergraph.build(range(4))
        assert decide(h).winner == BREAKER

    def test_non_uniform_rejected(self):
        h = MarkedHypergraph.build(range(3), [(0, 1)])
        with pytest.raises(DomainError):
            decide(h)

    def test_matches_oracle_random(self, rng):
        for _ in range(120):
            h = random_small(rng, n=(8, 12), m=(2, 8), k=(0, 4))
            assert decide(h).winner == winner(h), h.key()

    def test_history_independent(self):
        # decide only looks at the board, so two orders reaching the same
        # board agree trivially; assert the plumbing keeps boards equal.
        h = MarkedHypergraph.build(range(7), [(0, 1, 2), (2, 3, 4), (4, 5, 6)])
        a = h.mark(0).remove(5).mark(2).remove(6)
        b = h.mark(2).remove(6).mark(0).remove(5)
        assert a == b and decide(a) == decide(b)


class TestMakerBest:
    def test_nunchaku4_exact_middle(self):
        h = nunchaku_board(4)  # connection points 0,2,4,6,8; middle inner = 4
        assert decide_forest(h).best_move == 4
        assert maker_best(h) == 4

    def test_trivial_completion(self):
        h = MarkedHypergraph.build(range(4), [(0, 1, 2)], [0, 1])
        assert maker_best(h) == 2

    def test_move_keeps_win(self, rng):
        checked = 0
        for _ in range(80):
            h = random_small(rng, n=(7, 11), m=(3, 8), k=(0, 3))
            v = decide(h)
            if v.winner != MAKER or v.best_move is None:
                continue
            hx = h.mark(v.best_move)
            for y in hx.non_marked:
                assert winner(hx.remove(y)) == MAKER, (h.key(), v.best_move, y)
            if not hx.non_marked:
                assert find_fully_marked_edge(hx) is not None
            checked += 1
        assert checked >= 20

    def test_rejected_on_breaker_win(self):
        h = MarkedHypergraph.build(range(6), [(0, 1, 2), (3, 4, 5)])
        with pytest.raises(DomainError):
            maker_best(h)


class TestBreakerBest:
    def test_two_disjoint_triples(self):
        h = MarkedHypergraph.build(range(6), [(0, 1, 2), (3, 4, 5)])
        assert breaker_best(h, 0) == 1  # lowest surviving reply
        for x in h.vertices:
            y = breaker_best(h, x)
            assert winner(h.mark(x).remove(y)) == BREAKER

    def test_reply_survives(self, rng):
        checked = 0
        for _ in range(60):
            h = random_small(rng, n=(6, 10), m=(2, 6), k=(0, 3))
            if decide(h).winner != BREAKER:
                continue
            x = rng.choice(h.non_marked)
            y = breaker_best(h, x)
            if y is None:
                continue
            assert decide(h.mark(x).remove(y)).winner == BREAKER
            checked += 1
        assert checked >= 15

    def test_every_first_pick_answered(self, rng):
        # On a Breaker win, breaker_best survives every Maker first pick.
        checked = 0
        for _ in range(40):
            h = random_small(rng, n=(6, 8), m=(2, 5), k=(0, 2))
            if decide(h).winner != BREAKER:
                continue
            for x in h.non_marked:
                y = breaker_best(h, x)
                if y is not None:
                    assert decide(h.mark(x).remove(y)).winner == BREAKER
            checked += 1
            if checked >= 8:
                break
        assert checked >= 5

    def test_reply_inside_hitting_set(self, rng):
        from mb3.solver import danger_intersection_hitting
        checked = 0
        for _ in range(60):
            h = random_small(rng, n=(6, 9), m=(2, 6), k=(0, 2))
            if decide(h).winner != BREAKER:
                continue
            x = rng.choice(h.non_marked)
            y = breaker_best(h, x)
            if y is None:
                continue
            assert y in danger_intersection_hitting(h, x)
            checked += 1
        assert checked >= 10


class TestForest:
    def test_tau_small_lengths(self):
        for L, expect in [(1, 1), (2, 2), (3, 3), (4, 3), (5, 4)]:
            v = decide_forest(nunchaku_board(L))
            assert v.winner == MAKER and v.tau_exact == expect
            if L <= 5:
                assert minimax(nunchaku_board(L)).tau == expect

    def test_breaker_when_no_nunchaku(self):
        h = path_board(3, marks=(0,))
        assert decide_forest(h).winner == BREAKER

    def test_cyclic_rejected(self):
        with pytest.raises(DomainError):
            decide_forest(necklace_board(3))

    def test_midpoint_halves_for_all_replies(self, rng):
        boards = [nunchaku_board(L) for L in (2, 3, 4, 5, 6)]
        for h in boards:
            L = shortest_nunchaku_length(h)
            x = decide_forest(h).best_move
            hx = h.mark(x)
            for y in hx.non_marked:
                child = hx.remove(y)
                assert shortest_nunchaku_length(child) <= math.ceil(L / 2)

    def test_breaker_reply_keeps_half(self):
        for L in (2, 3, 4, 5, 6):
            h = nunchaku_board(L)
            half = math.ceil(L / 2)
            for x in h.non_marked:
                y = forest_breaker_reply(h, x)
                child = h.mark(x).remove(y)
                assert shortest_nunchaku_length(child) >= half, (L, x, y)

    def test_breaker_reply_keeps_no_nunchaku(self, rng):
        from mb3.oracle import random_forest
        for _ in range(30):
            h = random_forest(rng, n_range=(8, 12), edges_range=(2, 4), marks_range=(0, 1))
            if shortest_nunchaku_length(h) != INFINITY:
                continue
            for x in h.non_marked[:4]:
                y = forest_breaker_reply(h, x)
                if y is None:
                    continue
                assert shortest_nunchaku_length(h.mark(x).remove(y)) == INFINITY


class TestTau:
    def test_fully_marked_zero(self):
        h = MarkedHypergraph.build(range(4), [(0, 1, 2)], [0, 1, 2])
        assert tau_exact(h) == 0

    def test_trivial_one(self):
        h = MarkedHypergraph.build(range(4), [(0, 1, 2)], [0, 1])
        assert tau_exact(h) == 1

    def test_necklace4(self):
        assert tau_exact(necklace_board(4)) == 3

    def test_upper_bound_formula(self):
        h6 = nunchaku_board(2, isolated=3)  # 6 non-marked
        assert len(h6.non_marked) == 6
        assert tau_upper_bound(h6) == 3
        h13 = nunchaku_board(4, isolated=6)
        assert len(h13.non_marked) == 13
        assert tau_upper_bound(h13, verdict=decide(h13)) == 6

    def test_upper_bound_preconditions(self):
        with pytest.raises(DomainError):
            tau_upper_bound(nunchaku_board(2))  # only 3 non-marked
        b = MarkedHypergraph.build(range(7), [(0, 1, 2)])
        with pytest.raises(DomainError):
            tau_upper_bound(b)  # breaker win

    def test_exact_below_upper(self, rng):
        checked = 0
        for _ in range(80):
            h = random_small(rng, n=(8, 11), m=(3, 8), k=(0, 2))
            if len(h.non_marked) < 6:
                continue
            v = decide(h)
            if v.winner != MAKER:
                continue
            assert tau_exact(h) <= tau_upper_bound(h, verdict=v)
            checked += 1
        assert checked >= 15


class TestForcingLine:
    def test_length2_single_double_threat(self):
        h = nunchaku_board(2)
        wit = find_shortest_nunchaku(h)
        line = forcing_line(h, wit)
        assert line == [(2, None)]

    def test_length4_three_moves(self):
        h = nunchaku_board(4)
        wit = find_shortest_nunchaku(h)
        line = forcing_line(h, wit)
        assert [x for x, _ in line] == [2, 4, 6]
        assert [y for _, y in line] == [1, 3, None]

    def test_forcing_wins_against_oracle_breaker(self):
        # Play the forcing line against the strongest replies: Maker follows
        # forced picks, and when Breaker deviates from the forced reply the
        # board stays a Maker win (subwin on the remaining nunchaku).
        h = nunchaku_board(3)
        wit = find_shortest_nunchaku(h)
        line = forcing_line(h, wit)
        board = h
        for x, y in line:
            board = board.mark(x)
            assert winner(board.remove(board.non_marked[0])) == MAKER
            if y is not None:
                board = board.remove(y)

    def test_needs_length_two(self):
        h = nunchaku_board(1)
        wit = find_shortest_nunchaku(h)
        with pytest.raises(DomainError):
            forcing_line(h, wit)


class TestPlay:
    def test_round_is_mark_then_remove(self):
        h = MarkedHypergraph.build(range(5), [(0, 1, 2)])
        pos = play(play(Position(h), 0), 3)
        assert pos.board == h.mark(0).remove(3)
        assert pos.to_move == MAKER
        assert pos.history == ((MAKER, 0), (BREAKER, 3))

    def test_replay_round_trip(self, rng):
        for _ in range(20):
            h = random_small(rng, n=(6, 9), m=(2, 5), k=(0, 2))
            pos = Position(h)
            for _ in range(4):
                if pos.game_over():
                    break
                pos = play(pos, pos.legal_moves()[0])
            assert replay(h, pos.history) == pos.board

    def test_illegal_moves(self):
        h = MarkedHypergraph.build(range(5), [(0, 1, 2)], [0])
        with pytest.raises(DomainError):
            play(Position(h), 0)  # marked
        with pytest.raises(DomainError):
            play(Position(h), 9)  # absent
        pos = play(Position(h), 1)
        with pytest.raises(DomainError):
            play(pos, 0)  # breaker cannot take a marked vertex


class TestEngineSelfConsistency:
    def test_predicted_winner_wins_playouts(self, rng):
        for _ in range(60):
            h = random_small(rng, n=(5, 9), m=(1, 6), k=(0, 3))
            predicted = decide(h).winner
            final = selfplay(h)
            maker_won = find_fully_marked_edge(final.board) is not None
            assert maker_won == (predicted == MAKER), h.key()

    def test_breaker_line_never_enters_maker_win(self, rng):
        checked = 0
        for _ in range(40):
            h = random_small(rng, n=(6, 9), m=(2, 6), k=(0, 2))
            if decide(h).winner != BREAKER:
                continue
            pos = Position(h)
            while not pos.game_over():
                move, _ = engine_move(pos)
                pos = play(pos, move)
                if pos.to_move == MAKER:  # a full round just ended
                    assert winner(pos.board) == BREAKER
            checked += 1
        assert checked >= 10
