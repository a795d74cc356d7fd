import math
import random

import pytest

from diracham.errors import BudgetError, DomainError, PreconditionError
from diracham.games import (
    BREAKER,
    MAKER,
    Board,
    GameState,
    WinningFamily,
    beck_criterion,
    breaker_potential_move,
    exhaustive_value,
    family_win,
    minimax_strategy,
    play,
    potential,
    random_strategy,
    scripted_strategy,
)


def fam(*sets):
    return WinningFamily.of(sets)


def state_of(board_size, maker=(), breaker=(), bias=(1, 1), to_move=MAKER):
    s = GameState(board_size=board_size, bias=bias, to_move=to_move)
    for e in maker:
        s.maker.add(e)
        s.history.append((MAKER, e, 0))
    for e in breaker:
        s.breaker.add(e)
        s.history.append((BREAKER, e, 0))
    return s


# -- beck criterion / potentials -------------------------------------------


def test_beck_criterion_examples():
    value, flag = beck_criterion(fam({0, 1}), 1, 1)
    assert value == 0.25 and flag
    value, flag = beck_criterion(fam({0}), 1, 1)
    assert value == 0.5 and not flag
    value, flag = beck_criterion(fam({0, 1, 2, 3}), 2, 1)
    assert value == 0.25 and flag
    value, flag = beck_criterion(WinningFamily(()), 1, 1)
    assert value == 0.0 and flag


def test_potential_examples():
    F = fam({0, 1})
    assert potential(F, state_of(2), 1, 1) == 0.25
    assert potential(F, state_of(2, maker=[0]), 1, 1) == 0.5
    assert potential(F, state_of(2, breaker=[0]), 1, 1) == 0.0
    # empty-state potential equals the beck criterion value
    F2 = fam({0, 1}, {0, 2}, {1, 2, 3})
    assert potential(F2, state_of(4), 1, 1) == beck_criterion(F2, 1, 1)[0]
    # a fully-claimed surviving set contributes 1
    assert potential(fam({0, 1}), state_of(2, maker=[0, 1]), 1, 1) == 1.0


def test_breaker_potential_move():
    F = fam({0, 1}, {0, 2})
    s = state_of(3, to_move=BREAKER)
    assert breaker_potential_move(F, s) == [0]  # shared element: largest drop
    s = state_of(3, breaker=[0], to_move=BREAKER)
    F2 = fam({0})  # every set already hit: zero drop everywhere
    assert breaker_potential_move(F2, s) == [1]  # lowest-id tie rule
    F3 = fam({2})
    s = state_of(3, to_move=BREAKER)
    assert breaker_potential_move(F3, s) == [2]
    with pytest.raises(PreconditionError):
        breaker_potential_move(F, state_of(3, to_move=MAKER))


def test_breaker_move_never_increases_potential():
    rng = random.Random(0)
    for trial in range(200):
        size = rng.randint(2, 6)
        F = fam(
            *[
                rng.sample(range(size), rng.randint(1, size))
                for _ in range(rng.randint(1, 5))
            ]
        )
        maker = set(rng.sample(range(size), rng.randint(0, size // 2)))
        rest = [e for e in range(size) if e not in maker]
        breaker = set(rng.sample(rest, rng.randint(0, len(rest) // 2)))
        b = rng.randint(1, 2)
        s = state_of(size, maker, breaker, bias=(1, b), to_move=BREAKER)
        before = potential(F, s, 1, b)
        for e in breaker_potential_move(F, s):
            s.breaker.add(e)
        assert potential(F, s, 1, b) <= before + 1e-12


# -- play -------------------------------------------------------------------


def test_play_minimax_example():
    F = fam({0, 1}, {0, 2})
    t = play(
        Board(3),
        minimax_strategy(F, MAKER),
        minimax_strategy(F, BREAKER),
        family=F,
        bias=(1, 1),
        first=MAKER,
    )
    assert t.winner == MAKER
    assert exhaustive_value(3, F, (1, 1), MAKER) == MAKER


def test_play_breaker_first_singleton():
    F = fam({0})
    t = play(
        Board(2),
        minimax_strategy(F, MAKER),
        minimax_strategy(F, BREAKER),
        family=F,
        first=BREAKER,
    )
    assert t.winner == BREAKER


def test_play_empty_family_breaker_wins():
    t = play(
        Board(3),
        random_strategy(),
        random_strategy(),
        family=WinningFamily(()),
        seed=5,
    )
    assert t.winner == BREAKER


def test_play_records_and_respects_bias():
    F = fam({0, 1, 2, 3, 4})
    t = play(
        Board(6),
        scripted_strategy([0, 1, 2, 3, 4, 5]),
        scripted_strategy([5, 4, 3]),
        family=F,
        bias=(1, 2),
        seed=1,
    )
    t.state.check_invariants()
    # per-turn counts never exceed bias; last turn may be short
    by_turn = {}
    for p, e, turn in t.state.history:
        by_turn.setdefault((turn, p), []).append(e)
    for (turn, p), els in by_turn.items():
        cap = 1 if p == MAKER else 2
        assert len(els) <= cap


def test_play_forfeits_illegal_strategy():
    F = fam({0, 1})

    def cheater(state, rng):
        return [0, 1]  # two claims at bias 1

    t = play(Board(3), cheater, random_strategy(), family=F, seed=2)
    assert t.winner == BREAKER and t.forfeited_by == MAKER


def test_goal_checker_route():
    # goal: own three consecutive integers
    def checker(maker):
        for e in sorted(maker):
            if e + 1 in maker and e + 2 in maker:
                return (e, e + 1, e + 2)
        return None

    t = play(
        Board(7),
        scripted_strategy([2, 3, 4]),
        scripted_strategy([6, 5, 0]),
        goal_checker=checker,
        seed=0,
    )
    assert t.winner == MAKER and t.certificate == (2, 3, 4)


# -- exhaustive values ----------------------------------------------------------


def test_exhaustive_value_examples():
    F = fam({0, 1}, {0, 2})
    assert exhaustive_value(3, F, (1, 1), MAKER) == MAKER
    assert exhaustive_value(2, fam({0, 1}), (1, 1), MAKER) == BREAKER  # pairs strategy
    F3 = fam({0, 1}, {2, 3}, {4, 5})
    assert exhaustive_value(6, F3, (1, 2), MAKER) == BREAKER


def test_exhaustive_budget():
    with pytest.raises(BudgetError):
        exhaustive_value(17, fam({0}), (1, 1), MAKER)


def test_winner_iff_surviving_set_fully_claimed():
    rng = random.Random(7)
    for trial in range(120):
        size = rng.randint(2, 6)
        F = fam(
            *[
                rng.sample(range(size), rng.randint(1, size))
                for _ in range(rng.randint(1, 4))
            ]
        )
        t = play(
            Board(size),
            random_strategy(),
            random_strategy(),
            family=F,
            bias=(1, rng.randint(1, 2)),
            first=rng.choice([MAKER, BREAKER]),
            seed=trial,
        )
        won = family_win(F, t.state.maker) is not None
        assert (t.winner == MAKER) == won


def test_minimax_agrees_with_exhaustive_value():
    rng = random.Random(13)
    for trial in range(60):
        size = rng.randint(2, 5)
        F = fam(
            *[
                rng.sample(range(size), rng.randint(1, size))
                for _ in range(rng.randint(1, 4))
            ]
        )
        bias = (1, rng.randint(1, 2))
        first = rng.choice([MAKER, BREAKER])
        predicted = exhaustive_value(size, F, bias, first)
        t = play(
            Board(size),
            minimax_strategy(F, MAKER),
            minimax_strategy(F, BREAKER),
            family=F,
            bias=bias,
            first=first,
            seed=trial,
        )
        assert t.winner == predicted
