"""Maker strategy combinators: board splitting and fake-bias padding.

Splitting partitions the board into a sub-boards played round-robin; each
sub-strategy experiences a virtual (1 : a*b) game as the second player,
because between its consecutive moves Breaker may claim up to a*b elements
of its board.  Fake bias lets a strategy designed against bias b0 play an
easier (1 : b) game, b <= b0: the wrapper keeps b0 - b phantom Breaker
claims alive, replacing any phantom the real Breaker happens to claim.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from .errors import DomainError, PreconditionError
from .games import BREAKER, MAKER, GameState, Strategy


@dataclass
class SubBoardView:
    """Bookkeeping for one sub-board of a split."""

    elements: tuple[int, ...]  # global ids, sorted
    to_local: dict[int, int] = field(default_factory=dict)
    maker: set = field(default_factory=set)  # local ids
    breaker: set = field(default_factory=set)
    delivered_breaker: set = field(default_factory=set)
    last_turn_delivery: int = 0

    def __post_init__(self):
        self.to_local = {g: i for i, g in enumerate(self.elements)}


def split_board(
    board_size: int,
    partition: Sequence[Sequence[int]],
    sub_strategies: Sequence[Strategy],
    bias_b: int,
) -> Strategy:
    """Round-robin Maker strategy over a disjoint cover of the board.

    Before sub-strategy i moves, every Breaker claim that landed in its
    board since its previous move is delivered to its virtual state, whose
    bias is (1 : a*b).  Sub-boards with no free element left are skipped.
    """
    parts = [tuple(sorted(p)) for p in partition]
    seen: set[int] = set()
    for p in parts:
        for e in p:
            if e in seen:
                raise DomainError(f"element {e} in two sub-boards")
            seen.add(e)
    if seen != set(range(board_size)):
        raise DomainError("partition must cover the board exactly")
    a = len(parts)
    views = [SubBoardView(p) for p in parts]
    turn_ptr = {"i": 0}

    def strat(state: GameState, rng: random.Random) -> list[int]:
        if state.to_move != MAKER:
            raise PreconditionError("split_board wraps a Maker strategy")
        k = min(state.per_turn(MAKER), state.unclaimed_count())
        picks: list[int] = []
        for _ in range(k):
            tried = 0
            while tried < a:
                idx = turn_ptr["i"] % a
                view = views[idx]
                free = [
                    g
                    for g in view.elements
                    if g not in state.maker
                    and g not in state.breaker
                    and g not in picks
                ]
                if not free:
                    turn_ptr["i"] += 1
                    tried += 1
                    continue
                # deliver Breaker claims in this board since its last move
                new_breaker = [
                    view.to_local[g]
                    for g in view.elements
                    if g in state.breaker
                    and view.to_local[g] not in view.delivered_breaker
                ]
                view.delivered_breaker.update(new_breaker)
                view.breaker.update(new_breaker)
                view.last_turn_delivery = len(new_breaker)
                sub_state = GameState(
                    board_size=len(view.elements),
                    maker=set(view.maker),
                    breaker=set(view.breaker),
                    bias=(1, a * bias_b),
                    to_move=MAKER,
                )
                sub_moves = sub_strategies[idx](sub_state, rng)
                if (
                    len(sub_moves) != 1
                    or sub_moves[0] not in range(len(view.elements))
                    or sub_moves[0] in view.maker
                    or sub_moves[0] in view.breaker
                ):
                    raise PreconditionError(
                        f"sub-strategy {idx} made an illegal move {sub_moves}"
                    )
                local = sub_moves[0]
                view.maker.add(local)
                picks.append(view.elements[local])
                turn_ptr["i"] += 1
                break
            else:
                raise PreconditionError("no sub-board has a free element")
        return picks

    strat.views = views  # exposed for the counting property tests
    return strat


def fake_bias(strategy_at_b0: Strategy, b0: int, actual_b: int) -> Strategy:
    """Present a (1 : b) game, b <= b0, to a strategy built for bias b0.

    After each real Breaker turn the wrapper tops the phantom set up so the
    inner strategy sees exactly b0 new Breaker elements per round (as far
    as the unclaimed pool allows).  A phantom the real Breaker claims is
    replaced by a fresh one; phantoms never sit on Maker claims.
    """
    if actual_b > b0:
        raise DomainError(f"actual bias {actual_b} exceeds design bias {b0}")
    phantoms: set[int] = set()
    pad = b0 - actual_b

    def strat(state: GameState, rng: random.Random) -> list[int]:
        if state.to_move != MAKER:
            raise PreconditionError("fake_bias wraps a Maker strategy")
        # a phantom the real Breaker claimed moves to the real set; its
        # replacement comes from the top-up below
        phantoms.difference_update(state.breaker)
        pool = [
            e
            for e in range(state.board_size)
            if e not in state.maker and e not in state.breaker and e not in phantoms
        ]
        breaker_turns = len({t for p, _, t in state.history if p == BREAKER})
        want = pad * breaker_turns
        # keep enough room for Maker's own claims this turn
        room = max(0, len(pool) - state.per_turn(MAKER))
        want = min(want, len(phantoms) + room)
        for e in pool:
            if len(phantoms) >= want:
                break
            phantoms.add(e)
        # endgame: if earlier padding ate the whole pool, release phantoms
        # (they were never real claims) so the inner always has a move
        free_for_inner = state.unclaimed_count() - len(phantoms)
        need = min(state.per_turn(MAKER), state.unclaimed_count())
        for e in sorted(phantoms):
            if free_for_inner >= need:
                break
            phantoms.discard(e)
            free_for_inner += 1
        inner_state = GameState(
            board_size=state.board_size,
            maker=set(state.maker),
            breaker=set(state.breaker) | set(phantoms),
            bias=(1, b0),
            to_move=MAKER,
        )
        moves = strategy_at_b0(inner_state, rng)
        for e in moves:
            if e in phantoms or e in state.breaker or e in state.maker:
                raise PreconditionError("inner strategy claimed an unavailable element")
        return moves

    strat.phantoms = phantoms
    return strat
