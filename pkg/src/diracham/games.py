"""Biased Maker-Breaker games on abstract boards and graph edge boards.

The board is a dense universe 0..size-1; in graph games the elements are
the host graph's edges in sorted order.  Maker claims `bias[0]` elements per
round, Breaker `bias[1]`; the game ends at board exhaustion or as soon as
Maker owns a winning set (explicit family) or the goal checker produces a
certificate (implicit family, e.g. Hamiltonicity, where materializing every
winning set is hopeless).

Potentials follow the weight Sum over Breaker-free sets B of
(1+q)^(-unclaimed(B)/p); at the empty position this is the left side of the
Breaker-win criterion (< 1/(1+q)), and a fully-Maker-claimed surviving set
contributes 1.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .errors import BudgetError, DomainError, PreconditionError
from .graph import Graph

MAKER = "Maker"
BREAKER = "Breaker"

EXHAUSTIVE_MAX_ELEMENTS = 16


@dataclass(frozen=True)
class Board:
    """Indexed universe; for graph boards, element i is edges()[i]."""

    size: int
    edges: Optional[tuple[tuple[int, int], ...]] = None

    def __post_init__(self):
        if self.size < 0:
            raise DomainError("board size must be nonnegative")


def graph_board(G: Graph) -> Board:
    return Board(G.m, G.edges())


@dataclass(frozen=True)
class WinningFamily:
    sets: tuple[frozenset, ...]

    def __post_init__(self):
        for B in self.sets:
            if not B:
                raise DomainError("winning sets must be nonempty")

    @staticmethod
    def of(sets) -> "WinningFamily":
        return WinningFamily(tuple(frozenset(s) for s in sets))


@dataclass
class GameState:
    board_size: int
    maker: set = field(default_factory=set)
    breaker: set = field(default_factory=set)
    bias: tuple[int, int] = (1, 1)
    to_move: str = MAKER
    history: list[tuple[str, int, int]] = field(default_factory=list)  # (player, element, turn)
    turn_index: int = 0

    def unclaimed(self) -> list[int]:
        taken = self.maker | self.breaker
        return [e for e in range(self.board_size) if e not in taken]

    def unclaimed_count(self) -> int:
        return self.board_size - len(self.maker) - len(self.breaker)

    def per_turn(self, player: str) -> int:
        return self.bias[0] if player == MAKER else self.bias[1]

    def check_invariants(self) -> None:
        assert not (self.maker & self.breaker), "claims overlap"
        maker_h = {e for p, e, _ in self.history if p == MAKER}
        breaker_h = {e for p, e, _ in self.history if p == BREAKER}
        assert maker_h == self.maker and breaker_h == self.breaker


# A strategy maps (state, rng) to the whole turn's element list.
Strategy = Callable[[GameState, random.Random], list[int]]


@dataclass
class Transcript:
    state: GameState
    winner: str
    certificate: Optional[tuple] = None
    potentials: list[float] = field(default_factory=list)
    forfeited_by: Optional[str] = None


# -- potentials ---------------------------------------------------------------


def beck_criterion(F: WinningFamily, p: int, q: int) -> tuple[float, bool]:
    """Sum over winning sets of (1+q)^(-|B|/p) and the Breaker-win flag
    (sum < 1/(1+q)); the empty family scores 0 and flags True."""
    if p < 1 or q < 1:
        raise DomainError("p, q must be integers >= 1")
    value = sum((1 + q) ** (-len(B) / p) for B in F.sets)
    return value, value < 1 / (1 + q)


def potential(F: WinningFamily, state: GameState, p: int, q: int) -> float:
    """Running Beck sum over Breaker-free sets with unclaimed exponents."""
    total = 0.0
    for B in F.sets:
        if B & state.breaker:
            continue
        u = len(B - state.maker)
        total += (1 + q) ** (-u / p)
    return total


def breaker_potential_move(
    F: WinningFamily, state: GameState, p: Optional[int] = None, q: Optional[int] = None
) -> list[int]:
    """Greedy realization of the Breaker-win strategy: claim, one at a time,
    the unclaimed element whose claiming maximally decreases the potential;
    ties to the lowest id.  Returns min(b, unclaimed) elements."""
    if state.to_move != BREAKER:
        raise PreconditionError("not Breaker's turn")
    p = p if p is not None else state.bias[0]
    q = q if q is not None else state.bias[1]
    picks: list[int] = []
    maker, breaker = set(state.maker), set(state.breaker)
    want = min(state.per_turn(BREAKER), state.unclaimed_count())
    for _ in range(want):
        taken = maker | breaker | set(picks)
        best_e, best_drop = None, -1.0
        for e in range(state.board_size):
            if e in taken:
                continue
            drop = 0.0
            for B in F.sets:
                if e in B and not (B & breaker) and not (B & set(picks)):
                    drop += (1 + q) ** (-len(B - maker) / p)
            if drop > best_drop:
                best_e, best_drop = e, drop
        picks.append(best_e)
    return picks


# -- play ---------------------------------------------------------------------


def random_strategy(seed_independent: bool = True) -> Strategy:
    def strat(state: GameState, rng: random.Random) -> list[int]:
        pool = state.unclaimed()
        k = min(state.per_turn(state.to_move), len(pool))
        return rng.sample(pool, k)

    return strat


def scripted_strategy(script: Sequence[int]) -> Strategy:
    """Plays the scripted elements in order, skipping claimed ones."""
    pos = {"i": 0}

    def strat(state: GameState, rng: random.Random) -> list[int]:
        taken = state.maker | state.breaker
        k = min(state.per_turn(state.to_move), state.unclaimed_count())
        out = []
        i = pos["i"]
        while len(out) < k and i < len(script):
            e = script[i]
            i += 1
            if e not in taken and e not in out:
                out.append(e)
        pos["i"] = i
        if len(out) < k:  # script exhausted: fall back to lowest ids
            for e in state.unclaimed():
                if e not in out:
                    out.append(e)
                if len(out) == k:
                    break
        return out

    return strat


def family_win(F: WinningFamily, maker: set) -> Optional[frozenset]:
    for B in F.sets:
        if B <= maker:
            return B
    return None


def play(
    board: Board,
    maker_strategy: Strategy,
    breaker_strategy: Strategy,
    family: Optional[WinningFamily] = None,
    goal_checker: Optional[Callable[[set], Optional[tuple]]] = None,
    bias: tuple[int, int] = (1, 1),
    first: str = MAKER,
    seed: int = 0,
    record_potentials: bool = False,
) -> Transcript:
    """Run a game to exhaustion or early Maker win.

    Exactly one of family / goal_checker decides Maker's win; the checker
    receives Maker's claimed set and returns a certificate or None.  An
    illegal strategy move (claimed element, wrong count, off-board) forfeits
    for the offender.  Bias counts are enforced per turn; the final turn may
    be short when the board empties.
    """
    if (family is None) == (goal_checker is None):
        raise DomainError("need exactly one of family or goal_checker")
    if bias[0] < 1 or bias[1] < 1:
        raise DomainError("bias parts must be >= 1")
    state = GameState(board_size=board.size, bias=bias, to_move=first)
    rng = random.Random(seed)
    potentials: list[float] = []
    certificate: Optional[tuple] = None

    def maker_won() -> bool:
        nonlocal certificate
        if family is not None:
            win = family_win(family, state.maker)
            if win is not None:
                certificate = tuple(sorted(win))
                return True
            return False
        cert = goal_checker(state.maker)
        if cert is not None:
            certificate = tuple(cert)
            return True
        return False

    while state.unclaimed_count() > 0:
        player = state.to_move
        strat = maker_strategy if player == MAKER else breaker_strategy
        want = min(state.per_turn(player), state.unclaimed_count())
        moves = list(strat(state, rng))
        taken = state.maker | state.breaker
        legal = (
            len(moves) == want
            and len(set(moves)) == len(moves)
            and all(isinstance(e, int) and 0 <= e < board.size for e in moves)
            and not any(e in taken for e in moves)
        )
        if not legal:
            winner = BREAKER if player == MAKER else MAKER
            return Transcript(state, winner, None, potentials, forfeited_by=player)
        owned = state.maker if player == MAKER else state.breaker
        for e in moves:
            owned.add(e)
            state.history.append((player, e, state.turn_index))
            if record_potentials and family is not None:
                potentials.append(potential(family, state, bias[0], bias[1]))
        state.check_invariants()
        if player == MAKER and maker_won():
            return Transcript(state, MAKER, certificate, potentials)
        state.turn_index += 1
        state.to_move = BREAKER if player == MAKER else MAKER
    winner = MAKER if maker_won() else BREAKER
    return Transcript(state, winner, certificate, potentials)


# -- exhaustive game value ------------------------------------------------------


class _Solver:
    """Memoized minimax over claim masks, one element at a time.

    State: (maker mask, breaker mask, player to move, claims left in the
    player's current turn).  Maker wins as soon as a set is filled, Breaker
    as soon as every set is hit or the board empties Maker-less."""

    def __init__(self, board_size: int, F: WinningFamily, bias: tuple[int, int]):
        if board_size > EXHAUSTIVE_MAX_ELEMENTS:
            raise BudgetError(
                f"exhaustive solving capped at {EXHAUSTIVE_MAX_ELEMENTS} elements"
            )
        self.bias = bias
        self.full = (1 << board_size) - 1
        self.set_masks = []
        for B in F.sets:
            m = 0
            for e in B:
                if not 0 <= e < board_size:
                    raise DomainError("winning set off the board")
                m |= 1 << e
            self.set_masks.append(m)
        self.memo: dict = {}

    def value(self, maker: int, breaker: int, player: str, rem: int) -> str:
        if any(m & ~maker == 0 for m in self.set_masks):
            return MAKER
        if not self.set_masks or all(m & breaker for m in self.set_masks):
            return BREAKER
        free = self.full & ~(maker | breaker)
        if free == 0:
            return BREAKER
        rem = min(rem, bin(free).count("1"))
        key = (maker, breaker, player, rem)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        nxt_player, nxt_rem = player, rem - 1
        if nxt_rem == 0:
            nxt_player = BREAKER if player == MAKER else MAKER
            nxt_rem = self.bias[0] if nxt_player == MAKER else self.bias[1]
        best = BREAKER if player == MAKER else MAKER
        e, f = 0, free
        while f:
            if f & 1:
                bit = 1 << e
                if player == MAKER:
                    out = self.value(maker | bit, breaker, nxt_player, nxt_rem)
                    if out == MAKER:
                        best = MAKER
                        break
                else:
                    out = self.value(maker, breaker | bit, nxt_player, nxt_rem)
                    if out == BREAKER:
                        best = BREAKER
                        break
            f >>= 1
            e += 1
        self.memo[key] = best
        return best


def exhaustive_value(
    board_size: int,
    F: WinningFamily,
    bias: tuple[int, int] = (1, 1),
    first: str = MAKER,
) -> str:
    """Game-theoretic winner under optimal play; boards up to 16 elements."""
    solver = _Solver(board_size, F, bias)
    first_rem = bias[0] if first == MAKER else bias[1]
    return solver.value(0, 0, first, first_rem)


def _mask(elements) -> int:
    m = 0
    for e in elements:
        m |= 1 << e
    return m


def minimax_strategy(F: WinningFamily, role: str) -> Strategy:
    """Optimal play via the exhaustive solver (small boards only).  Picks
    the lowest-id element preserving the best achievable value."""
    solvers: dict = {}

    def strat(state: GameState, rng: random.Random) -> list[int]:
        key = (state.board_size, state.bias)
        solver = solvers.get(key)
        if solver is None:
            solver = solvers[key] = _Solver(state.board_size, F, state.bias)
        picks: list[int] = []
        maker = _mask(state.maker)
        breaker = _mask(state.breaker)
        want = min(state.per_turn(role), state.unclaimed_count())
        for i in range(want):
            rem_after = want - i - 1
            nxt_player, nxt_rem = role, rem_after
            if rem_after == 0:
                nxt_player = BREAKER if role == MAKER else MAKER
                nxt_rem = state.bias[0] if nxt_player == MAKER else state.bias[1]
            chosen = None
            for e in range(state.board_size):
                bit = 1 << e
                if (maker | breaker) & bit:
                    continue
                if role == MAKER:
                    out = solver.value(maker | bit, breaker, nxt_player, nxt_rem)
                else:
                    out = solver.value(maker, breaker | bit, nxt_player, nxt_rem)
                if chosen is None:
                    chosen = e
                if out == role:
                    chosen = e
                    break
            picks.append(chosen)
            if role == MAKER:
                maker |= 1 << chosen
            else:
                breaker |= 1 << chosen
        return picks

    return strat
