"""Game engine: turn protocol, move resolution and extra-move chains.

A game runs a fixed number of turns. The turn owner rolls the whole dice pool
up front; picks then proceed in a fixed seat sequence in which the owner takes
the first and last pick ("2p": owner, other, owner; "4p": owner, the three
others in seat order, owner). Each pick consumes exactly one pool die, so the
pool is always exhausted by the end of the turn; a mover with no legal pair
forfeits the pick, consuming the lowest-indexed untaken die.

An action earns at most one extra move when it uses a six, captures, or
promotes. Each extra move rolls one fresh private die; a third consecutive six
within a mover's continuous chain is void (no move, chain over), and the count
reseeds from the pool pick that opened the chain. Winner is the seat with
strictly most points after the last turn, where points are the sum of token
path positions plus a 56 bonus per token home.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable, Sequence

from .board import HOME, Board, board_for
from .rng import SplitMix64
from .strategies import StrategyKind, fresh_memory, seat_chooser

HOME_BONUS = 56


class Variant(Enum):
    TWO_PLAYER_THREE_DICE = "2p3d"
    FOUR_PLAYER_FIVE_DICE = "4p5d"

    @property
    def seats(self) -> int:
        return 2 if self is Variant.TWO_PLAYER_THREE_DICE else 4

    @property
    def dice_per_turn(self) -> int:
        return 3 if self is Variant.TWO_PLAYER_THREE_DICE else 5

    @property
    def canonical_turns(self) -> tuple[int, ...]:
        return (16, 20, 24) if self is Variant.TWO_PLAYER_THREE_DICE else (8, 12, 16)

    @property
    def default_games(self) -> int:
        return 10_000 if self is Variant.TWO_PLAYER_THREE_DICE else 1_000


@dataclass(frozen=True)
class GameConfig:
    variant: Variant
    turns: int

    def __post_init__(self) -> None:
        if self.turns < 1:
            raise ValueError("turns must be >= 1")

    @property
    def seats(self) -> int:
        return self.variant.seats

    @property
    def dice_per_turn(self) -> int:
        return self.variant.dice_per_turn

    @property
    def canonical(self) -> bool:
        return self.turns in self.variant.canonical_turns


_SEQ2 = ((0, 1, 0), (1, 0, 1))
_SEQ4 = tuple(
    (o, (o + 1) % 4, (o + 2) % 4, (o + 3) % 4, o) for o in range(4)
)


def pick_sequence(variant: Variant, turn_index: int) -> tuple[int, ...]:
    """Seat order of the picks in a turn; the owner opens and closes."""
    if variant is Variant.TWO_PLAYER_THREE_DICE:
        return _SEQ2[turn_index % 2]
    return _SEQ4[turn_index % 4]


class DicePool:
    """The owner's rolled dice for one turn, with per-die taken flags."""

    __slots__ = ("owner", "values", "taken", "_avail")

    def __init__(self, values: Sequence[int], owner: int = 0) -> None:
        self.owner = owner
        self.values = tuple(values)
        self.taken = [False] * len(self.values)
        self._avail = list(enumerate(self.values))

    def untaken(self) -> tuple[tuple[int, int], ...]:
        return tuple(self._avail)

    def first_untaken(self) -> int:
        if not self._avail:
            raise ValueError("pool exhausted")
        return self._avail[0][0]

    def take(self, index: int) -> int:
        if self.taken[index]:
            raise ValueError(f"die {index} already taken")
        self.taken[index] = True
        avail = self._avail
        for k in range(len(avail)):
            if avail[k][0] == index:
                del avail[k]
                break
        return self.values[index]

    @property
    def exhausted(self) -> bool:
        return not self._avail


class GameState:
    """Mutable state of one game in progress."""

    __slots__ = (
        "config",
        "board",
        "rng",
        "roll",
        "turn_index",
        "positions",
        "bonus",
        "scores",
        "pool",
    )

    def __init__(self, config: GameConfig, game_seed: int) -> None:
        self.config = config
        self.board = board_for(config.seats)
        self.rng = SplitMix64(game_seed)
        self.roll: Callable[[], int] = self.rng.roll_die
        self.turn_index = 0
        n = config.seats
        self.positions = [[0, 0, 0, 0] for _ in range(n)]
        self.bonus = [0] * n
        self.scores = [0] * n
        self.pool: DicePool | None = None


def new_game(config: GameConfig, game_seed: int) -> GameState:
    return GameState(config, game_seed)


def score(state: GameState, seat: int) -> int:
    """Recompute a seat's points from scratch: positions plus home bonuses."""
    return sum(state.positions[seat]) + HOME_BONUS * state.bonus[seat]


@dataclass(frozen=True)
class Moved:
    mover: int
    token: int
    die: int
    src: int
    dst: int


@dataclass(frozen=True)
class Captured:
    mover: int
    victims: tuple[tuple[int, int, int], ...]  # (seat, token, position lost)


@dataclass(frozen=True)
class Promoted:
    mover: int
    token: int


@dataclass(frozen=True)
class ExtraGranted:
    mover: int


@dataclass(frozen=True)
class VoidThirdSix:
    mover: int


Event = Moved | Captured | Promoted | ExtraGranted | VoidThirdSix


def legal_actions(state: GameState, mover: int, pool: DicePool) -> list[tuple[int, int]]:
    """All (die_index, token_index) pairs ``mover`` may play from ``pool``.

    Ordered die-major in rolled order. Empty means the pick is forfeited.
    """
    mine = state.positions[mover]
    out = []
    for i, v in enumerate(pool.values):
        if not pool.taken[i]:
            for t in range(4):
                if mine[t] + v <= HOME:
                    out.append((i, t))
    return out


def _move(board: Board, positions, scores, bonus, mover: int, token: int, value: int):
    """Advance one token; returns (victims, promoted).

    Victims are (seat, token, position lost) triples; their tokens reset to
    the start square and their accrued points vanish with them.
    """
    old = positions[mover][token]
    target = old + value
    if target > HOME:
        raise ValueError(
            f"illegal move: seat {mover} token {token} at {old} cannot use {value}"
        )
    victims = ()
    if target <= 50:
        raw = board.capture_victims(positions, mover, target)
        if raw:
            victims = tuple((o, t, positions[o][t]) for o, t in raw)
            for o, t, q in victims:
                positions[o][t] = 0
                scores[o] -= q
    positions[mover][token] = target
    scores[mover] += value
    promoted = target == HOME
    if promoted:
        bonus[mover] += 1
        scores[mover] += HOME_BONUS
    return victims, promoted


def _move_token(state: GameState, mover: int, token: int, value: int):
    return _move(
        state.board, state.positions, state.scores, state.bonus, mover, token, value
    )


def apply_action(
    state: GameState, mover: int, die_index: int, token_index: int
) -> list[Event]:
    """Play one pool pick: consume the die, move the token, report events.

    The action must be legal against ``state.pool``. At most one ExtraGranted
    is emitted per action, whether it came from the six, a capture, a
    promotion, or several at once; the caller runs the chain.
    """
    pool = state.pool
    if pool is None:
        raise ValueError("no dice pool active")
    value = pool.take(die_index)
    src = state.positions[mover][token_index]
    victims, promoted = _move_token(state, mover, token_index, value)
    events: list[Event] = [Moved(mover, token_index, value, src, src + value)]
    if victims:
        events.append(Captured(mover, victims))
    if promoted:
        events.append(Promoted(mover, token_index))
    if value == 6 or victims or promoted:
        events.append(ExtraGranted(mover))
    return events


def run_extra_chain(
    state: GameState,
    mover: int,
    six_count_so_far: int,
    choose: Callable[[GameState, int, "tuple[tuple[int, int], ...]"], tuple[int, int] | None],
    transcript: list[str] | None = None,
    extra_index: int = 1,
) -> list[Event]:
    """Run a mover's extra-move chain to completion.

    Each link rolls one fresh die, handed to ``choose`` as a one-die pool
    ``((0, value),)``. A six that would be the mover's third consecutive six
    is void: no move, chain over. A die with no legal token is wasted and
    ends the chain; otherwise the chosen token moves, and the link grants a
    further link on a six, capture or promotion.
    """
    events: list[Event] = []
    six_count = six_count_so_far
    k = extra_index
    turn = state.turn_index
    while True:
        value = state.roll()
        if value == 6 and six_count == 2:
            events.append(VoidThirdSix(mover))
            if transcript is not None:
                transcript.append(f"{turn}\t{mover}\textra:{k}\t6\t-\t-\t-\tV")
            return events
        six_count = six_count + 1 if value == 6 else 0
        action = choose(state, mover, ((0, value),))
        if action is None:
            if transcript is not None:
                transcript.append(f"{turn}\t{mover}\textra:{k}\t{value}\t-\t-\t-\t")
            return events
        _, token = action
        src = state.positions[mover][token]
        victims, promoted = _move_token(state, mover, token, value)
        events.append(Moved(mover, token, value, src, src + value))
        if victims:
            events.append(Captured(mover, victims))
        if promoted:
            events.append(Promoted(mover, token))
        again = value == 6 or bool(victims) or promoted
        if again:
            events.append(ExtraGranted(mover))
        if transcript is not None:
            flags = _flags(bool(victims), promoted, again, False)
            transcript.append(
                f"{turn}\t{mover}\textra:{k}\t{value}\t{token}\t{src}\t{src + value}\t{flags}"
            )
        if not again:
            return events
        k += 1


def _flags(captured: bool, promoted: bool, extra: bool, void: bool) -> str:
    out = ""
    if captured:
        out += "C"
    if promoted:
        out += "P"
    if extra:
        out += "X"
    if void:
        out += "V"
    return out


@dataclass(frozen=True)
class GameResult:
    points: tuple[int, ...]
    winner: int | None  # None on a draw

    @property
    def draw(self) -> bool:
        return self.winner is None


def _finish(state: GameState) -> GameResult:
    scores = state.scores
    best = max(scores)
    leaders = [i for i, s in enumerate(scores) if s == best]
    winner = leaders[0] if len(leaders) == 1 else None
    return GameResult(tuple(scores), winner)


def play_game(
    config: GameConfig,
    profile: Sequence[StrategyKind],
    game_seed: int,
    *,
    transcript: list[str] | None = None,
    roll: Callable[[], int] | None = None,
) -> GameResult:
    """Play one full game; deterministic in (config, profile, game_seed).

    ``transcript``, when given, receives one tab-separated line per die
    consumed: turn, mover, source ("pool:i" or "extra:k"), die value, token,
    from-pos, to-pos, flags (C capture, P promote, X extra granted, V void
    third six). Forfeits and wasted extra dice log "-" for the token fields.
    ``roll`` overrides the die source (testing hook); by default dice come
    from a splitmix64 stream seeded with ``game_seed``.
    """
    if len(profile) != config.seats:
        raise ValueError(f"profile needs {config.seats} strategies, got {len(profile)}")
    state = new_game(config, game_seed)
    if roll is not None:
        state.roll = roll
    board = state.board
    positions = state.positions
    memories = [fresh_memory(kind) for kind in profile]
    choosers = [
        seat_chooser(profile[s], board, positions, s, memories[s])
        for s in range(config.seats)
    ]
    variant = config.variant
    dice_per_turn = config.dice_per_turn
    roll_die = state.roll

    def chain_choose(st: GameState, mover: int, dice):
        return choosers[mover](dice)

    for turn in range(config.turns):
        state.turn_index = turn
        if dice_per_turn == 3:
            values = (roll_die(), roll_die(), roll_die())
        else:
            values = (roll_die(), roll_die(), roll_die(), roll_die(), roll_die())
        avail = list(enumerate(values))
        for mover in pick_sequence(variant, turn):
            action = choosers[mover](avail)
            if action is None:
                # no legal pair: forfeit, burning the lowest-index die left
                i, value = avail.pop(0)
                if transcript is not None:
                    transcript.append(
                        f"{turn}\t{mover}\tpool:{i}\t{value}\t-\t-\t-\t"
                    )
                continue
            i, token = action
            value = 0
            for k in range(len(avail)):
                if avail[k][0] == i:
                    value = avail[k][1]
                    del avail[k]
                    break
            if value == 0:
                raise ValueError(f"die {i} already taken")
            src = positions[mover][token]
            victims, promoted = _move_token(state, mover, token, value)
            six = value == 6
            extra = six or bool(victims) or promoted
            if transcript is not None:
                transcript.append(
                    f"{turn}\t{mover}\tpool:{i}\t{value}\t{token}\t{src}\t{src + value}\t"
                    f"{_flags(bool(victims), promoted, extra, False)}"
                )
            if extra:
                run_extra_chain(
                    state, mover, 1 if six else 0, chain_choose, transcript
                )
    return _finish(state)
