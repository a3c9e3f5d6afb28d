"""Decision policies for the three bot strategies.

A policy is a pure function from an observation (and, for the pair strategy,
a small per-game memory) to one action: ``(die_index, token_index)`` against
the untaken dice of the current pool, or ``None`` when no legal move exists.
No policy uses randomness; ties inside a tier break to the lowest token index,
then the lowest die index, except where a tier explicitly wants the highest
die value.

Positions are seat-relative path positions 0..56 (see the board module). A
move of ``v`` from position ``p`` is legal iff ``p + v <= 56``; landing on 56
promotes the token.

The policies are built by ``seat_chooser``, a factory that binds one seat's
view of the game (its tokens, each opponent's tokens with the frame shift,
the safe start cells) into a closure called once per decision with just the
untaken dice. The engine keeps these closures for the whole game; ``decide``
builds a throwaway one per call.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Sequence

from .board import HOME, Board

# Path position where the pair strategy switches from build-up to the run home.
TURNPOINT = 27


class StrategyKind(Enum):
    NAIVE = "N"
    AGGRESSIVE = "A"
    RESPONSIBLE_PAIR = "RP"

    @property
    def rank(self) -> int:
        return _RANK[self]

    @classmethod
    def parse(cls, text: str) -> "StrategyKind":
        try:
            return _BY_CODE[text.strip().upper()]
        except KeyError:
            raise ValueError(f"unknown strategy {text!r} (expected N, A or RP)") from None

    def __str__(self) -> str:
        return self.value


# Canonical ordering used for sweeps and table rows: N < A < RP.
STRATEGY_ORDER: tuple[StrategyKind, ...] = (
    StrategyKind.NAIVE,
    StrategyKind.AGGRESSIVE,
    StrategyKind.RESPONSIBLE_PAIR,
)
_RANK = {kind: i for i, kind in enumerate(STRATEGY_ORDER)}
_BY_CODE = {kind.value: kind for kind in STRATEGY_ORDER}


@dataclass(slots=True)
class Observation:
    """What a mover sees when asked to pick a die and token.

    ``positions`` is a live per-seat view of all token path positions and must
    be treated as read-only. ``dice`` holds the untaken pool dice as
    ``(die_index, value)`` pairs in rolled order.
    """

    board: Board
    mover: int
    positions: Sequence[Sequence[int]]
    dice: tuple[tuple[int, int], ...]
    turn_index: int

    def token_points(self, seat: int, token: int) -> int:
        p = self.positions[seat][token]
        return p + HOME if p == HOME else p


@dataclass
class RpMemory:
    """Per-game rotation state for the responsible-pair strategy.

    ``rotation`` holds the pair currently shuttling toward the turnpoint,
    ``queue`` the reserves that replace a pair member once it crosses, and
    ``last_moved`` whichever token the rotation tiers moved most recently.
    """

    rotation: list[int] = field(default_factory=lambda: [0, 1])
    queue: list[int] = field(default_factory=lambda: [2, 3])
    last_moved: int | None = None

    @classmethod
    def fresh(cls) -> "RpMemory":
        return cls()


def fresh_memory(kind: StrategyKind) -> RpMemory | None:
    return RpMemory.fresh() if kind is StrategyKind.RESPONSIBLE_PAIR else None


def choose_naive(obs: Observation) -> tuple[int, int] | None:
    """First untaken die in rolled order, first token index able to use it."""
    return seat_chooser(StrategyKind.NAIVE, obs.board, obs.positions, obs.mover, None)(
        obs.dice
    )


def choose_aggressive(obs: Observation) -> tuple[int, int] | None:
    """Promote, else capture, else enter the home column, else push hard.

    Capture candidates prefer the largest total of victim points; the final
    tier moves the first movable token with its highest legal die.
    """
    return seat_chooser(
        StrategyKind.AGGRESSIVE, obs.board, obs.positions, obs.mover, None
    )(obs.dice)


def choose_rp(obs: Observation, memory: RpMemory) -> tuple[int, int] | None:
    """Paired build-up behind the turnpoint, then a guarded run home.

    Tier order: promote; capture (never crossing the turnpoint from below to
    do it); land on a safe cell; if an opponent token has reached its home
    stretch, push the own highest-value token; chase an opponent within six
    steps of a reserve token; otherwise rotate the current pair up to the
    turnpoint, or alternate the lead pair once everything has crossed.
    """
    return seat_chooser(
        StrategyKind.RESPONSIBLE_PAIR, obs.board, obs.positions, obs.mover, memory
    )(obs.dice)


def decide(
    kind: StrategyKind, obs: Observation, memory: RpMemory | None = None
) -> tuple[int, int] | None:
    """Dispatch to the policy for ``kind``; deterministic in (obs, memory)."""
    return seat_chooser(kind, obs.board, obs.positions, obs.mover, memory)(obs.dice)


def seat_chooser(
    kind: StrategyKind,
    board: Board,
    positions: Sequence[Sequence[int]],
    mover: int,
    memory: RpMemory | None,
) -> Callable[[Sequence[tuple[int, int]]], tuple[int, int] | None]:
    """Bind a seat's policy over live state; the result maps dice to an action.

    The closures read ``positions`` afresh on every call, so one chooser per
    seat stays valid for a whole game as the engine mutates the lists in
    place.
    """
    mine = positions[mover]

    if kind is StrategyKind.NAIVE:

        def naive(dice):
            for i, v in dice:
                for t in range(4):
                    if mine[t] + v <= HOME:
                        return i, t
            return None

        return naive

    delta_row = board.delta[mover]
    opponents = tuple(
        (positions[o], delta_row[o]) for o in range(board.seat_count) if o != mover
    )
    start_targets = board.start_targets[mover]

    if kind is StrategyKind.AGGRESSIVE:

        def aggressive(dice):
            for t in range(4):
                p = mine[t]
                if p < 50:
                    continue
                for i, v in dice:
                    if p + v == HOME:
                        return i, t

            # one occupancy pass: landing position -> total capturable points
            # (a two-stack shields its seat, other seats' singletons still fall)
            cap: dict[int, int] = {}
            if len(opponents) == 1:
                opp, delta = opponents[0]
                for q in opp:
                    if 1 <= q <= 50:
                        s = q + delta
                        if s >= 52:
                            s -= 52
                        if 1 <= s <= 50 and s not in start_targets:
                            cap[s] = -1 if s in cap else q
            else:
                for opp, delta in opponents:
                    seen: dict[int, int] = {}
                    for q in opp:
                        if 1 <= q <= 50:
                            s = q + delta
                            if s >= 52:
                                s -= 52
                            if 1 <= s <= 50 and s not in start_targets:
                                seen[s] = -1 if s in seen else q
                    for s, q in seen.items():
                        if q >= 0:
                            cap[s] = cap.get(s, 0) + q
            if cap:
                best = None
                best_pts = -1
                for t in range(4):
                    p = mine[t]
                    for i, v in dice:
                        pts = cap.get(p + v)
                        if pts is not None and pts > best_pts:
                            best, best_pts = (i, t), pts
                if best is not None:
                    return best

            for t in range(4):
                p = mine[t]
                if 45 <= p <= 54:
                    for i, v in dice:
                        if 51 <= p + v <= 55:
                            return i, t

            return _push_first_token(mine, dice)

        return aggressive

    mem = memory if memory is not None else RpMemory.fresh()

    def responsible_pair(dice):
        if not dice:
            return None

        for t in range(4):
            p = mine[t]
            if p < 50:
                continue
            for i, v in dice:
                if p + v == HOME:
                    return i, t

        # one occupancy pass feeding three tiers: capturable landings,
        # opponent loop cells for the chase, and the endgame trigger
        cap: dict[int, bool] = {}
        cells: list[int] = []
        endgame = False
        if len(opponents) == 1:
            # single opponent: its own stacks are the only shields, so a
            # second hit on a cell can demote the entry in place
            opp, delta = opponents[0]
            for q in opp:
                if q >= 51:
                    endgame = True
                elif q >= 1:
                    s = q + delta
                    if s >= 52:
                        s -= 52
                    cells.append(s)
                    if 1 <= s <= 50 and s not in start_targets:
                        cap[s] = s not in cap
        else:
            for opp, delta in opponents:
                seen: dict[int, bool] = {}
                for q in opp:
                    if q >= 51:
                        endgame = True
                    elif q >= 1:
                        s = q + delta
                        if s >= 52:
                            s -= 52
                        cells.append(s)
                        if 1 <= s <= 50 and s not in start_targets:
                            seen[s] = s in seen
                for s, multi in seen.items():
                    if not multi:
                        cap[s] = True
        if cap:
            for t in range(4):
                p = mine[t]
                for i, v in dice:
                    target = p + v
                    if target <= 50 and cap.get(target) and not (p < TURNPOINT < target):
                        return i, t

        mine_set = set(mine)
        for t in range(4):
            p = mine[t]
            if p >= HOME:
                continue
            for i, v in dice:
                target = p + v
                if target > HOME:
                    continue
                if 51 <= target <= 55:
                    return i, t
                if target in start_targets:
                    return i, t
                # a friend already on the target cell makes the landing a
                # stack; the mover itself sits at p < target, so any match
                # is a friend
                if target <= 50 and target in mine_set:
                    return i, t

        if endgame:
            for _, t in sorted((-mine[t], t) for t in range(4)):
                p = mine[t]
                if p >= HOME:
                    continue
                pick = _best_die_for(p, dice)
                if pick is not None:
                    return pick, t

        # chase: walk reserve token 2 or 3 up behind an opponent within six
        if cells:
            for t in (2, 3):
                p = mine[t]
                if p > 50:
                    continue
                gaps: set[int] = set()
                for c in cells:
                    g = (c - p) % 52
                    if 1 <= g <= 6 and p + g <= 50:
                        gaps.add(g)
                for g in sorted(gaps):
                    pick = None
                    best_v = 0
                    for i, v in dice:
                        if v <= g and v > best_v:
                            pick, best_v = i, v
                    if pick is not None:
                        return pick, t

        if mine[0] < TURNPOINT or mine[1] < TURNPOINT or mine[2] < TURNPOINT or mine[3] < TURNPOINT:
            cur = _rotation_current(mem, mine)
            if cur is not None:
                p = mine[cur]
                pick = None
                best_v = -1
                for i, v in dice:
                    if p + v <= TURNPOINT and v > best_v:
                        pick, best_v = i, v
                # When every die would push the rotation token past the
                # turnpoint there is no disciplined move; the general
                # fallback takes over.
                if pick is not None:
                    mem.last_moved = cur
                    return pick, cur
        else:
            order = (1, 0) if mem.last_moved == 0 else (0, 1)
            for t in order:
                p = mine[t]
                if p >= HOME:
                    continue
                pick = _best_die_for(p, dice)
                if pick is not None:
                    mem.last_moved = t
                    return pick, t

        return _push_first_token(mine, dice)

    return responsible_pair


def _best_die_for(p: int, dice) -> int | None:
    """Index of the highest-value die legal from ``p`` (lowest index on ties)."""
    pick = None
    best_v = 0
    for i, v in dice:
        if p + v <= HOME and v > best_v:
            pick, best_v = i, v
    return pick


def _push_first_token(mine, dice) -> tuple[int, int] | None:
    for t in range(4):
        p = mine[t]
        pick = _best_die_for(p, dice)
        if pick is not None:
            return pick, t
    return None


def _rotation_current(memory: RpMemory, mine) -> int | None:
    """Refresh the rotation pair against current positions, return the next mover.

    Members that crossed the turnpoint leave the pair and are replaced from
    the reserve queue; if the queue is spent, any token still behind the
    turnpoint (a capture victim sent back to start, say) can fill the slot.
    """
    rot = memory.rotation
    # rebuild only when a member actually crossed; most calls change nothing
    for t in rot:
        if mine[t] >= TURNPOINT:
            rot[:] = [u for u in rot if mine[u] < TURNPOINT]
            break
    while len(rot) < 2 and memory.queue:
        t = memory.queue.pop(0)
        if mine[t] < TURNPOINT and t not in rot:
            rot.append(t)
    if len(rot) < 2:
        for t in range(4):
            if mine[t] < TURNPOINT and t not in rot:
                rot.append(t)
                if len(rot) == 2:
                    break
    if not rot:
        return None
    if len(rot) >= 2 and memory.last_moved == rot[0]:
        return rot[1]
    return rot[0]
