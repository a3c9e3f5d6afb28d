"""Board geometry for the shared 52-cell loop and private home columns.

Path positions are seat-relative integers 0..56: 0 is the seat's start square,
1..50 the remaining shared-loop stretch, 51..55 the private home column, and
56 the home square. Loop cells are absolute integers 0..51; each seat enters
the loop at its own offset, so two tokens of different seats share a physical
cell exactly when their offset-shifted positions coincide mod 52.

All occupancy queries are pure functions over a caller-supplied positions
snapshot (a sequence per seat of four path positions); nothing here mutates.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

LOOP_CELLS = 52
LAST_LOOP_POS = 50
HOME_COLUMN_START = 51
HOME = 56
TOKENS_PER_SEAT = 4

# Loop entry offsets by seat count, in turn order.
_OFFSETS: dict[int, tuple[int, ...]] = {
    2: (0, 26),
    4: (0, 13, 26, 39),
}


@dataclass(frozen=True)
class Seat:
    index: int
    loop_offset: int


class LandingKind(Enum):
    PLAIN = "plain"
    CAPTURE = "capture"
    HOME_COLUMN = "home_column"
    PROMOTED = "promoted"


@dataclass(frozen=True)
class LandingOutcome:
    kind: LandingKind
    # (seat_index, token_index) pairs, seat-major ascending; empty unless CAPTURE
    victims: tuple[tuple[int, int], ...] = ()


class Board:
    """Geometry for a 2- or 4-seat game; occupancy comes in as arguments."""

    def __init__(self, seat_count: int) -> None:
        if seat_count not in _OFFSETS:
            raise ValueError(f"unsupported seat count {seat_count}")
        offsets = _OFFSETS[seat_count]
        self.seat_count = seat_count
        self.seats = tuple(Seat(i, off) for i, off in enumerate(offsets))
        self.offsets = offsets
        self.start_cells = frozenset(offsets)
        # delta[m][o]: shift taking seat o's path coordinate into seat m's frame
        self.delta = tuple(
            tuple((offsets[o] - offsets[m]) % LOOP_CELLS for o in range(seat_count))
            for m in range(seat_count)
        )
        # per seat: path positions 1..50 whose landing cell is some start cell
        self.start_targets = tuple(
            frozenset(
                (off - offsets[m]) % LOOP_CELLS
                for off in offsets
                if 1 <= (off - offsets[m]) % LOOP_CELLS <= LAST_LOOP_POS
            )
            for m in range(seat_count)
        )
        self._others = tuple(
            tuple(o for o in range(seat_count) if o != m) for m in range(seat_count)
        )

    def to_loop_cell(self, seat: int, pos: int) -> int | None:
        """Absolute loop cell for a path position, or None past the loop exit."""
        if 0 <= pos <= LAST_LOOP_POS:
            return (self.offsets[seat] + pos) % LOOP_CELLS
        return None

    def is_capture_protected(self, positions, cell: int, defender: int) -> bool:
        """True if tokens of ``defender`` standing on ``cell`` cannot be captured.

        Start cells protect unconditionally; elsewhere a seat is protected by
        stacking two or more of its own tokens on the cell. Stacks never block
        movement, they only shield their members.
        """
        if cell in self.start_cells:
            return True
        off = self.offsets[defender]
        n = 0
        for p in positions[defender]:
            if 0 <= p <= LAST_LOOP_POS and (off + p) % LOOP_CELLS == cell:
                n += 1
        return n >= 2

    def capture_victims(self, positions, mover: int, target: int) -> tuple[tuple[int, int], ...]:
        """Opponent tokens a move of ``mover`` to ``target`` would capture.

        Empty for non-loop targets, protected cells, and empty cells. Victims
        are ordered by (seat, token) ascending.
        """
        if not 1 <= target <= LAST_LOOP_POS:
            return ()
        if target in self.start_targets[mover]:
            return ()
        delta_row = self.delta[mover]
        victims: list[tuple[int, int]] = []
        for o in self._others[mover]:
            delta = delta_row[o]
            opp = positions[o]
            hits_0 = -1
            count = 0
            for t in range(TOKENS_PER_SEAT):
                q = opp[t]
                if 1 <= q <= LAST_LOOP_POS:
                    s = q + delta
                    if s >= LOOP_CELLS:
                        s -= LOOP_CELLS
                    if s == target:
                        count += 1
                        if count == 1:
                            hits_0 = t
                        else:
                            break  # 2-stack: protected, no victims from this seat
            if count == 1:
                victims.append((o, hits_0))
            elif count > 1:
                continue
        return tuple(victims)

    def resolve_landing(self, positions, mover: int, target: int) -> LandingOutcome:
        """Classify the landing of ``mover`` on path position ``target``."""
        if not 1 <= target <= HOME:
            raise ValueError(f"target {target} outside 1..{HOME}")
        if target == HOME:
            return LandingOutcome(LandingKind.PROMOTED)
        if target >= HOME_COLUMN_START:
            return LandingOutcome(LandingKind.HOME_COLUMN)
        victims = self.capture_victims(positions, mover, target)
        if victims:
            return LandingOutcome(LandingKind.CAPTURE, victims)
        return LandingOutcome(LandingKind.PLAIN)


def token_points(pos: int) -> int:
    """Accrued points of a single token: its position, plus 56 once home."""
    return pos + HOME if pos == HOME else pos


_BOARD_CACHE: dict[int, Board] = {}


def board_for(seat_count: int) -> Board:
    """Shared immutable Board instance for a seat count."""
    board = _BOARD_CACHE.get(seat_count)
    if board is None:
        board = _BOARD_CACHE[seat_count] = Board(seat_count)
    return board
