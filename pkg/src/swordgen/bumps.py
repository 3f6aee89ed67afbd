"""
The bump move algebra.

A bump moves a run of equal digits past an adjacent block of strictly
smaller digits, the two blocks exchanging places with internal order
preserved.  A right-bump anchors the run's left end (the run extends
rightward from the anchor); a left-bump anchors the run's right end.  The
anchor digit is addressed by its rank.  Width-1 bumps are jumps,
distance-1 bumps are transpositions, and width-1 distance-1 bumps are
plain swaps.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from .words import (
    RunSpan,
    Word,
    left_run,
    rank_of,
    rank_positions,
    right_run,
    shape_of_word,
)

RIGHT = "R"
LEFT = "L"


class BumpError(ValueError):
    """Raised when a requested bump does not apply."""


@dataclass(frozen=True)
class BumpMove:
    """One Gray-code transition: which rank moved, where, and how far."""

    rank: int
    dir: str
    width: int
    distance: int
    anchor: int

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "dir": self.dir,
            "width": self.width,
            "distance": self.distance,
            "anchor": self.anchor,
        }

    @classmethod
    def from_json(cls, payload: dict) -> "BumpMove":
        return cls(
            rank=payload["rank"],
            dir=payload["dir"],
            width=payload["width"],
            distance=payload["distance"],
            anchor=payload["anchor"],
        )


def _run_at(word: Word, rank: int, direction: str) -> RunSpan:
    shape = shape_of_word(word)
    anchor = rank_positions(shape, word)[rank - 1]
    if direction == RIGHT:
        return right_run(word, anchor)
    if direction == LEFT:
        return left_run(word, anchor)
    raise BumpError(f"direction must be {RIGHT!r} or {LEFT!r}, got {direction!r}")


def _shift(word: Word, span: RunSpan, direction: str, distance: int) -> Word:
    # exchange the run block with the adjacent block of passed digits
    lo, hi = span.lo - 1, span.hi - 1
    run = word[lo : hi + 1]
    if direction == RIGHT:
        passed = word[hi + 1 : hi + 1 + distance]
        return word[:lo] + passed + run + word[hi + 1 + distance :]
    passed = word[lo - distance : lo]
    return word[: lo - distance] + run + passed + word[hi + 1 :]


def apply_bump(word: Word, rank: int, direction: str, distance: int) -> tuple[Word, BumpMove]:
    """Apply one bump, returning the new word and the move record.

    >>> apply_bump((1, 1, 2, 1, 1, 3, 3, 3, 1, 1), 9, "L", 4)[0]
    (1, 3, 3, 1, 2, 1, 1, 3, 1, 1)
    """
    if distance < 1:
        raise BumpError(f"distance must be >= 1, got {distance}")
    span = _run_at(word, rank, direction)
    v = span.value
    n = len(word)
    for step in range(1, distance + 1):
        p = span.hi + step if direction == RIGHT else span.lo - step
        if not 1 <= p <= n:
            raise BumpError(
                f"bump of rank {rank} dir {direction} distance {distance} runs off the word"
            )
        if word[p - 1] >= v:
            raise BumpError(
                f"digit {word[p - 1]} at position {p} is not smaller than {v}; bump blocked"
            )
    anchor = span.lo if direction == RIGHT else span.hi
    move = BumpMove(rank=rank, dir=direction, width=span.width, distance=distance, anchor=anchor)
    return _shift(word, span, direction, distance), move


def max_pass(word: Word, rank: int, direction: str) -> int:
    """Largest feasible bump distance for this rank and direction (0 if
    the run sits at the boundary or against a digit that is not smaller).

    >>> max_pass((3, 3, 3, 1, 1, 2), 3, "L")
    2
    """
    span = _run_at(word, rank, direction)
    return _block_pass(word, span.lo, span.hi, span.value, direction)


def _block_pass(word: Word, lo: int, hi: int, v: int, direction: str) -> int:
    n = len(word)
    d = 0
    while True:
        p = hi + d + 1 if direction == RIGHT else lo - d - 1
        if not 1 <= p <= n or word[p - 1] >= v:
            return d
        d += 1


def minimal_bump(
    word: Word, rank: int, direction: str, member: Callable[[Word], bool]
) -> Optional[tuple[int, Word, BumpMove]]:
    """Smallest-distance bump whose result satisfies `member`, or None.

    The minimization is over language membership alone; callers wanting
    only unvisited results filter afterwards.
    """
    limit = max_pass(word, rank, direction)
    span = _run_at(word, rank, direction)
    anchor = span.lo if direction == RIGHT else span.hi
    for d in range(1, limit + 1):
        result = _shift(word, span, direction, d)
        if member(result):
            move = BumpMove(rank=rank, dir=direction, width=span.width, distance=d, anchor=anchor)
            return d, result, move
    return None


def apply_jump(word: Word, i: int, direction: str, distance: int) -> Word:
    """Move the single digit at index i past `distance` smaller digits.

    Unlike a bump, the digit travels alone even when it sits in a run; an
    equal neighbour blocks it.
    """
    if distance < 1:
        raise BumpError(f"distance must be >= 1, got {distance}")
    v = word[i - 1]
    if _block_pass(word, i, i, v, direction) < distance:
        raise BumpError(f"jump of {distance} from index {i} dir {direction} is blocked")
    return _shift(word, RunSpan(i, i, v), direction, distance)


def maximum_jump(word: Word, i: int, direction: str) -> Optional[Word]:
    """Jump the digit at index i past all the smaller digits it can reach;
    None when it cannot move at all.

    >>> maximum_jump((1, 2, 3), 3, "L")
    (3, 1, 2)
    """
    v = word[i - 1]
    d = _block_pass(word, i, i, v, direction)
    if d == 0:
        return None
    return _shift(word, RunSpan(i, i, v), direction, d)


def classify_move(word: Word, word2: Word) -> Optional[BumpMove]:
    """Recover the unique bump transforming `word` into `word2`, or None
    when the pair does not differ by exactly one bump.

    >>> classify_move((1, 1, 2, 3, 3, 3), (1, 1, 3, 3, 3, 2))
    BumpMove(rank=6, dir='L', width=3, distance=1, anchor=6)
    """
    if len(word) != len(word2) or sorted(word) != sorted(word2):
        raise BumpError("words do not share a shape")
    if word == word2:
        return None
    lo = 0
    while word[lo] == word2[lo]:
        lo += 1
    hi = len(word) - 1
    while word[hi] == word2[hi]:
        hi -= 1
    if word[lo] > word2[lo]:
        # the larger run moved right: it heads the window in the source
        v = word[lo]
        width = 0
        while lo + width <= hi and word[lo + width] == v:
            width += 1
        passed = word[lo + width : hi + 1]
        if (
            passed
            and all(x < v for x in passed)
            and word2[lo : hi + 1] == passed + (v,) * width
        ):
            anchor = lo + 1
            shape = shape_of_word(word)
            return BumpMove(
                rank=rank_of(shape, word, anchor),
                dir=RIGHT,
                width=width,
                distance=len(passed),
                anchor=anchor,
            )
        return None
    # the larger run moved left: it tails the window in the source
    v = word[hi]
    width = 0
    while hi - width >= lo and word[hi - width] == v:
        width += 1
    passed = word[lo : hi + 1 - width]
    if passed and all(x < v for x in passed) and word2[lo : hi + 1] == (v,) * width + passed:
        anchor = hi + 1
        shape = shape_of_word(word)
        return BumpMove(
            rank=rank_of(shape, word, anchor),
            dir=LEFT,
            width=width,
            distance=len(passed),
            anchor=anchor,
        )
    return None
