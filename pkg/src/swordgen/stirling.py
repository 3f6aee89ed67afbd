"""
Loopless generation of the words avoiding 212, in an order where every
transition bumps the full run of some value past exactly one smaller digit.

The engine keeps, per value v: the index of its leftmost copy (`left`),
the number of smaller digits to the right of its run (`inv`), a focus
pointer (`fs`), and a travel direction (`dirs`).  Each step touches a
constant number of array cells, so the delay between visits is O(1)
regardless of word length.  Every visited word keeps the copies of each
value adjacent-or-separated only by smaller digits, which is exactly
avoidance of 212.

The same loop is mirrored by an array kernel (see `kernels`) for bulk
counting and benchmarking; this module is the reference implementation
and also produces the per-visit variable trace.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from . import kernels, oracle
from .bumps import LEFT, RIGHT, BumpMove
from .greedy import EXHAUSTED, GrayCodeRun
from .words import Shape, Word, make_shape, nondecreasing_word


def _loopless(shape: Shape, on_visit) -> int:
    """Drive the loop, reporting full live state at every visit.

    `on_visit(perm, v, u, i, j, left, inv, fs, dirs)` sees the 0-based
    word list plus the 1-based bookkeeping arrays (slot 0 unused) exactly
    as they stand when the visit fires: the move described by (v, u, i, j)
    is applied to `perm` right after the callback returns.  The final
    visit passes v = 1 and u = i = j = None.  Returns the visit count.
    """
    m = shape.m
    s = (0,) + shape.multiplicities
    t = (0,) + shape.prefix
    perm = list(nondecreasing_word(shape))
    left = [0] + [t[v] + 1 for v in range(1, m + 1)]
    inv = [0] * (m + 1)
    fs = list(range(m + 1))
    dirs = [-1] * (m + 1)
    count = 0
    v = fs[m]
    while v > 1:
        d = dirs[v]
        if d == 1:
            i = left[v]
            j = left[v] + s[v]
        else:
            i = left[v] + s[v] - 1
            j = left[v] - 1
        u = perm[j - 1]
        on_visit(perm, v, u, i, j, left, inv, fs, dirs)
        count += 1
        perm[i - 1] = u
        perm[j - 1] = v
        left[v] += d
        if left[u] == j:
            left[u] -= d * s[v]
        inv[v] -= d
        if inv[v] == 0 or inv[v] == t[v]:
            dirs[v] = -d
            fs[v] = fs[v - 1]
            fs[v - 1] = v - 1
        v = fs[m]
        fs[m] = m
    on_visit(perm, v, None, None, None, left, inv, fs, dirs)
    return count + 1


def generate_loopless(shape: Shape, visit: Callable[[list[int]], None]) -> int:
    """Feed every word to `visit` and return how many there were.

    The consumer receives the live word list; it must copy if it keeps a
    reference, which keeps the generator itself allocation-free per step.
    """
    return _loopless(shape, lambda perm, *_: visit(perm))


def stirling_sequence(shape: Shape, backend: str | None = None) -> list[Word]:
    """The full visit order as tuples.

    >>> stirling_sequence(make_shape((1, 2)), backend="python")
    [(1, 2, 2), (2, 2, 1)]
    """
    if kernels.resolve_backend(backend) == "numba" and kernels.supported(shape):
        codes, _, _, _ = kernels.stirling_run(shape, oracle.stirling_count(shape), backend)
        return kernels.codes_to_words(codes, shape.n)
    out: list[Word] = []
    generate_loopless(shape, lambda perm: out.append(tuple(perm)))
    return out


def _move_from_state(s, t, v: int, d: int, i: int) -> BumpMove:
    # the run of v moves one step: anchored left when heading right, and
    # conversely; in both cases i is the anchor position
    if d == 1:
        return BumpMove(rank=t[v] + 1, dir=RIGHT, width=s[v], distance=1, anchor=i)
    return BumpMove(rank=t[v] + s[v], dir=LEFT, width=s[v], distance=1, anchor=i)


def loopless_run(shape: Shape) -> GrayCodeRun:
    """Collect the sequence as a GrayCodeRun, deriving each move in O(1)
    from the live state instead of re-classifying word pairs."""
    s = (0,) + shape.multiplicities
    t = (0,) + shape.prefix
    words: list[Word] = []
    moves: list[BumpMove] = []

    def grab(perm, v, u, i, j, left, inv, fs, dirs):
        words.append(tuple(perm))
        if u is not None:
            moves.append(_move_from_state(s, t, v, dirs[v], i))

    _loopless(shape, grab)
    return GrayCodeRun(
        shape,
        oracle.STIRLING_PATTERNS,
        tuple(words),
        tuple(moves),
        True,
        EXHAUSTED,
    )


@dataclass(frozen=True)
class TraceRow:
    """One visit's variables; the last row has no move, so u/i/j are None."""

    perm: Word
    v: int
    u: Optional[int]
    i: Optional[int]
    j: Optional[int]
    left: tuple[int, ...]
    inv: tuple[int, ...]
    fs: tuple[int, ...]
    dirs: tuple[int, ...]


def trace(shape: Shape) -> list[TraceRow]:
    """Per-visit snapshots of (perm, v, u, i, j, left, inv, fs, dirs)."""
    rows: list[TraceRow] = []

    def grab(perm, v, u, i, j, left, inv, fs, dirs):
        rows.append(
            TraceRow(
                perm=tuple(perm),
                v=v,
                u=u,
                i=i,
                j=j,
                left=tuple(left[1:]),
                inv=tuple(inv[1:]),
                fs=tuple(fs[1:]),
                dirs=tuple(dirs[1:]),
            )
        )

    _loopless(shape, grab)
    return rows


def step_stats(shape: Shape, backend: str | None = None) -> tuple[int, int]:
    """(visit count, max primitive steps spent between visits): the step
    maximum stays constant across shapes, which is the loopless claim in
    checkable form."""
    return kernels.stirling_step_stats(shape, backend)
