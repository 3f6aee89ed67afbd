"""
Greedy bump generation of pattern-avoiding word languages.

At each step the engine considers, for every digit and direction, the
minimal bump (least distance keeping the result in the language) whose
result has not been visited, and applies the one whose moving block
carries the largest rank, i.e. the rank of the block's leading digit;
rightward beats leftward on ties, and the narrower block wins what
remains.  It halts when no such bump exists.
Started from the nondecreasing word of a zig-zag language this yields a
bump Gray code; on other languages the run may stop early, which is
reported rather than raised.

Also here: Gray-code verification, and the parent/children machinery that
relates a language to the one obtained by deleting the rightmost copy of
the largest value from every word.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

import numpy as np

from . import kernels, oracle
from .bumps import LEFT, RIGHT, BumpMove, classify_move
from .bumps import _block_pass, _shift  # shared move primitives
from .oracle import Language, SizeLimitError
from .patterns import LanguageSpec, avoids_all, normalize_patterns
from .words import (
    Shape,
    Word,
    WordError,
    left_run,
    nondecreasing_word,
    rank_positions,
    right_run,
    validate_word,
)

EXHAUSTED = "exhausted"
NO_NEW_BUMP = "no-new-bump"


class InvalidStartError(ValueError):
    """Raised when the requested start word is outside the language."""


@dataclass(frozen=True)
class GrayCodeRun:
    """A visit sequence with the moves between consecutive words.

    `patterns` is None when the run used an opaque membership predicate;
    `complete` is True only when the visit count equals a known language
    size.
    """

    shape: Shape
    patterns: Optional[frozenset[Word]]
    words: tuple[Word, ...]
    moves: tuple[BumpMove, ...]
    complete: bool
    halted_reason: str


@dataclass(frozen=True)
class GrayCodeReport:
    """Outcome of checking a run; None flags were not decidable."""

    all_member: Optional[bool]
    all_distinct: bool
    exhaustive: Optional[bool]
    moves_valid: bool
    transpositions_only: bool
    counterexamples: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        # transpositions_only is informational: plenty of valid bump Gray
        # codes use wider distances
        return (
            self.all_member is not False
            and self.all_distinct
            and self.exhaustive is not False
            and self.moves_valid
        )


def _scan_python(
    shape: Shape,
    start: Word,
    member: Callable[[Word], bool],
    minimize_over_unvisited: bool,
) -> tuple[list[Word], list[BumpMove]]:
    n = shape.n
    words = [start]
    moves: list[BumpMove] = []
    visited = {start}
    w = start
    while True:
        pos = rank_positions(shape, w)
        best = None
        best_key = -1
        for r in range(n, 0, -1):
            i = pos[r - 1]
            v = w[i - 1]
            for direction in (RIGHT, LEFT):
                span = right_run(w, i) if direction == RIGHT else left_run(w, i)
                limit = _block_pass(w, span.lo, span.hi, v, direction)
                anchor = span.lo if direction == RIGHT else span.hi
                hit = None
                for d in range(1, limit + 1):
                    cand = _shift(w, span, direction, d)
                    if not member(cand):
                        continue
                    if cand in visited:
                        if minimize_over_unvisited:
                            continue
                        break
                    hit = (d, cand)
                    break
                if hit is None:
                    continue
                # the block's leading rank decides; rightward wins ties,
                # then the narrower block (strict > with this scan order)
                lead = r + span.width - 1 if direction == RIGHT else r
                key = lead * 2 + (1 if direction == RIGHT else 0)
                if key <= best_key:
                    continue
                best_key = key
                d, cand = hit
                best = (
                    cand,
                    BumpMove(rank=r, dir=direction, width=span.width, distance=d, anchor=anchor),
                )
        if best is None:
            return words, moves
        w, move = best
        visited.add(w)
        words.append(w)
        moves.append(move)


def _language_codes(
    shape: Shape, patterns: frozenset[Word], cap: int | None, backend: str | None
) -> tuple[Optional[np.ndarray], int]:
    """Sorted encoded language (None means the full shape) and its size."""
    if not patterns:
        return None, oracle._check_cap(shape, cap)
    if patterns == oracle.STIRLING_PATTERNS:
        oracle._check_cap(shape, cap)
        codes = kernels.enum_codes(shape, True, oracle.stirling_count(shape), backend)
        return np.sort(codes), len(codes)
    lang = oracle.language(shape, patterns, cap, backend)
    return np.sort(kernels.encode_words(lang.words)), len(lang)


def generate_greedy_codes(
    shape: Shape,
    patterns=frozenset(),
    *,
    start: Word | None = None,
    cap: int | None = None,
    backend: str | None = None,
):
    """Bulk form of `generate_greedy`: encoded visit sequence plus raw move
    arrays (ranks, dirs as +1/-1, widths, distances, anchors) and the
    completeness verdict.  Intended for large sweeps where materializing
    tuples would dominate."""
    pats = normalize_patterns(patterns)
    if not kernels.supported(shape):
        raise SizeLimitError(f"shape {shape.multiplicities} exceeds the encoded-word range")
    word = start if start is not None else nondecreasing_word(shape)
    validate_word(shape, word)
    if not avoids_all(word, pats):
        raise InvalidStartError("start word is outside the language")
    lang_codes, size = _language_codes(shape, pats, cap, backend)
    codes, ranks, dirs, widths, dists, anchors = kernels.greedy_run_codes(
        shape, word, lang_codes, size, backend
    )
    complete = len(codes) == size
    return codes, (ranks, dirs, widths, dists, anchors), complete


def generate_greedy(
    shape: Shape,
    patterns=frozenset(),
    *,
    start: Word | None = None,
    member: Callable[[Word], bool] | None = None,
    minimize_over_unvisited: bool = False,
    cap: int | None = None,
    backend: str | None = None,
) -> GrayCodeRun:
    """Run the greedy engine from `start` (default: nondecreasing word).

    Membership is the pattern-avoidance language unless an opaque `member`
    predicate is supplied, in which case the language size is unknown and
    the run reports complete=False.  `minimize_over_unvisited` switches to
    the alternative greedy rule that keeps widening the distance past
    visited results instead of abandoning the anchor.
    """
    word = start if start is not None else nondecreasing_word(shape)
    validate_word(shape, word)

    if member is not None:
        if not member(word):
            raise InvalidStartError("start word fails the membership predicate")
        words, moves = _scan_python(shape, word, member, minimize_over_unvisited)
        return GrayCodeRun(shape, None, tuple(words), tuple(moves), False, NO_NEW_BUMP)

    pats = normalize_patterns(patterns)
    if not avoids_all(word, pats):
        raise InvalidStartError("start word is outside the language")

    use_kernel = (
        not minimize_over_unvisited
        and kernels.resolve_backend(backend) == "numba"
        and kernels.supported(shape)
    )
    if use_kernel:
        codes, (ranks, dirs, widths, dists, anchors), complete = generate_greedy_codes(
            shape, pats, start=word, cap=cap, backend=backend
        )
        words = tuple(kernels.codes_to_words(codes, shape.n))
        moves = tuple(
            BumpMove(
                rank=int(ranks[k]),
                dir=RIGHT if dirs[k] == 1 else LEFT,
                width=int(widths[k]),
                distance=int(dists[k]),
                anchor=int(anchors[k]),
            )
            for k in range(len(codes) - 1)
        )
    else:
        lang = oracle.language(shape, pats, cap, backend)
        words_list, moves_list = _scan_python(
            shape, word, lang.word_set().__contains__, minimize_over_unvisited
        )
        words = tuple(words_list)
        moves = tuple(moves_list)
        complete = len(words) == len(lang)
    return GrayCodeRun(
        shape,
        pats,
        words,
        moves,
        complete,
        EXHAUSTED if complete else NO_NEW_BUMP,
    )


def verify_gray_code(run: GrayCodeRun, cap: int | None = None) -> GrayCodeReport:
    """Check a run: membership, distinctness, exhaustiveness against the
    oracle (when the language is enumerable and known), and that every
    transition classifies as exactly the recorded bump."""
    counterexamples: dict = {}

    all_member: Optional[bool]
    if run.patterns is None:
        all_member = None
    else:
        all_member = True
        for k, w in enumerate(run.words):
            try:
                validate_word(run.shape, w)
            except WordError:
                all_member = False
            else:
                if not avoids_all(w, run.patterns):
                    all_member = False
            if not all_member:
                counterexamples["all_member"] = (k, w)
                break

    all_distinct = True
    seen: dict[Word, int] = {}
    for k, w in enumerate(run.words):
        if w in seen:
            all_distinct = False
            counterexamples["all_distinct"] = (seen[w], k, w)
            break
        seen[w] = k

    exhaustive: Optional[bool]
    if run.patterns is None:
        exhaustive = None
    else:
        try:
            lang = oracle.language(run.shape, run.patterns, cap)
        except SizeLimitError:
            exhaustive = None
        else:
            missing = lang.word_set() - set(run.words)
            extra = set(run.words) - lang.word_set()
            exhaustive = not missing and not extra
            if not exhaustive:
                counterexamples["exhaustive"] = {
                    "missing": sorted(missing)[:3],
                    "extra": sorted(extra)[:3],
                }

    moves_valid = len(run.moves) == len(run.words) - 1
    if not moves_valid:
        counterexamples["moves_valid"] = ("length", len(run.moves), len(run.words))
    else:
        for k in range(len(run.words) - 1):
            got = classify_move(run.words[k], run.words[k + 1])
            if got != run.moves[k]:
                moves_valid = False
                counterexamples["moves_valid"] = (k, run.moves[k], got)
                break

    transpositions_only = True
    for k in range(len(run.words) - 1):
        diff = sum(1 for a, b in zip(run.words[k], run.words[k + 1]) if a != b)
        if diff != 2:
            transpositions_only = False
            counterexamples["transpositions_only"] = (k, diff)
            break

    return GrayCodeReport(
        all_member=all_member,
        all_distinct=all_distinct,
        exhaustive=exhaustive,
        moves_valid=moves_valid,
        transpositions_only=transpositions_only,
        counterexamples=counterexamples,
    )


# --- parent/children machinery ---------------------------------------------


def parent_shape(shape: Shape) -> Shape:
    """Drop one copy of the largest value (removing it entirely at 1)."""
    mult = shape.multiplicities
    if not mult:
        raise ValueError("the empty shape has no parent")
    if mult[-1] > 1:
        return Shape(mult[:-1] + (mult[-1] - 1,))
    return Shape(mult[:-1])


def parent_word(word: Word) -> Word:
    """Remove the rightmost copy of the largest value."""
    if not word:
        raise WordError("the empty word has no parent")
    m = max(word)
    idx = len(word) - 1 - word[::-1].index(m)
    return word[:idx] + word[idx + 1 :]


def parent_language(
    shape: Shape, patterns=frozenset(), cap: int | None = None
) -> Language:
    """Image of the language under parent_word, deduplicated and sorted."""
    pats = normalize_patterns(patterns)
    lang = oracle.language(shape, pats, cap)
    words = tuple(sorted({parent_word(w) for w in lang.words}))
    return Language(LanguageSpec(parent_shape(shape), pats), words)


def children(
    word2: Word, shape: Shape, patterns=frozenset()
) -> list[Word]:
    """All language words whose parent is `word2`, in lexicographic order.

    `shape` is the child shape; `word2` must belong to its parent language
    (equivalently: have at least one child).
    """
    pats = normalize_patterns(patterns)
    pshape = parent_shape(shape)
    if pshape.m:
        validate_word(pshape, word2)
    elif word2:
        raise WordError(f"expected the empty word, got {word2}")
    m = shape.m
    out = set()
    for p in range(len(word2) + 1):
        cand = word2[:p] + (m,) + word2[p:]
        if parent_word(cand) == word2 and avoids_all(cand, pats):
            out.add(cand)
    if not out:
        raise WordError(f"{word2} is not in the parent language")
    return sorted(out)


def project_to_parent(run: GrayCodeRun) -> list[Word]:
    """Map parent_word over the visits and collapse consecutive repeats."""
    out: list[Word] = []
    for w in run.words:
        pw = parent_word(w)
        if not out or out[-1] != pw:
            out.append(pw)
    return out


# --- JSON payloads ----------------------------------------------------------


def run_to_payload(run: GrayCodeRun, engine: str) -> dict:
    """The stable JSON form of a run (schema field "format": 1)."""
    return {
        "format": 1,
        "shape": list(run.shape.multiplicities),
        "patterns": sorted(list(p) for p in (run.patterns or frozenset())),
        "engine": engine,
        "words": [list(w) for w in run.words],
        "moves": [mv.to_json() for mv in run.moves],
        "complete": run.complete,
    }


def run_from_payload(payload: dict) -> GrayCodeRun:
    shape = Shape(tuple(payload["shape"]))
    words = tuple(tuple(w) for w in payload["words"])
    moves = tuple(BumpMove.from_json(mv) for mv in payload["moves"])
    complete = bool(payload["complete"])
    patterns = frozenset(tuple(p) for p in payload["patterns"])
    return GrayCodeRun(
        shape,
        patterns,
        words,
        moves,
        complete,
        EXHAUSTED if complete else NO_NEW_BUMP,
    )
