"""
Classical pattern containment for words over {1..m}.

A pattern is itself a word; `word` contains `pattern` iff some subsequence
of `word` is order-isomorphic to it, where equalities must be matched
exactly (equal pattern letters need equal word digits, strict inequalities
need strict ones).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .words import Shape, Word, parse_word, validate_word


class PatternError(ValueError):
    """Raised for a malformed pattern."""


def parse_pattern(text: str) -> Word:
    """Parse and normalize a pattern; its letters must be exactly 1..k.

    >>> parse_pattern("212")
    (2, 1, 2)
    """
    try:
        pat = parse_word(text)
    except ValueError as exc:
        raise PatternError(f"cannot parse pattern {text!r}") from exc
    if not pat:
        raise PatternError("empty pattern")
    letters = set(pat)
    if letters != set(range(1, max(letters) + 1)):
        raise PatternError(f"pattern letters must be exactly 1..k, got {sorted(letters)}")
    return pat


def check_pattern(pattern: Word) -> Word:
    """Validate an already-parsed pattern tuple (letters exactly 1..k)."""
    if not pattern:
        raise PatternError("empty pattern")
    letters = set(pattern)
    if letters != set(range(1, max(letters) + 1)):
        raise PatternError(f"pattern letters must be exactly 1..k, got {sorted(letters)}")
    return tuple(pattern)


def normalize_patterns(patterns) -> frozenset[Word]:
    """Validate a collection of patterns (tuples or digit strings)."""
    out = set()
    for p in patterns:
        out.add(parse_pattern(p) if isinstance(p, str) else check_pattern(p))
    return frozenset(out)


@dataclass(frozen=True)
class LanguageSpec:
    """A shape plus the pattern set its words must avoid."""

    shape: Shape
    patterns: frozenset[Word] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        object.__setattr__(self, "patterns", normalize_patterns(self.patterns))


def membership(spec: LanguageSpec) -> Callable[[Word], bool]:
    """Pure predicate: word has the spec's shape and avoids its patterns."""
    shape = spec.shape
    pats = spec.patterns

    def member(word: Word) -> bool:
        try:
            validate_word(shape, word)
        except ValueError:
            return False
        return avoids_all(word, pats)

    return member


def contains_pattern(word: Word, pattern: Word) -> bool:
    """True iff some subsequence of `word` matches `pattern` exactly up to
    an order-preserving relabeling of its letters.

    >>> contains_pattern((2, 3, 1), (2, 3, 1))
    True
    >>> contains_pattern((1, 1, 3, 3, 2, 3), (2, 1, 2))
    True
    >>> contains_pattern((2, 2, 1, 2, 1, 1), (1, 2, 1, 2, 1))
    False
    """
    k = len(set(pattern))
    if len(word) < len(pattern):
        return False
    if k == 1:
        need = len(pattern)
        best = 0
        count: dict[int, int] = {}
        for d in word:
            count[d] = count.get(d, 0) + 1
            best = max(best, count[d])
        return best >= need
    if k == 2:
        return _contains_two_letter(word, pattern)
    return _contains_general(word, pattern)


def _contains_two_letter(word: Word, pattern: Word) -> bool:
    # A two-letter pattern matches iff some value pair (a, b) with a < b
    # admits a greedy left-to-right scan; trying every pair is O(m^2 n)
    # and sidesteps the general search below.
    values = sorted(set(word))
    for ai in range(len(values)):
        for bi in range(ai + 1, len(values)):
            a, b = values[ai], values[bi]
            k = 0
            for d in word:
                want = a if pattern[k] == 1 else b
                if d == want:
                    k += 1
                    if k == len(pattern):
                        return True
    return False


def _contains_general(word: Word, pattern: Word) -> bool:
    # Depth-first search over value assignments: pattern letter j -> word
    # value assign[j], strictly increasing in j.  For each assignment the
    # subsequence test is a greedy scan.
    k = max(pattern)
    values = sorted(set(word))
    if len(values) < k:
        return False
    assign = [0] * k

    def matches() -> bool:
        j = 0
        for d in word:
            if d == assign[pattern[j] - 1]:
                j += 1
                if j == len(pattern):
                    return True
        return False

    def choose(letter: int, start: int) -> bool:
        if letter == k:
            return matches()
        for idx in range(start, len(values) - (k - letter - 1)):
            assign[letter] = values[idx]
            if choose(letter + 1, idx + 1):
                return True
        return False

    return choose(0, 0)


def avoids_all(word: Word, patterns) -> bool:
    """True iff `word` contains none of `patterns`."""
    return not any(contains_pattern(word, p) for p in patterns)


def avoids_212(word: Word) -> bool:
    """Fast test for the Stirling condition: no digit smaller than v sits
    strictly between two copies of v.

    >>> avoids_212((1, 2, 2, 1, 3, 3))
    True
    >>> avoids_212((1, 1, 3, 3, 2, 3))
    False
    """
    first: dict[int, int] = {}
    last: dict[int, int] = {}
    for i, d in enumerate(word):
        if d not in first:
            first[d] = i
        last[d] = i
    for i, d in enumerate(word):
        for v, fi in first.items():
            if v > d and fi < i < last[v]:
                return False
    return True
