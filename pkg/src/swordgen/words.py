"""
Multiset permutations ("s-words") and their basic geometry.

An s-word over the multiplicity vector s = (s_1, ..., s_m) contains exactly
s_v copies of each value v in 1..m.  Words are plain tuples of ints; the
`Shape` object carries the multiplicities and their prefix sums.  All public
indices and ranks are 1-based.
"""

from __future__ import annotations

from dataclasses import dataclass, field

Word = tuple[int, ...]


class ShapeError(ValueError):
    """Raised for an invalid multiplicity vector."""


class WordError(ValueError):
    """Raised when a word fails validation or parsing."""


@dataclass(frozen=True)
class Shape:
    """Multiplicity vector with derived prefix sums.

    `prefix[v-1]` is t_v = s_1 + ... + s_{v-1} (so t_1 = 0) and `n` is the
    total word length.  The empty shape (m = 0) is allowed as the base case
    of parent-shape recursion; `make_shape` rejects it for user input.
    """

    multiplicities: tuple[int, ...]
    prefix: tuple[int, ...] = field(init=False, compare=False, repr=False)
    n: int = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        mult = tuple(self.multiplicities)
        for v, s in enumerate(mult, start=1):
            if s <= 0:
                raise ShapeError(f"multiplicity of value {v} must be >= 1, got {s}")
        acc = 0
        pref = []
        for s in mult:
            pref.append(acc)
            acc += s
        object.__setattr__(self, "multiplicities", mult)
        object.__setattr__(self, "prefix", tuple(pref))
        object.__setattr__(self, "n", acc)

    @property
    def m(self) -> int:
        return len(self.multiplicities)


@dataclass(frozen=True)
class RunSpan:
    """A block of equal adjacent digits, 1-based inclusive bounds."""

    lo: int
    hi: int
    value: int

    @property
    def width(self) -> int:
        return self.hi - self.lo + 1


def make_shape(multiplicities) -> Shape:
    """Build a Shape from a sequence of positive multiplicities.

    >>> make_shape((2, 1, 3)).prefix
    (0, 2, 3)
    """
    mult = tuple(multiplicities)
    if not mult:
        raise ShapeError("shape needs at least one value")
    return Shape(mult)


def nondecreasing_word(shape: Shape) -> Word:
    """The sorted word 1^s_1 2^s_2 ... m^s_m.

    >>> nondecreasing_word(make_shape((2, 1, 3)))
    (1, 1, 2, 3, 3, 3)
    """
    out = []
    for v, s in enumerate(shape.multiplicities, start=1):
        out.extend([v] * s)
    return tuple(out)


def shape_of_word(word: Word) -> Shape:
    """Shape of a standalone word; every value 1..max(word) must occur.

    >>> shape_of_word((1, 2, 3, 3, 3, 2)).multiplicities
    (1, 2, 3)
    """
    if not word:
        raise WordError("empty word has no shape")
    m = max(word)
    counts = [0] * m
    for d in word:
        if d < 1:
            raise WordError(f"digit {d} outside 1..{m}")
        counts[d - 1] += 1
    if 0 in counts:
        raise WordError(f"value {counts.index(0) + 1} missing from word")
    return Shape(tuple(counts))


def validate_word(shape: Shape, word: Word) -> None:
    """Raise WordError unless `word` has exactly the multiset of `shape`."""
    counts = [0] * shape.m
    for d in word:
        if not 1 <= d <= shape.m:
            raise WordError(f"digit {d} outside 1..{shape.m}")
        counts[d - 1] += 1
    if tuple(counts) != shape.multiplicities:
        raise WordError(
            f"word has value counts {tuple(counts)}, shape wants {shape.multiplicities}"
        )


def rank_of(shape: Shape, word: Word, i: int) -> int:
    """Rank of the digit at 1-based index i: by value, ties left-to-right.

    >>> s = make_shape((1, 2, 3))
    >>> [rank_of(s, (1, 2, 3, 3, 3, 2), i) for i in range(1, 7)]
    [1, 2, 4, 5, 6, 3]
    """
    if not 1 <= i <= len(word):
        raise WordError(f"index {i} out of range 1..{len(word)}")
    v = word[i - 1]
    seen = 0
    for j in range(i):
        if word[j] == v:
            seen += 1
    return shape.prefix[v - 1] + seen


def ranks(shape: Shape, word: Word) -> tuple[int, ...]:
    """Ranks of all digits, by position."""
    seen = [0] * shape.m
    out = []
    for d in word:
        seen[d - 1] += 1
        out.append(shape.prefix[d - 1] + seen[d - 1])
    return tuple(out)


def rank_positions(shape: Shape, word: Word) -> tuple[int, ...]:
    """Inverse of `ranks`: entry r-1 is the 1-based index of the rank-r digit."""
    seen = [0] * shape.m
    pos = [0] * len(word)
    for i, d in enumerate(word, start=1):
        seen[d - 1] += 1
        pos[shape.prefix[d - 1] + seen[d - 1] - 1] = i
    return tuple(pos)


def index_of_rank(shape: Shape, word: Word, r: int) -> int:
    """1-based index of the digit with rank r."""
    if not 1 <= r <= len(word):
        raise WordError(f"rank {r} out of range 1..{len(word)}")
    return rank_positions(shape, word)[r - 1]


def right_run(word: Word, i: int) -> RunSpan:
    """Maximal block of equal digits extending rightward from index i.

    >>> right_run((1, 1, 2, 1, 1, 3, 3, 3, 1, 1), 7)
    RunSpan(lo=7, hi=8, value=3)
    """
    if not 1 <= i <= len(word):
        raise WordError(f"index {i} out of range 1..{len(word)}")
    v = word[i - 1]
    j = i
    while j < len(word) and word[j] == v:
        j += 1
    return RunSpan(i, j, v)


def left_run(word: Word, i: int) -> RunSpan:
    """Maximal block of equal digits extending leftward from index i.

    >>> left_run((1, 1, 2, 1, 1, 3, 3, 3, 1, 1), 7)
    RunSpan(lo=6, hi=7, value=3)
    """
    if not 1 <= i <= len(word):
        raise WordError(f"index {i} out of range 1..{len(word)}")
    v = word[i - 1]
    h = i
    while h > 1 and word[h - 2] == v:
        h -= 1
    return RunSpan(h, i, v)


def parse_word(text: str) -> Word:
    """Parse "112333" or "1,1,2,3,3,3" into a word tuple."""
    text = text.strip()
    if not text:
        return ()
    try:
        if "," in text:
            return tuple(int(part) for part in text.split(","))
        return tuple(int(ch) for ch in text)
    except ValueError as exc:
        raise WordError(f"cannot parse word {text!r}") from exc


def format_word(word: Word) -> str:
    """Render a word compactly when all values fit one digit, else as a comma list."""
    if not word:
        return ""
    if max(word) <= 9:
        return "".join(str(d) for d in word)
    return ",".join(str(d) for d in word)


def parse_shape(text: str) -> Shape:
    """Parse "2,1,3" with optional v^k items, e.g. "2^3" -> (2, 2, 2)."""
    mult: list[int] = []
    for part in text.strip().split(","):
        part = part.strip()
        try:
            if "^" in part:
                base, _, count = part.partition("^")
                mult.extend([int(base)] * int(count))
            else:
                mult.append(int(part))
        except ValueError as exc:
            raise ShapeError(f"cannot parse shape item {part!r}") from exc
    return make_shape(mult)


def format_shape(shape: Shape) -> str:
    return ",".join(str(s) for s in shape.multiplicities)
