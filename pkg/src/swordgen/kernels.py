"""
Array kernels for the hot generation loops.

Each kernel is written once as a plain function over numpy arrays and, when
numba is importable, compiled with @njit(cache=True).  The uncompiled
originals are kept as the fallback path; `resolve_backend` picks between
them from the SWORDGEN_BACKEND environment variable (auto | numba | python)
or an explicit override.  Kernels are self-contained (no calls between
jitted functions) so they stay cacheable.

Words travel through kernels encoded as int64: the digit at 1-based
position p occupies bits 4(p-1)..4(p-1)+3, which limits kernels to
n <= 15 and m <= 15 (`supported` checks this).  Decoding back to tuples
is vectorized numpy.
"""

from __future__ import annotations

import os

import numpy as np

from .words import Shape, Word

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]

        def wrap(func):
            return func

        return wrap


class BackendError(RuntimeError):
    """Raised for an unknown or unavailable backend request."""


def resolve_backend(override: str | None = None) -> str:
    """Return "numba" or "python" from the override or SWORDGEN_BACKEND."""
    mode = override or os.environ.get("SWORDGEN_BACKEND", "auto")
    if mode not in ("auto", "numba", "python"):
        raise BackendError(f"unknown backend {mode!r}; use auto, numba, or python")
    if mode == "auto":
        return "numba" if HAVE_NUMBA else "python"
    if mode == "numba" and not HAVE_NUMBA:
        raise BackendError("backend 'numba' requested but numba is not importable")
    return mode


def supported(shape: Shape) -> bool:
    """True when words of this shape fit the 4-bit-per-digit encoding."""
    return shape.n <= 15 and shape.m <= 15


def shape_arrays(shape: Shape) -> tuple[np.ndarray, np.ndarray]:
    """1-based multiplicity and prefix-sum arrays (index 0 unused)."""
    s = np.zeros(shape.m + 1, dtype=np.int64)
    t = np.zeros(shape.m + 1, dtype=np.int64)
    for v in range(1, shape.m + 1):
        s[v] = shape.multiplicities[v - 1]
        t[v] = shape.prefix[v - 1]
    return s, t


def encode_word(word: Word) -> int:
    code = 0
    for k in range(len(word) - 1, -1, -1):
        code = (code << 4) | word[k]
    return code


def encode_words(words) -> np.ndarray:
    return np.fromiter((encode_word(w) for w in words), dtype=np.int64, count=len(words))


def decode_codes(codes: np.ndarray, n: int) -> np.ndarray:
    """Decode an int64 code array to an (N, n) uint8 digit matrix."""
    shifts = (4 * np.arange(n, dtype=np.int64))[np.newaxis, :]
    return ((codes[:, np.newaxis] >> shifts) & 15).astype(np.uint8)


def codes_to_words(codes: np.ndarray, n: int) -> list[Word]:
    return [tuple(row) for row in decode_codes(codes, n).tolist()]


# --- enumeration (lexicographic next-permutation stepping) ---------------


def _enum_fill_py(s, t, only212, out):
    # In-place lexicographic successor over the 1-based word buffer; when
    # only212 is set, keep just the words with no digit smaller than v
    # strictly between two copies of v.
    m = len(s) - 1
    n = 0
    for v in range(1, m + 1):
        n += s[v]
    a = np.zeros(n + 1, dtype=np.int64)
    p = 1
    for v in range(1, m + 1):
        for _ in range(s[v]):
            a[p] = v
            p += 1
    first = np.zeros(m + 1, dtype=np.int64)
    last = np.zeros(m + 1, dtype=np.int64)
    count = 0
    while True:
        keep = True
        if only212:
            for v in range(1, m + 1):
                first[v] = 0
                last[v] = 0
            for idx in range(1, n + 1):
                dv = a[idx]
                if first[dv] == 0:
                    first[dv] = idx
                last[dv] = idx
            for v in range(2, m + 1):
                for idx in range(first[v] + 1, last[v]):
                    if a[idx] < v:
                        keep = False
                        break
                if not keep:
                    break
        if keep:
            code = np.int64(0)
            for k in range(n, 0, -1):
                code = (code << 4) | a[k]
            out[count] = code
            count += 1
        # advance to the next multiset permutation
        i = n - 1
        while i >= 1 and a[i] >= a[i + 1]:
            i -= 1
        if i < 1:
            return count
        j = n
        while a[j] <= a[i]:
            j -= 1
        a[i], a[j] = a[j], a[i]
        lo = i + 1
        hi = n
        while lo < hi:
            a[lo], a[hi] = a[hi], a[lo]
            lo += 1
            hi -= 1


def _count_212_py(s, t):
    # Same walk as _enum_fill_py with only212 set, but counting only.
    m = len(s) - 1
    n = 0
    for v in range(1, m + 1):
        n += s[v]
    a = np.zeros(n + 1, dtype=np.int64)
    p = 1
    for v in range(1, m + 1):
        for _ in range(s[v]):
            a[p] = v
            p += 1
    first = np.zeros(m + 1, dtype=np.int64)
    last = np.zeros(m + 1, dtype=np.int64)
    count = 0
    while True:
        keep = True
        for v in range(1, m + 1):
            first[v] = 0
            last[v] = 0
        for idx in range(1, n + 1):
            dv = a[idx]
            if first[dv] == 0:
                first[dv] = idx
            last[dv] = idx
        for v in range(2, m + 1):
            for idx in range(first[v] + 1, last[v]):
                if a[idx] < v:
                    keep = False
                    break
            if not keep:
                break
        if keep:
            count += 1
        i = n - 1
        while i >= 1 and a[i] >= a[i + 1]:
            i -= 1
        if i < 1:
            return count
        j = n
        while a[j] <= a[i]:
            j -= 1
        a[i], a[j] = a[j], a[i]
        lo = i + 1
        hi = n
        while lo < hi:
            a[lo], a[hi] = a[hi], a[lo]
            lo += 1
            hi -= 1


# --- loopless Stirling generation -----------------------------------------


def _stirling_fill_py(s, t, out_codes, out_invs, out_vs, out_ds):
    # Loopless loop with O(1) updates; the word and inversion-vector codes
    # are maintained incrementally (a transposition edits two nibbles).
    m = len(s) - 1
    n = 0
    for v in range(1, m + 1):
        n += s[v]
    perm = np.zeros(n + 1, dtype=np.int64)
    p = 1
    for v in range(1, m + 1):
        for _ in range(s[v]):
            perm[p] = v
            p += 1
    left = np.zeros(m + 1, dtype=np.int64)
    inv = np.zeros(m + 1, dtype=np.int64)
    fs = np.zeros(m + 1, dtype=np.int64)
    dirs = np.zeros(m + 1, dtype=np.int64)
    for v in range(1, m + 1):
        left[v] = t[v] + 1
        fs[v] = v
        dirs[v] = -1
    code = np.int64(0)
    for k in range(n, 0, -1):
        code = (code << 4) | perm[k]
    icode = np.int64(0)
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
        u = perm[j]
        out_codes[count] = code
        out_invs[count] = icode
        out_vs[count] = v
        out_ds[count] = d
        count += 1
        perm[i] = u
        perm[j] = v
        code += (u - v) << (4 * (i - 1))
        code += (v - u) << (4 * (j - 1))
        left[v] += d
        if left[u] == j:
            left[u] -= d * s[v]
        inv[v] -= d
        icode -= d << (4 * (v - 1))
        if inv[v] == 0 or inv[v] == t[v]:
            dirs[v] = -d
            fs[v] = fs[v - 1]
            fs[v - 1] = v - 1
        v = fs[m]
        fs[m] = m
    out_codes[count] = code
    out_invs[count] = icode
    out_vs[count] = v
    out_ds[count] = 0
    count += 1
    return count


def _stirling_count_py(s, t):
    # Counting visitor: the loop body does no per-visit work proportional
    # to n or m, matching the loopless claim.
    m = len(s) - 1
    n = 0
    for v in range(1, m + 1):
        n += s[v]
    perm = np.zeros(n + 1, dtype=np.int64)
    p = 1
    for v in range(1, m + 1):
        for _ in range(s[v]):
            perm[p] = v
            p += 1
    left = np.zeros(m + 1, dtype=np.int64)
    inv = np.zeros(m + 1, dtype=np.int64)
    fs = np.zeros(m + 1, dtype=np.int64)
    dirs = np.zeros(m + 1, dtype=np.int64)
    for v in range(1, m + 1):
        left[v] = t[v] + 1
        fs[v] = v
        dirs[v] = -1
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
        u = perm[j]
        count += 1
        perm[i] = u
        perm[j] = v
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
    count += 1
    return count


def _stirling_steps_py(s, t):
    # Instrumented twin of the counting visitor: every primitive statement
    # of the loop body bumps `steps`, and the per-iteration maximum is
    # returned.  The bound must come out constant for every shape.
    m = len(s) - 1
    n = 0
    for v in range(1, m + 1):
        n += s[v]
    perm = np.zeros(n + 1, dtype=np.int64)
    p = 1
    for v in range(1, m + 1):
        for _ in range(s[v]):
            perm[p] = v
            p += 1
    left = np.zeros(m + 1, dtype=np.int64)
    inv = np.zeros(m + 1, dtype=np.int64)
    fs = np.zeros(m + 1, dtype=np.int64)
    dirs = np.zeros(m + 1, dtype=np.int64)
    for v in range(1, m + 1):
        left[v] = t[v] + 1
        fs[v] = v
        dirs[v] = -1
    count = 0
    max_steps = 0
    v = fs[m]
    while v > 1:
        steps = 0
        d = dirs[v]
        steps += 1
        if d == 1:
            steps += 1
            i = left[v]
            steps += 1
            j = left[v] + s[v]
            steps += 1
        else:
            steps += 1
            i = left[v] + s[v] - 1
            steps += 1
            j = left[v] - 1
            steps += 1
        u = perm[j]
        steps += 1
        count += 1
        steps += 1
        perm[i] = u
        steps += 1
        perm[j] = v
        steps += 1
        left[v] += d
        steps += 1
        if left[u] == j:
            steps += 1
            left[u] -= d * s[v]
            steps += 1
        else:
            steps += 1
        inv[v] -= d
        steps += 1
        if inv[v] == 0 or inv[v] == t[v]:
            steps += 1
            dirs[v] = -d
            steps += 1
            fs[v] = fs[v - 1]
            steps += 1
            fs[v - 1] = v - 1
            steps += 1
        else:
            steps += 1
        v = fs[m]
        steps += 1
        fs[m] = m
        steps += 1
        if steps > max_steps:
            max_steps = steps
    count += 1
    return count, max_steps


# --- greedy bump generation ------------------------------------------------


def _greedy_fill_py(
    s,
    t,
    start,
    lang_sorted,
    check_lang,
    expected,
    out_codes,
    out_ranks,
    out_dirs,
    out_widths,
    out_dists,
    out_anchors,
):
    # Greedy step: for each rank and direction take the least distance whose
    # result is in the language, drop it if that result was already visited,
    # then apply the survivor whose block has the largest leading rank,
    # rightward first on ties.  Membership is a binary search over the
    # sorted language codes; the visited set is open-addressed.
    m = len(s) - 1
    n = len(start) - 1
    cur = np.zeros(n + 1, dtype=np.int64)
    cand = np.zeros(n + 1, dtype=np.int64)
    for k in range(1, n + 1):
        cur[k] = start[k]
    tab_size = 1
    while tab_size < 2 * expected + 2:
        tab_size <<= 1
    table = np.full(tab_size, -1, dtype=np.int64)
    mask = np.int64(tab_size - 1)
    pos = np.zeros(n + 1, dtype=np.int64)
    seen = np.zeros(m + 1, dtype=np.int64)

    code = np.int64(0)
    for k in range(n, 0, -1):
        code = (code << 4) | cur[k]
    h = (code ^ (code >> 31)) & np.int64(0x7FFFFFFF)
    h = (h * np.int64(0x9E3779B1)) & np.int64(0x7FFFFFFF)
    idx = h & mask
    while table[idx] != -1:
        idx = (idx + 1) & mask
    table[idx] = code
    out_codes[0] = code
    count = 1

    while True:
        for v in range(m + 1):
            seen[v] = 0
        for k in range(1, n + 1):
            dv = cur[k]
            seen[dv] += 1
            pos[t[dv] + seen[dv]] = k
        best_key = -1
        best_code = np.int64(0)
        best_idx = np.int64(0)
        best_r = 0
        best_dir = 0
        best_width = 0
        best_dist = 0
        best_anchor = 0
        for r in range(n, 0, -1):
            i = pos[r]
            v = cur[i]
            for direction in (1, -1):
                if direction == 1:
                    lo = i
                    hi = i
                    while hi + 1 <= n and cur[hi + 1] == v:
                        hi += 1
                else:
                    lo = i
                    hi = i
                    while lo - 1 >= 1 and cur[lo - 1] == v:
                        lo -= 1
                dfound = 0
                ccode = np.int64(0)
                for dd in range(1, n + 1):
                    if direction == 1:
                        edge = hi + dd
                        if edge > n or cur[edge] >= v:
                            break
                    else:
                        edge = lo - dd
                        if edge < 1 or cur[edge] >= v:
                            break
                    for k in range(1, n + 1):
                        cand[k] = cur[k]
                    if direction == 1:
                        for k in range(dd):
                            cand[lo + k] = cur[hi + 1 + k]
                        for k in range(lo + dd, hi + dd + 1):
                            cand[k] = v
                    else:
                        for k in range(dd):
                            cand[hi - k] = cur[lo - 1 - k]
                        for k in range(lo - dd, hi - dd + 1):
                            cand[k] = v
                    ccode = np.int64(0)
                    for k in range(n, 0, -1):
                        ccode = (ccode << 4) | cand[k]
                    ok = True
                    if check_lang:
                        a = 0
                        b = len(lang_sorted)
                        while a < b:
                            mid = (a + b) // 2
                            if lang_sorted[mid] < ccode:
                                a = mid + 1
                            else:
                                b = mid
                        ok = a < len(lang_sorted) and lang_sorted[a] == ccode
                    if ok:
                        dfound = dd
                        break
                if dfound == 0:
                    continue
                # leading rank of the moving block; rightward wins ties and
                # the narrower block wins what remains (scan order + strict >)
                lead = r + (hi - lo) if direction == 1 else r
                key = lead * 2 + (1 if direction == 1 else 0)
                if key <= best_key:
                    continue
                h = (ccode ^ (ccode >> 31)) & np.int64(0x7FFFFFFF)
                h = (h * np.int64(0x9E3779B1)) & np.int64(0x7FFFFFFF)
                idx = h & mask
                visited = False
                while table[idx] != -1:
                    if table[idx] == ccode:
                        visited = True
                        break
                    idx = (idx + 1) & mask
                if visited:
                    continue
                best_key = key
                best_code = ccode
                best_idx = idx
                best_r = r
                best_dir = direction
                best_width = hi - lo + 1
                best_dist = dfound
                best_anchor = i
        if best_key < 0:
            return count
        table[best_idx] = best_code
        out_codes[count] = best_code
        out_ranks[count - 1] = best_r
        out_dirs[count - 1] = best_dir
        out_widths[count - 1] = best_width
        out_dists[count - 1] = best_dist
        out_anchors[count - 1] = best_anchor
        ccode = best_code
        for k in range(1, n + 1):
            cur[k] = ccode & np.int64(15)
            ccode = ccode >> 4
        count += 1
        if count >= expected:
            # everything reachable is visited once count hits the language
            # size; one more scan would find nothing, so stop here
            return count


_JITTED: dict[str, object] = {}
if HAVE_NUMBA:
    _JITTED = {
        "enum_fill": njit(cache=True)(_enum_fill_py),
        "count_212": njit(cache=True)(_count_212_py),
        "stirling_fill": njit(cache=True)(_stirling_fill_py),
        "stirling_count": njit(cache=True)(_stirling_count_py),
        "stirling_steps": njit(cache=True)(_stirling_steps_py),
        "greedy_fill": njit(cache=True)(_greedy_fill_py),
    }
_PLAIN = {
    "enum_fill": _enum_fill_py,
    "count_212": _count_212_py,
    "stirling_fill": _stirling_fill_py,
    "stirling_count": _stirling_count_py,
    "stirling_steps": _stirling_steps_py,
    "greedy_fill": _greedy_fill_py,
}


def _impl(name: str, backend: str | None):
    if resolve_backend(backend) == "numba":
        return _JITTED[name]
    return _PLAIN[name]


# --- public wrappers -------------------------------------------------------


def enum_codes(shape: Shape, only212: bool, size: int, backend: str | None = None) -> np.ndarray:
    """Encoded words of the shape in lexicographic order, optionally
    filtered to the 212-avoiding ones.  `size` is the exact output count."""
    s, t = shape_arrays(shape)
    out = np.empty(size, dtype=np.int64)
    n = _impl("enum_fill", backend)(s, t, only212, out)
    return out[:n]


def count_212(shape: Shape, backend: str | None = None) -> int:
    """Number of 212-avoiding words, by enumeration."""
    s, t = shape_arrays(shape)
    return int(_impl("count_212", backend)(s, t))


def stirling_run(shape: Shape, size: int, backend: str | None = None):
    """Loopless run: per-visit (word code, inversion-vector code, moved
    value, direction); the final visit carries direction 0."""
    s, t = shape_arrays(shape)
    codes = np.empty(size, dtype=np.int64)
    invs = np.empty(size, dtype=np.int64)
    vs = np.empty(size, dtype=np.int64)
    ds = np.empty(size, dtype=np.int64)
    n = _impl("stirling_fill", backend)(s, t, codes, invs, vs, ds)
    return codes[:n], invs[:n], vs[:n], ds[:n]


def stirling_visit_count(shape: Shape, backend: str | None = None) -> int:
    s, t = shape_arrays(shape)
    return int(_impl("stirling_count", backend)(s, t))


def stirling_step_stats(shape: Shape, backend: str | None = None) -> tuple[int, int]:
    """(visit count, max primitive steps in any one loop iteration)."""
    s, t = shape_arrays(shape)
    count, max_steps = _impl("stirling_steps", backend)(s, t)
    return int(count), int(max_steps)


def greedy_run_codes(
    shape: Shape,
    start: Word,
    lang_codes: np.ndarray | None,
    expected: int,
    backend: str | None = None,
):
    """Greedy engine over encoded words.

    `lang_codes` is the sorted encoded language, or None when every word of
    the shape is a member.  Returns (codes, ranks, dirs, widths, dists,
    anchors) trimmed to the visit count; dirs hold +1 for R and -1 for L.
    """
    s, t = shape_arrays(shape)
    n = shape.n
    start_arr = np.zeros(n + 1, dtype=np.int64)
    for k, d in enumerate(start, start=1):
        start_arr[k] = d
    if lang_codes is None:
        lang_sorted = np.empty(0, dtype=np.int64)
        check = False
    else:
        lang_sorted = lang_codes
        check = True
    codes = np.empty(expected, dtype=np.int64)
    ranks = np.empty(max(expected - 1, 1), dtype=np.int64)
    dirs = np.empty(max(expected - 1, 1), dtype=np.int64)
    widths = np.empty(max(expected - 1, 1), dtype=np.int64)
    dists = np.empty(max(expected - 1, 1), dtype=np.int64)
    anchors = np.empty(max(expected - 1, 1), dtype=np.int64)
    cnt = _impl("greedy_fill", backend)(
        s, t, start_arr, lang_sorted, check, expected, codes, ranks, dirs, widths, dists, anchors
    )
    cnt = int(cnt)
    return (
        codes[:cnt],
        ranks[: cnt - 1],
        dirs[: cnt - 1],
        widths[: cnt - 1],
        dists[: cnt - 1],
        anchors[: cnt - 1],
    )


def warm_up() -> None:
    """Trigger jit compilation on a tiny shape so timed runs stay clean."""
    if not HAVE_NUMBA or resolve_backend() != "numba":
        return
    from .words import make_shape

    tiny = make_shape((1, 1))
    enum_codes(tiny, True, 2)
    count_212(tiny)
    stirling_run(tiny, 2)
    stirling_visit_count(tiny)
    stirling_step_stats(tiny)
    greedy_run_codes(tiny, (1, 2), None, 2)
