"""
Command-line frontend.

Subcommands: generate, verify, count, trace, zigzag, trees, path, bench.
Exit codes: 0 success; 1 a negative verdict (failed verification, zig-zag
counterexample, incomplete run under --expect-complete); 2 malformed
input; 3 enumeration size limit exceeded.

Words, shapes and patterns are read in their compact digit forms
("--shape 2,1,3", "--shape 2^8", "--avoid 212,132", "--start 112333").
JSON payloads carry "format": 1 and round-trip through the library.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import greedy, kernels, oracle, stirling, trees, zigzag
from .greedy import GrayCodeRun, run_to_payload
from .oracle import SizeLimitError
from .patterns import LanguageSpec, normalize_patterns
from .words import Shape, format_word, parse_shape, parse_word

STIRLING = oracle.STIRLING_PATTERNS
KCATALAN = oracle.KCATALAN_PATTERNS


def _parse_avoid(text: str | None):
    if text is None or not text.strip():
        return frozenset()
    return normalize_patterns(p for p in text.split(",") if p.strip())


def _fmt_vec(vec) -> str:
    if vec and max(vec) > 9:
        return ",".join(str(x) for x in vec)
    return "".join(str(x) for x in vec)


def _print_json(payload: dict) -> None:
    print(json.dumps(payload))


# --- subcommands ------------------------------------------------------------


def _cmd_generate(args) -> int:
    shape = parse_shape(args.shape)
    pats = _parse_avoid(args.avoid)
    engine = args.engine
    if engine is None:
        engine = "loopless" if pats == STIRLING else "greedy"
    if engine == "loopless":
        if args.avoid is None:
            pats = STIRLING
        if pats != STIRLING:
            raise ValueError("the loopless engine only generates the 212-avoiding language")
    if args.start is not None and engine != "greedy":
        raise ValueError("only the greedy engine honors --start")

    if engine == "loopless":
        run = stirling.loopless_run(shape)
    elif engine == "greedy":
        start = parse_word(args.start) if args.start is not None else None
        run = greedy.generate_greedy(shape, pats, start=start, cap=args.cap)
    else:
        lang = oracle.language(shape, pats, args.cap)
        run = GrayCodeRun(shape, pats, lang.words, (), True, greedy.EXHAUSTED)

    if args.format == "json":
        _print_json(run_to_payload(run, engine))
    elif args.format == "dot":
        print(trees.export_dot(run), end="")
    else:
        for w in run.words:
            print(format_word(w))
    if args.expect_complete and not run.complete:
        print("run is incomplete", file=sys.stderr)
        return 1
    return 0


def _cmd_verify(args) -> int:
    shape = parse_shape(args.shape)
    pats = _parse_avoid(args.avoid)
    engine = args.engine
    if engine is None:
        engine = "loopless" if pats == STIRLING else "greedy"
    if engine == "loopless":
        if args.avoid is None:
            pats = STIRLING
        if pats != STIRLING:
            raise ValueError("the loopless engine only generates the 212-avoiding language")
        run = stirling.loopless_run(shape)
    elif engine == "greedy":
        start = parse_word(args.start) if args.start is not None else None
        run = greedy.generate_greedy(shape, pats, start=start, cap=args.cap)
    else:
        raise ValueError("verify needs the greedy or loopless engine")

    report = greedy.verify_gray_code(run, args.cap)
    print(f"words: {len(run.words)}")
    print(f"complete: {run.complete}")
    for name in ("all_member", "all_distinct", "exhaustive", "moves_valid", "transpositions_only"):
        print(f"{name}: {getattr(report, name)}")
    print(f"ok: {report.ok}")
    for key, value in sorted(report.counterexamples.items()):
        print(f"counterexample[{key}]: {value}")
    if not report.ok or (args.expect_complete and not run.complete):
        return 1
    return 0


def _formula_count(shape: Shape, pats) -> int:
    if pats == frozenset():
        return oracle.multinomial(shape)
    if pats == STIRLING:
        return oracle.stirling_count(shape)
    if pats == KCATALAN:
        mult = set(shape.multiplicities)
        if len(mult) == 1:
            return oracle.k_catalan(shape.multiplicities[0] + 1, shape.m)
        raise ValueError("the 132,121 formula needs every value to have the same multiplicity")
    raise ValueError(f"no closed formula for patterns {sorted(pats)}")


def _cmd_count(args) -> int:
    shape = parse_shape(args.shape)
    pats = _parse_avoid(args.avoid)
    if args.method == "formula":
        print(_formula_count(shape, pats))
    else:
        print(oracle.count_avoiding(shape, pats, args.cap))
    return 0


def _cmd_trace(args) -> int:
    shape = parse_shape(args.shape)
    rows = stirling.trace(shape)
    if args.format == "json":
        _print_json(
            {
                "format": 1,
                "shape": list(shape.multiplicities),
                "rows": [
                    {
                        "perm": list(r.perm),
                        "v": r.v,
                        "u": r.u,
                        "i": r.i,
                        "j": r.j,
                        "left": list(r.left),
                        "inv": list(r.inv),
                        "fs": list(r.fs),
                        "dirs": list(r.dirs),
                    }
                    for r in rows
                ],
            }
        )
        return 0
    table = [["perm", "v", "u", "i", "j", "left", "inv", "fs", "dirs"]]
    for r in rows:
        table.append(
            [
                format_word(r.perm),
                str(r.v),
                "-" if r.u is None else str(r.u),
                "-" if r.i is None else str(r.i),
                "-" if r.j is None else str(r.j),
                _fmt_vec(r.left),
                _fmt_vec(r.inv),
                _fmt_vec(r.fs),
                "".join("+" if d > 0 else "-" for d in r.dirs),
            ]
        )
    widths = [max(len(row[c]) for row in table) for c in range(len(table[0]))]
    for row in table:
        print("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
    return 0


def _cmd_zigzag(args) -> int:
    pats = _parse_avoid(args.avoid)
    negative = False
    if args.mode in ("syntactic", "both"):
        verdict = zigzag.syntactic_zigzag(pats)
        print(f"syntactic: {verdict}")
        negative = negative or not verdict
    if args.mode in ("semantic", "both"):
        if args.shape is None:
            raise ValueError("--mode semantic needs --shape")
        shape = parse_shape(args.shape)
        ok, witness = zigzag.semantic_zigzag(LanguageSpec(shape, pats), args.cap)
        print(f"semantic: {ok}")
        if witness is not None:
            w, i, direction, result = witness
            print(
                f"counterexample: word={format_word(w)} index={i} "
                f"dir={direction} result={format_word(result)}"
            )
        negative = negative or not ok
    return 1 if negative else 0


def _cmd_trees(args) -> int:
    shape = parse_shape(args.shape)
    if args.kind == "stirling":
        words = stirling.stirling_sequence(shape)
        forest = [trees.stirling_word_to_tree(w) for w in words]
    else:
        mult = set(shape.multiplicities)
        k = args.k
        if k is None:
            if len(mult) != 1:
                raise ValueError("--kind kary needs --k or a shape with equal multiplicities")
            k = shape.multiplicities[0] + 1
        if mult != {k - 1}:
            raise ValueError(f"--k {k} needs every multiplicity to be {k - 1}")
        run = greedy.generate_greedy(shape, KCATALAN, cap=args.cap)
        words = list(run.words)
        forest = [trees.kcatalan_word_to_tree(w, k) for w in words]
    if args.format == "json":
        payload = {
            "format": 1,
            "shape": list(shape.multiplicities),
            "kind": args.kind,
            "words": [list(w) for w in words],
            "trees": [str(t) for t in forest],
        }
        if args.kind == "kary":
            payload["k"] = k
        _print_json(payload)
    elif args.format == "dot":
        print(trees.export_dot(forest), end="")
    else:
        for t in forest:
            print(t)
    return 0


def _cmd_path(args) -> int:
    shape = parse_shape(args.shape)
    vectors = trees.hamilton_path(shape)
    if args.format == "json":
        _print_json(
            {
                "format": 1,
                "shape": list(shape.multiplicities),
                "vectors": [list(v) for v in vectors],
            }
        )
    elif args.format == "dot":
        print(trees.export_dot(vectors), end="")
    else:
        for v in vectors:
            print(",".join(str(x) for x in v))
    return 0


def _cmd_bench(args) -> int:
    shape = parse_shape(args.shape)
    expected = oracle.stirling_count(shape)
    backends = ["numba", "python"] if args.backend == "both" else [args.backend]
    if "numba" in backends and not kernels.HAVE_NUMBA:
        print("numba is not importable; skipping that backend", file=sys.stderr)
        backends = [b for b in backends if b != "numba"]
        if not backends:
            return 2
    print(f"shape={_fmt_vec(shape.multiplicities)} formula={expected}")
    for backend in backends:
        if backend == "numba":
            kernels.stirling_visit_count(shape, backend)  # compile outside the clock
        begin = time.perf_counter()
        count = kernels.stirling_visit_count(shape, backend)
        elapsed = time.perf_counter() - begin
        rate = count / elapsed if elapsed > 0 else float("inf")
        agree = "ok" if count == expected else "MISMATCH"
        print(
            f"backend={backend} words={count} seconds={elapsed:.6f} "
            f"words_per_sec={rate:.0f} {agree}"
        )
        if count != expected:
            return 1
    return 0


# --- parser -----------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="swordgen",
        description="Gray codes for pattern-avoiding words with repeated letters.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        p.add_argument("--shape", required=name != "zigzag", help="multiplicities, e.g. 2,1,3 or 2^8")
        p.add_argument("--cap", type=int, default=None, help="enumeration size limit")
        return p

    p = add("generate", _cmd_generate, "emit a word sequence")
    p.add_argument("--avoid", default=None, help="comma-separated patterns, e.g. 212,132")
    p.add_argument("--engine", choices=("greedy", "loopless", "oracle-lex"), default=None)
    p.add_argument("--start", default=None, help="start word for the greedy engine")
    p.add_argument("--format", choices=("text", "json", "dot"), default="text")
    p.add_argument("--expect-complete", action="store_true")

    p = add("verify", _cmd_verify, "generate and check the Gray-code report")
    p.add_argument("--avoid", default=None)
    p.add_argument("--engine", choices=("greedy", "loopless"), default=None)
    p.add_argument("--start", default=None)
    p.add_argument("--expect-complete", action="store_true")

    p = add("count", _cmd_count, "count the language")
    p.add_argument("--avoid", default=None)
    p.add_argument("--method", choices=("oracle", "formula"), default="oracle")

    p = add("trace", _cmd_trace, "per-visit variable table of the loopless engine")
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = add("zigzag", _cmd_zigzag, "test the zig-zag property")
    p.add_argument("--avoid", default=None)
    p.add_argument("--mode", choices=("semantic", "syntactic", "both"), default="both")

    p = add("trees", _cmd_trees, "emit the tree forms of a Gray code")
    p.add_argument("--kind", choices=("stirling", "kary"), default="stirling")
    p.add_argument("--k", type=int, default=None, help="arity for --kind kary")
    p.add_argument("--format", choices=("text", "json", "dot"), default="text")

    p = add("path", _cmd_path, "inversion-vector path through the box")
    p.add_argument("--format", choices=("text", "json", "dot"), default="text")

    p = add("bench", _cmd_bench, "time the loopless kernel")
    p.add_argument("--backend", choices=("numba", "python", "both"), default="both")

    return parser


def parse_and_dispatch(argv) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except SizeLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ValueError, kernels.BackendError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(parse_and_dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
