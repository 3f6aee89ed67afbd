import pytest

from swordgen import kernels
from swordgen.bumps import classify_move
from swordgen.greedy import verify_gray_code
from swordgen.oracle import all_shapes, language, stirling_count
from swordgen.stirling import (
    TraceRow,
    generate_loopless,
    loopless_run,
    step_stats,
    stirling_sequence,
    trace,
)
from swordgen.trees import inversion_vector
from swordgen.words import make_shape

BACKENDS = ["python"] + (["numba"] if kernels.HAVE_NUMBA else [])

# every visit of the (2,1,3) run with its full variable state
TRACE_213 = [
    TraceRow((1, 1, 2, 3, 3, 3), 3, 2, 6, 3, (1, 3, 4), (0, 0, 0), (1, 2, 3), (-1, -1, -1)),
    TraceRow((1, 1, 3, 3, 3, 2), 3, 1, 5, 2, (1, 6, 3), (0, 0, 1), (1, 2, 3), (-1, -1, -1)),
    TraceRow((1, 3, 3, 3, 1, 2), 3, 1, 4, 1, (1, 6, 2), (0, 0, 2), (1, 2, 3), (-1, -1, -1)),
    TraceRow((3, 3, 3, 1, 1, 2), 2, 1, 6, 5, (4, 6, 1), (0, 0, 3), (1, 2, 3), (-1, -1, 1)),
    TraceRow((3, 3, 3, 1, 2, 1), 3, 1, 1, 4, (4, 5, 1), (0, 1, 3), (1, 2, 3), (-1, -1, 1)),
    TraceRow((1, 3, 3, 3, 2, 1), 3, 2, 2, 5, (1, 5, 2), (0, 1, 2), (1, 2, 3), (-1, -1, 1)),
    TraceRow((1, 2, 3, 3, 3, 1), 3, 1, 3, 6, (1, 2, 3), (0, 1, 1), (1, 2, 3), (-1, -1, 1)),
    TraceRow((1, 2, 1, 3, 3, 3), 2, 1, 2, 1, (1, 2, 4), (0, 1, 0), (1, 2, 3), (-1, -1, -1)),
    TraceRow((2, 1, 1, 3, 3, 3), 3, 1, 6, 3, (2, 1, 4), (0, 2, 0), (1, 1, 3), (-1, 1, -1)),
    TraceRow((2, 1, 3, 3, 3, 1), 3, 1, 5, 2, (2, 1, 3), (0, 2, 1), (1, 1, 3), (-1, 1, -1)),
    TraceRow((2, 3, 3, 3, 1, 1), 3, 2, 4, 1, (5, 1, 2), (0, 2, 2), (1, 1, 3), (-1, 1, -1)),
    TraceRow((3, 3, 3, 2, 1, 1), 1, None, None, None, (5, 4, 1), (0, 2, 3), (1, 2, 3), (-1, 1, 1)),
]


class TestTrace:
    def test_full_state_table(self):
        assert trace(make_shape((2, 1, 3))) == TRACE_213

    def test_single_value_shape(self):
        rows = trace(make_shape((3,)))
        assert rows == [TraceRow((1, 1, 1), 1, None, None, None, (1,), (0,), (1,), (-1,))]


class TestSequences:
    @pytest.mark.parametrize("backend", BACKENDS)
    def test_plain_changes(self, backend):
        got = stirling_sequence(make_shape((1, 1, 1)), backend=backend)
        assert got == [
            (1, 2, 3), (1, 3, 2), (3, 1, 2), (3, 2, 1), (2, 3, 1), (2, 1, 3),
        ]

    @pytest.mark.parametrize("backend", BACKENDS)
    def test_tiny_shapes(self, backend):
        assert stirling_sequence(make_shape((3,)), backend=backend) == [(1, 1, 1)]
        assert stirling_sequence(make_shape((1, 2)), backend=backend) == [
            (1, 2, 2), (2, 2, 1),
        ]

    def test_matches_trace_words(self):
        got = stirling_sequence(make_shape((2, 1, 3)), backend="python")
        assert got == [row.perm for row in TRACE_213]

    def test_visits_stirling_language_exactly_once(self):
        for total in range(1, 8):
            for shape in all_shapes(total):
                seq = stirling_sequence(shape, backend="python")
                assert len(seq) == stirling_count(shape)
                assert set(seq) == language(shape, {"212"}).word_set()
                assert len(set(seq)) == len(seq)

    def test_visitor_sees_live_list(self):
        shape = make_shape((1, 2))
        raw = []
        count = generate_loopless(shape, raw.append)
        assert count == 2
        assert raw[0] is raw[1]  # same list object every visit: copy to keep
        assert tuple(raw[0]) == (2, 2, 1)  # final state after the last move


class TestKernelAgreement:
    @pytest.mark.parametrize("backend", BACKENDS)
    def test_run_columns_match_reference(self, backend):
        for total in range(1, 8):
            for shape in all_shapes(total):
                rows = trace(shape)
                size = len(rows)
                codes, invs, vs, ds = kernels.stirling_run(shape, size, backend)
                assert kernels.codes_to_words(codes, shape.n) == [r.perm for r in rows]
                assert kernels.codes_to_words(invs, shape.m) == [r.inv for r in rows]
                assert list(vs) == [r.v for r in rows]
                want_ds = [r.dirs[r.v - 1] for r in rows[:-1]] + [0]
                assert list(ds) == want_ds

    @pytest.mark.parametrize("backend", BACKENDS)
    def test_visit_count_kernel(self, backend):
        for total in range(1, 9):
            for shape in all_shapes(total):
                assert kernels.stirling_visit_count(shape, backend) == stirling_count(shape)


class TestRunObject:
    def test_moves_classify(self):
        for mult in [(1, 1, 1), (2, 1, 3), (2, 2), (1, 2, 2), (3, 1)]:
            run = loopless_run(make_shape(mult))
            assert len(run.moves) == len(run.words) - 1
            for a, b, mv in zip(run.words, run.words[1:], run.moves):
                assert classify_move(a, b) == mv

    def test_verifies_clean(self):
        report = verify_gray_code(loopless_run(make_shape((2, 1, 3))))
        assert report.ok
        assert report.exhaustive and report.transpositions_only

    def test_every_step_is_a_transposition(self):
        for total in range(1, 7):
            for shape in all_shapes(total):
                run = loopless_run(shape)
                for a, b in zip(run.words, run.words[1:]):
                    assert sum(x != y for x, y in zip(a, b)) == 2


class TestInversionBookkeeping:
    def test_inv_column_tracks_inversion_vector(self):
        # the engine's inv array must agree at every visit with the value
        # recomputed from scratch off the current word
        for total in range(1, 7):
            for shape in all_shapes(total):
                for row in trace(shape):
                    assert row.inv == inversion_vector(row.perm), (
                        shape.multiplicities,
                        row,
                    )


class TestStepStats:
    @pytest.mark.parametrize("backend", BACKENDS)
    def test_counts_and_constant_bound(self, backend):
        maxima = set()
        for mult in [(1, 1, 1), (2, 1, 3), (2, 2, 2), (1, 2, 3), (4, 4), (1,) * 7]:
            shape = make_shape(mult)
            count, max_steps = step_stats(shape, backend)
            assert count == stirling_count(shape)
            maxima.add(max_steps)
        assert len(maxima) == 1  # the per-visit work does not grow with n or m
