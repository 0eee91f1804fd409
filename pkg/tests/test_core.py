import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from lopkit import (
    LopInstance,
    adjacent_swap_delta,
    cyclic_shift,
    evaluate,
    mean_value,
    net_flow,
    read_instance,
    relative_error,
    swap_positions,
    write_instance,
)

from conftest import brute_objective, brute_values, random_instance


def square_matrices(max_n=6, scale=10.0):
    def build(n):
        return arrays(
            np.float64,
            (n, n),
            elements=st.floats(-scale, scale, allow_nan=False, width=32),
        ).map(lambda a: (np.fill_diagonal(a, 0.0), a)[1])

    return st.integers(2, max_n).flatmap(build)


class TestLopInstance:
    def test_rejects_nonsquare(self):
        with pytest.raises(ValueError, match="square"):
            LopInstance([[0, 1, 2], [3, 0, 4]])

    def test_rejects_n1(self):
        with pytest.raises(ValueError, match="at least 2"):
            LopInstance([[0]])

    def test_rejects_nonzero_diagonal(self):
        with pytest.raises(ValueError, match="diagonal"):
            LopInstance([[0, 1], [2, 0.5]])

    def test_rejects_nan(self):
        with pytest.raises(ValueError, match="finite"):
            LopInstance([[0, np.nan], [1, 0]])

    def test_immutable(self, a3):
        assert not a3.a.flags.writeable
        with pytest.raises(AttributeError):
            a3.a = np.zeros((3, 3))

    def test_hash_and_eq_by_value(self, a3):
        other = LopInstance([[0, 1, 2], [3, 0, 4], [5, 6, 0]])
        assert a3 == other and hash(a3) == hash(other)
        assert a3 != LopInstance(np.zeros((3, 3)))


class TestEvaluate:
    def test_a3_identity(self, a3):
        assert evaluate(a3, [0, 1, 2]) == pytest.approx(7.0)

    def test_a3_reversed(self, a3):
        assert evaluate(a3, [2, 1, 0]) == pytest.approx(14.0)

    def test_zero_matrix(self):
        z = LopInstance(np.zeros((4, 4)))
        assert evaluate(z, [2, 0, 3, 1]) == 0.0

    def test_dimension_mismatch(self, a3):
        with pytest.raises(ValueError):
            evaluate(a3, [0, 1])

    def test_not_a_bijection(self, a3):
        with pytest.raises(ValueError):
            evaluate(a3, [0, 1, 1])

    def test_matches_reference_on_random(self):
        rng = np.random.default_rng(11)
        for n in (2, 4, 6):
            inst = random_instance(rng, n, scale=50)
            for _ in range(10):
                p = rng.permutation(n)
                assert evaluate(inst, p) == pytest.approx(brute_objective(inst.a, p), rel=1e-12)

    def test_offdiagonal_shift_adds_constant(self):
        rng = np.random.default_rng(12)
        inst = random_instance(rng, 5)
        c = 3.25
        shifted = inst.a + c
        np.fill_diagonal(shifted, 0.0)
        shifted = LopInstance(shifted)
        for _ in range(10):
            p = rng.permutation(5)
            expect = evaluate(inst, p) + c * 5 * 4 / 2
            assert evaluate(shifted, p) == pytest.approx(expect, rel=1e-12)


class TestAdjacentSwapDelta:
    def test_a3_examples(self, a3):
        assert adjacent_swap_delta(a3, [0, 1, 2], 0) == pytest.approx(2.0)
        assert adjacent_swap_delta(a3, [0, 1, 2], 1) == pytest.approx(2.0)

    def test_symmetric_matrix_is_zero(self):
        m = np.array([[0.0, 2, 5], [2, 0, 7], [5, 7, 0]])
        inst = LopInstance(m)
        for k in (0, 1):
            assert adjacent_swap_delta(inst, [2, 0, 1], k) == 0.0

    def test_out_of_range(self, a3):
        with pytest.raises(ValueError):
            adjacent_swap_delta(a3, [0, 1, 2], 2)
        with pytest.raises(ValueError):
            adjacent_swap_delta(a3, [0, 1, 2], -1)

    @settings(max_examples=60, deadline=None)
    @given(square_matrices(), st.data())
    def test_matches_evaluate_difference(self, a, data):
        n = a.shape[0]
        inst = LopInstance(a)
        perm = np.array(data.draw(st.permutations(range(n))))
        k = data.draw(st.integers(0, n - 2))
        swapped = swap_positions(perm, k, k + 1)
        delta = adjacent_swap_delta(inst, perm, k)
        direct = evaluate(inst, swapped) - evaluate(inst, perm)
        assert delta == pytest.approx(direct, rel=1e-9, abs=1e-9)


class TestPermutationOps:
    def test_swap_positions_examples(self):
        assert swap_positions([0, 1, 2], 0, 2).tolist() == [2, 1, 0]
        assert swap_positions([3, 0, 1, 2], 1, 2).tolist() == [3, 1, 0, 2]

    def test_swap_rejects_equal_positions(self):
        with pytest.raises(ValueError):
            swap_positions([0, 1, 2], 1, 1)

    def test_swap_rejects_reversed_positions(self):
        with pytest.raises(ValueError):
            swap_positions([0, 1, 2], 2, 0)

    def test_cyclic_shift_examples(self):
        assert cyclic_shift([0, 1, 2, 3]).tolist() == [3, 0, 1, 2]
        assert cyclic_shift([0, 1]).tolist() == [1, 0]

    def test_cyclic_shift_order_n(self):
        p = np.array([4, 2, 0, 3, 1])
        q = p.copy()
        for _ in range(5):
            q = cyclic_shift(q)
        assert np.array_equal(p, q)


class TestNetFlow:
    def test_a3(self, a3):
        assert net_flow(a3).tolist() == [-5.0, 0.0, 5.0]

    def test_symmetric_is_zero(self):
        m = np.array([[0.0, 2, 5], [2, 0, 7], [5, 7, 0]])
        assert np.allclose(net_flow(LopInstance(m)), 0.0)

    def test_cyclic(self, c3):
        assert net_flow(c3).tolist() == [0.0, 0.0, 0.0]


class TestMeanValue:
    def test_a3(self, a3):
        assert mean_value(a3) == pytest.approx(10.5)

    def test_zero(self):
        assert mean_value(LopInstance(np.zeros((3, 3)))) == 0.0

    def test_skew_symmetric(self):
        m = np.array([[0.0, 1.5, -2], [-1.5, 0, 4], [2, -4, 0]])
        assert mean_value(LopInstance(m)) == pytest.approx(0.0)

    @pytest.mark.parametrize("n", [3, 5, 7])
    def test_equals_brute_average(self, n):
        rng = np.random.default_rng(n)
        inst = random_instance(rng, n, scale=5)
        vals = [f for _, f in brute_values(inst.a)]
        assert mean_value(inst) == pytest.approx(sum(vals) / len(vals), rel=1e-9)


class TestRelativeError:
    def test_optimum(self):
        assert relative_error(14, 14, 7) == 0.0

    def test_worst(self):
        assert relative_error(7, 14, 7) == 1.0

    def test_interior(self):
        assert relative_error(12, 14, 7) == pytest.approx(2 / 7)

    def test_degenerate_range_is_zero(self):
        assert relative_error(5, 5, 5) == 0.0

    def test_tiny_overshoot_clamped(self):
        assert relative_error(14 + 1e-12, 14, 7) >= 0.0

    def test_violation_raises(self):
        with pytest.raises(ValueError):
            relative_error(0, 14, 7)
        with pytest.raises(ValueError):
            relative_error(10, 7, 14)

    @given(
        st.floats(-100, 100, allow_nan=False),
        st.floats(-100, 100, allow_nan=False),
        st.floats(-100, 100, allow_nan=False),
    )
    def test_bounds(self, x, y, z):
        f_min, f_sigma, f_max = sorted((x, y, z))
        err = relative_error(f_sigma, f_max, f_min)
        assert 0.0 <= err <= 1.0


class TestInstanceIO:
    def test_round_trip(self, tmp_path):
        rng = np.random.default_rng(99)
        inst = random_instance(rng, 6, scale=123.456)
        path = tmp_path / "inst.txt"
        write_instance(inst, path, comments=["type=uniform n=6 seed=99"])
        back = read_instance(path)
        assert np.array_equal(back.a, inst.a)
        assert path.read_text().startswith("# type=uniform")

    def test_bad_diagonal_rejected(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("2\n1e-6 3\n4 0\n")
        with pytest.raises(ValueError, match="diagonal"):
            read_instance(path)

    def test_tiny_diagonal_snapped_to_zero(self, tmp_path):
        path = tmp_path / "snap.txt"
        path.write_text("2\n1e-13 3\n4 -1e-13\n")
        inst = read_instance(path)
        assert inst.a[0, 0] == 0.0 and inst.a[1, 1] == 0.0

    def test_row_count_mismatch(self, tmp_path):
        path = tmp_path / "short.txt"
        path.write_text("3\n0 1 2\n3 0 4\n")
        with pytest.raises(ValueError, match="rows"):
            read_instance(path)

    def test_row_width_mismatch(self, tmp_path):
        path = tmp_path / "wide.txt"
        path.write_text("2\n0 1 7\n3 0\n")
        with pytest.raises(ValueError, match="entries"):
            read_instance(path)

    def test_empty_file(self, tmp_path):
        path = tmp_path / "empty.txt"
        path.write_text("# only a comment\n")
        with pytest.raises(ValueError, match="empty"):
            read_instance(path)
