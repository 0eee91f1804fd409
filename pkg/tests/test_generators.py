from itertools import permutations

import numpy as np
import pytest

from lopkit import (
    ComponentPair,
    RngSeed,
    compose,
    cyclic_shift,
    evaluate,
    gen_np_component,
    gen_p_component,
    gen_uniform,
    is_np_component,
    is_p_component,
    solve_exhaustive,
    solve_p_exact,
    split,
)


class TestRngSeed:
    def test_same_seed_same_stream(self):
        a = RngSeed(5, (1, 2)).generator().uniform(size=8)
        b = RngSeed(5, (1, 2)).generator().uniform(size=8)
        assert np.array_equal(a, b)

    def test_paths_are_independent(self):
        a = RngSeed(5, (1,)).generator().uniform(size=8)
        b = RngSeed(5, (2,)).generator().uniform(size=8)
        assert not np.array_equal(a, b)

    def test_child_extends_path(self):
        assert RngSeed(5, (1,)).child(2, 3).path == (1, 2, 3)


class TestGenPComponent:
    @pytest.mark.parametrize("n", [2, 5, 8])
    def test_passes_validator(self, n):
        inst = gen_p_component(n, RngSeed(1, (n,)))
        assert inst.n == n and is_p_component(inst)

    def test_deterministic(self):
        a = gen_p_component(6, RngSeed(7))
        b = gen_p_component(6, RngSeed(7))
        assert np.array_equal(a.a, b.a)

    def test_distinct_across_paths(self):
        instances = [gen_p_component(6, RngSeed(7, (r,))) for r in range(20)]
        matrices = {inst.a.tobytes() for inst in instances}
        assert len(matrices) == 20

    @pytest.mark.parametrize("n", [4, 6, 8])
    def test_polynomial_solver_is_exact_on_output(self, n):
        inst = gen_p_component(n, RngSeed(3, (n,)))
        value = evaluate(inst, solve_p_exact(inst))
        assert value == pytest.approx(solve_exhaustive(inst).f_max, rel=1e-9)

    def test_rejects_n1(self):
        with pytest.raises(ValueError):
            gen_p_component(1, RngSeed(0))


class TestGenNpComponent:
    @pytest.mark.parametrize("n", [2, 5, 8])
    def test_passes_validator(self, n):
        inst = gen_np_component(n, RngSeed(2, (n,)))
        assert inst.n == n and is_np_component(inst)

    def test_deterministic(self):
        a = gen_np_component(6, RngSeed(9))
        b = gen_np_component(6, RngSeed(9))
        assert np.array_equal(a.a, b.a)

    def test_n2_is_symmetric(self):
        # The only 2x2 zero-row-sum instances are the symmetric ones.
        inst = gen_np_component(2, RngSeed(4))
        assert inst.a[0, 1] == pytest.approx(inst.a[1, 0])

    @pytest.mark.parametrize("n", [4, 5, 6])
    def test_cyclic_shift_invariance(self, n):
        inst = gen_np_component(n, RngSeed(5, (n,)))
        for p in permutations(range(n)):
            p = np.array(p)
            assert evaluate(inst, p) == pytest.approx(
                evaluate(inst, cyclic_shift(p)), rel=1e-9, abs=1e-9
            )


class TestGenUniform:
    def test_entries_in_open_interval(self):
        inst = gen_uniform(10, RngSeed(6))
        off = inst.a[~np.eye(10, dtype=bool)]
        assert np.all(np.abs(off) < 1.0)

    def test_deterministic(self):
        assert np.array_equal(gen_uniform(5, RngSeed(8)).a, gen_uniform(5, RngSeed(8)).a)

    def test_split_of_uniform_validates(self):
        inst = gen_uniform(7, RngSeed(12))
        pair = split(inst)
        assert is_p_component(pair.p_part)
        assert is_np_component(pair.np_part)
        assert np.abs(pair.p_part.a + pair.np_part.a - inst.a).max() <= 1e-13


class TestCompose:
    def test_epsilon_zero(self, u3, c3):
        pair = ComponentPair(u3, c3)
        assert np.array_equal(compose(pair, 0.0).a, u3.a)

    def test_epsilon_one(self, u3, c3):
        pair = ComponentPair(u3, c3)
        assert np.array_equal(compose(pair, 1.0).a, [[0, 3, 3], [-2, 0, 2], [-2, -1, 0]])

    def test_epsilon_two(self, u3, c3):
        pair = ComponentPair(u3, c3)
        assert np.array_equal(compose(pair, 2.0).a, [[0, 4, 3], [-2, 0, 3], [-1, -1, 0]])

    def test_negative_epsilon_rejected(self, u3, c3):
        with pytest.raises(ValueError):
            compose(ComponentPair(u3, c3), -0.5)

    def test_zero_diagonal_preserved(self):
        pair = split(gen_uniform(6, RngSeed(13)))
        assert np.all(np.diagonal(compose(pair, 316.228).a) == 0.0)

    @pytest.mark.parametrize("n", [5, 8])
    def test_epsilon_zero_composition_is_polynomially_solvable(self, n):
        pair = ComponentPair(
            gen_p_component(n, RngSeed(14, (n, 0))),
            gen_np_component(n, RngSeed(14, (n, 1))),
        )
        inst = compose(pair, 0.0)
        value = evaluate(inst, solve_p_exact(inst))
        assert value == pytest.approx(solve_exhaustive(inst).f_max, rel=1e-9)
