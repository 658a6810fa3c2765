import numpy as np
import pytest

from lpc_ad.tensor import Tensor, finite_diff_check, ops


class TestFiniteDiffCheck:
    def setup_method(self):
        pass

    def teardown_method(self):
        pass

    def test_restores_flags_and_values(self):
        w = Tensor([[0.3, -0.7]])
        before = w.data.copy()
        finite_diff_check(lambda: ops.sum_all(ops.tanh(w)), [w])
        assert not w.requires_grad
        assert w.grad is None
        assert np.array_equal(w.data, before)

    def test_detects_a_wrong_gradient(self):
        w = Tensor([[0.5, 1.5]])

        def f():
            # the detached copy hides one path from the tape
            frozen = Tensor(w.data)
            return ops.sum_all(ops.mul(w, frozen))

        assert finite_diff_check(f, {"w": w}) > 0.1

    def test_denominator_scales_with_the_function_value(self):
        w = Tensor([[1e-3]])

        def f():
            frozen = Tensor(w.data)
            return ops.add(ops.sum_all(ops.mul(w, frozen)), Tensor(1000.0))

        # analytic 1e-3 against numeric 2e-3, over max(2e-3, 1e-5 * |f|)
        assert finite_diff_check(f, [w]) == pytest.approx(0.1, rel=1e-3)
        assert finite_diff_check(f, [w], relative_floor=0.0) == pytest.approx(
            0.5, rel=1e-3
        )
