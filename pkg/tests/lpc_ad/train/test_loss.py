import numpy as np
import pytest

from lpc_ad.error import DimensionError
from lpc_ad.model import LpcModel, ModelHyperParams
from lpc_ad.tensor import finite_diff_check
from lpc_ad.train import batch_loss, draw_loss_noise, loss_t, make_window_pairs


def small_model(
    variant: str, sigma2: float = 1.0, history_window: int = 3
) -> LpcModel:
    hp = ModelHyperParams(
        dims=3,
        latent_dim=2,
        history_window=history_window,
        future_window=2,
        hidden_dim=2,
        variant=variant,
        sigma2=sigma2,
    )
    return LpcModel.initialize(hp, seed=0)


class TestLoss:
    def setup_method(self):
        self.rng = np.random.default_rng(6)
        self.history = self.rng.normal(size=(2, 3, 3))
        self.future = self.rng.normal(size=(2, 2, 3))

    def teardown_method(self):
        pass

    def test_loss_is_a_non_negative_scalar(self):
        for variant in ("sa", "s", "l", "ae", "n"):
            loss = batch_loss(small_model(variant), self.history, self.future)
            assert loss.shape == ()
            assert loss.item() > 0.0

    def test_batch_loss_sums_the_pairs(self):
        model = small_model("ae")
        total = batch_loss(model, self.history, self.future).item()
        parts = [
            batch_loss(model, self.history[i : i + 1], self.future[i : i + 1]).item()
            for i in range(2)
        ]
        assert total == pytest.approx(sum(parts))

    def test_identical_samples_average_to_one_sample(self):
        model = small_model("sa")
        eps = self.rng.normal(size=(1, 2, 2, 2))
        single = batch_loss(model, self.history, self.future, eps).item()
        repeated = batch_loss(
            model, self.history, self.future, np.repeat(eps, 4, axis=0)
        ).item()
        assert repeated == pytest.approx(single)

    def test_noise_shape_is_checked(self):
        with pytest.raises(DimensionError):
            batch_loss(
                small_model("s"), self.history, self.future, np.zeros((2, 2, 2, 3))
            )

    def test_draw_loss_noise(self):
        assert draw_loss_noise(small_model("ae"), self.rng, 5, 4) is None
        assert draw_loss_noise(small_model("n"), self.rng, 5, 4) is None
        assert draw_loss_noise(small_model("l"), self.rng, 5, 4).shape == (5, 4, 2, 2)
        zero = draw_loss_noise(small_model("l", sigma2=0.0), self.rng, 5, 4)
        assert zero.shape == (1, 4, 2, 2)
        assert not zero.any()

    def test_single_pair_loss(self):
        model = small_model("ae")
        values = self.rng.normal(size=(6, 3))
        pair = make_window_pairs(values, 3, 2)[0]
        expected = batch_loss(model, pair.history[np.newaxis], pair.future[np.newaxis])
        assert loss_t(model, pair, 3, self.rng).item() == pytest.approx(expected.item())

    @pytest.mark.parametrize("variant", ["sa", "s", "l", "ae", "n"])
    def test_gradients(self, variant):
        # M=3, N=2, l_h=4, l=2 and K=2 with the noise held fixed
        model = small_model(variant, history_window=4)
        history = self.rng.normal(size=(2, 4, 3))
        eps = draw_loss_noise(model, self.rng, 2, 2)

        def f():
            return batch_loss(model, history, self.future, eps)

        assert finite_diff_check(f, model.parameters()) < 1e-4

    @pytest.mark.parametrize("variant", ["sa", "s", "l", "ae", "n"])
    def test_exact_reconstruction_has_zero_loss(self, variant):
        model = small_model(variant, sigma2=0.0)
        params = model.parameters()
        level = np.array([0.2, -1.0, 3.5])
        # the decoder ignores its latents and emits the series level
        params["decoder.linear.weight"].data[...] = 0.0
        params["decoder.linear.bias"].data[...] = level
        history = np.broadcast_to(level, (2, 3, 3))
        future = np.broadcast_to(level, (2, 2, 3))
        eps = draw_loss_noise(model, self.rng, 4, 2)
        assert batch_loss(model, history, future, eps).item() == 0.0

    def test_monte_carlo_spread_shrinks_with_more_samples(self):
        model = small_model("sa")

        def spread(samples: int) -> float:
            rng = np.random.default_rng(samples)
            estimates = [
                batch_loss(
                    model,
                    self.history,
                    self.future,
                    draw_loss_noise(model, rng, samples, 2),
                ).item()
                for _ in range(20)
            ]
            return float(np.var(estimates))

        one, hundred = spread(1), spread(100)
        assert one > 0.0
        assert hundred < one / 10.0
