import numpy as np
import pytest

from lpc_ad.error import ContractError, DimensionError
from lpc_ad.model import (
    AttentionPredictor,
    LinearPredictor,
    Seq2SeqPredictor,
    predic_attention,
    predic_linear,
)
from lpc_ad.tensor import (
    AdamState,
    ComputationTape,
    Tensor,
    adam_step,
    backward,
    finite_diff_check,
    ops,
)


def rotation_sequences(
    rng: np.random.Generator, count: int, length: int
) -> np.ndarray:
    """``(count, length, 2)`` latents of ``z_{t+1} = 0.98 R(0.4) z_t``."""
    angle = 0.4
    a = 0.98 * np.array(
        [[np.cos(angle), -np.sin(angle)], [np.sin(angle), np.cos(angle)]]
    )
    phase = rng.uniform(0.0, 2.0 * np.pi, size=count)
    radius = rng.uniform(0.5, 1.0, size=count)
    z = np.stack([radius * np.cos(phase), radius * np.sin(phase)], axis=1)
    steps = [z]
    for _ in range(length - 1):
        steps.append(steps[-1] @ a.T)
    return np.stack(steps, axis=1)


class TestPredictors:
    def setup_method(self):
        self.rng = np.random.default_rng(3)
        self.batch, self.latent_dim, self.history_window = 3, 2, 4
        self.history = [
            Tensor(self.rng.normal(size=(self.batch, self.latent_dim)))
            for _ in range(self.history_window)
        ]

    def teardown_method(self):
        pass

    def test_linear_prediction_is_p_z_q(self):
        predictor = LinearPredictor.initialize(
            latent_dim=2, history_window=4, future_window=3, rng=self.rng
        )
        predictions = predic_linear(predictor.p, predictor.q, self.history)
        assert len(predictions) == 3
        for b in range(self.batch):
            # columns of z are the history latents of sample b
            z = np.stack([h.data[b] for h in self.history], axis=1)
            expected = predictor.p.data @ z @ predictor.q.data
            for j, prediction in enumerate(predictions):
                assert np.allclose(prediction.data[b], expected[:, j])

    def test_linear_checks_the_history_length(self):
        predictor = LinearPredictor.initialize(
            latent_dim=2, history_window=5, future_window=1, rng=self.rng
        )
        with pytest.raises(DimensionError):
            predictor(self.history)

    @pytest.mark.parametrize("cls", [Seq2SeqPredictor, AttentionPredictor])
    def test_recurrent_prediction_shapes(self, cls):
        predictor = cls.initialize(
            latent_dim=2, hidden_dim=3, future_window=2, rng=self.rng
        )
        predictions = predictor(self.history)
        assert predictor.future_window == 2
        assert [p.shape for p in predictions] == [(3, 2), (3, 2)]

    def test_attention_weights(self):
        predictor = AttentionPredictor.initialize(
            latent_dim=2, hidden_dim=3, future_window=3, rng=self.rng
        )
        predictions, weights = predic_attention(predictor, self.history)
        assert len(weights) == 3
        for betas in weights:
            assert betas.shape == (self.batch, self.history_window)
            assert np.allclose(betas.data.sum(axis=1), 1.0)
        assert np.allclose(predictor(self.history)[-1].data, predictions[-1].data)

    def test_empty_history(self):
        predictor = Seq2SeqPredictor.initialize(
            latent_dim=2, hidden_dim=3, future_window=2, rng=self.rng
        )
        with pytest.raises(ContractError):
            predictor([])

    def test_latent_width_is_checked(self):
        predictor = Seq2SeqPredictor.initialize(
            latent_dim=3, hidden_dim=3, future_window=2, rng=self.rng
        )
        with pytest.raises(DimensionError):
            predictor(self.history)

    @pytest.mark.parametrize(
        "build",
        [
            lambda rng: LinearPredictor.initialize(
                latent_dim=2, history_window=4, future_window=2, rng=rng
            ),
            lambda rng: Seq2SeqPredictor.initialize(
                latent_dim=2, hidden_dim=2, future_window=2, rng=rng
            ),
            lambda rng: AttentionPredictor.initialize(
                latent_dim=2, hidden_dim=2, future_window=2, rng=rng
            ),
        ],
    )
    def test_gradients(self, build):
        predictor = build(self.rng)
        params = predictor.parameters("predictor")

        def f():
            predictions = predictor(self.history)
            return ops.sum_all(ops.tanh(ops.concat_cols(predictions)))

        assert finite_diff_check(f, params) < 1e-5

    def test_linear_identity_returns_the_last_latent(self):
        q = np.zeros((self.history_window, 1))
        q[-1, 0] = 1.0
        p = Tensor(np.eye(self.latent_dim))
        (prediction,) = predic_linear(p, Tensor(q), self.history)
        assert np.array_equal(prediction.data, self.history[-1].data)


class TestSeq2SeqFit:
    def setup_method(self):
        self.rng = np.random.default_rng(8)
        self.predictor = Seq2SeqPredictor.initialize(
            latent_dim=2, hidden_dim=8, future_window=2, rng=self.rng
        )

    def teardown_method(self):
        pass

    def mse(self, sequences: np.ndarray) -> Tensor:
        history = [Tensor(sequences[:, i]) for i in range(4)]
        errors = [
            ops.sub(prediction, Tensor(sequences[:, 4 + j]))
            for j, prediction in enumerate(self.predictor(history))
        ]
        stacked = ops.concat_cols(errors)
        squared = ops.sum_all(ops.mul(stacked, stacked))
        return ops.scale(squared, 1.0 / (sequences.shape[0] * 2 * 2))

    def test_learns_a_linear_recurrence(self):
        params = self.predictor.parameters("predictor")
        for p in params.values():
            p.requires_grad = True
        state = AdamState(learning_rate=0.01)
        for _ in range(500):
            with ComputationTape() as tape:
                loss = self.mse(rotation_sequences(self.rng, 32, 6))
            backward(loss, tape)
            adam_step(params, state)
        held_out = rotation_sequences(np.random.default_rng(99), 200, 6)
        assert self.mse(held_out).item() < 0.05
