"""The training objective.

For every window pair the loss is the sum of three Frobenius norms:

* ``|W^h - W^h_hat|`` and ``|W - W_hat|`` of the plain autoencoder path
* the mean of ``|W~_k - W|`` over K perturbed second decodes

All three are summed over the batch. The ``ae`` variant keeps the first two
terms; the ``n`` variant replaces the Monte-Carlo term by a single decode of
the predicted latents.
"""
from typing import Optional, Sequence

import numpy as np

from lpc_ad.error import DimensionError
from lpc_ad.logger.messages import error_shape_mismatch
from lpc_ad.model import LpcModel, rand_perturb, sample_noise, window_steps
from lpc_ad.tensor import Tensor, ops
from lpc_ad.train.windows import WindowPair


def window_errors(targets: Sequence[Tensor], outputs: Sequence[Tensor]) -> Tensor:
    """Frobenius norm of every sample's window error as a ``[B x 1]`` tensor."""
    return ops.row_norms(
        ops.concat_cols([ops.sub(t, o) for t, o in zip(targets, outputs)])
    )


def _tile(steps: Sequence[Tensor], times: int) -> list:
    if times == 1:
        return list(steps)
    return [ops.concat_rows([s] * times) for s in steps]


def batch_loss(
    model: LpcModel,
    history: np.ndarray,
    future: np.ndarray,
    eps: Optional[np.ndarray] = None,
) -> Tensor:
    """Loss summed over a batch of window pairs.

    :param model: The model; its variant picks the loss terms.
    :param history: ``(B, l_h, M)`` historical windows.
    :param future: ``(B, l, M)`` future windows.
    :param eps: ``(K, B, l, N)`` noise of the K Monte-Carlo samples. Only read
        by the perturbing variants, where ``None`` means a single zero draw.
    :return: A scalar tensor.
    """
    hp = model.hyperparams
    w_history, w_future = window_steps(history), window_steps(future)
    batch = w_history[0].shape[0]
    z_history, z_future = model.encode(w_history, w_future)
    w_history_hat, w_future_hat = model.decode(z_history, z_future)
    loss = ops.add(
        ops.sum_all(window_errors(w_history, w_history_hat)),
        ops.sum_all(window_errors(w_future, w_future_hat)),
    )
    if hp.variant == "ae":
        return loss

    z_predicted = model.predict(z_history)
    if hp.variant == "n":
        _, w_predicted = model.decode(z_history, z_predicted)
        return ops.add(loss, ops.sum_all(window_errors(w_future, w_predicted)))

    if eps is None:
        eps = np.zeros((1, batch, hp.future_window, hp.latent_dim))
    eps = np.asarray(eps, dtype=np.float64)
    expected = (eps.shape[0], batch, hp.future_window, hp.latent_dim)
    if eps.ndim != 4 or eps.shape != expected:
        raise DimensionError(
            error_shape_mismatch("batch_loss eps", eps.shape, expected)
        )
    samples = eps.shape[0]
    # sample k occupies rows [k * B, (k + 1) * B) of the tiled batch
    z_perturbed = rand_perturb(
        _tile(z_future, samples),
        _tile(z_predicted, samples),
        eps.reshape((samples * batch,) + eps.shape[2:]),
    )
    _, w_perturbed = model.decode(_tile(z_history, samples), z_perturbed)
    mc_term = ops.sum_all(window_errors(_tile(w_future, samples), w_perturbed))
    return ops.add(loss, ops.scale(mc_term, 1.0 / samples))


def draw_loss_noise(
    model: LpcModel, rng: np.random.Generator, mc_samples: int, batch: int
) -> Optional[np.ndarray]:
    """Noise for ``batch_loss``; None for the variants that ignore it.

    With a zero variance the K draws coincide, so one sample is drawn.
    """
    hp = model.hyperparams
    if not hp.uses_perturbation:
        return None
    samples = 1 if hp.sigma2 == 0.0 else mc_samples
    return sample_noise(
        rng, hp.sigma2, (samples, batch, hp.future_window, hp.latent_dim)
    )


def loss_t(
    model: LpcModel, pair: WindowPair, mc_samples: int, rng: np.random.Generator
) -> Tensor:
    """The loss of a single window pair with freshly drawn noise."""
    return batch_loss(
        model,
        pair.history[np.newaxis],
        pair.future[np.newaxis],
        draw_loss_noise(model, rng, mc_samples, 1),
    )
