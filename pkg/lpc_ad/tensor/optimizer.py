from typing import Dict, Mapping

import numpy as np

from lpc_ad.error import ContractError
from lpc_ad.logger.messages import error_missing_grad
from lpc_ad.tensor.tensor import Tensor, ensure_finite


class AdamState:
    learning_rate: float
    beta1: float
    beta2: float
    epsilon: float
    step: int
    first_moments: Dict[str, np.ndarray]
    second_moments: Dict[str, np.ndarray]

    def __init__(
        self,
        *,
        learning_rate: float = 0.001,
        beta1: float = 0.9,
        beta2: float = 0.999,
        epsilon: float = 1e-8,
    ):
        """Adam moment buffers and hyperparameters.

        :param learning_rate: The step size (Default: 0.001)
        :param beta1: Decay rate of the first moment (Default: 0.9)
        :param beta2: Decay rate of the second moment (Default: 0.999)
        :param epsilon: Denominator stabilizer (Default: 1e-8)
        """
        self.learning_rate = learning_rate
        self.beta1 = beta1
        self.beta2 = beta2
        self.epsilon = epsilon
        self.step = 0
        self.first_moments = {}
        self.second_moments = {}


def adam_step(params: Mapping[str, Tensor], state: AdamState) -> Mapping[str, Tensor]:
    """Applies one bias-corrected Adam update in place and clears the gradients."""
    for name, param in params.items():
        if param.grad is None:
            raise ContractError(error_missing_grad(name))

    state.step += 1
    bc1 = 1.0 - state.beta1 ** state.step
    bc2 = 1.0 - state.beta2 ** state.step

    for name, param in params.items():
        g = param.grad
        if name not in state.first_moments:
            state.first_moments[name] = np.zeros_like(param.data)
            state.second_moments[name] = np.zeros_like(param.data)
        m = state.first_moments[name]
        v = state.second_moments[name]
        m *= state.beta1
        m += (1.0 - state.beta1) * g
        v *= state.beta2
        v += (1.0 - state.beta2) * (g * g)

        m_hat = m / bc1
        v_hat = v / bc2
        param.data -= state.learning_rate * m_hat / (np.sqrt(v_hat) + state.epsilon)
        ensure_finite(param.data, f"adam_step({name})")
        param.grad = None
    return params
