from .tensor import Tensor  # noqa
from .tape import ComputationTape, backward, active_tape  # noqa
from .optimizer import AdamState, adam_step  # noqa
from .gradcheck import finite_diff_check  # noqa
from . import ops  # noqa
