import math

import numpy as np

# Independent random streams derived from one run seed
STREAM_INIT = 0
STREAM_SHUFFLE = 1
STREAM_TRAIN_NOISE = 2
STREAM_DETECT_NOISE = 3
STREAM_SYNTH = 4


def create_rng(seed: int, *streams: int) -> np.random.Generator:
    if not streams:
        return np.random.default_rng(seed)
    return np.random.default_rng([seed, *streams])


def default_hidden_dim(dims: int) -> int:
    return max(1, math.ceil(dims / 2))


def format_float(value: float) -> str:
    return f"{value:.17g}"
