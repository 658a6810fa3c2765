from .config import TrainConfig, load_train_config  # noqa
from .normalizer import NormalizationStats, fit_normalizer, apply_normalizer  # noqa
from .windows import WindowPair, make_window_pairs, window_anchors, stack_pairs  # noqa
from .loss import batch_loss, loss_t, window_errors, draw_loss_noise  # noqa
from .trainer import (  # noqa
    EpochRecord,
    TrainResult,
    Trainer,
    train,
    train_on_series,
    write_loss_history,
)
