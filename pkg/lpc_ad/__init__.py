# Don't add the cli package here; it pulls in click and matplotlib
from .version import __version__  # noqa
from .model import LpcModel, ModelHyperParams  # noqa
from .train import TrainConfig, load_train_config, train, train_on_series  # noqa
from .detect import NoiseMode, WindowScorer, score_windows, detect  # noqa
from .evaluation import threshold_search, prf, auroc, aggregate  # noqa
from .data import (  # noqa
    SeriesMatrix,
    DatasetBundle,
    SynthSpec,
    load_dataset,
    synth_generate,
)
