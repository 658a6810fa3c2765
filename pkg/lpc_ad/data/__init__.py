# checkpoint and plot build on the model, train and detect packages and are
# imported from their modules: lpc_ad.data.checkpoint, lpc_ad.data.plot
from .series import SeriesMatrix, DatasetBundle  # noqa
from .loader import (  # noqa
    load_dataset,
    discover_datasets,
    write_dataset,
    read_matrix,
    read_labels,
)
from .synth import (  # noqa
    SynthSpec,
    AnomalySegment,
    load_synth_spec,
    plan_anomalies,
    inject_anomalies,
    synth_generate,
)
