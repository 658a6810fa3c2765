from .hyperparams import ModelHyperParams, VARIANTS, PREDICTOR_VARIANTS  # noqa
from .sequence import LatentSeq, SeqEncoder, SeqDecoder  # noqa
from .predictor import (  # noqa
    Predictor,
    LinearPredictor,
    Seq2SeqPredictor,
    AttentionPredictor,
    predic_linear,
    predic_seq2seq,
    predic_attention,
)
from .perturb import rand_perturb, sample_noise  # noqa
from .lpc_model import (  # noqa
    LpcModel,
    ModelParams,
    seq_enc,
    seq_dec,
    lpc_reconstruct,
    variant_reconstruct,
    window_steps,
    steps_to_array,
)
