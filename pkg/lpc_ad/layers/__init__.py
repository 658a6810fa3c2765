from .linear import LinearLayer, linear_forward  # noqa
from .lstm import LstmCell, lstm_step, lstm_scan, lstm_encode  # noqa
from .attention import AttentionParams, attention_scores, attention_context  # noqa
