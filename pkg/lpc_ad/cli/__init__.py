from .main import cli, main  # noqa
from .runner import ProtocolRunner, evaluate_scores  # noqa
