from lpc_ad.error import ConfigError
from lpc_ad.logger.messages import error_unknown_noise_mode


class NoiseMode:
    """How detection draws the perturbation noise.

    * ``sample``: one seeded draw per window
    * ``deterministic``: zero noise
    * ``mc:<k>``: the reconstruction averaged over k draws
    """

    kind: str
    draws: int

    def __init__(self, kind: str, draws: int = 1):
        self.kind = kind
        self.draws = draws

    @staticmethod
    def parse(text: str) -> "NoiseMode":
        text = text.strip()
        if text in ("sample", "deterministic"):
            return NoiseMode(text)
        if text.startswith("mc:"):
            try:
                draws = int(text[3:])
            except ValueError:
                draws = 0
            if draws >= 1:
                return NoiseMode("mc", draws)
        raise ConfigError(error_unknown_noise_mode(text))

    @property
    def is_deterministic(self) -> bool:
        return self.kind == "deterministic"

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, NoiseMode)
            and self.kind == other.kind
            and self.draws == other.draws
        )

    def __str__(self) -> str:
        return f"mc:{self.draws}" if self.kind == "mc" else self.kind

    def __repr__(self) -> str:
        return f"NoiseMode({self})"
