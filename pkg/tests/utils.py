import os

ENV_PREFIX = "LPC_AD_"


def remove_lpc_env_temporarily() -> dict:
    old_env = {k: v for k, v in os.environ.items() if k.startswith(ENV_PREFIX)}
    for key in old_env:
        del os.environ[key]
    return old_env


def restore_lpc_env(old_env: dict) -> None:
    os.environ.update(old_env)
