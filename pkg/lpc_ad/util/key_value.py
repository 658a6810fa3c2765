from collections import OrderedDict
from typing import Any, Callable, Dict, Mapping, Optional

from lpc_ad.error import ConfigError
from lpc_ad.logger.messages import (
    error_duplicate_config_key,
    error_invalid_config_value,
    error_malformed_config_line,
    error_unknown_config_key,
    error_unreadable_file,
)

Converter = Callable[[str], Any]


def parse_key_values(
    text: str,
    converters: Mapping[str, Converter],
    source: str = "<string>",
) -> Dict[str, Any]:
    """Parses flat ``key=value`` lines.

    Blank lines and lines starting with ``#`` are skipped. Every key must be
    one of ``converters``; the converter turns the raw string into the value.

    :param text: The file content.
    :param converters: Accepted keys and how to convert their values.
    :param source: Used in error messages as ``source:line``.
    :return: The converted values in file order.
    """
    values: Dict[str, Any] = OrderedDict()
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        location = f"{source}:{number}"
        if "=" not in line:
            raise ConfigError(error_malformed_config_line(location))
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in converters:
            raise ConfigError(error_unknown_config_key(key, location))
        if key in values:
            raise ConfigError(error_duplicate_config_key(key, location))
        try:
            values[key] = converters[key](value)
        except (TypeError, ValueError) as e:
            raise ConfigError(
                error_invalid_config_value(key, value, f"{location}: {e}")
            ) from e
    return values


def load_key_values(path: str, converters: Mapping[str, Converter]) -> Dict[str, Any]:
    try:
        with open(path, "r", encoding="utf-8") as f:
            text = f.read()
    except OSError as e:
        raise ConfigError(error_unreadable_file(path, str(e))) from e
    return parse_key_values(text, converters, source=path)


def optional_int(value: str) -> Optional[int]:
    if value.lower() in ("", "none"):
        return None
    return int(value)

