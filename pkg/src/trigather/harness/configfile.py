"""Plain-text configuration files.

::

    trigrid 1
    # col hrow count [S|M]
    0 0 1
    0 2 3 M

Chirality defaults to ``S``.  Lines repeating a point and chirality add to
the earlier count, so robot ids follow first appearance.
"""
from __future__ import annotations

from trigather.grid import Chirality, InvalidPointError, validate
from trigather.swarm import Configuration, from_placements

HEADER = "trigrid 1"

_TOKENS = {c.value: c for c in Chirality}


class ConfigError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def parse_config(text: str) -> Configuration:
    groups: dict[tuple, int] = {}
    header_seen = False
    lineno = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if not header_seen:
            if line.split() != HEADER.split():
                raise ConfigError(lineno, f"expected header {HEADER!r}, got {line!r}")
            header_seen = True
            continue
        fields = line.split()
        if len(fields) not in (3, 4):
            raise ConfigError(lineno, f"expected 'col hrow count [S|M]', got {line!r}")
        try:
            col, hrow, count = (int(f) for f in fields[:3])
        except ValueError:
            raise ConfigError(lineno, f"non-integer field in {line!r}") from None
        try:
            point = validate((col, hrow))
        except InvalidPointError as exc:
            raise ConfigError(lineno, str(exc)) from None
        if count < 1:
            raise ConfigError(lineno, f"count must be >= 1, got {count}")
        token = fields[3] if len(fields) == 4 else "S"
        if token not in _TOKENS:
            raise ConfigError(lineno, f"unknown chirality {token!r}; expected S or M")
        key = (point, _TOKENS[token])
        groups[key] = groups.get(key, 0) + count
    if not header_seen:
        raise ConfigError(max(lineno, 1), f"missing header {HEADER!r}")
    if not groups:
        raise ConfigError(lineno, "no robots")

    chiralities = [ch for (_, ch), k in groups.items() for _ in range(k)]
    return from_placements([(p, k) for (p, _), k in groups.items()], chiralities)


def render(config: Configuration) -> str:
    lines = [HEADER]
    for p, count, ch in config.placements():
        lines.append(f"{p.col} {p.hrow} {count} {ch.value}")
    return "\n".join(lines) + "\n"


def read_config(path: str) -> Configuration:
    with open(path) as fh:
        return parse_config(fh.read())
