"""JSON and CSV output with floats at 17 significant digits."""

from __future__ import annotations

import numpy as np

from .errors import ConfigurationError


def format_float(x: float) -> str:
    x = float(x)
    if not np.isfinite(x):
        raise ConfigurationError("cannot serialize a non-finite number")
    return format(x, ".17g")


def dumps(obj, indent: int = 2) -> str:
    """Serialize to JSON; every float is rendered with 17 significant digits."""
    return "".join(_emit(obj, indent, 0)) + "\n"


def _emit(obj, indent, level):
    pad = " " * (indent * level)
    inner = " " * (indent * (level + 1))
    if obj is None:
        yield "null"
    elif isinstance(obj, (bool, np.bool_)):
        yield "true" if obj else "false"
    elif isinstance(obj, (int, np.integer)):
        yield str(int(obj))
    elif isinstance(obj, (float, np.floating)):
        yield format_float(obj)
    elif isinstance(obj, str):
        yield _escape(obj)
    elif isinstance(obj, dict):
        if not obj:
            yield "{}"
            return
        yield "{\n"
        for i, (k, v) in enumerate(obj.items()):
            yield inner + _escape(str(k)) + ": "
            yield from _emit(v, indent, level + 1)
            yield ",\n" if i < len(obj) - 1 else "\n"
        yield pad + "}"
    elif isinstance(obj, (list, tuple, np.ndarray)):
        seq = list(obj)
        if not seq:
            yield "[]"
            return
        yield "[\n"
        for i, v in enumerate(seq):
            yield inner
            yield from _emit(v, indent, level + 1)
            yield ",\n" if i < len(seq) - 1 else "\n"
        yield pad + "]"
    else:
        raise ConfigurationError(f"cannot serialize {type(obj).__name__}")


def _escape(s: str) -> str:
    out = ['"']
    for ch in s:
        if ch == '"':
            out.append('\\"')
        elif ch == "\\":
            out.append("\\\\")
        elif ord(ch) < 0x20:
            out.append(f"\\u{ord(ch):04x}")
        else:
            out.append(ch)
    out.append('"')
    return "".join(out)


def write_json(obj, path) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(dumps(obj))


def write_csv(path, header: list[str], rows) -> None:
    """Write rows of numbers; floats at 17 significant digits, LF endings."""
    with open(path, "w", newline="") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            cells = []
            for v in row:
                if isinstance(v, (int, np.integer)):
                    cells.append(str(int(v)))
                else:
                    cells.append(format_float(v))
            fh.write(",".join(cells) + "\n")
