"""Plain-text seed files.

Example::

    # quantum SL2
    names: a b c
    mutable: 0
    B: 3x1
      0
      -1
      -1
    L: 3x3
      0 1 1
      -1 0 0
      -1 0 0
    q_half_exponents: true

Row indices in ``mutable`` are 0-based; ``B`` has one column per mutable row.
"""
from __future__ import annotations

from .seed import QuantumSeed, SeedError


class SeedFileError(ValueError):
    pass


def dumps(seed: QuantumSeed, comment=None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append("names: " + " ".join(seed.names))
    lines.append("mutable: " + " ".join(str(r) for r in seed.mutable_rows))
    lines.append(f"B: {seed.m}x{seed.n}")
    lines.extend("  " + " ".join(str(x) for x in row) for row in seed.B.entries if row)
    lines.append(f"L: {seed.m}x{seed.m}")
    lines.extend("  " + " ".join(str(x) for x in row) for row in seed.L)
    lines.append("q_half_exponents: true")
    return "\n".join(lines) + "\n"


def _ints(text, lineno):
    try:
        return [int(x) for x in text.split()]
    except ValueError:
        raise SeedFileError(f"line {lineno}: expected integers, got {text.strip()!r}") from None


def _shape(value, lineno):
    try:
        r, c = value.lower().split("x")
        return int(r), int(c)
    except ValueError:
        raise SeedFileError(f"line {lineno}: expected a shape like '7x2', got {value!r}") from None


def loads(text: str, track=True) -> QuantumSeed:
    fields = {}
    lines = [(i, raw.split("#", 1)[0].rstrip()) for i, raw in enumerate(text.splitlines(), 1)]
    lines = [(i, l) for i, l in lines if l.strip()]
    pos = 0
    while pos < len(lines):
        lineno, line = lines[pos]
        pos += 1
        if ":" not in line:
            raise SeedFileError(f"line {lineno}: expected 'field: value', got {line.strip()!r}")
        key, value = (s.strip() for s in line.split(":", 1))
        if key in fields:
            raise SeedFileError(f"line {lineno}: duplicate field {key!r}")
        if key == "names":
            fields[key] = (lineno, value.split())
        elif key == "mutable":
            fields[key] = (lineno, _ints(value, lineno))
        elif key in ("B", "L"):
            rows, cols = _shape(value, lineno)
            matrix = []
            for r in range(rows if cols else 0):
                if pos >= len(lines):
                    raise SeedFileError(f"line {lineno}: {key} ends after {r} of {rows} rows")
                rl, text_row = lines[pos]
                pos += 1
                row = _ints(text_row, rl)
                if len(row) != cols:
                    raise SeedFileError(
                        f"line {rl}: {key} row {r} has {len(row)} entries, expected {cols}"
                    )
                matrix.append(tuple(row))
            if not cols:
                matrix = [()] * rows
            fields[key] = (lineno, matrix)
        elif key == "q_half_exponents":
            if value.lower() not in ("true", "false"):
                raise SeedFileError(f"line {lineno}: q_half_exponents must be true or false")
            fields[key] = (lineno, value.lower() == "true")
        else:
            raise SeedFileError(f"line {lineno}: unknown field {key!r}")
    for key in ("names", "mutable", "B", "L"):
        if key not in fields:
            raise SeedFileError(f"missing field {key!r}")
    names = fields["names"][1]
    if len(fields["B"][1]) != len(names):
        raise SeedFileError(
            f"line {fields['B'][0]}: B has {len(fields['B'][1])} rows for {len(names)} names"
        )
    try:
        return QuantumSeed.build(
            names, fields["B"][1], fields["L"][1], fields["mutable"][1], track=track
        )
    except SeedError as exc:
        raise SeedFileError(f"line {fields['L'][0]}: {exc}") from None


def load(path, track=True) -> QuantumSeed:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read(), track=track)


def dump(seed, path, comment=None):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(seed, comment))
