"""Reading and writing channel files.

A channel file is UTF-8 JSON. Kraus channels::

    {"name": "phi0", "kind": "kraus", "dim_in": 4, "dim_out": 2,
     "kraus": [[[[1, 0], [0, 0], ...], ...], ...]}

Every complex entry is a two-element ``[re, im]`` list. Stochastic channels::

    {"name": "m0", "kind": "stochastic", "matrix": [[0.86, 0.45], ...]}

Any real number may instead be written as an exact fraction string such as
``"1/3"``; stochastic matrices built only from integers and fractions stay
exact. Unknown keys are rejected.
"""
from dataclasses import dataclass
from fractions import Fraction
import json
import os
import re
from typing import Union

import numpy as np

from .channels import KrausChannel, validate_channel
from .classical import StochasticChannel
from .errors import ParseError, ShapeError, ValidationError

_FRACTION = re.compile(r"^\s*[+-]?\d+\s*/\s*\d+\s*$|^\s*[+-]?\d+\s*$")
_KRAUS_KEYS = {"name", "kind", "dim_in", "dim_out", "kraus"}
_STOCH_KEYS = {"name", "kind", "matrix"}


@dataclass(frozen=True)
class ChannelFile:
    name: str
    kind: str
    channel: Union[KrausChannel, StochasticChannel]


def _real(x, path, exact_ok):
    if isinstance(x, bool):
        raise ParseError(f"{path}: expected a number, got {x!r}")
    if isinstance(x, int):
        return x if exact_ok else float(x)
    if isinstance(x, float):
        return x
    if isinstance(x, str) and _FRACTION.match(x):
        try:
            f = Fraction(x.replace(" ", ""))
        except ZeroDivisionError:
            raise ParseError(f"{path}: zero denominator in {x!r}") from None
        return f if exact_ok else float(f)
    raise ParseError(f"{path}: expected a number or 'p/q' string, got {x!r}")


def _check_keys(doc, allowed, source):
    extra = sorted(set(doc) - allowed)
    if extra:
        raise ParseError(f"{source}: unknown field(s) {', '.join(extra)}")
    missing = sorted(allowed - set(doc))
    if missing:
        raise ParseError(f"{source}: missing field(s) {', '.join(missing)}")


def _parse_kraus(doc, source):
    _check_keys(doc, _KRAUS_KEYS, source)
    dims = {}
    for key in ("dim_in", "dim_out"):
        v = doc[key]
        if isinstance(v, bool) or not isinstance(v, int) or v < 1:
            raise ParseError(f"{source}: $.{key} must be a positive integer")
        dims[key] = v
    ops = doc["kraus"]
    if not isinstance(ops, list) or not ops:
        raise ParseError(f"{source}: $.kraus must be a non-empty list")
    mats = []
    for n, op in enumerate(ops):
        path = f"{source}: $.kraus[{n}]"
        if not isinstance(op, list) or len(op) != dims["dim_out"]:
            raise ParseError(f"{path} must have {dims['dim_out']} rows")
        m = np.zeros((dims["dim_out"], dims["dim_in"]), dtype=complex)
        for i, row in enumerate(op):
            if not isinstance(row, list) or len(row) != dims["dim_in"]:
                raise ParseError(f"{path}[{i}] must have {dims['dim_in']} entries")
            for j, z in enumerate(row):
                zp = f"{path}[{i}][{j}]"
                if not isinstance(z, list) or len(z) != 2:
                    raise ParseError(f"{zp}: complex entries are [re, im] pairs")
                m[i, j] = complex(_real(z[0], zp + "[0]", False), _real(z[1], zp + "[1]", False))
        if not np.all(np.isfinite(m)):
            raise ParseError(f"{path}: non-finite entry")
        mats.append(m)
    channel = KrausChannel(tuple(mats), name=doc["name"])
    report = validate_channel(channel)
    if not report.ok:
        raise ValidationError(f"{source}: invalid channel: " + "; ".join(report.violations))
    return channel


def _parse_stochastic(doc, source):
    _check_keys(doc, _STOCH_KEYS, source)
    rows = doc["matrix"]
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise ParseError(f"{source}: $.matrix must be a non-empty list of rows")
    parsed = [[_real(x, f"{source}: $.matrix[{j}][{k}]", True) for k, x in enumerate(row)]
              for j, row in enumerate(rows)]
    exact = all(isinstance(x, (int, Fraction)) for row in parsed for x in row)
    if exact:
        parsed = [[Fraction(x) for x in row] for row in parsed]
    else:
        parsed = [[float(x) for x in row] for row in parsed]
    try:
        return StochasticChannel(tuple(tuple(r) for r in parsed), name=doc["name"])
    except ValidationError as exc:
        raise ValidationError(f"{source}: {exc}") from None


def parse_channel_text(text: str, source: str = "<string>") -> ChannelFile:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{source}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise ParseError(f"{source}: top level must be an object")
    kind = doc.get("kind")
    if not isinstance(doc.get("name"), str):
        raise ParseError(f"{source}: $.name must be a string")
    if kind == "kraus":
        channel = _parse_kraus(doc, source)
    elif kind == "stochastic":
        channel = _parse_stochastic(doc, source)
    else:
        raise ParseError(f"{source}: $.kind must be 'kraus' or 'stochastic', got {kind!r}")
    return ChannelFile(doc["name"], kind, channel)


def parse_channel_file(path) -> ChannelFile:
    """Parse a channel file; ``path`` may also be the JSON text itself."""
    if isinstance(path, str) and path.lstrip().startswith("{"):
        return parse_channel_text(path)
    with open(path, encoding="utf-8") as fh:
        return parse_channel_text(fh.read(), source=os.fspath(path))


def _real_out(x):
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, int):
        return x
    return float(x)


def dumps_channel(channel, name: str = "") -> str:
    name = name or getattr(channel, "name", "") or "channel"
    if isinstance(channel, KrausChannel):
        doc = {
            "name": name,
            "kind": "kraus",
            "dim_in": channel.dim_in,
            "dim_out": channel.dim_out,
            "kraus": [[[[float(z.real), float(z.imag)] for z in row] for row in k]
                      for k in channel.kraus],
        }
        body = json.dumps(doc)
        # one Kraus operator per line keeps fixtures readable
        head = body.rsplit('"kraus": ', 1)[0]
        lines = ",\n  ".join(json.dumps(op) for op in doc["kraus"])
        return head + '"kraus": [\n  ' + lines + "\n]}\n"
    if isinstance(channel, StochasticChannel):
        doc = {"name": name, "kind": "stochastic",
               "matrix": [[_real_out(x) for x in row] for row in channel.matrix]}
        rows = ",\n  ".join(json.dumps(r) for r in doc["matrix"])
        head = json.dumps({"name": name, "kind": "stochastic"})[:-1]
        return head + ', "matrix": [\n  ' + rows + "\n]}\n"
    raise ShapeError(f"cannot serialise {type(channel).__name__}")


def write_channel_file(path, channel, name: str = ""):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_channel(channel, name))
