"""Small helpers shared by the JSON encoders."""
from __future__ import annotations

import json
import math

SCHEMA_VERSION = 1


def cx(z) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def from_cx(v) -> complex:
    if isinstance(v, (int, float)):
        return complex(v)
    if isinstance(v, str):
        return complex(v.replace(" ", "").replace("i", "j"))
    re, im = v
    return complex(float(re), float(im))


def num(x):
    """Encode a float, mapping non-finite values to strings."""
    if x is None:
        return None
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return x


def from_num(v):
    if v is None:
        return None
    if isinstance(v, str):
        return float(v)
    return float(v)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, allow_nan=False)
