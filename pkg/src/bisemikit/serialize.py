"""JSON encoding shared by every module.

Rationals travel as ``"p/q"`` strings (``"p"`` when the denominator is 1),
complex numbers as ``{"re": f, "im": f}``.
"""

from __future__ import annotations

import json
from enum import Enum
from fractions import Fraction


def encode_scalar(x):
    if isinstance(x, bool):
        return x
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, int):
        return x
    if isinstance(x, complex):
        return {"re": x.real, "im": x.imag}
    if isinstance(x, float):
        return x
    raise TypeError(f"cannot encode scalar {x!r}")


def decode_scalar(obj, backend=None):
    """Inverse of :func:`encode_scalar`.

    Plain JSON numbers are accepted too; ints become Fractions and floats
    stay floats unless ``backend`` coerces them.
    """
    if isinstance(obj, dict):
        if set(obj) - {"re", "im"}:
            raise ValueError(f"bad complex object {obj!r}")
        value = complex(obj.get("re", 0.0), obj.get("im", 0.0))
    elif isinstance(obj, str):
        value = Fraction(obj)
    elif isinstance(obj, bool):
        raise ValueError("boolean is not a scalar")
    elif isinstance(obj, int):
        value = Fraction(obj)
    elif isinstance(obj, float):
        value = obj
    else:
        raise ValueError(f"cannot decode scalar {obj!r}")
    return backend.coerce(value) if backend is not None else value


def to_jsonable(obj):
    """Recursively encode tuples, dicts, enums and scalars."""
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, (Fraction, complex, int, float)) and not isinstance(obj, bool):
        return encode_scalar(obj)
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if hasattr(obj, "to_dict"):
        return obj.to_dict()
    return obj


def decode_vector(items, backend=None) -> tuple:
    return tuple(decode_scalar(x, backend) for x in items)


def decode_matrix(rows, backend=None) -> tuple:
    return tuple(decode_vector(r, backend) for r in rows)


def dumps(obj) -> str:
    return json.dumps(to_jsonable(obj), sort_keys=False, indent=2)
