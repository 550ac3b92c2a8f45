"""Report primitives shared by the library and the command line.

Integers stay JSON numbers; minus/plus infinity become the strings "-inf"
and "inf" (JSON has neither).  Reports are deterministic given the seed: the
writer sorts keys and the volatile fields (timing) are excluded from
comparisons.
"""

from __future__ import annotations

import json

from .ideals import MINUS_INF, PLUS_INF

VOLATILE_FIELDS = ("timing",)


def encode_value(v):
    if v is None:
        return None
    if v == MINUS_INF:
        return "-inf"
    if v == PLUS_INF:
        return "inf"
    if isinstance(v, float):
        return int(v)
    return v


def decode_value(v):
    if v == "-inf":
        return MINUS_INF
    if v == "inf":
        return PLUS_INF
    return v


def dumps(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def strip_volatile(payload):
    if isinstance(payload, dict):
        return {k: strip_volatile(v) for k, v in payload.items()
                if k not in VOLATILE_FIELDS}
    if isinstance(payload, list):
        return [strip_volatile(v) for v in payload]
    return payload
