"""Closed-form LOCO code families."""

from __future__ import annotations

from .base import FamilyCodec, FrameError, IndexOverflow, bits_to_int, int_to_bits
from .lorll import LoRll
from .np4 import NpLoco
from .ns4 import NsLoco
from .op8 import OpLoco
from .os8 import OsLoco
from .sloco import SLoco

FAMILY_NAMES = ("lorll", "sloco", "os", "op", "ns", "np")


def make_family(name: str, d: int | None = None, x: int | None = None) -> FamilyCodec:
    """Build a codec by short name; ``d``/``x`` parameterise the binary families."""
    key = name.lower().replace("-", "").replace("_", "")
    if key in ("lorll", "rll"):
        return LoRll(d=1 if d is None else d)
    if key in ("sloco", "s"):
        return SLoco(x=1 if x is None else x)
    table = {"os": OsLoco, "osloco": OsLoco, "op": OpLoco, "oploco": OpLoco,
             "ns": NsLoco, "nsloco": NsLoco, "np": NpLoco, "nploco": NpLoco}
    if key not in table:
        raise ValueError(f"unknown family {name!r}; choose from {', '.join(FAMILY_NAMES)}")
    return table[key]()


__all__ = [
    "FAMILY_NAMES",
    "FamilyCodec",
    "FrameError",
    "IndexOverflow",
    "LoRll",
    "NpLoco",
    "NsLoco",
    "OpLoco",
    "OsLoco",
    "SLoco",
    "bits_to_int",
    "int_to_bits",
    "make_family",
]
