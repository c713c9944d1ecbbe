"""Binary cache for coefficient tables.

Layout (little-endian): magic ``SCNT``, u16 version, u8 kind, u8 reserved 0,
u64 entry count, fixed-width entries for indices 1..count, then the CRC-32
of the payload.  Kinds: 1 tau (signed 128-bit), 2 d3 (u64), 3 spf (u32).
"""

from __future__ import annotations

import struct
import zlib
from pathlib import Path

import numpy as np

from ..arith import FactorTable, MultiplicativeTable
from ..coeffs import HeckeSeries, hecke_series_from_tau
from ..errors import ArgumentError, CorruptCacheError, KindMismatchError

MAGIC = b"SCNT"
VERSION = 1
HEADER = struct.Struct("<4sHBBQ")
KIND_CODES = {"tau": 1, "d3": 2, "spf": 3}
KIND_NAMES = {v: k for k, v in KIND_CODES.items()}
WIDTH = {1: 16, 2: 8, 3: 4}


def _tau_payload(tau) -> bytes:
    vals = [int(t) for t in tau[1:]]
    lo = np.array([v & 0xFFFFFFFFFFFFFFFF for v in vals], dtype="<u8")
    hi = np.array([(v >> 64) & 0xFFFFFFFFFFFFFFFF for v in vals], dtype="<u8")
    return np.column_stack([lo, hi]).tobytes()


def _tau_values(payload: bytes, count: int) -> list[int]:
    words = np.frombuffer(payload, dtype="<u8").reshape(count, 2)
    out = []
    for lo, hi in words.tolist():
        v = (hi << 64) | lo
        out.append(v - (1 << 128) if hi >> 63 else v)
    return out


def _classify(table) -> tuple[int, bytes, int]:
    if isinstance(table, HeckeSeries):
        return 1, _tau_payload(table.tau), table.limit
    if isinstance(table, MultiplicativeTable):
        if table.kind != "d3":
            raise ArgumentError(f"only d3 multiplicative tables are cacheable, got {table.kind}")
        vals = np.asarray(table.values[1:table.limit + 1])
        return 2, vals.astype("<u8").tobytes(), table.limit
    if isinstance(table, FactorTable):
        vals = np.asarray(table.spf[1:table.limit + 1])
        return 3, vals.astype("<u4").tobytes(), table.limit
    raise ArgumentError(f"cannot cache objects of type {type(table).__name__}")


def cache_save(path, table) -> Path:
    """Write ``table`` (HeckeSeries, d3 MultiplicativeTable or FactorTable) to ``path``."""
    path = Path(path)
    kind, payload, count = _classify(table)
    blob = HEADER.pack(MAGIC, VERSION, kind, 0, count) + payload + struct.pack("<I", zlib.crc32(payload))
    try:
        path.write_bytes(blob)
    except OSError as exc:
        raise OSError(f"{path}: {exc.strerror or exc}") from exc
    return path


def cache_load(path, kind: str | None = None):
    """Read a cache file; ``kind`` ('tau', 'd3', 'spf') asserts the stored kind."""
    path = Path(path)
    if kind is not None and kind not in KIND_CODES:
        raise ArgumentError(f"kind must be one of {sorted(KIND_CODES)}")
    try:
        blob = path.read_bytes()
    except OSError as exc:
        raise OSError(f"{path}: {exc.strerror or exc}") from exc
    if len(blob) < HEADER.size:
        raise CorruptCacheError("file shorter than the header", "header")
    magic, version, code, reserved, count = HEADER.unpack_from(blob)
    if magic != MAGIC:
        raise CorruptCacheError(f"bad magic {magic!r}", "magic")
    if version != VERSION:
        raise CorruptCacheError(f"unsupported version {version}", "version")
    if code not in WIDTH:
        raise CorruptCacheError(f"unknown kind code {code}", "kind")
    if reserved != 0:
        raise CorruptCacheError("reserved byte is not zero", "reserved")
    if kind is not None and KIND_CODES[kind] != code:
        raise KindMismatchError(f"file holds {KIND_NAMES[code]}, expected {kind}", "kind")
    size = count * WIDTH[code]
    if len(blob) != HEADER.size + size + 4:
        raise CorruptCacheError(f"length {len(blob)} does not match {count} entries", "count")
    payload = blob[HEADER.size:HEADER.size + size]
    (crc,) = struct.unpack_from("<I", blob, HEADER.size + size)
    if crc != zlib.crc32(payload):
        raise CorruptCacheError("CRC-32 mismatch", "crc")
    if code == 1:
        return hecke_series_from_tau(_tau_values(payload, count))
    if code == 2:
        vals = np.zeros(count + 1, dtype=np.int64)
        vals[1:] = np.frombuffer(payload, dtype="<u8").astype(np.int64)
        return MultiplicativeTable("d3", count, vals)
    spf = np.zeros(count + 1, dtype=np.int64)
    spf[1:] = np.frombuffer(payload, dtype="<u4").astype(np.int64)
    return FactorTable(count, spf)
