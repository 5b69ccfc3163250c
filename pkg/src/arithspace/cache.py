"""Binary table cache ("UARF" files).

Layout, little-endian::

    magic     4 bytes  b"UARF"
    version   u16
    kind tag  u16      (0 for tables not built by ``build_classical``)
    N         u64
    kind      u8       0 = ExactInt, 1 = Real, 2 = Complex
    values    N x i64 | N x f64 | N x (f64, f64)

Files are content-addressed by (kind, parameters, N, format version) and
written atomically (temp file, then rename).
"""
from __future__ import annotations

import hashlib
import os
import struct
import tempfile
from pathlib import Path

import numpy as np

from ._errors import CapacityError
from .functions import Kind, build_classical, parse_kind
from .tables import FunctionTable, ValueKind

MAGIC = b"UARF"
FORMAT_VERSION = 1
_HEADER = struct.Struct("<4sHHQB")
_DTYPES = {
    ValueKind.ExactInt: np.dtype("<i8"),
    ValueKind.Real: np.dtype("<f8"),
    ValueKind.Complex: np.dtype("<c16"),
}


class CacheFormatError(ValueError):
    pass


def encode_table(table: FunctionTable, kind_tag: int = 0) -> bytes:
    vals = table.values
    if table.value_kind is ValueKind.ExactInt and vals.dtype == object:
        if max(abs(int(vals.max())), abs(int(vals.min()))) >= 2 ** 63:
            raise CapacityError(f"table {table.label!r} has values beyond the i64 range")
    body = np.ascontiguousarray(vals, dtype=_DTYPES[table.value_kind]).tobytes()
    header = _HEADER.pack(MAGIC, FORMAT_VERSION, kind_tag, table.N, int(table.value_kind))
    return header + body


def decode_table(data: bytes, label: str | None = None) -> tuple[FunctionTable, int]:
    if len(data) < _HEADER.size:
        raise CacheFormatError("truncated header")
    magic, version, tag, N, vk = _HEADER.unpack_from(data)
    if magic != MAGIC:
        raise CacheFormatError(f"bad magic {magic!r}")
    if version != FORMAT_VERSION:
        raise CacheFormatError(f"unsupported format version {version}")
    try:
        kind = ValueKind(vk)
    except ValueError:
        raise CacheFormatError(f"unknown value kind {vk}") from None
    dtype = _DTYPES[kind]
    expected = _HEADER.size + N * dtype.itemsize
    if len(data) != expected:
        raise CacheFormatError(f"payload is {len(data)} bytes, expected {expected}")
    vals = np.frombuffer(data, dtype=dtype, count=N, offset=_HEADER.size)
    if label is None:
        label = Kind.from_tag(tag).value if tag else "table"
    return FunctionTable(vals.astype(dtype.newbyteorder("=")), kind, label), tag


def write_table(path: str | os.PathLike, table: FunctionTable, kind_tag: int = 0) -> Path:
    return _atomic_write(Path(path), encode_table(table, kind_tag))


def read_table(path: str | os.PathLike) -> tuple[FunctionTable, int]:
    return decode_table(Path(path).read_bytes())


def _atomic_write(path: Path, data: bytes) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def cache_name(kind, N: int, *, alpha: float = 1.0, k: int = 1) -> str:
    kind = parse_kind(kind)
    param = ""
    if kind is Kind.IdPow:
        param = f"-a{alpha:g}"
    elif kind is Kind.LogPow:
        param = f"-k{k}"
    return f"{kind.value}{param}-N{N}-v{FORMAT_VERSION}.uarf"


def build_cached(kind, N: int, cache_dir, *, alpha: float = 1.0, k: int = 1) -> tuple[FunctionTable, Path, str]:
    """Build a table and store it, returning ``(table, path, status)``.

    ``status`` is ``"written"`` for a new file, ``"verified"`` when an existing
    file matches the fresh build byte for byte (by SHA-256), and ``"rewritten"``
    when a stale or corrupt file was replaced.
    """
    kind = parse_kind(kind)
    table = build_classical(kind, N, alpha=alpha, k=k)
    data = encode_table(table, kind.tag)
    path = Path(cache_dir) / cache_name(kind, N, alpha=alpha, k=k)
    if path.exists():
        if hashlib.sha256(path.read_bytes()).digest() == hashlib.sha256(data).digest():
            return table, path, "verified"
        _atomic_write(path, data)
        return table, path, "rewritten"
    _atomic_write(path, data)
    return table, path, "written"


def load_or_build(kind, N: int, cache_dir=None, *, alpha: float = 1.0, k: int = 1) -> FunctionTable:
    """Read a cached table if present and valid, otherwise build (and store it)."""
    if cache_dir is None:
        return build_classical(kind, N, alpha=alpha, k=k)
    path = Path(cache_dir) / cache_name(kind, N, alpha=alpha, k=k)
    if path.exists():
        try:
            table, _ = decode_table(path.read_bytes(), label=build_classical(kind, 1, alpha=alpha, k=k).label)
            return table
        except CacheFormatError:
            pass
    return build_cached(kind, N, cache_dir, alpha=alpha, k=k)[0]
