import struct

import numpy as np
import pytest

from arithspace import FunctionTable
from arithspace.cache import (
    MAGIC,
    CacheFormatError,
    build_cached,
    cache_name,
    decode_table,
    encode_table,
    load_or_build,
    read_table,
    write_table,
)
from arithspace.functions import Kind, build_classical, mobius


@pytest.mark.parametrize(
    "table",
    [
        mobius(1000),
        build_classical(Kind.VonMangoldt, 500),
        FunctionTable.from_values([1 + 2j, -0.5j, 3.0]),
        FunctionTable.from_values([7]),
    ],
    ids=["int", "real", "complex", "single"],
)
def test_round_trip(tmp_path, table):
    path = write_table(tmp_path / "t.uarf", table, 5)
    back, tag = read_table(path)
    assert tag == 5
    assert back.value_kind is table.value_kind
    assert back.values.tobytes() == table.values.tobytes()


def test_header_layout():
    data = encode_table(mobius(10), Kind.Mobius.tag)
    magic, version, tag, N, vk = struct.unpack_from("<4sHHQB", data)
    assert (magic, version, tag, N, vk) == (MAGIC, 1, Kind.Mobius.tag, 10, 0)
    assert len(data) == 17 + 10 * 8


def test_build_writes_then_verifies_identical_bytes(tmp_path):
    t, path, status = build_cached("mobius", 10 ** 6, tmp_path)
    assert status == "written" and path.name == "mobius-N1000000-v1.uarf"
    first = path.read_bytes()
    assert len(first) == 17 + 8 * 10 ** 6
    _, _, status = build_cached("mobius", 10 ** 6, tmp_path)
    assert status == "verified" and path.read_bytes() == first
    path.write_bytes(first[:-8])
    _, _, status = build_cached("mobius", 10 ** 6, tmp_path)
    assert status == "rewritten" and path.read_bytes() == first
    assert not list(tmp_path.glob("*.tmp"))


def test_cache_names_include_parameters():
    assert cache_name("id", 10, alpha=2) == "id_pow-a2-N10-v1.uarf"
    assert cache_name("log", 10, k=3) == "log_pow-k3-N10-v1.uarf"


def test_load_or_build_prefers_valid_file(tmp_path):
    build_cached("tau", 100, tmp_path)
    t = load_or_build("tau", 100, tmp_path)
    assert t.equals(build_classical(Kind.DivisorTau, 100))
    (tmp_path / cache_name("tau", 100)).write_bytes(b"junk")
    assert load_or_build("tau", 100, tmp_path).equals(build_classical(Kind.DivisorTau, 100))


@pytest.mark.parametrize(
    "mutate",
    [
        lambda d: b"XXXX" + d[4:],
        lambda d: d[:4] + struct.pack("<H", 9) + d[6:],
        lambda d: d[:-1],
        lambda d: d[:16] + bytes([7]) + d[17:],
        lambda d: d[:5],
    ],
    ids=["magic", "version", "length", "kind", "short"],
)
def test_corrupt_files_are_rejected(mutate):
    data = encode_table(mobius(10))
    with pytest.raises(CacheFormatError):
        decode_table(mutate(data))


def test_values_are_little_endian():
    data = encode_table(FunctionTable.from_values([1, -2]))
    assert np.frombuffer(data[17:], dtype="<i8").tolist() == [1, -2]
