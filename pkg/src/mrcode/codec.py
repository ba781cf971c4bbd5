"""Canonical prefix codes with bit-exact encode/decode and a flat container.

Codewords of equal length are consecutive integers ordered by symbol index;
bits are emitted most-significant-bit first and packed into bytes with the
final partial byte zero-padded.  The container format is:

    magic "PFX1" | n (8-byte LE) | n lengths (2-byte LE each)
    | payload bit count (8-byte LE) | packed payload
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .core import CodeLengthProfile, kraft_sum

MAGIC = b"PFX1"


class ContainerFormatError(ValueError):
    """Malformed bitstream container."""


class DecodeError(ValueError):
    """Bit stream does not decode against the table."""


@dataclass(frozen=True)
class CanonicalTable:
    """Canonical code table: per-symbol (length, codeword value)."""

    lengths: tuple[int, ...]
    codes: tuple[int, ...]
    first_codes: tuple[int, ...]          # indexed by length, 0 where unused
    counts: tuple[int, ...]               # codewords per length
    symbols_by_rank: tuple[tuple[int, ...], ...]  # per length, symbol order

    @property
    def max_length(self) -> int:
        return len(self.counts) - 1

    def codeword_bits(self, symbol: int) -> str:
        return format(self.codes[symbol], f"0{self.lengths[symbol]}b")


def canonical_codes(lengths: CodeLengthProfile) -> CanonicalTable:
    """Assign canonical codewords to a length profile.

    Symbols sorted by (length, index) get consecutive integer codes; the
    first code of each length is (first + count of the previous length)
    shifted left once.  Requires a Kraft sum of at most 1.
    """
    if kraft_sum(lengths) > Fraction(1):
        raise ValueError("lengths oversubscribe the code space (Kraft sum > 1)")
    ls = lengths.lengths
    top = max(ls)
    counts = [0] * (top + 1)
    for l in ls:
        counts[l] += 1
    first = [0] * (top + 1)
    code = 0
    for l in range(1, top + 1):
        first[l] = code
        code = (code + counts[l]) << 1
    by_rank: list[list[int]] = [[] for _ in range(top + 1)]
    for sym in sorted(range(len(ls)), key=lambda s: (ls[s], s)):
        by_rank[ls[sym]].append(sym)
    codes = [0] * len(ls)
    for l in range(1, top + 1):
        for offset, sym in enumerate(by_rank[l]):
            codes[sym] = first[l] + offset
    return CanonicalTable(tuple(ls), tuple(codes), tuple(first),
                          tuple(counts), tuple(tuple(b) for b in by_rank))


def encode(symbols: Iterable[int], table: CanonicalTable) -> tuple[bytes, int]:
    """Pack the symbol sequence; returns (payload bytes, exact bit count)."""
    lengths = table.lengths
    codes = table.codes
    out = bytearray()
    buf = 0
    nbits = 0
    total = 0
    for sym in symbols:
        if not 0 <= sym < len(lengths):
            raise ValueError(f"symbol {sym} outside the table")
        l = lengths[sym]
        buf = (buf << l) | codes[sym]
        nbits += l
        total += l
        while nbits >= 8:
            nbits -= 8
            out.append((buf >> nbits) & 0xFF)
        buf &= (1 << nbits) - 1
    if nbits:
        out.append((buf << (8 - nbits)) & 0xFF)
    return bytes(out), total


def decode(payload: bytes, bit_count: int, table: CanonicalTable) -> list[int]:
    """Inverse of encode; needs the exact bit count to stop cleanly."""
    if bit_count > len(payload) * 8:
        raise DecodeError("bit count exceeds the payload")
    first = table.first_codes
    counts = table.counts
    by_rank = table.symbols_by_rank
    max_len = table.max_length
    out: list[int] = []
    code = 0
    code_len = 0
    consumed = 0
    for byte in payload:
        take = min(8, bit_count - consumed)
        for k in range(7, 7 - take, -1):
            code = (code << 1) | ((byte >> k) & 1)
            code_len += 1
            if code_len > max_len:
                raise DecodeError("bit run exceeds the longest codeword")
            offset = code - first[code_len]
            if 0 <= offset < counts[code_len]:
                out.append(by_rank[code_len][offset])
                code = 0
                code_len = 0
        consumed += take
        if consumed >= bit_count:
            break
    if code_len:
        raise DecodeError("stream truncated inside a codeword")
    return out


def pack_container(lengths: Sequence[int], payload: bytes, bit_count: int) -> bytes:
    out = bytearray(MAGIC)
    out += struct.pack("<Q", len(lengths))
    for l in lengths:
        out += struct.pack("<H", l)
    out += struct.pack("<Q", bit_count)
    out += payload
    return bytes(out)


def unpack_container(blob: bytes) -> tuple[list[int], bytes, int]:
    """Returns (lengths, payload, bit count); raises on malformed input."""
    if len(blob) < 12 or blob[:4] != MAGIC:
        raise ContainerFormatError("bad magic")
    n = struct.unpack_from("<Q", blob, 4)[0]
    off = 12
    if len(blob) < off + 2 * n + 8:
        raise ContainerFormatError("truncated header")
    lengths = [struct.unpack_from("<H", blob, off + 2 * i)[0] for i in range(n)]
    off += 2 * n
    bit_count = struct.unpack_from("<Q", blob, off)[0]
    off += 8
    payload = blob[off:]
    if bit_count > len(payload) * 8:
        raise ContainerFormatError("payload shorter than the declared bit count")
    return lengths, payload, bit_count
