"""Cover media parsing and serialization: binary PGM and raw symbol streams.

Only the payload samples are ever touched by embedding; headers round
trip unchanged (comments may be normalized).  16-bit samples are
big-endian in both formats.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

__all__ = [
    "MediaFormatError",
    "BadMagic",
    "TruncatedPayload",
    "UnsupportedMaxval",
    "MediaDocument",
    "parse_pgm",
    "write_pgm",
    "parse_raw",
    "write_raw",
]


class MediaFormatError(Exception):
    """Base class for cover media format problems."""


class BadMagic(MediaFormatError):
    pass


class TruncatedPayload(MediaFormatError):
    pass


class UnsupportedMaxval(MediaFormatError):
    pass


@dataclass
class MediaDocument:
    """A parsed cover: symbol sequence plus enough header state to rewrite it."""

    kind: str  # "pgm" or "raw"
    depth: int  # bits per symbol (8 or 16)
    symbols: list[int]
    width: Optional[int] = None
    height: Optional[int] = None
    maxval: Optional[int] = None
    comments: list[bytes] = field(default_factory=list)

    def with_symbols(self, symbols: list[int]) -> "MediaDocument":
        return MediaDocument(
            kind=self.kind,
            depth=self.depth,
            symbols=list(symbols),
            width=self.width,
            height=self.height,
            maxval=self.maxval,
            comments=list(self.comments),
        )


def _read_token(data: bytes, pos: int, comments: list[bytes]) -> tuple[bytes, int]:
    """Next header token, skipping whitespace and '#' comment lines."""
    n = len(data)
    while pos < n:
        c = data[pos : pos + 1]
        if c.isspace():
            pos += 1
        elif c == b"#":
            end = data.find(b"\n", pos)
            if end < 0:
                end = n
            comments.append(data[pos + 1 : end].strip())
            pos = end + 1
        else:
            break
    start = pos
    while pos < n and not data[pos : pos + 1].isspace():
        pos += 1
    if start == pos:
        raise TruncatedPayload("header ended before all fields were read")
    return data[start:pos], pos


def parse_pgm(data: bytes) -> MediaDocument:
    """Parse a binary ("P5") PGM image."""
    if not data.startswith(b"P5"):
        raise BadMagic("not a binary PGM (missing P5 magic)")
    comments: list[bytes] = []
    pos = 2
    fields = []
    for _ in range(3):
        token, pos = _read_token(data, pos, comments)
        try:
            fields.append(int(token))
        except ValueError:
            raise TruncatedPayload(f"non-numeric header field {token!r}") from None
    width, height, maxval = fields
    if maxval == 255:
        depth, step = 8, 1
    elif maxval == 65535:
        depth, step = 16, 2
    else:
        raise UnsupportedMaxval(f"maxval {maxval} not supported (need 255 or 65535)")
    pos += 1  # single whitespace byte separates header from payload
    payload = data[pos : pos + width * height * step]
    if len(payload) < width * height * step:
        raise TruncatedPayload(
            f"payload holds {len(payload)} bytes, need {width * height * step}"
        )
    if step == 1:
        symbols = list(payload)
    else:
        symbols = [
            (payload[i] << 8) | payload[i + 1] for i in range(0, len(payload), 2)
        ]
    return MediaDocument(
        kind="pgm",
        depth=depth,
        symbols=symbols,
        width=width,
        height=height,
        maxval=maxval,
        comments=comments,
    )


def write_pgm(doc: MediaDocument) -> bytes:
    """Serialize a PGM document (normalized header, comments after the magic)."""
    if doc.kind != "pgm":
        raise ValueError(f"not a PGM document: kind={doc.kind!r}")
    out = bytearray(b"P5\n")
    for comment in doc.comments:
        out += b"# " + comment + b"\n"
    out += f"{doc.width} {doc.height}\n{doc.maxval}\n".encode("ascii")
    if doc.maxval == 255:
        out += bytes(doc.symbols)
    else:
        for v in doc.symbols:
            out += bytes(((v >> 8) & 0xFF, v & 0xFF))
    return bytes(out)


def parse_raw(data: bytes, depth: int) -> MediaDocument:
    """Parse a headerless symbol stream (8-bit bytes or 16-bit big-endian)."""
    if depth not in (8, 16):
        raise ValueError(f"raw depth must be 8 or 16, got {depth}")
    step = depth // 8
    if len(data) % step:
        raise TruncatedPayload(f"{len(data)} bytes is not a multiple of {step}")
    if step == 1:
        symbols = list(data)
    else:
        symbols = [(data[i] << 8) | data[i + 1] for i in range(0, len(data), 2)]
    return MediaDocument(kind="raw", depth=depth, symbols=symbols)


def write_raw(doc: MediaDocument) -> bytes:
    if doc.kind != "raw":
        raise ValueError(f"not a raw document: kind={doc.kind!r}")
    if doc.depth == 8:
        return bytes(doc.symbols)
    out = bytearray()
    for v in doc.symbols:
        out += bytes(((v >> 8) & 0xFF, v & 0xFF))
    return bytes(out)
