import random

import pytest

from z2z4stego.media import (
    BadMagic,
    MediaDocument,
    TruncatedPayload,
    UnsupportedMaxval,
    parse_pgm,
    parse_raw,
    write_pgm,
    write_raw,
)


class TestParsePgm:
    def test_minimal(self):
        doc = parse_pgm(b"P5 2 1 255 " + bytes([239, 251]))
        assert (doc.width, doc.height, doc.maxval, doc.depth) == (2, 1, 255, 8)
        assert doc.symbols == [239, 251]

    def test_sixteen_bit_big_endian(self):
        doc = parse_pgm(b"P5 1 1 65535 " + bytes([0x00, 0xFF]))
        assert doc.depth == 16
        assert doc.symbols == [255]

    def test_unsupported_maxval(self):
        with pytest.raises(UnsupportedMaxval):
            parse_pgm(b"P5 1 1 300 " + bytes(2))

    def test_bad_magic(self):
        with pytest.raises(BadMagic):
            parse_pgm(b"P6 1 1 255 " + bytes(3))

    def test_truncated(self):
        with pytest.raises(TruncatedPayload):
            parse_pgm(b"P5 4 4 255 " + bytes(3))
        with pytest.raises(TruncatedPayload):
            parse_pgm(b"P5 4 4")

    def test_comments_and_whitespace(self):
        data = b"P5\n# made by hand\n  2 # inline\n2\n255\n" + bytes([1, 2, 3, 4])
        doc = parse_pgm(data)
        assert (doc.width, doc.height) == (2, 2)
        assert doc.symbols == [1, 2, 3, 4]
        assert b"made by hand" in b" ".join(doc.comments)

    def test_payload_may_have_trailing_bytes(self):
        doc = parse_pgm(b"P5 1 1 255 " + bytes([7]) + b"\n")
        assert doc.symbols == [7]


class TestRoundtrips:
    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_pgm_eight_bit(self, seed):
        rnd = random.Random(seed)
        w, h = rnd.randrange(1, 20), rnd.randrange(1, 20)
        doc = MediaDocument(
            kind="pgm", depth=8, width=w, height=h, maxval=255,
            symbols=[rnd.randrange(256) for _ in range(w * h)],
            comments=[b"roundtrip"],
        )
        back = parse_pgm(write_pgm(doc))
        assert back.symbols == doc.symbols
        assert (back.width, back.height, back.maxval) == (w, h, 255)
        # canonical output is byte-stable
        assert write_pgm(back) == write_pgm(doc)

    def test_pgm_sixteen_bit(self):
        rnd = random.Random(3)
        doc = MediaDocument(
            kind="pgm", depth=16, width=5, height=4, maxval=65535,
            symbols=[rnd.randrange(65536) for _ in range(20)],
        )
        back = parse_pgm(write_pgm(doc))
        assert back.symbols == doc.symbols and back.depth == 16

    def test_write_rejects_wrong_kind(self):
        with pytest.raises(ValueError):
            write_pgm(MediaDocument(kind="raw", depth=8, symbols=[]))


class TestRaw:
    def test_empty(self):
        assert parse_raw(b"", 8).symbols == []

    @pytest.mark.parametrize("depth", [8, 16])
    def test_roundtrip(self, depth):
        rnd = random.Random(depth)
        symbols = [rnd.randrange(1 << depth) for _ in range(64)]
        doc = MediaDocument(kind="raw", depth=depth, symbols=symbols)
        assert parse_raw(write_raw(doc), depth).symbols == symbols

    def test_odd_length_sixteen_bit(self):
        with pytest.raises(TruncatedPayload):
            parse_raw(bytes(3), 16)

    def test_big_endian(self):
        assert parse_raw(bytes([0x01, 0x02]), 16).symbols == [258]

    def test_bad_depth(self):
        with pytest.raises(ValueError):
            parse_raw(b"", 12)
