"""Block embedding and extraction of syndromes with +-1 symbol changes.

A block of N grayscale symbols is translated into a coefficient vector
w: the low Gray bit of symbol 0 feeds the all-twos column, the two low
Gray bits of each paired symbol feed its column pair, and the least
quaternary digit of every remaining symbol feeds one order-four column.
Embedding a secret s solves eps*h_i = s - syndrome(w) and applies the
matching +-1 change; extraction is just the syndrome of the received
block.

Saturation handling: a change aimed at a symbol holding an extreme
value (0 or 2^B - 1) is replaced by its complementary two-change form
-- the opposite move on the symbol tied to 3*h_i + all-twos (for a
paired symbol, the other Gray bit of the same symbol) plus a low-bit
flip of symbol 0, which is always feasible because extreme values can
only move inward.  Every change stays at magnitude 1.  When the
complementary move is itself blocked, a deterministic search over all
two-change decompositions of the gap runs instead (disabled by
``strict``), and as a last resort the direct move is used when legal.

Streams are framed as a 32-bit big-endian bit-length header followed by
message bits, bit 0 being the most significant bit of byte 0; blocks
consume the bitstream m bits at a time and trailing cover symbols are
left untouched.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

from .algebra import MixedVector, gray_inverse, gray_map
from .construction import CodeSpec, Role

__all__ = [
    "CapacityExceeded",
    "DoubleSaturationUnresolvable",
    "MalformedHeader",
    "least_digit",
    "symbols_to_vector",
    "direction_to_flip",
    "plan_changes",
    "embed_block",
    "extract_block",
    "pack_message",
    "unit_bits",
    "embed_stream",
    "extract_stream",
]

HEADER_BITS = 32


class CapacityExceeded(Exception):
    """The cover cannot hold the framed message."""


class DoubleSaturationUnresolvable(Exception):
    """No feasible plan of at most two +-1 changes exists (or search disabled)."""

    def __init__(self, message: str, block_index: Optional[int] = None):
        super().__init__(message)
        self.block_index = block_index


class MalformedHeader(Exception):
    """The extracted stream header is inconsistent with the cover."""


def least_digit(value: int) -> int:
    """Least quaternary digit of a cover symbol (its value mod 4)."""
    return value & 3


# Direction that flips the requested Gray bit of the least digit.
# v0 flips on +1 from even digits and on -1 from odd digits; v1 is the
# opposite.  Exactly one direction works, by Gray adjacency.
def _flip_direction(value: int, hi_bit: bool) -> int:
    odd = value & 1
    if hi_bit:
        return 1 if odd else -1
    return -1 if odd else 1


def direction_to_flip(value: int, which: str, depth: int = 8) -> Optional[int]:
    """The +-1 move flipping Gray bit ``which`` ("v0" or "v1"), or None.

    None means the unique candidate would leave [0, 2^depth - 1].
    """
    if which not in ("v0", "v1"):
        raise ValueError(f"which must be 'v0' or 'v1', got {which!r}")
    direction = _flip_direction(value, which == "v1")
    if not 0 <= value + direction <= (1 << depth) - 1:
        return None
    return direction


# ---------------------------------------------------------------------------
# per-spec lookup tables for the hot paths


@dataclass(frozen=True, eq=False)
class _Tables:
    n_symbols: int
    alpha: int
    gamma: int
    delta: int
    n_pairs: int
    m: int
    # per column: owning symbol and role
    sym_of_col: tuple[int, ...]
    role_of_col: tuple[Role, ...]
    # per symbol and least digit: lifted syndrome contribution
    contrib: tuple[tuple[tuple[int, ...], ...], ...]
    # syndrome digit tuple (binary bits, then quaternary digits) -> (col, eps)
    decode: dict[tuple[int, ...], tuple[int, int]]
    lifted_cols: tuple[tuple[int, ...], ...]
    storage_cols: tuple[tuple[int, ...], ...]


def _digits_of(v: MixedVector) -> tuple[int, ...]:
    return v.binary + v.quaternary


@lru_cache(maxsize=None)
def _tables(spec: CodeSpec) -> _Tables:
    p = spec.params
    n_pairs = (p.alpha - 1) // 2
    rows = p.gamma + p.delta
    lifted = tuple(h.lifted() for h in spec.columns)

    sym_of_col = tuple(spec.symbol_assoc[i][0] for i in range(len(spec.columns)))
    role_of_col = tuple(spec.symbol_assoc[i][1] for i in range(len(spec.columns)))

    def scaled(col: int, coef: int) -> tuple[int, ...]:
        return tuple((coef * x) % 4 for x in lifted[col])

    contrib: list[tuple[tuple[int, ...], ...]] = []
    for sym in range(p.N):
        per_digit = []
        for g in range(4):
            hi, lo = gray_map(g)
            acc = [0] * rows
            if sym == 0:
                parts = [scaled(0, lo)]
            elif sym <= n_pairs:
                k = sym - 1
                parts = [scaled(2 * k + 1, hi), scaled(2 * k + 2, lo)]
            else:
                parts = [scaled(p.alpha + (sym - n_pairs - 1), g)]
            for part in parts:
                for r in range(rows):
                    acc[r] = (acc[r] + part[r]) % 4
            per_digit.append(tuple(acc))
        contrib.append(tuple(per_digit))

    decode = {_digits_of(v): hit for v, hit in spec.decode_table.items()}
    storage = tuple(_digits_of(h) for h in spec.columns)

    return _Tables(
        n_symbols=p.N,
        alpha=p.alpha,
        gamma=p.gamma,
        delta=p.delta,
        n_pairs=n_pairs,
        m=p.m,
        sym_of_col=sym_of_col,
        role_of_col=role_of_col,
        contrib=tuple(contrib),
        decode=decode,
        lifted_cols=lifted,
        storage_cols=storage,
    )


def _syndrome_digits(t: _Tables, block: Sequence[int]) -> list[int]:
    rows = t.gamma + t.delta
    acc = [0] * rows
    contrib = t.contrib
    for sym, value in enumerate(block):
        part = contrib[sym][value & 3]
        for r in range(rows):
            acc[r] += part[r]
    for r in range(t.gamma):
        acc[r] = (acc[r] % 4) // 2
    for r in range(t.gamma, rows):
        acc[r] %= 4
    return acc


def _check_block(t: _Tables, block: Sequence[int], depth: int) -> int:
    if len(block) != t.n_symbols:
        raise ValueError(f"block length {len(block)} != N = {t.n_symbols}")
    if depth < 2 or depth % 2:
        raise ValueError(f"symbol depth must be even and >= 2, got {depth}")
    return (1 << depth) - 1


def symbols_to_vector(block: Sequence[int], spec: CodeSpec) -> MixedVector:
    """Translate a block into its mixed coefficient vector w."""
    t = _tables(spec)
    if len(block) != t.n_symbols:
        raise ValueError(f"block length {len(block)} != N = {t.n_symbols}")
    bits = [gray_map(block[0] & 3)[1]]
    for sym in range(1, t.n_pairs + 1):
        hi, lo = gray_map(block[sym] & 3)
        bits.extend((hi, lo))
    quats = [block[sym] & 3 for sym in range(t.n_pairs + 1, t.n_symbols)]
    return MixedVector(tuple(bits), tuple(quats))


def extract_block(block: Sequence[int], spec: CodeSpec) -> MixedVector:
    """Syndrome of a block: the embedded secret unit."""
    t = _tables(spec)
    if len(block) != t.n_symbols:
        raise ValueError(f"block length {len(block)} != N = {t.n_symbols}")
    digits = _syndrome_digits(t, block)
    return MixedVector(tuple(digits[: t.gamma]), tuple(digits[t.gamma :]))


# ---------------------------------------------------------------------------
# planning


def _gap_digits(t: _Tables, block: Sequence[int], secret: MixedVector) -> tuple[int, ...]:
    if secret.shape != (t.gamma, t.delta):
        raise ValueError(f"secret shape {secret.shape} does not match the code")
    syn = _syndrome_digits(t, block)
    out = []
    for r, s in enumerate(_digits_of(secret)):
        out.append((s - syn[r]) % (2 if r < t.gamma else 4))
    return tuple(out)


def _add_all_twos(t: _Tables, d: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(
        (x ^ 1) if r < t.gamma else (x + 2) % 4 for r, x in enumerate(d)
    )


def _move_for(t: _Tables, col: int, eps: int, block: Sequence[int], maxv: int
              ) -> Optional[tuple[int, int]]:
    """(symbol, delta) realizing eps*h_col, or None if out of range."""
    sym = t.sym_of_col[col]
    role = t.role_of_col[col]
    if role is Role.QUATERNARY:
        direction = 1 if eps == 1 else -1
    else:
        direction = _flip_direction(block[sym], role is Role.PAIR_HI)
    if not 0 <= block[sym] + direction <= maxv:
        return None
    return sym, direction


def _x1_flip(block: Sequence[int], maxv: int) -> tuple[int, int]:
    direction = _flip_direction(block[0], False)
    assert 0 <= block[0] + direction <= maxv, "symbol 0 low-bit flip is always inward"
    return 0, direction


def _primary_fallback(t: _Tables, block: Sequence[int], d: tuple[int, ...],
                      col: int, maxv: int) -> Optional[list[tuple[int, int]]]:
    """Complementary two-change form of the blocked/saturated direct move."""
    if t.role_of_col[col] is Role.QUATERNARY:
        # the gap minus the symbol-0 contribution decodes to the complement move
        c, eps2 = t.decode[_add_all_twos(t, d)]
        move = _move_for(t, c, eps2, block, maxv)
    else:
        sym = t.sym_of_col[col]
        other_hi = t.role_of_col[col] is Role.PAIR_LO
        direction = _flip_direction(block[sym], other_hi)
        move = (sym, direction) if 0 <= block[sym] + direction <= maxv else None
    if move is None:
        return None
    return [move, _x1_flip(block, maxv)]


def _search_two_change(t: _Tables, block: Sequence[int], d: tuple[int, ...],
                       maxv: int) -> Optional[list[tuple[int, int]]]:
    """Deterministic search for eps1*h_a + eps2*h_b = d, feasible, a < b."""
    zero = (0,) * (t.gamma + t.delta)
    n_cols = len(t.lifted_cols)
    for a in range(n_cols):
        move_a_best: Optional[tuple[int, tuple[int, int], tuple[int, int]]] = None
        for eps1 in (1,) if a < t.alpha else (1, 3):
            move_a = _move_for(t, a, eps1, block, maxv)
            if move_a is None:
                continue
            resid = tuple(
                (x - eps1 * h) % (2 if r < t.gamma else 4)
                for r, (x, h) in enumerate(zip(d, t.storage_cols[a]))
            )
            if resid == zero:
                continue
            b, eps2 = t.decode[resid]
            if b <= a:
                continue
            move_b = _move_for(t, b, eps2, block, maxv)
            if move_b is None or move_b[0] == move_a[0]:
                continue
            if move_a_best is None or b < move_a_best[0]:
                move_a_best = (b, move_a, move_b)
        if move_a_best is not None:
            return [move_a_best[1], move_a_best[2]]
    return None


def plan_changes(block: Sequence[int], secret: MixedVector, spec: CodeSpec,
                 depth: int = 8, strict: bool = False) -> list[tuple[int, int]]:
    """Plan the +-1 changes embedding ``secret`` into ``block``.

    Returns a list of (symbol index, +-1) pairs: empty when the block
    already carries the secret, one entry for an interior target, two
    when the target symbol is saturated.  With ``strict`` the extended
    two-change search is disabled and unresolvable saturation raises.
    """
    t = _tables(spec)
    maxv = _check_block(t, block, depth)
    for v in block:
        if not 0 <= v <= maxv:
            raise ValueError(f"symbol {v} out of range for depth {depth}")
    d = _gap_digits(t, block, secret)
    if not any(d):
        return []
    col, eps = t.decode[d]
    if col == 0:
        return [_x1_flip(block, maxv)]
    sym = t.sym_of_col[col]
    x = block[sym]
    if 0 < x < maxv:
        move = _move_for(t, col, eps, block, maxv)
        assert move is not None
        return [move]
    plan = _primary_fallback(t, block, d, col, maxv)
    if plan is not None:
        return plan
    if strict:
        raise DoubleSaturationUnresolvable(
            f"complementary change blocked for saturated symbol {sym} (strict mode)"
        )
    plan = _search_two_change(t, block, d, maxv)
    if plan is not None:
        return plan
    move = _move_for(t, col, eps, block, maxv)
    if move is not None:
        return [move]
    raise DoubleSaturationUnresolvable(
        f"no feasible plan of at most two changes for saturated symbol {sym}"
    )


def embed_block(block: Sequence[int], secret: MixedVector, spec: CodeSpec,
                depth: int = 8, strict: bool = False) -> list[int]:
    """Apply the planned changes; the result extracts to ``secret``."""
    out = list(block)
    for sym, direction in plan_changes(block, secret, spec, depth, strict):
        out[sym] += direction
    return out


# ---------------------------------------------------------------------------
# message framing


def _bits_of_bytes(data: bytes) -> list[int]:
    bits = []
    for byte in data:
        bits.extend((byte >> k) & 1 for k in range(7, -1, -1))
    return bits


def _bytes_of_bits(bits: Sequence[int]) -> bytes:
    assert len(bits) % 8 == 0
    out = bytearray()
    for i in range(0, len(bits), 8):
        byte = 0
        for b in bits[i : i + 8]:
            byte = (byte << 1) | b
        out.append(byte)
    return bytes(out)


def pack_message(bits: Sequence[int], spec: CodeSpec) -> list[MixedVector]:
    """Pack a bitstream into secret units of m bits each, zero-padded.

    Within a unit the first gamma bits fill the binary coordinates and
    each following (hi, lo) pair becomes one quaternary digit.
    """
    p = spec.params
    units = []
    for start in range(0, len(bits), p.m):
        chunk = list(bits[start : start + p.m])
        chunk.extend([0] * (p.m - len(chunk)))
        binary = tuple(chunk[: p.gamma])
        quats = tuple(
            gray_inverse((chunk[p.gamma + 2 * j], chunk[p.gamma + 2 * j + 1]))
            for j in range(p.delta)
        )
        units.append(MixedVector(binary, quats))
    return units


def unit_bits(secret: MixedVector) -> list[int]:
    """Inverse of the unit packing: gamma bits then Gray pairs."""
    bits = list(secret.binary)
    for q in secret.quaternary:
        bits.extend(gray_map(q))
    return bits


def embed_stream(symbols: Sequence[int], message: bytes, spec: CodeSpec,
                 depth: int = 8, strict: bool = False) -> list[int]:
    """Embed a framed byte message across consecutive blocks of a cover."""
    p = spec.params
    n_blocks = len(symbols) // p.N
    need = HEADER_BITS + 8 * len(message)
    if need > p.m * n_blocks:
        raise CapacityExceeded(
            f"{need} bits needed but cover holds {p.m * n_blocks} "
            f"({n_blocks} blocks of {p.m} bits)"
        )
    length = 8 * len(message)
    bits = [(length >> k) & 1 for k in range(HEADER_BITS - 1, -1, -1)]
    bits.extend(_bits_of_bytes(message))
    out = list(symbols)
    for i, unit in enumerate(pack_message(bits, spec)):
        start = i * p.N
        try:
            out[start : start + p.N] = embed_block(
                out[start : start + p.N], unit, spec, depth, strict
            )
        except DoubleSaturationUnresolvable as exc:
            raise DoubleSaturationUnresolvable(
                f"block {i}: {exc}", block_index=i
            ) from exc
    return out


def extract_stream(symbols: Sequence[int], spec: CodeSpec) -> bytes:
    """Recover the framed byte message from a cover."""
    p = spec.params
    n_blocks = len(symbols) // p.N
    if p.m * n_blocks < HEADER_BITS:
        raise MalformedHeader(
            f"cover holds only {p.m * n_blocks} bits, shorter than the header"
        )
    bits: list[int] = []
    block = 0

    def read_until(n: int) -> None:
        nonlocal block
        while len(bits) < n:
            start = block * p.N
            bits.extend(unit_bits(extract_block(symbols[start : start + p.N], spec)))
            block += 1

    read_until(HEADER_BITS)
    length = 0
    for b in bits[:HEADER_BITS]:
        length = (length << 1) | b
    if length % 8 or length > p.m * n_blocks - HEADER_BITS:
        raise MalformedHeader(
            f"declared length {length} bits exceeds capacity or is not byte-aligned"
        )
    read_until(HEADER_BITS + length)
    return _bytes_of_bits(bits[HEADER_BITS : HEADER_BITS + length])
