"""Exact arithmetic for mixed binary/quaternary vectors.

A mixed vector is an element of Z2^a x Z4^b.  Binary coordinates are
stored as {0,1} and lifted to {0,2} only inside mod-4 arithmetic, the
usual convention for additive codes over this group.  The Gray map
sends a quaternary digit to a bit pair

    0 -> (0,0),  1 -> (0,1),  2 -> (1,1),  3 -> (1,0)

so that digits adjacent mod 4 map to pairs at Hamming distance 1.  That
adjacency is what lets a +-1 change of a grayscale symbol flip exactly
one of its two least significant Gray bits.

All values are immutable; every operation is a pure function.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

__all__ = [
    "MixedVector",
    "gray_map",
    "gray_inverse",
    "mixed_add",
    "mixed_sub",
    "scalar_mul",
    "inner_product",
    "syndrome",
]

# phi(d) = (hi, lo) for d = 0..3, and its inverse.
_GRAY = ((0, 0), (0, 1), (1, 1), (1, 0))
_GRAY_INV = {pair: d for d, pair in enumerate(_GRAY)}


def gray_map(d: int) -> tuple[int, int]:
    """Gray image (hi, lo) of a quaternary digit."""
    if not 0 <= d <= 3:
        raise ValueError(f"quaternary digit out of range: {d}")
    return _GRAY[d]


def gray_inverse(pair: tuple[int, int]) -> int:
    """Quaternary digit whose Gray image is the given (hi, lo) bit pair."""
    try:
        return _GRAY_INV[tuple(pair)]
    except KeyError:
        raise ValueError(f"not a bit pair: {pair!r}") from None


@dataclass(frozen=True)
class MixedVector:
    """Element of Z2^a x Z4^b (binary part stored as {0,1})."""

    binary: tuple[int, ...]
    quaternary: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "binary", tuple(self.binary))
        object.__setattr__(self, "quaternary", tuple(self.quaternary))
        if any(b not in (0, 1) for b in self.binary):
            raise ValueError(f"binary part must be bits: {self.binary}")
        if any(not 0 <= q <= 3 for q in self.quaternary):
            raise ValueError(f"quaternary part out of range: {self.quaternary}")

    @classmethod
    def zero(cls, a: int, b: int) -> "MixedVector":
        return cls((0,) * a, (0,) * b)

    @classmethod
    def parse(cls, text: str) -> "MixedVector":
        """Parse the "bits|digits" rendering, e.g. "010|202310"."""
        head, _, tail = text.partition("|")
        return cls(tuple(int(c) for c in head), tuple(int(c) for c in tail))

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.binary), len(self.quaternary)

    def is_zero(self) -> bool:
        return not any(self.binary) and not any(self.quaternary)

    def lifted(self) -> tuple[int, ...]:
        """All coordinates as Z4 values, binary bits lifted to {0,2}."""
        return tuple(2 * b for b in self.binary) + self.quaternary

    def __iter__(self) -> Iterator[int]:
        yield from self.binary
        yield from self.quaternary

    def __len__(self) -> int:
        return len(self.binary) + len(self.quaternary)

    def __add__(self, other: "MixedVector") -> "MixedVector":
        return mixed_add(self, other)

    def __sub__(self, other: "MixedVector") -> "MixedVector":
        return mixed_sub(self, other)

    def __neg__(self) -> "MixedVector":
        return scalar_mul(3, self)

    def __str__(self) -> str:
        return "".join(map(str, self.binary)) + "|" + "".join(map(str, self.quaternary))


def _check_shapes(u: MixedVector, v: MixedVector) -> None:
    if u.shape != v.shape:
        raise ValueError(f"shape mismatch: {u.shape} vs {v.shape}")


def mixed_add(u: MixedVector, v: MixedVector) -> MixedVector:
    """Group addition: XOR on the binary part, mod-4 sum on the quaternary part."""
    _check_shapes(u, v)
    return MixedVector(
        tuple(a ^ b for a, b in zip(u.binary, v.binary)),
        tuple((a + b) % 4 for a, b in zip(u.quaternary, v.quaternary)),
    )


def mixed_sub(u: MixedVector, v: MixedVector) -> MixedVector:
    """Group subtraction u - v (binary part is self-inverse)."""
    _check_shapes(u, v)
    return MixedVector(
        tuple(a ^ b for a, b in zip(u.binary, v.binary)),
        tuple((a - b) % 4 for a, b in zip(u.quaternary, v.quaternary)),
    )


def scalar_mul(eps: int, v: MixedVector) -> MixedVector:
    """Scalar action of eps in Z4.

    Binary bits represent {0,2}, so an odd eps fixes them and an even
    eps sends them to zero; quaternary digits are multiplied mod 4.
    """
    if not 0 <= eps <= 3:
        raise ValueError(f"scalar out of Z4: {eps}")
    return MixedVector(
        tuple((eps * b) % 2 for b in v.binary),
        tuple((eps * q) % 4 for q in v.quaternary),
    )


def inner_product(u: MixedVector, v: MixedVector) -> int:
    """Mixed inner product in Z4.

    Binary coordinates enter as quaternary 0/1 and their contribution is
    doubled: <u,v> = 2*sum(u_i v_i) + sum(u_j v_j) mod 4.
    """
    _check_shapes(u, v)
    acc = 2 * sum(a * b for a, b in zip(u.binary, v.binary))
    acc += sum(a * b for a, b in zip(u.quaternary, v.quaternary))
    return acc % 4


def syndrome(columns: Sequence[MixedVector], w: MixedVector) -> MixedVector:
    """Syndrome sum(w_i * h_i) over Z4 of a coefficient vector w.

    The binary coordinates of ``w`` scale the leading columns by 0/1 and
    the quaternary coordinates scale the remaining columns by 0..3.  The
    result has the columns' shape, with binary rows mapped back from
    {0,2} to {0,1}.
    """
    if len(columns) != len(w):
        raise ValueError(f"{len(columns)} columns but {len(w)} coefficients")
    gamma, delta = columns[0].shape
    acc = [0] * (gamma + delta)
    for coef, col in zip(w, columns):
        if col.shape != (gamma, delta):
            raise ValueError("columns do not share a shape")
        if coef:
            for r, x in enumerate(col.lifted()):
                acc[r] += coef * x
    acc = [x % 4 for x in acc]
    if any(x % 2 for x in acc[:gamma]):
        raise AssertionError("binary syndrome rows left {0,2}")
    return MixedVector(tuple(x // 2 for x in acc[:gamma]), tuple(acc[gamma:]))
