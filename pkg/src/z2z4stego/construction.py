"""Construction of the perfect-code parity-check matrix and its lookup tables.

For any m >= 2 and 0 <= delta <= m//2 there is a perfect additive code
over Z2^alpha x Z4^beta with

    alpha = 2^(m-delta) - 1,   beta = 2^(m-1) - 2^(m-delta-1),
    gamma = m - 2*delta,       alpha + 2*beta = 2^m - 1.

Its parity-check matrix H has one column per nonzero vector of
Z2^gamma x Z4^delta up to sign, so every nonzero syndrome is eps*h_i
for exactly one column/scalar pair -- that uniqueness is what drives
single-change embedding.  The normative column layout used here:

  * position 0: the all-twos column (binary rows all ones in storage);
  * the remaining order-two columns arranged as complement pairs
    (h, h + all-twos), pairs sorted by the base-4 encoding of the
    smaller member (binary coordinates encoded as {0,2} digits),
    smaller member first;
  * the order-four columns as canonical sign representatives (first odd
    quaternary digit equal to 1), sorted by the same encoding.

delta = 0 degenerates to the ordinary binary Hamming parity-check.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional

from .algebra import MixedVector, mixed_add, scalar_mul

__all__ = [
    "CodeParameters",
    "CodeSpec",
    "Role",
    "derive_parameters",
    "canonical_rep",
    "build_code",
    "decode_gap",
    "complement_of",
    "all_twos",
    "matrix_dump",
    "verify_code",
]


class Role(enum.Enum):
    """How a parity-check column is fed by a cover symbol."""

    X1_BIT = "x1_bit"          # least Gray bit of the first symbol
    PAIR_HI = "pair_hi"        # high Gray bit of a paired symbol
    PAIR_LO = "pair_lo"        # low Gray bit of a paired symbol
    QUATERNARY = "quaternary"  # full least quaternary digit of a symbol


@dataclass(frozen=True)
class CodeParameters:
    """Derived parameters of the (m, delta) perfect code."""

    m: int
    delta: int
    alpha: int
    beta: int
    gamma: int
    N: int
    bits_per_block: int


def derive_parameters(m: int, delta: int) -> CodeParameters:
    """Compute (alpha, beta, gamma, N) for a valid (m, delta)."""
    if m < 2:
        raise ValueError(f"m must be >= 2, got {m}")
    if not 0 <= delta <= m // 2:
        raise ValueError(f"delta must lie in [0, {m // 2}] for m={m}, got {delta}")
    alpha = 2 ** (m - delta) - 1
    beta = 2 ** (m - 1) - 2 ** (m - delta - 1)
    gamma = m - 2 * delta
    n_symbols = 2 ** (m - 1)
    assert alpha + 2 * beta == 2**m - 1
    assert n_symbols == (alpha + 1) // 2 + beta
    return CodeParameters(
        m=m,
        delta=delta,
        alpha=alpha,
        beta=beta,
        gamma=gamma,
        N=n_symbols,
        bits_per_block=gamma + 2 * delta,
    )


def all_twos(gamma: int, delta: int) -> MixedVector:
    """The all-twos vector (binary rows stored as ones)."""
    return MixedVector((1,) * gamma, (2,) * delta)


def _base4_key(v: MixedVector) -> int:
    """Base-4 integer encoding, binary coordinates as {0,2} digits."""
    key = 0
    for d in v.lifted():
        key = 4 * key + d
    return key


def _has_order_two(v: MixedVector) -> bool:
    return all(q % 2 == 0 for q in v.quaternary)


def canonical_rep(v: MixedVector) -> tuple[MixedVector, bool]:
    """Sign representative of a nonzero vector.

    Order-two vectors are their own negatives.  For order-four vectors
    the representative is the member of {v, -v} whose first odd
    quaternary digit equals 1; the flag reports whether negation was
    applied.
    """
    if v.is_zero():
        raise ValueError("zero vector has no sign representative")
    for q in v.quaternary:
        if q % 2:
            return (v, False) if q == 1 else (-v, True)
    return v, False


@dataclass(frozen=True, eq=False)
class CodeSpec:
    """A fully built perfect-code instance.

    ``decode_table`` maps every nonzero syndrome eps*h_i to (i, eps);
    ``complement_table`` maps each order-four column index to the
    canonical representative of 3*h_i + all-twos; ``symbol_assoc`` maps
    column index to (cover symbol index, role).  Instances are immutable
    and safe to share; identity-based equality keeps them usable as
    cache keys.
    """

    params: CodeParameters
    columns: tuple[MixedVector, ...]
    decode_table: dict[MixedVector, tuple[int, int]]
    complement_table: dict[int, tuple[int, bool]]
    symbol_assoc: dict[int, tuple[int, Role]]


@lru_cache(maxsize=None)
def build_code(m: int, delta: int) -> CodeSpec:
    """Build the parity-check columns and all derived tables for (m, delta)."""
    params = derive_parameters(m, delta)
    gamma, dlt = params.gamma, params.delta
    twos = all_twos(gamma, dlt)

    ambient = [
        MixedVector(b, q)
        for b in itertools.product((0, 1), repeat=gamma)
        for q in itertools.product(range(4), repeat=dlt)
    ]
    nonzero = [v for v in ambient if not v.is_zero()]

    order_two = [v for v in nonzero if _has_order_two(v) and v != twos]
    pairs: list[tuple[MixedVector, MixedVector]] = []
    seen: set[MixedVector] = set()
    for v in sorted(order_two, key=_base4_key):
        if v in seen:
            continue
        partner = mixed_add(v, twos)
        seen.update((v, partner))
        pairs.append((v, partner))  # sorted scan: v is always the smaller member

    reps = sorted(
        {canonical_rep(v)[0] for v in nonzero if not _has_order_two(v)},
        key=_base4_key,
    )

    columns: list[MixedVector] = [twos]
    for lo_key, hi_key in pairs:
        columns.extend((lo_key, hi_key))
    columns.extend(reps)
    assert len(columns) == params.alpha + params.beta

    decode: dict[MixedVector, tuple[int, int]] = {}
    for i, h in enumerate(columns):
        decode[h] = (i, 1)
        if i >= params.alpha:
            decode[scalar_mul(3, h)] = (i, 3)
    assert len(decode) == 2**m - 1, "columns do not enumerate the syndromes"

    complement: dict[int, tuple[int, bool]] = {}
    col_index = {h: i for i, h in enumerate(columns)}
    for i in range(params.alpha, params.alpha + params.beta):
        hbar = mixed_add(scalar_mul(3, columns[i]), twos)
        rep, negated = canonical_rep(hbar)
        complement[i] = (col_index[rep], negated)

    assoc: dict[int, tuple[int, Role]] = {0: (0, Role.X1_BIT)}
    n_pairs = (params.alpha - 1) // 2
    for k in range(n_pairs):
        assoc[2 * k + 1] = (k + 1, Role.PAIR_HI)
        assoc[2 * k + 2] = (k + 1, Role.PAIR_LO)
    for j in range(params.beta):
        assoc[params.alpha + j] = (n_pairs + 1 + j, Role.QUATERNARY)

    return CodeSpec(
        params=params,
        columns=tuple(columns),
        decode_table=decode,
        complement_table=complement,
        symbol_assoc=assoc,
    )


def decode_gap(spec: CodeSpec, d: MixedVector) -> Optional[tuple[int, int]]:
    """The unique (column index, eps) with eps*h_i = d, or None for d = 0."""
    if d.shape != (spec.params.gamma, spec.params.delta):
        raise ValueError(f"syndrome shape {d.shape} does not match the code")
    if d.is_zero():
        return None
    return spec.decode_table[d]


def complement_of(spec: CodeSpec, i: int) -> tuple[int, bool]:
    """Canonical representative of 3*h_i + all-twos for an order-four column."""
    if i not in spec.complement_table:
        raise ValueError(f"column {i} is not an order-four column")
    return spec.complement_table[i]


def matrix_dump(spec: CodeSpec) -> str:
    """Render the matrix, one column per line, binary coordinates as {0,2}."""
    p = spec.params
    lines = [f"m={p.m} delta={p.delta} alpha={p.alpha} beta={p.beta} gamma={p.gamma}"]
    for h in spec.columns:
        lifted = h.lifted()
        lines.append(
            "".join(map(str, lifted[: p.gamma])) + "|" + "".join(map(str, lifted[p.gamma :]))
        )
    return "\n".join(lines)


def verify_code(spec: CodeSpec) -> list[str]:
    """Self-checks on a built code; returns a list of failure descriptions.

    Checks perfectness (the multiset {0} u {eps*h_i} enumerates the full
    syndrome space), the complement pairing of the order-two columns,
    the complement involution on order-four columns, and the coverage of
    the symbol association.
    """
    p = spec.params
    problems: list[str] = []

    twos = all_twos(p.gamma, p.delta)
    reached = {MixedVector.zero(p.gamma, p.delta)}
    for i, h in enumerate(spec.columns):
        for eps in (1,) if i < p.alpha else (1, 3):
            v = scalar_mul(eps, h)
            if v in reached:
                problems.append(f"duplicate syndrome {v} from column {i} eps={eps}")
            reached.add(v)
    ambient = {
        MixedVector(b, q)
        for b in itertools.product((0, 1), repeat=p.gamma)
        for q in itertools.product(range(4), repeat=p.delta)
    }
    if reached != ambient:
        problems.append(
            f"syndrome coverage {len(reached)}/{len(ambient)} is not the full space"
        )

    if spec.columns[0] != twos:
        problems.append("first column is not the all-twos vector")
    for k in range((p.alpha - 1) // 2):
        lo, hi = spec.columns[2 * k + 1], spec.columns[2 * k + 2]
        if mixed_add(lo, twos) != hi:
            problems.append(f"columns {2*k+1},{2*k+2} are not a complement pair")

    for i in range(p.alpha, p.alpha + p.beta):
        c, _ = spec.complement_table[i]
        back, _ = spec.complement_table[c]
        if back != i:
            problems.append(f"complement of column {i} is not involutive ({c} -> {back})")

    refs: dict[int, int] = {}
    for sym, _role in spec.symbol_assoc.values():
        refs[sym] = refs.get(sym, 0) + 1
    n_pairs = (p.alpha - 1) // 2
    expected = {0: 1}
    expected.update({k: 2 for k in range(1, n_pairs + 1)})
    expected.update({n_pairs + 1 + j: 1 for j in range(p.beta)})
    if refs != expected:
        problems.append("symbol association does not cover symbols as required")

    return problems


def enumerate_syndromes(gamma: int, delta: int) -> Iterable[MixedVector]:
    """All vectors of Z2^gamma x Z4^delta (zero included)."""
    for b in itertools.product((0, 1), repeat=gamma):
        for q in itertools.product(range(4), repeat=delta):
            yield MixedVector(b, q)
