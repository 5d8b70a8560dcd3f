"""Distortion/embedding-rate analysis of the codec and its baselines.

A scheme is summarized by its pair (D, E): expected squared-error
distortion per cover symbol over uniform messages, and embedded bits
per symbol.  Closed forms:

  * this codec, m >= 2, N = 2^(m-1):
        D = (2N-1)/(2N^2),  E = m/N
    and with extreme-value (saturated) covers at depth B
        D = (2N - 1 + (N-1)/2^(B-2)) / (N 2^m)
    because a change aimed at a saturated symbol is executed as two
    changes of magnitude 1;
  * ternary Hamming matrix embedding, mu checks, length (3^mu-1)/2:
        D = 2/3^mu,  E = 2 mu log2(3)/(3^mu - 1)
    and saturated D = (2/3^mu)(1 + 3/2^(B-1)), the extreme-value case
    costing a magnitude-2 change;
  * q-ary Hamming embedding (q an odd prime power):
        D = 2/q^mu,  E = 2 mu log2(q)/(q^mu - 1)
    and saturated D = (2/q^mu)(1 + q(q-2)/2^(B-1)).

Rates are in bits throughout.  Running two schemes on disjoint parts of
a cover achieves any convex combination of their rate points, so
comparisons are made against the upper concave frontier.  The binary
entropy bound H(D) + D caps every +-1 scheme.

Monte Carlo estimates are vectorized and deterministic: trials are
drawn in fixed-size batches of 65536, batch b seeded with
``numpy.random.SeedSequence((seed, b))`` feeding a PCG64 generator, so
results do not depend on how batches are scheduled.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Optional, Sequence, TextIO

import numpy as np

from . import codec
from .algebra import MixedVector
from .construction import CodeSpec, Role

__all__ = [
    "RatePoint",
    "Frontier",
    "Theorem1Report",
    "MonteCarloResult",
    "z2z4_rate",
    "z2z4_rate_saturating",
    "ternary_rate",
    "qary_rate",
    "entropy_bound",
    "frontier",
    "theorem1_check",
    "monte_carlo_distortion",
    "ternary_baseline_distortion",
    "emit_rates_csv",
]

_BATCH = 1 << 16


@dataclass(frozen=True)
class RatePoint:
    """One (distortion, rate) point with its scheme identity."""

    D: float
    E: float
    scheme: str
    params: dict = field(default_factory=dict)


def z2z4_rate(m: int) -> RatePoint:
    """Rate point of the (m, delta) codec; independent of delta."""
    if m < 2:
        raise ValueError(f"m must be >= 2, got {m}")
    n = 2 ** (m - 1)
    return RatePoint(D=(2 * n - 1) / (2 * n * n), E=m / n, scheme="z2z4", params={"m": m})


def z2z4_rate_saturating(m: int, B: int) -> RatePoint:
    """Codec rate point with uniform covers at depth B (extreme values included)."""
    if m < 2:
        raise ValueError(f"m must be >= 2, got {m}")
    if B < 2 or B % 2:
        raise ValueError(f"B must be even and >= 2, got {B}")
    n = 2 ** (m - 1)
    d = (2 * n - 1 + (n - 1) / 2 ** (B - 2)) / (n * 2**m)
    return RatePoint(D=d, E=m / n, scheme="z2z4-sat", params={"m": m, "B": B})


def ternary_rate(mu: int, saturating: bool = False, B: int = 8) -> RatePoint:
    """Rate point of ternary Hamming matrix embedding with mu checks."""
    if mu < 1:
        raise ValueError(f"mu must be >= 1, got {mu}")
    d = 2 / 3**mu
    e = 2 * mu * math.log2(3) / (3**mu - 1)
    if saturating:
        d *= 1 + 3 / 2 ** (B - 1)
        return RatePoint(D=d, E=e, scheme="ternary-sat", params={"mu": mu, "B": B})
    return RatePoint(D=d, E=e, scheme="ternary", params={"mu": mu})


def _is_odd_prime_power(q: int) -> bool:
    if q < 3 or q % 2 == 0:
        return False
    p = 3
    while p * p <= q:
        if q % p == 0:
            break
        p += 2
    else:
        return True  # q itself is prime
    while q % p == 0:
        q //= p
    return q == 1


def qary_rate(q: int, mu: int, saturating: bool = False, B: int = 8) -> RatePoint:
    """Rate point of q-ary Hamming embedding, q an odd prime power >= 3."""
    if not _is_odd_prime_power(q):
        raise ValueError(f"q must be an odd prime power >= 3, got {q}")
    if mu < 1:
        raise ValueError(f"mu must be >= 1, got {mu}")
    d = 2 / q**mu
    e = 2 * mu * math.log2(q) / (q**mu - 1)
    if saturating:
        d *= 1 + q * (q - 2) / 2 ** (B - 1)
        return RatePoint(D=d, E=e, scheme="qary-sat", params={"q": q, "mu": mu, "B": B})
    return RatePoint(D=d, E=e, scheme="qary", params={"q": q, "mu": mu})


def entropy_bound(D: float) -> float:
    """Upper bound H(D) + D on the rate of any +-1 scheme, 0 <= D <= 2/3."""
    if not 0 <= D <= 2 / 3:
        raise ValueError(f"D must lie in [0, 2/3], got {D}")
    h = 0.0
    for p in (D, 1 - D):
        if p > 0:
            h -= p * math.log2(p)
    return h + D


# ---------------------------------------------------------------------------
# convex-combination frontier


@dataclass(frozen=True)
class Frontier:
    """Upper concave envelope of rate points under direct-sum combination."""

    vertices: tuple[RatePoint, ...]

    def interpolate(self, D: float) -> float:
        """Best achievable E at distortion D by convex combination."""
        v = self.vertices
        if not v[0].D <= D <= v[-1].D:
            raise ValueError(f"D={D} outside the frontier range [{v[0].D}, {v[-1].D}]")
        lo, hi = 0, len(v) - 1
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if v[mid].D <= D:
                lo = mid
            else:
                hi = mid
        if v[lo].D == D:
            return v[lo].E
        lam = (v[hi].D - D) / (v[hi].D - v[lo].D)
        return lam * v[lo].E + (1 - lam) * v[hi].E


def frontier(points: Sequence[RatePoint]) -> Frontier:
    """Build the achievable frontier of a point set (>= 1 point)."""
    if not points:
        raise ValueError("frontier needs at least one point")
    best: dict[float, RatePoint] = {}
    for pt in points:
        if pt.D not in best or pt.E > best[pt.D].E:
            best[pt.D] = pt
    ordered = [best[d] for d in sorted(best)]
    hull: list[RatePoint] = []
    for pt in ordered:
        while len(hull) >= 2:
            o, a = hull[-2], hull[-1]
            if (a.D - o.D) * (pt.E - o.E) - (a.E - o.E) * (pt.D - o.D) >= 0:
                hull.pop()  # middle point not above the chord
            else:
                break
        hull.append(pt)
    return Frontier(vertices=tuple(hull))


@dataclass(frozen=True)
class Theorem1Report:
    """Comparison of one codec point against the ternary frontier at equal D."""

    m: int
    holds: bool
    gap: float
    D: float
    E: float
    hull_E: float
    mu: int  # bracket: D(mu+1) < D < D(mu)


def theorem1_check(m: int, mu_range: Iterable[int] = range(1, 13)) -> Theorem1Report:
    """Does the codec beat the ternary direct-sum frontier at its own D?"""
    point = z2z4_rate(m)
    mus = sorted(set(mu_range))
    for mu in mus:
        if mu + 1 not in mus:
            continue
        d_hi = ternary_rate(mu).D
        d_lo = ternary_rate(mu + 1).D
        if d_lo < point.D < d_hi:
            lam = (d_hi - point.D) / (d_hi - d_lo)
            hull = lam * ternary_rate(mu + 1).E + (1 - lam) * ternary_rate(mu).E
            return Theorem1Report(
                m=m,
                holds=point.E >= hull,
                gap=point.E - hull,
                D=point.D,
                E=point.E,
                hull_E=hull,
                mu=mu,
            )
    raise ValueError(f"D={point.D} not bracketed by ternary points for mu in {mus}")


# ---------------------------------------------------------------------------
# Monte Carlo estimation for the codec


@dataclass(frozen=True)
class MonteCarloResult:
    d_hat: float
    std_error: float
    saturation_fallbacks: int
    double_saturations: int
    trials: int


@dataclass(frozen=True, eq=False)
class _McTables:
    n_symbols: int
    m: int
    gamma: int
    delta: int
    n_pairs: int
    alpha: int
    h_lift: np.ndarray          # (ncols, rows) lifted column entries
    weights: np.ndarray         # radix weights packing syndrome digits to a code
    code_digits: np.ndarray     # (2^m, rows) digit decomposition of every code
    dec_col: np.ndarray         # (2^m,) decoded column, -1 for the zero code
    dec_sym: np.ndarray         # (2^m,) target symbol, -1 / 0 for zero / symbol 0
    dec_role: np.ndarray        # (2^m,) 0 x1, 1 pair-hi, 2 pair-lo, 3 quaternary
    fb_sym: np.ndarray          # (2^m,) complement-move symbol (order-four gaps)
    fb_dir: np.ndarray          # (2^m,) complement-move direction


_ROLE_ID = {Role.X1_BIT: 0, Role.PAIR_HI: 1, Role.PAIR_LO: 2, Role.QUATERNARY: 3}


def _digit_tuple(v: MixedVector) -> tuple[int, ...]:
    return v.binary + v.quaternary


@lru_cache(maxsize=None)
def _mc_tables(spec: CodeSpec) -> _McTables:
    p = spec.params
    rows = p.gamma + p.delta
    n_codes = 2**p.m

    h_lift = np.array([h.lifted() for h in spec.columns], dtype=np.int64)
    weights = np.empty(rows, dtype=np.int64)
    for r in range(p.gamma):
        weights[r] = 2 ** (p.gamma - 1 - r) * 4**p.delta
    for j in range(p.delta):
        weights[p.gamma + j] = 4 ** (p.delta - 1 - j)

    code_digits = np.zeros((n_codes, rows), dtype=np.int64)
    for code in range(n_codes):
        rem = code
        for r in range(rows):
            base = 2 if r < p.gamma else 4
            w = int(weights[r])
            code_digits[code, r] = rem // w
            rem %= w
        assert 0 <= code_digits[code].max() < 4

    def code_of(digits: Sequence[int]) -> int:
        return int(np.dot(np.asarray(digits, dtype=np.int64), weights))

    dec_col = np.full(n_codes, -1, dtype=np.int64)
    dec_eps = np.zeros(n_codes, dtype=np.int64)
    for v, (col, eps) in spec.decode_table.items():
        c = code_of(_digit_tuple(v))
        dec_col[c] = col
        dec_eps[c] = eps

    dec_sym = np.full(n_codes, -1, dtype=np.int64)
    dec_role = np.zeros(n_codes, dtype=np.int64)
    fb_sym = np.zeros(n_codes, dtype=np.int64)
    fb_dir = np.zeros(n_codes, dtype=np.int64)
    for c in range(n_codes):
        col = int(dec_col[c])
        if col < 0:
            continue
        sym, role = spec.symbol_assoc[col]
        dec_sym[c] = sym
        dec_role[c] = _ROLE_ID[role]
        if role is Role.QUATERNARY:
            digits = code_digits[c]
            shifted = [
                int(x) ^ 1 if r < p.gamma else (int(x) + 2) % 4
                for r, x in enumerate(digits)
            ]
            fc = code_of(shifted)
            fcol = int(dec_col[fc])
            fb_sym[c] = spec.symbol_assoc[fcol][0]
            fb_dir[c] = 1 if int(dec_eps[fc]) == 1 else -1

    return _McTables(
        n_symbols=p.N,
        m=p.m,
        gamma=p.gamma,
        delta=p.delta,
        n_pairs=(p.alpha - 1) // 2,
        alpha=p.alpha,
        h_lift=h_lift,
        weights=weights,
        code_digits=code_digits,
        dec_col=dec_col,
        dec_sym=dec_sym,
        dec_role=dec_role,
        fb_sym=fb_sym,
        fb_dir=fb_dir,
    )


def _embed_costs(spec: CodeSpec, symbols: np.ndarray, secret_codes: np.ndarray,
                 B: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Per-trial change counts for embedding; also extreme/double-sat masks.

    ``symbols`` is (trials, N); the returned cost equals the number of
    +-1 changes the codec applies, squared error and change count being
    identical at magnitude 1.  Rare trials whose complementary move is
    blocked are resolved through the exact scalar planner.
    """
    t = _mc_tables(spec)
    maxv = (1 << B) - 1
    nt = symbols.shape[0]

    digits = symbols & 3
    v0 = ((digits == 1) | (digits == 2)).astype(np.int64)
    v1 = (digits >= 2).astype(np.int64)

    w = np.empty((nt, t.h_lift.shape[0]), dtype=np.int64)
    w[:, 0] = v0[:, 0]
    for k in range(t.n_pairs):
        w[:, 2 * k + 1] = v1[:, k + 1]
        w[:, 2 * k + 2] = v0[:, k + 1]
    w[:, t.alpha :] = digits[:, t.n_pairs + 1 :]

    syn = (w @ t.h_lift) % 4
    syn[:, : t.gamma] //= 2
    moduli = np.where(np.arange(t.gamma + t.delta) < t.gamma, 2, 4)
    gap = (t.code_digits[secret_codes] - syn) % moduli
    gap_codes = gap @ t.weights

    col = t.dec_col[gap_codes]
    sym = t.dec_sym[gap_codes]
    role = t.dec_role[gap_codes]

    cost = np.ones(nt, dtype=np.int64)
    cost[col < 0] = 0

    rows = np.arange(nt)
    xt = symbols[rows, np.clip(sym, 0, None)]
    extreme = (col >= 1) & ((xt == 0) | (xt == maxv))
    cost[extreme] = 2

    # complementary move blocked?  pair targets: blocked exactly when the
    # required flip direction was feasible; quaternary: look the move up.
    req_dir = np.where(role == 1, np.where(xt % 2 == 1, 1, -1),
                       np.where(xt % 2 == 0, 1, -1))
    req_blocked = ((xt == 0) & (req_dir == -1)) | ((xt == maxv) & (req_dir == 1))
    xf = symbols[rows, t.fb_sym[gap_codes]]
    fdir = t.fb_dir[gap_codes]
    quat_fb_blocked = ((fdir == 1) & (xf == maxv)) | ((fdir == -1) & (xf == 0))
    double = extreme & np.where(role == 3, quat_fb_blocked, ~req_blocked)

    if double.any():
        for i in np.nonzero(double)[0]:
            dig = t.code_digits[secret_codes[i]]
            secret = MixedVector(
                tuple(int(x) for x in dig[: t.gamma]),
                tuple(int(x) for x in dig[t.gamma :]),
            )
            plan = codec.plan_changes(
                [int(x) for x in symbols[i]], secret, spec, depth=B
            )
            cost[i] = len(plan)

    return cost, extreme, double


def monte_carlo_distortion(spec: CodeSpec, B: int, trials: int, seed: int,
                           interior_only: bool = False) -> MonteCarloResult:
    """Estimate the codec's distortion over uniform covers and secrets.

    Draws ``trials`` independent blocks uniform over [0, 2^B - 1]^N
    (or over the interior [1, 2^B - 2]^N) and uniform secrets, embeds
    each, and averages the squared error per symbol.  Deterministic for
    a given seed; see the module docstring for the batching contract.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if B < 2 or B % 2:
        raise ValueError(f"B must be even and >= 2, got {B}")
    p = spec.params
    lo, hi = (1, (1 << B) - 1) if interior_only else (0, 1 << B)

    sum_cost = 0
    sum_sq = 0
    fallbacks = 0
    doubles = 0
    done = 0
    batch_index = 0
    while done < trials:
        n = min(_BATCH, trials - done)
        rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence((seed, batch_index))))
        symbols = rng.integers(lo, hi, size=(n, p.N), dtype=np.int64)
        secrets = rng.integers(0, 2**p.m, size=n, dtype=np.int64)
        cost, extreme, double = _embed_costs(spec, symbols, secrets, B)
        sum_cost += int(cost.sum())
        sum_sq += int((cost * cost).sum())
        fallbacks += int(extreme.sum())
        doubles += int(double.sum())
        done += n
        batch_index += 1

    mean_z = sum_cost / (trials * p.N)
    if trials > 1:
        var_z = (sum_sq / p.N**2 - trials * mean_z**2) / (trials - 1)
        se = math.sqrt(max(var_z, 0.0) / trials)
    else:
        se = 0.0
    return MonteCarloResult(
        d_hat=mean_z,
        std_error=se,
        saturation_fallbacks=fallbacks,
        double_saturations=doubles,
        trials=trials,
    )


# ---------------------------------------------------------------------------
# ternary Hamming baseline simulator


@lru_cache(maxsize=None)
def _ternary_tables(mu: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Parity columns, radix weights, and gap->symbol table for F3^mu."""
    if mu < 1:
        raise ValueError(f"mu must be >= 1, got {mu}")
    weights = np.array([3 ** (mu - 1 - r) for r in range(mu)], dtype=np.int64)
    cols = []
    for code in range(1, 3**mu):
        digits = [(code // int(w)) % 3 for w in weights]
        first = next(d for d in digits if d)
        if first == 1:  # projective representative
            cols.append(digits)
    cols.sort(key=lambda d: sum(x * int(w) for x, w in zip(d, weights)))
    h = np.array(cols, dtype=np.int64)  # (n, mu)
    assert h.shape[0] == (3**mu - 1) // 2

    dec_sym = np.full(3**mu, -1, dtype=np.int64)
    for i, col in enumerate(h):
        for eps in (1, 2):
            code = int(((eps * col) % 3) @ weights)
            dec_sym[code] = i
    return h, weights, dec_sym


def ternary_baseline_distortion(mu: int, B: int, trials: int, seed: int,
                                interior_only: bool = False) -> float:
    """Simulate the ternary Hamming baseline's mean squared error per symbol.

    Cover symbols carry their value mod 3; a required change moves the
    chosen symbol by one unit.  A change aimed at a symbol holding an
    extreme value is executed at magnitude 2 (inward), which is the
    baseline's handling of saturation and costs squared error 4.
    Deterministic batching as in :func:`monte_carlo_distortion`.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if B < 2:
        raise ValueError(f"B must be >= 2, got {B}")
    h, weights, dec_sym = _ternary_tables(mu)
    n = h.shape[0]
    maxv = (1 << B) - 1
    lo, hi = (1, maxv) if interior_only else (0, maxv + 1)

    total = 0
    done = 0
    batch_index = 0
    while done < trials:
        nt = min(_BATCH, trials - done)
        rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence((seed, batch_index))))
        symbols = rng.integers(lo, hi, size=(nt, n), dtype=np.int64)
        secrets = rng.integers(0, 3**mu, size=nt, dtype=np.int64)

        syn = (symbols % 3) @ h % 3
        target = np.stack([(secrets // int(w)) % 3 for w in weights], axis=1)
        gap_codes = ((target - syn) % 3) @ weights
        sym = dec_sym[gap_codes]

        cost = np.ones(nt, dtype=np.int64)
        cost[sym < 0] = 0
        xt = symbols[np.arange(nt), np.clip(sym, 0, None)]
        cost[(sym >= 0) & ((xt == 0) | (xt == maxv))] = 4
        total += int(cost.sum())
        done += nt
        batch_index += 1

    return total / (trials * n)


# ---------------------------------------------------------------------------
# CSV emission

_ALL_SCHEMES = ("z2z4", "z2z4-sat", "ternary", "ternary-sat", "qary", "qary-sat", "bound")


def emit_rates_csv(schemes: Optional[Iterable[str]], B: int, sink: TextIO,
                   m_range: Iterable[int] = range(2, 13),
                   mu_range: Iterable[int] = range(1, 9),
                   q_values: Iterable[int] = (5, 7, 9),
                   q_mu_range: Iterable[int] = range(1, 7),
                   bound_samples: int = 65) -> int:
    """Write "scheme,param,D,E" rows for the selected schemes; returns row count.

    Floating-point values are printed with 12 significant digits.
    """

    selected = tuple(schemes) if schemes is not None else _ALL_SCHEMES
    unknown = set(selected) - set(_ALL_SCHEMES)
    if unknown:
        raise ValueError(f"unknown schemes: {sorted(unknown)}")

    points: list[tuple[str, str, float, float]] = []
    for name in selected:
        if name == "z2z4":
            for m in m_range:
                pt = z2z4_rate(m)
                points.append((name, f"m={m}", pt.D, pt.E))
        elif name == "z2z4-sat":
            for m in m_range:
                pt = z2z4_rate_saturating(m, B)
                points.append((name, f"m={m};B={B}", pt.D, pt.E))
        elif name == "ternary":
            for mu in mu_range:
                pt = ternary_rate(mu)
                points.append((name, f"mu={mu}", pt.D, pt.E))
        elif name == "ternary-sat":
            for mu in mu_range:
                pt = ternary_rate(mu, saturating=True, B=B)
                points.append((name, f"mu={mu};B={B}", pt.D, pt.E))
        elif name == "qary":
            for q in q_values:
                for mu in q_mu_range:
                    pt = qary_rate(q, mu)
                    points.append((name, f"q={q};mu={mu}", pt.D, pt.E))
        elif name == "qary-sat":
            for q in q_values:
                for mu in q_mu_range:
                    pt = qary_rate(q, mu, saturating=True, B=B)
                    points.append((name, f"q={q};mu={mu};B={B}", pt.D, pt.E))
        elif name == "bound":
            for d in np.linspace(0.0, 2 / 3, bound_samples):
                points.append((name, "", float(d), entropy_bound(float(d))))

    writer = csv.writer(sink, lineterminator="\n")
    writer.writerow(["scheme", "param", "D", "E"])
    for scheme, param, d, e in points:
        writer.writerow([scheme, param, f"{d:.12g}", f"{e:.12g}"])
    return len(points)
