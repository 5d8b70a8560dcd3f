import itertools

import pytest

from z2z4stego.algebra import MixedVector, mixed_add, scalar_mul
from z2z4stego.construction import (
    Role,
    all_twos,
    build_code,
    canonical_rep,
    complement_of,
    decode_gap,
    derive_parameters,
    matrix_dump,
    verify_code,
)

ALL_SPECS = [(m, d) for m in range(2, 9) for d in range(m // 2 + 1)]


class TestParameters:
    @pytest.mark.parametrize(
        "m,delta,alpha,beta,gamma,n",
        [(4, 2, 3, 6, 0, 8), (4, 0, 15, 0, 4, 8), (2, 1, 1, 1, 0, 2)],
    )
    def test_examples(self, m, delta, alpha, beta, gamma, n):
        p = derive_parameters(m, delta)
        assert (p.alpha, p.beta, p.gamma, p.N) == (alpha, beta, gamma, n)
        assert p.bits_per_block == m

    @pytest.mark.parametrize("m,delta", ALL_SPECS)
    def test_invariants(self, m, delta):
        p = derive_parameters(m, delta)
        assert p.alpha == 2 ** (m - delta) - 1
        assert p.beta == 2 ** (m - 1) - 2 ** (m - delta - 1)
        assert p.gamma == m - 2 * delta
        assert p.alpha + 2 * p.beta == 2**m - 1
        assert p.N == 2 ** (m - 1) == (p.alpha + 1) // 2 + p.beta

    def test_rejects_bad_parameters(self):
        with pytest.raises(ValueError):
            derive_parameters(1, 0)
        with pytest.raises(ValueError):
            derive_parameters(4, 3)
        with pytest.raises(ValueError):
            derive_parameters(4, -1)


class TestCanonicalRep:
    def test_examples(self):
        assert canonical_rep(MixedVector((), (0, 3))) == (MixedVector((), (0, 1)), True)
        assert canonical_rep(MixedVector((), (2, 1))) == (MixedVector((), (2, 1)), False)
        v = MixedVector((1, 0), (2,))
        assert canonical_rep(v) == (v, False)

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            canonical_rep(MixedVector.zero(0, 2))

    def test_rep_is_sign_invariant(self):
        for q in itertools.product(range(4), repeat=2):
            v = MixedVector((), q)
            if v.is_zero():
                continue
            rv, _ = canonical_rep(v)
            rn, _ = canonical_rep(scalar_mul(3, v))
            assert rv == rn


GOLDEN_42 = [(2, 2), (0, 2), (2, 0), (0, 1), (1, 0), (1, 1), (1, 2), (1, 3), (2, 1)]


class TestBuildCode:
    def test_golden_matrix_m4_delta2(self):
        spec = build_code(4, 2)
        assert [c.quaternary for c in spec.columns] == [tuple(q) for q in GOLDEN_42]

    def test_smallest_quaternary_code(self):
        spec = build_code(2, 1)
        assert [str(c) for c in spec.columns] == ["|2", "|1"]

    def test_binary_hamming_m3(self):
        spec = build_code(3, 0)
        assert spec.columns[0] == MixedVector((1, 1, 1), ())
        expected = [(1, 1, 1), (0, 0, 1), (1, 1, 0), (0, 1, 0), (1, 0, 1), (0, 1, 1), (1, 0, 0)]
        assert [c.binary for c in spec.columns] == expected
        # multiset equals all nonzero binary vectors
        assert {c.binary for c in spec.columns} == set(
            itertools.product((0, 1), repeat=3)
        ) - {(0, 0, 0)}

    @pytest.mark.parametrize("m,delta", [(m, d) for m, d in ALL_SPECS if m <= 6])
    def test_self_checks(self, m, delta):
        assert verify_code(build_code(m, delta)) == []

    @pytest.mark.parametrize("m,delta", [(m, d) for m, d in ALL_SPECS if m <= 6])
    def test_pairing(self, m, delta):
        spec = build_code(m, delta)
        p = spec.params
        twos = all_twos(p.gamma, p.delta)
        assert spec.columns[0] == twos
        for k in range((p.alpha - 1) // 2):
            assert mixed_add(spec.columns[2 * k + 1], twos) == spec.columns[2 * k + 2]

    @pytest.mark.parametrize("m,delta", [(m, d) for m, d in ALL_SPECS if m <= 6])
    def test_symbol_association_counts(self, m, delta):
        spec = build_code(m, delta)
        p = spec.params
        n_pairs = (p.alpha - 1) // 2
        counts: dict[int, int] = {}
        roles: dict[int, set[Role]] = {}
        for sym, role in spec.symbol_assoc.values():
            counts[sym] = counts.get(sym, 0) + 1
            roles.setdefault(sym, set()).add(role)
        assert counts[0] == 1 and roles[0] == {Role.X1_BIT}
        for k in range(1, n_pairs + 1):
            assert counts[k] == 2 and roles[k] == {Role.PAIR_HI, Role.PAIR_LO}
        for sym in range(n_pairs + 1, p.N):
            assert counts[sym] == 1 and roles[sym] == {Role.QUATERNARY}
        assert set(counts) == set(range(p.N))


class TestDecodeGap:
    def test_examples(self):
        spec = build_code(4, 2)
        assert decode_gap(spec, MixedVector((), (2, 3))) == (8, 3)
        assert decode_gap(spec, MixedVector((), (0, 2))) == (1, 1)
        assert decode_gap(spec, MixedVector.zero(0, 2)) is None

    def test_shape_check(self):
        with pytest.raises(ValueError):
            decode_gap(build_code(4, 2), MixedVector((0,), (0,)))

    @pytest.mark.parametrize("m,delta", [(m, d) for m, d in ALL_SPECS if m <= 6])
    def test_total_on_nonzero_and_consistent(self, m, delta):
        from z2z4stego.construction import enumerate_syndromes

        spec = build_code(m, delta)
        p = spec.params
        for v in enumerate_syndromes(p.gamma, p.delta):
            hit = decode_gap(spec, v)
            if v.is_zero():
                assert hit is None
                continue
            i, eps = hit
            assert scalar_mul(eps, spec.columns[i]) == v
            if i < p.alpha:
                assert eps == 1


class TestComplement:
    def test_examples(self):
        spec = build_code(4, 2)
        # 3*(2,1) + (2,2) = (0,1) = column 3
        assert complement_of(spec, 8) == (3, False)
        # 3*(1,3) + (2,2) = (1,3): the column is its own complement
        assert complement_of(spec, 7) == (7, False)
        spec21 = build_code(2, 1)
        assert complement_of(spec21, 1) == (1, False)

    def test_rejects_order_two_columns(self):
        with pytest.raises(ValueError):
            complement_of(build_code(4, 2), 1)

    @pytest.mark.parametrize("m,delta", [(m, d) for m, d in ALL_SPECS if m <= 6 and d > 0])
    def test_matches_formula_and_involutive(self, m, delta):
        spec = build_code(m, delta)
        p = spec.params
        twos = all_twos(p.gamma, p.delta)
        for i in range(p.alpha, p.alpha + p.beta):
            c, negated = complement_of(spec, i)
            hbar = mixed_add(scalar_mul(3, spec.columns[i]), twos)
            assert spec.columns[c] == (scalar_mul(3, hbar) if negated else hbar)
            assert p.alpha <= c < p.alpha + p.beta
            assert complement_of(spec, c)[0] == i


class TestPerfectness:
    @pytest.mark.parametrize("m,delta", [(m, d) for m, d in ALL_SPECS if m <= 6])
    def test_syndromes_enumerate_space(self, m, delta):
        # independent brute force: scalar multiples of the columns, plus zero,
        # must tile Z2^gamma x Z4^delta with no repeats
        spec = build_code(m, delta)
        p = spec.params
        reached = [MixedVector.zero(p.gamma, p.delta)]
        for i, h in enumerate(spec.columns):
            reached.append(h)
            if i >= p.alpha:
                reached.append(scalar_mul(3, h))
        assert len(reached) == 2**m
        assert len(set(reached)) == 2**m
        ambient = {
            MixedVector(b, q)
            for b in itertools.product((0, 1), repeat=p.gamma)
            for q in itertools.product(range(4), repeat=p.delta)
        }
        assert set(reached) == ambient


class TestMatrixDump:
    def test_golden_dump(self):
        lines = matrix_dump(build_code(4, 2)).splitlines()
        assert lines[0] == "m=4 delta=2 alpha=3 beta=6 gamma=0"
        assert lines[1:] == ["|22", "|02", "|20", "|01", "|10", "|11", "|12", "|13", "|21"]

    def test_binary_rows_printed_as_twos(self):
        lines = matrix_dump(build_code(3, 1)).splitlines()
        assert lines[0] == "m=3 delta=1 alpha=3 beta=2 gamma=1"
        assert lines[1] == "2|2"
