import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from autoind.arith import Coordinate, QCyclo
from autoind.errors import DegreeBudget, RankMismatch
from autoind.hecke import (
    PowerSumExpr,
    SymLaurent,
    ai_transfer,
    bc_transfer,
    constant_term,
    from_power_sums,
    satake_eval,
    satake_eval_alg,
    to_power_sums,
)
from autoind.satake import CyclicAlgebra, SatakeParam, SphericalRepE, bc_map, delta_map
from autoind.verify import random_coordinate, random_spherical, random_symlaurent


def coord(z, q=0):
    return Coordinate.of(F(z), F(q))


def qc(x):
    return QCyclo.from_coordinate(x)


class TestSymLaurent:
    def test_normal_form_reduces_shift(self):
        f = SymLaurent(2, 2, {(3, 1): QCyclo.rational(1)})
        assert f.shift == 1 and (2, 0) in f.terms

    def test_shift_never_negative(self):
        f = SymLaurent(2, 0, {(2, 1): QCyclo.rational(1)})
        assert f.shift == 0 and (2, 1) in f.terms

    def test_add_aligns_shifts(self):
        a = SymLaurent.det_power(2, -1)
        b = SymLaurent.one(2)
        c = a + b
        assert c.shift == 1
        assert c.terms.keys() == {(0, 0), (1, 1)}

    def test_mul_monomials(self):
        # m_(1) * m_(1) = m_(2) + 2 m_(11) in two variables
        p1 = SymLaurent.power_sum(2, 1)
        sq = p1 * p1
        assert sq == SymLaurent(
            2, 0, {(2, 0): QCyclo.rational(1), (1, 1): QCyclo.rational(2)}
        )

    def test_det_power_inverse(self):
        e2 = SymLaurent.elementary(2, 2)
        inv = SymLaurent.det_power(2, -1)
        assert e2 * inv == SymLaurent.one(2)

    def test_json_roundtrip(self):
        f = SymLaurent(3, 1, {(2, 1, 0): QCyclo.rational(F(3, 7))})
        assert SymLaurent.from_json(f.to_json()) == f


class TestEvaluation:
    def test_e1_staircase(self):
        f = SymLaurent.elementary(2, 1)
        y = SatakeParam((coord(0, F(-1, 2)), coord(0, F(1, 2))))
        expect = qc(coord(0, F(-1, 2))) + qc(coord(0, F(1, 2)))
        assert satake_eval(f, y) == expect

    def test_e2_sign_pair(self):
        f = SymLaurent.elementary(2, 2)
        y = SatakeParam((coord(0), coord(F(1, 2))))
        assert satake_eval(f, y) == QCyclo.rational(-1)

    def test_p2_at_fourth_roots(self):
        f = SymLaurent.power_sum(2, 2)
        y = SatakeParam((coord(F(1, 4)), coord(F(3, 4))))
        assert satake_eval(f, y) == QCyclo.rational(-2)

    def test_rank_mismatch(self):
        with pytest.raises(RankMismatch):
            satake_eval(SymLaurent.one(2), SatakeParam((coord(0),)))

    def test_shift_evaluates_as_inverse_determinant(self):
        f = SymLaurent.det_power(2, -2)
        y = SatakeParam((coord(0, 1), coord(F(1, 2), 1)))
        # (z1 z2)^(-2) at {q, -q} is (-q^2)^(-2) = q^(-4)
        assert satake_eval(f, y) == qc(coord(0, -4))


class TestPowerSums:
    def test_newton_e2(self):
        expr, shift = to_power_sums(SymLaurent.elementary(2, 2))
        assert shift == 0
        assert expr == PowerSumExpr(
            {(1, 1): QCyclo.rational(F(1, 2)), (2,): QCyclo.rational(F(-1, 2))}
        )

    def test_e1_is_p1(self):
        expr, _ = to_power_sums(SymLaurent.elementary(3, 1))
        assert expr == PowerSumExpr({(1,): QCyclo.rational(1)})

    def test_m2_is_exactly_p2(self):
        expr, _ = to_power_sums(SymLaurent.monomial(2, (2,)))
        assert expr == PowerSumExpr({(2,): QCyclo.rational(1)})

    def test_roundtrip_all_monomials(self):
        for n in (1, 2, 3, 4):
            for d in range(0, 7):
                for lam in _partitions(d, n):
                    f = SymLaurent.monomial(n, lam)
                    expr, shift = to_power_sums(f)
                    assert from_power_sums(expr, n, shift) == f

    def test_degree_budget(self):
        f = SymLaurent.monomial(2, (13,))
        with pytest.raises(DegreeBudget):
            to_power_sums(f)


def _partitions(d, max_len, largest=None):
    if d == 0:
        yield ()
        return
    if max_len == 0:
        return
    largest = largest or d
    for first in range(min(d, largest), 0, -1):
        for rest in _partitions(d - first, max_len - 1, first):
            yield (first,) + rest


class TestAiTransfer:
    def test_p1_dies(self):
        alg = CyclicAlgebra.field(2)
        assert ai_transfer(SymLaurent.power_sum(2, 1), alg).is_zero()

    def test_e2_maps_to_minus_p1(self):
        alg = CyclicAlgebra.field(2)
        out = ai_transfer(SymLaurent.elementary(2, 2), alg)
        assert out == SymLaurent.power_sum(1, 1).scale(-1)

    def test_p2_maps_to_2p1(self):
        alg = CyclicAlgebra.field(2)
        out = ai_transfer(SymLaurent.power_sum(2, 2), alg)
        assert out == SymLaurent.power_sum(1, 1).scale(2)

    def test_oracle_identity(self):
        rng = random.Random(11)
        for d, r in ((2, 1), (3, 1), (2, 2), (3, 3)):
            alg = CyclicAlgebra(d, r, d // r)
            for _ in range(5):
                m = rng.randint(1, 2)
                f = random_symlaurent(rng, m * d, maxdeg=5)
                y = random_spherical(rng, alg, m, max_order=8)
                assert satake_eval(f, delta_map(y)) == satake_eval(
                    ai_transfer(f, alg), y.flatten()
                )

    def test_eval_alg_is_eval_at_flatten(self):
        rng = random.Random(3)
        alg = CyclicAlgebra(4, 2, 2)
        z = random_spherical(rng, alg, 2, max_order=8)
        f = random_symlaurent(rng, 4, maxdeg=3)
        assert satake_eval_alg(f, z) == satake_eval(f, z.flatten())

    def test_is_ring_homomorphism(self):
        rng = random.Random(5)
        alg = CyclicAlgebra.field(2)
        for _ in range(5):
            f = random_symlaurent(rng, 4, maxdeg=4)
            g = random_symlaurent(rng, 4, maxdeg=4)
            assert ai_transfer(f + g, alg) == ai_transfer(f, alg) + ai_transfer(g, alg)
            assert ai_transfer(f * g, alg) == ai_transfer(f, alg) * ai_transfer(g, alg)

    def test_zeta_generator_independence(self):
        rng = random.Random(9)
        std = CyclicAlgebra.field(3)
        alt = CyclicAlgebra(3, 1, 3, coord(F(2, 3)))
        for _ in range(5):
            f = random_symlaurent(rng, 3, maxdeg=4)
            y = random_spherical(rng, std, 1, max_order=8)
            y_alt = SphericalRepE(alt, y.blocks)
            assert satake_eval(ai_transfer(f, std), y.flatten()) == satake_eval(
                ai_transfer(f, alt), y_alt.flatten()
            )

    def test_rank_not_divisible(self):
        with pytest.raises(RankMismatch):
            ai_transfer(SymLaurent.one(3), CyclicAlgebra.field(2))


class TestBcTransfer:
    def test_p1_to_p2(self):
        alg = CyclicAlgebra.field(2)
        assert bc_transfer([SymLaurent.power_sum(1, 1)], alg) == SymLaurent.power_sum(1, 2)

    def test_e2_to_e2_squared(self):
        alg = CyclicAlgebra.field(2)
        e2 = SymLaurent.elementary(2, 2)
        assert bc_transfer([e2], alg) == e2 * e2

    def test_split_case_multiplies(self):
        alg = CyclicAlgebra.split(2)
        f1 = SymLaurent.power_sum(2, 1)
        f2 = SymLaurent.elementary(2, 2)
        assert bc_transfer([f1, f2], alg) == f1 * f2

    def test_oracle_identity(self):
        rng = random.Random(13)
        for d, r in ((2, 1), (3, 1), (4, 2)):
            alg = CyclicAlgebra(d, r, d // r)
            for _ in range(4):
                n = rng.randint(1, 2)
                y = SatakeParam(tuple(random_coordinate(rng, 8) for _ in range(n)))
                fs = [random_symlaurent(rng, n, maxdeg=3) for _ in range(r)]
                z = bc_map(y, alg)
                lhs = QCyclo.rational(1)
                for g, b in zip(fs, z.blocks):
                    lhs = lhs * satake_eval(g, b)
                assert lhs == satake_eval(bc_transfer(fs, alg), y)

    def test_shift_scales(self):
        alg = CyclicAlgebra.field(3)
        out = bc_transfer([SymLaurent.det_power(2, -1)], alg)
        assert out.shift == 3


class TestConstantTerm:
    def test_e1_splits_additively(self):
        ct = constant_term(SymLaurent.elementary(2, 1), 2)
        assert set(ct.terms) == {((1,), (0,)), ((0,), (1,))}

    def test_e2_is_tensor_product(self):
        ct = constant_term(SymLaurent.elementary(2, 2), 2)
        assert set(ct.terms) == {((1,), (1,))}

    def test_p2_splits_additively(self):
        ct = constant_term(SymLaurent.power_sum(2, 2), 2)
        assert set(ct.terms) == {((2,), (0,)), ((0,), (2,))}

    def test_evaluation_identity(self):
        rng = random.Random(17)
        alg = CyclicAlgebra(4, 2, 2)
        for _ in range(5):
            f = random_symlaurent(rng, 4, maxdeg=4)
            z = random_spherical(rng, alg, 2, max_order=8)
            assert constant_term(f, 2).eval(z) == satake_eval(f, z.flatten())


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 4), st.integers(0, 5))
def test_power_sum_roundtrip_random_degree(n, d):
    f = SymLaurent.monomial(n, (d,)) if d and n else SymLaurent.one(n)
    expr, shift = to_power_sums(f)
    assert from_power_sums(expr, n, shift) == f
