"""Coupled nonlinear identities and the quasi-homogeneous relation search."""

import pytest

from mirrormap.mirror import mirror_data
from mirrormap.operators import second_order_normal_form, mirror_operator
from mirrormap.relations import (ab_quantities, quintic_normal_form,
                                 rational_q, rational_q_tilde,
                                 relation_search, verify_duality,
                                 verify_eq_fourth, verify_eq_schwarzian,
                                 verify_eq_second)
from mirrormap.series import Q, PowerSeries, rat
from mirrormap.wronskian import schwarzian
from mirrormap.yukawa import yukawa_coupling


class TestRationalData:
    def test_q_matches_normal_form(self):
        # the closed form equals Q2/10 from the reduced fourth-order shape
        q2, _ = quintic_normal_form()
        lhs = rational_q().series("z", 10)
        rhs = q2.series("z", 10)
        assert (10 * lhs - rhs).is_zero()

    def test_q_tilde_pole_structure(self):
        s = rational_q_tilde().series("z", 5)
        assert s.val == 1 and s.coeff(1) == -5750


class TestCoupledIdentities:
    @pytest.mark.parametrize("s", [3, 4])
    def test_schwarzian_identity(self, s):
        assert verify_eq_schwarzian(s, 24).is_zero()

    def test_second_order_identity(self):
        assert verify_eq_second(24).is_zero()

    def test_fourth_order_identity(self):
        assert verify_eq_fourth(24).is_zero()

    def test_duality(self):
        r2, r4 = verify_duality(20)
        assert r2.is_zero() and r4.is_zero()

    def test_schwarzian_identity_detects_mutation(self):
        # perturbing the potential must break the identity: the check is
        # not vacuous
        q_rf = second_order_normal_form(mirror_operator(3))
        z = mirror_data(3, 20).z_of_q
        z1 = z.euler()
        good = 2 * q_rf.eval_series(z) * z1 * z1 + schwarzian(z)
        bad = good + z1 * z1 * Q(1, 7)
        assert good.truncate(12).is_zero()
        assert not bad.truncate(12).is_zero()

    def test_fourth_order_detects_mutation(self):
        # any change to the cubic numerator produces a nonzero residual
        z = mirror_data(5, 18).z_of_q
        lhs = rational_q_tilde().eval_series(z) * (z.euler() / z) ** 4
        perturbed = (rational_q_tilde().series("z", 12)
                     + PowerSeries("z", 1, [rat(1)], 12)).compose(z)
        bad = perturbed * (z.euler() / z) ** 4
        assert not (bad - lhs).truncate(10).is_zero()


@pytest.fixture(scope="module")
def result():
    return relation_search(mode="p2", weight_bound=12, order=40,
                           trials=2, seed=0)


class TestRelationSearch:
    def test_finds_weight_twelve(self, result):
        assert result.found and result.weight == 12

    def test_certified(self, result):
        assert result.verified_fresh and result.verified_dual

    def test_quasi_homogeneous(self, result):
        assert result.polynomial.is_quasi_homogeneous()
        assert result.polynomial.weight_set() == [12]

    def test_shape(self, result):
        assert result.stratum_size == 40
        assert len(result.polynomial.terms) == 25
        assert result.degree_set == (3, 4, 5)

    def test_deterministic(self, result):
        again = relation_search(mode="p2", weight_bound=12, order=40,
                                trials=2, seed=0)
        assert again.polynomial.terms == result.polynomial.terms

    def test_kills_actual_b_quantities(self, result):
        ab = ab_quantities(20)
        values = [ab.B2]
        for _ in range(5):
            values.append(values[-1].euler())
        values.append(ab.B4)
        for _ in range(3):
            values.append(values[-1].euler())
        assert result.polynomial.evaluate(values).is_zero()

    def test_p1_empty_through_low_weights(self):
        # the A-side has no relation in the strata the B-side already
        # fills; scan a cheap prefix to document that
        res = relation_search(mode="p1", weight_bound=7, order=24,
                              trials=2, seed=0)
        assert not res.found
        assert set(res.weights_scanned) == set(range(2, 8))

    def test_unknown_mode(self):
        with pytest.raises(ValueError):
            relation_search(mode="p3")


class TestYukawaSideSanity:
    def test_log_derivative_start(self):
        K = yukawa_coupling(6)
        u1 = K.euler() / K
        assert u1.coeff(0) == 0 and u1.coeff(1) == 575
