from fractions import Fraction
from math import factorial

import pytest

from fatmod.errors import ResourceLimit, WrongType
from fatmod.integrals import (bernoulli, boundary_integral,
                              boundary_integral_stable_path, euler_report,
                              hodge_corollary, main_theorem, psi_top_genus0,
                              psi_top_hyperelliptic, psi_top_moduli,
                              w1_h_integral, zeta_negative)
from fatmod.workspace import Workspace

from oracles import bernoulli_oracle


class TestGenusZero:
    def test_three_points(self, ws):
        r = psi_top_genus0(3, ws)
        assert r.value_closed == 1 and r.match

    def test_four_points_formula(self, ws):
        r = psi_top_genus0(4, ws)
        assert r.value_closed == Fraction(factorial(2) * 1 * 1, factorial(2))
        assert r.value_closed == 1 and r.match

    def test_assembled_census_path(self, ws):
        for n in range(4, 10):
            r = psi_top_genus0(n, ws)
            assert r.assembled_mode == "census"
            assert r.value_assembled == 1
            assert r.match

    def test_closed_only_range(self, ws):
        for n in range(10, 31):
            r = psi_top_genus0(n, ws)
            assert r.assembled_mode == "formula"
            assert r.value_closed == 1 and r.match


class TestPsiTopModuli:
    def test_torus(self, ws):
        r = psi_top_moduli(1, ws)
        assert r.value_closed == Fraction(1, 24)
        assert r.value_assembled == Fraction(1, 24)
        assert r.match

    def test_genus_two(self, ws):
        r = psi_top_moduli(2, ws)
        assert r.value_closed == Fraction(1, 1152)
        assert r.match

    def test_genus_three(self, ws):
        r = psi_top_moduli(3, ws)
        assert r.value_closed == Fraction(1, 82944)
        assert r.match

    def test_mutation_flips_match(self, ws):
        census = ws.trivalent_census(2)
        broken = Workspace()
        broken.override(census.descriptor, census.without(0))
        assert not psi_top_moduli(2, broken).match
        perturbed = Workspace()
        perturbed.override(census.descriptor,
                           census.with_aut_order(0, census.entries[0]
                                                 .aut_order + 1))
        assert not psi_top_moduli(2, perturbed).match

    def test_resource_limit(self, ws):
        with pytest.raises(ResourceLimit):
            psi_top_moduli(4, ws)


class TestHyperellipticTop:
    def test_small_genus_census_path(self, ws):
        expected = {1: Fraction(1, 24), 2: Fraction(1, 1920)}
        for g in (1, 2):
            r = psi_top_hyperelliptic(g, ws)
            assert r.value_closed == expected[g]
            assert r.value_assembled == expected[g]
            assert r.assembled_mode == "census"

    def test_closed_form_large_genus(self, ws):
        r = psi_top_hyperelliptic(50, ws)
        assert r.assembled_mode == "formula"
        assert r.match
        assert r.value_closed.denominator == 2 ** 100 * factorial(101)
        assert r.value_closed.numerator == 1


class TestW1Integral:
    def test_genus_two_value_and_pipeline(self, ws):
        r = w1_h_integral(2, ws)
        assert r.value_closed == Fraction(17, 480)
        assert r.value_assembled == Fraction(17, 480)
        assert r.assembled_mode == "census"
        # pipeline pieces: common volume 1/48, weighted counts 17/10
        vol = Fraction(factorial(2), 2 ** 2 * factorial(4))
        assert vol == Fraction(1, 48)
        assert 2 * Fraction(1, 10) + 3 * Fraction(1, 2) == Fraction(17, 10)
        assert vol * Fraction(17, 10) == Fraction(17, 480)

    def test_genus_three(self, ws):
        r = w1_h_integral(3, ws)
        assert r.value_closed == Fraction(54, 80640)
        assert r.match

    def test_needs_genus_two(self, ws):
        with pytest.raises(WrongType):
            w1_h_integral(1, ws)


class TestBoundaryIntegral:
    def test_genus_two(self, ws):
        r = boundary_integral(2, ws)
        assert r.value_closed == Fraction(1, 48)
        assert r.value_assembled == Fraction(1, 48)

    def test_uses_half_of_previous_genus(self, ws):
        sub = psi_top_hyperelliptic(1, ws)
        r = boundary_integral(2, ws)
        assert r.value_assembled == sub.value_assembled / 2

    def test_stable_graph_alternative(self, ws):
        for g in (2, 3):
            assert boundary_integral_stable_path(g, ws) == \
                boundary_integral(g, ws).value_closed


class TestMainTheorem:
    def test_genus_one(self, ws):
        r = main_theorem(1, ws)
        assert r.value_closed == Fraction(1, 24)
        assert r.value_assembled == Fraction(1, 24)

    def test_genus_two(self, ws):
        r = main_theorem(2, ws)
        assert r.value_closed == Fraction(3, 640)
        assert r.value_assembled == Fraction(3, 640)
        assert r.assembled_mode == "census"

    def test_genus_three(self, ws):
        r = main_theorem(3, ws)
        assert r.value_closed == Fraction(25, 322560)
        assert r.match

    def test_closed_identity_sweep(self, ws):
        previous = None
        for g in range(2, 201):
            assert 10 * g * g - 13 * g + 3 + g * (2 * g + 1) == \
                3 * (2 * g - 1) ** 2
            r = main_theorem(g, ws)
            assert r.match
            assert r.value_closed > 0
            if previous is not None:
                assert r.value_closed < previous
            previous = r.value_closed


class TestCorollary:
    def test_genus_two(self, ws):
        r = hodge_corollary(2, ws)
        assert r.value_closed == Fraction(37, 5760)
        assert r.value_assembled == Fraction(37, 5760)
        tail = Fraction(1, 24) * Fraction(1, 2 ** 2 * factorial(3))
        assert tail == Fraction(1, 576)
        assert Fraction(3, 640) + tail == Fraction(37, 5760)

    def test_genus_three(self, ws):
        r = hodge_corollary(3, ws)
        assert r.value_closed == Fraction(1, 10080)
        assert r.match

    def test_closed_identity_sweep(self, ws):
        for g in range(2, 201):
            assert 6 * (2 * g - 1) ** 2 + 2 * g * (2 * g + 1) == \
                2 * (14 * g * g - 11 * g + 3)
            assert hodge_corollary(g, ws).match


class TestEuler:
    def test_values_against_bernoulli_oracle(self, ws):
        assert euler_report(1, ws).value_assembled == Fraction(-1, 12)
        assert euler_report(2, ws).value_assembled == Fraction(1, 120)
        for g in (1, 2):
            r = euler_report(g, ws)
            assert r.match
            assert r.value_closed == -bernoulli_oracle(2 * g) / (2 * g)

    def test_bernoulli_implementations_agree(self):
        for n in range(0, 16):
            assert bernoulli(n) == bernoulli_oracle(n)

    def test_zeta_values(self):
        assert zeta_negative(1) == Fraction(-1, 12)
        assert zeta_negative(2) == Fraction(1, 120)
        assert zeta_negative(3) == Fraction(-1, 252)


class TestMutationDetection:
    def test_hyperelliptic_census_fault(self, ws):
        census = ws.hyperelliptic_census(2)
        broken = Workspace()
        broken.override(census.descriptor, census.with_aut_order(0, 3))
        assert not psi_top_hyperelliptic(2, broken).match
        assert not main_theorem(3, broken).match  # boundary path uses g=2

    def test_w1_component_fault(self, ws):
        comps = ws.w1_components(2)
        broken = Workspace()
        broken.override(comps.component1.descriptor,
                        comps.component1.with_aut_order(0, 99))
        assert not w1_h_integral(2, broken).match
        assert not main_theorem(2, broken).match
        assert not hodge_corollary(2, broken).match

    def test_all_valence_census_fault(self, ws):
        census = ws.all_valence_census(1)
        broken = Workspace()
        broken.override(census.descriptor, census.without(0))
        assert not euler_report(1, broken).match
