"""Resource measures against closed forms and independent eigenvalue oracles."""
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from catcost.measures import (
    Applicability,
    CostValue,
    binegativity,
    d_max,
    d_max_to_ppt_isotropic,
    exact_locc_cost_pure,
    exact_ppt_cost,
    log_negativity,
    schmidt_rank,
    work_cost_semiclassical,
)
from catcost.operators import (
    bipartite_shape,
    density_from_matrix,
    density_from_vector,
    is_psd,
    partial_transpose,
    plain_shape,
    tensor,
)
from catcost.states import (
    IsotropicParams,
    classical_mix,
    gibbs_qubit,
    isotropic,
    isotropic_from_fidelity,
    max_entangled,
    symmetric_two_broadcast,
)

from conftest import random_density, random_state_matrix


def half_mixed(d):
    return isotropic(IsotropicParams(d, 0.5))


def broadcast_of_half_mixed(d):
    return symmetric_two_broadcast(max_entangled(d), isotropic(IsotropicParams(d, 0.0)))


def closed_form_ln(d):
    return math.log2((d * d + 1) / d) - 1.0


class TestLogNegativity:
    def test_separable_product_is_zero(self, rng):
        a = random_state_matrix(rng, 2)
        b = random_state_matrix(rng, 3)
        rho = density_from_matrix(np.kron(a, b), bipartite_shape(2, 3))
        assert log_negativity(rho) <= 1e-12

    @pytest.mark.parametrize("d", [2, 3, 4, 5])
    def test_half_mixed_closed_form(self, d):
        assert abs(log_negativity(half_mixed(d)) - closed_form_ln(d)) <= 1e-9

    @pytest.mark.parametrize("d", [2, 3])
    def test_broadcast_has_same_value(self, d):
        assert abs(log_negativity(broadcast_of_half_mixed(d)) - closed_form_ln(d)) <= 1e-9

    def test_broadcast_pt_spectrum_oracle(self):
        # d=2: eigenvalues {1/8 x9, 0 x6, -1/8 x1}
        mu = broadcast_of_half_mixed(2)
        eigs = np.sort(np.linalg.eigvalsh(partial_transpose(mu.op).entries))
        expected = np.sort([1 / 8] * 9 + [0.0] * 6 + [-1 / 8])
        assert np.abs(eigs - expected).max() <= 1e-12

    @pytest.mark.parametrize("d", [2, 3, 4])
    def test_max_entangled_value(self, d):
        assert abs(log_negativity(max_entangled(d)) - math.log2(d)) <= 1e-12

    def test_additive_on_tensor_products(self, rng):
        for _ in range(10):
            a = random_density(rng, 2, 2)
            b = random_density(rng, 2, 2)
            prod = density_from_matrix(tensor(a.op, b.op).entries,
                                       a.shape.concat(b.shape))
            assert abs(log_negativity(prod)
                       - log_negativity(a) - log_negativity(b)) <= 1e-9

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 2 ** 31 - 1), st.booleans())
    def test_nonnegative_and_zero_on_ppt(self, seed, separable):
        rng = np.random.default_rng(seed)
        if separable:
            a = random_state_matrix(rng, 2)
            b = random_state_matrix(rng, 2)
            rho = density_from_matrix(np.kron(a, b), bipartite_shape(2, 2))
        else:
            rho = random_density(rng, 2, 2)
        value = log_negativity(rho)
        assert value >= 0.0
        if is_psd(partial_transpose(rho.op)).ok:
            assert value <= 1e-12


def sample_negative_binegativity_state(seed=2024, max_draws=60):
    """Rejection-sample a rank-2 two-qutrit state outside the gate."""
    rng = np.random.default_rng(seed)
    for _ in range(max_draws):
        rho = density_from_matrix(random_state_matrix(rng, 9, rank=2),
                                  bipartite_shape(3, 3))
        if binegativity(rho).min_eigenvalue < -1e-6:
            return rho
    raise AssertionError("no negative-binegativity sample found")


class TestBinegativity:
    def test_ppt_state_is_its_own_binegativity(self, rng):
        # for PPT rho the doubly transposed absolute value is rho itself
        a = random_state_matrix(rng, 2)
        b = random_state_matrix(rng, 2)
        rho = density_from_matrix(np.kron(a, b), bipartite_shape(2, 2))
        assert binegativity(rho).positive

    @pytest.mark.parametrize("d", [2, 3, 4, 5])
    def test_gates_pass_on_the_headline_family(self, d):
        assert binegativity(half_mixed(d)).positive
        assert binegativity(broadcast_of_half_mixed(d)).positive

    def test_negative_sample_exists(self):
        rho = sample_negative_binegativity_state()
        assert binegativity(rho).min_eigenvalue < -1e-6

    def test_closed_under_tensor_products_on_family(self):
        for d in (2, 3):
            rho = half_mixed(d)
            mu = broadcast_of_half_mixed(d)
            pair = density_from_matrix(tensor(rho.op, rho.op).entries,
                                       rho.shape.copies(2))
            assert binegativity(pair).positive
            cross = density_from_matrix(tensor(rho.op, mu.op).entries,
                                        rho.shape.concat(mu.shape))
            assert binegativity(cross).positive


class TestExactPptCost:
    def test_half_mixed_value(self):
        cost = exact_ppt_cost(half_mixed(2))
        assert cost.applicability is Applicability.EXACT_FORMULA
        assert abs(cost.bits - 0.3219281) <= 1e-7

    def test_ppt_state_costs_nothing(self, rng):
        a = random_state_matrix(rng, 2)
        b = random_state_matrix(rng, 2)
        rho = density_from_matrix(np.kron(a, b), bipartite_shape(2, 2))
        cost = exact_ppt_cost(rho)
        assert cost.applicability is Applicability.EXACT_FORMULA
        assert cost.bits <= 1e-12

    def test_gate_failure_flags_undefined(self):
        cost = exact_ppt_cost(sample_negative_binegativity_state())
        assert cost.applicability is Applicability.UNDEFINED
        assert math.isnan(cost.bits)

    def test_exact_on_family_up_to_d5(self):
        for d in range(2, 6):
            assert exact_ppt_cost(half_mixed(d)).applicability is Applicability.EXACT_FORMULA

    def test_cost_value_invariant(self):
        with pytest.raises(ValueError):
            CostValue(1.0, Applicability.UNDEFINED)


class TestDmax:
    def test_self_divergence_zero(self, rng):
        rho = random_density(rng, 2, 2)
        assert abs(d_max(rho, rho)) <= 1e-9

    def test_max_entangled_vs_white_noise(self):
        phi = max_entangled(2)
        white = isotropic(IsotropicParams(2, 0.0))
        assert abs(d_max(phi, white) - 2.0) <= 1e-12

    def test_diagonal_closed_forms(self):
        p = 0.25
        gamma = gibbs_qubit(p)
        assert abs(d_max(classical_mix(0.5, p), gamma) - math.log2(7 / 6)) <= 1e-12
        assert abs(d_max(classical_mix(0.0, p), gamma) - math.log2(4 / 3)) <= 1e-12

    def test_infinite_when_support_leaks(self):
        ground = classical_mix(0.0, 0.25)          # pure |0><0|
        excited = density_from_matrix(np.diag([0.0, 1.0]), plain_shape(2))
        assert d_max(excited, ground) == math.inf

    def test_shape_mismatch(self, rng):
        with pytest.raises(ValueError):
            d_max(random_density(rng, 2, 2), random_density(rng, 3, 3))

    def test_separates_distinct_states(self, rng):
        # zero divergence forces equality on unit-trace inputs
        for _ in range(10):
            rho = random_density(rng, 2, 1)
            sigma = random_density(rng, 2, 1)
            if np.abs(rho.entries - sigma.entries).max() > 1e-6:
                assert d_max(rho, sigma) > 1e-9

    def test_quasi_convex_in_first_argument(self, rng):
        for _ in range(20):
            p0 = np.sort(rng.random(4)); p0 /= p0.sum()
            p1 = np.sort(rng.random(4)); p1 /= p1.sum()
            q = rng.random(4) + 0.1; q /= q.sum()
            sigma = density_from_matrix(np.diag(q), plain_shape(4))
            r0 = density_from_matrix(np.diag(p0), plain_shape(4))
            r1 = density_from_matrix(np.diag(p1), plain_shape(4))
            mid = density_from_matrix(np.diag((p0 + p1) / 2), plain_shape(4))
            assert d_max(mid, sigma) <= max(d_max(r0, sigma), d_max(r1, sigma)) + 1e-9


class TestDmaxToPpt:
    @pytest.mark.parametrize("d", [2, 3])
    @pytest.mark.parametrize("lam", [0.5, 0.75, 1.0])
    def test_matches_log_negativity(self, d, lam):
        rho = isotropic(IsotropicParams(d, lam))
        assert abs(d_max_to_ppt_isotropic(rho) - log_negativity(rho)) <= 1e-6

    def test_d3_closed_form(self):
        rho = half_mixed(3)
        assert abs(d_max_to_ppt_isotropic(rho) - (math.log2(10 / 3) - 1)) <= 1e-6

    def test_ppt_boundary_gives_zero(self):
        rho = isotropic_from_fidelity(2, 0.5)  # f = 1/d
        assert d_max_to_ppt_isotropic(rho) == 0.0

    def test_rejects_non_symmetric_states(self, rng):
        rho = random_density(rng, 2, 2)
        with pytest.raises(ValueError):
            d_max_to_ppt_isotropic(rho)


class TestSchmidtRank:
    @pytest.mark.parametrize("d", [2, 3, 4])
    def test_max_entangled(self, d):
        assert schmidt_rank(max_entangled(d)) == d
        assert abs(exact_locc_cost_pure(max_entangled(d)) - math.log2(d)) <= 1e-12

    def test_product_state(self):
        v = np.zeros(4); v[0] = 1.0
        psi = density_from_vector(v, bipartite_shape(2, 2))
        assert schmidt_rank(psi) == 1
        assert exact_locc_cost_pure(psi) == 0.0

    def test_discontinuity_at_weak_entanglement(self):
        # marginal eigenvalues {1 - eps^2, eps^2} stay above the rank cut
        eps = 1e-3
        v = np.zeros(4)
        v[0], v[3] = math.sqrt(1 - eps ** 2), eps
        psi = density_from_vector(v, bipartite_shape(2, 2))
        assert schmidt_rank(psi, tol=1e-9) == 2
        assert exact_locc_cost_pure(psi) == 1.0

    def test_mixed_input_rejected(self):
        with pytest.raises(ValueError):
            schmidt_rank(half_mixed(2))


class TestWorkCost:
    def test_gibbs_costs_nothing(self):
        gamma = gibbs_qubit(0.25)
        assert work_cost_semiclassical(gamma, gamma) == 0.0

    def test_ground_state_cost(self):
        assert abs(work_cost_semiclassical(classical_mix(0.0, 0.25), gibbs_qubit(0.25))
                   - math.log2(4 / 3)) <= 1e-12

    def test_even_mixture_cost(self):
        assert abs(work_cost_semiclassical(classical_mix(0.5, 0.25), gibbs_qubit(0.25))
                   - math.log2(7 / 6)) <= 1e-12

    def test_non_commuting_rejected(self):
        plus = density_from_matrix(np.full((2, 2), 0.5), plain_shape(2))
        with pytest.raises(ValueError):
            work_cost_semiclassical(plus, gibbs_qubit(0.25))
