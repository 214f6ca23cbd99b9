import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ionthermo import (
    DensityMatrix,
    DimensionMismatch,
    ThermalOpParams,
    ValidationError,
    apply_thermal_op,
    check_covariance,
    gibbs_state,
    gibbs_stochastic_matrix,
    is_markovian,
    kraus_operators,
)
from ionthermo.thermal_ops import apply_kraus

from conftest import random_density

gaps = st.floats(0, 20, allow_nan=False)
lams = st.floats(0, 1)


def gibbs_vector(gap):
    return np.array([1.0, math.exp(-gap)]) / (1 + math.exp(-gap))


class TestParams:
    @pytest.mark.parametrize("gap, lam", [(-0.1, 0.5), (1.0, -0.01), (1.0, 1.01), (math.inf, 0.5)])
    def test_rejects_out_of_range(self, gap, lam):
        with pytest.raises(ValidationError):
            ThermalOpParams(gap, lam)


class TestGibbsStochastic:
    def test_ln2_full_swap(self):
        g = gibbs_stochastic_matrix(ThermalOpParams(math.log(2), 1.0))
        assert np.allclose(g, [[0.5, 1.0], [0.5, 0.0]], atol=1e-15)

    @pytest.mark.parametrize("gap", [0.0, 0.4, 3.0])
    def test_zero_lambda_is_identity(self, gap):
        assert np.array_equal(gibbs_stochastic_matrix(ThermalOpParams(gap, 0.0)), np.eye(2))

    def test_equilibrium_is_rank_one_projector(self, rng):
        g = gibbs_stochastic_matrix(ThermalOpParams(math.log(2), 2 / 3))
        assert np.allclose(g, [[2 / 3, 2 / 3], [1 / 3, 1 / 3]], atol=1e-15)
        for _ in range(10):
            x = rng.dirichlet([1, 1])
            assert np.allclose(g @ x, [2 / 3, 1 / 3], atol=1e-15)

    @settings(max_examples=1000, deadline=None)
    @given(gaps, lams)
    def test_stochastic_and_gibbs_preserving(self, gap, lam):
        g = gibbs_stochastic_matrix(ThermalOpParams(gap, lam))
        assert np.all(g >= 0)
        assert np.allclose(g.sum(axis=0), 1, atol=1e-15)
        assert np.allclose(g @ gibbs_vector(gap), gibbs_vector(gap), atol=1e-15)


class TestKraus:
    def test_zero_lambda(self):
        k0, k1, km1 = kraus_operators(ThermalOpParams(1.3, 0.0))
        assert np.array_equal(k0, np.eye(2))
        assert not k1.any() and not km1.any()

    def test_ln2_full_swap(self):
        k0, k1, km1 = kraus_operators(ThermalOpParams(math.log(2), 1.0))
        assert np.allclose(k0, np.diag([math.sqrt(0.5), 0]))
        assert np.allclose(k1, [[0, 0], [math.sqrt(0.5), 0]])
        assert np.allclose(km1, [[0, 1], [0, 0]])

    @settings(max_examples=300, deadline=None)
    @given(gaps, lams)
    def test_completeness(self, gap, lam):
        ops = kraus_operators(ThermalOpParams(gap, lam))
        assert len(ops) == 3
        total = sum(k.conj().T @ k for k in ops)
        assert np.max(np.abs(total - np.eye(2))) <= 1e-12

    def test_each_operator_has_definite_bohr_frequency(self):
        # k_w satisfies e^{iHt} k e^{-iHt} = e^{iwt} k for w in {0, +E, -E}
        gap, t = 0.9, 1.7
        h = np.diag(np.exp(1j * np.array([0.0, gap]) * t))
        for k, w in zip(kraus_operators(ThermalOpParams(gap, 0.6)), (0.0, gap, -gap)):
            assert np.allclose(h @ k @ h.conj().T, np.exp(1j * w * t) * k)


class TestApply:
    def test_population_action(self, rng):
        for _ in range(200):
            p = ThermalOpParams(rng.uniform(0, 6), rng.uniform())
            rho = random_density(rng)
            out = apply_thermal_op(p, rho)
            assert np.allclose(np.diag(out.matrix).real, gibbs_stochastic_matrix(p) @ np.diag(rho.matrix).real,
                               atol=1e-12)

    def test_coherence_damping_saturates_bound(self, rng):
        for _ in range(200):
            p = ThermalOpParams(rng.uniform(0, 6), rng.uniform())
            g = gibbs_stochastic_matrix(p)
            rho = random_density(rng)
            out = apply_thermal_op(p, rho)
            assert out.matrix[0, 1] == pytest.approx(math.sqrt(g[0, 0] * g[1, 1]) * rho.matrix[0, 1], abs=1e-14)

    def test_full_swap_at_zero_gap(self):
        out = apply_thermal_op(ThermalOpParams(0.0, 1.0), DensityMatrix.from_populations([1, 0]))
        assert np.allclose(out.matrix, np.diag([0, 1]))

    def test_identity_at_zero_lambda(self, rng):
        rho = random_density(rng)
        assert np.allclose(apply_thermal_op(ThermalOpParams(2.0, 0.0), rho).matrix, rho.matrix, atol=1e-15)

    def test_equilibrium_thermalises_incoherent_states(self, rng):
        for _ in range(20):
            p = ThermalOpParams.equilibrium(rng.uniform(0, 6))
            rho = DensityMatrix.from_populations(rng.dirichlet([1, 1]))
            assert apply_thermal_op(p, rho).allclose(gibbs_state(p.context), atol=1e-12)

    def test_equilibrium_keeps_part_of_the_coherence(self):
        # sqrt(G00 G11) = sqrt(e)/(1+e) at lam = 1/Z, nonzero for finite gaps
        p = ThermalOpParams.equilibrium(1.0)
        e = math.exp(-1.0)
        out = apply_thermal_op(p, DensityMatrix.from_pure([1, 1]))
        assert np.allclose(np.diag(out.matrix).real, [1 / (1 + e), e / (1 + e)])
        assert out.matrix[0, 1].real == pytest.approx(0.5 * math.sqrt(e) / (1 + e), abs=1e-15)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            apply_thermal_op(ThermalOpParams(1.0, 0.5), DensityMatrix.from_populations([1, 0, 0]))

    def test_composition_closure(self, rng):
        for _ in range(50):
            gap = rng.uniform(0, 5)
            p1, p2 = ThermalOpParams(gap, rng.uniform()), ThermalOpParams(gap, rng.uniform())
            gamma = gibbs_state(p1.context)
            assert apply_thermal_op(p2, apply_thermal_op(p1, gamma)).allclose(gamma, atol=1e-12)
            ops = [b @ a for a in kraus_operators(p1) for b in kraus_operators(p2)]
            rho = random_density(rng)
            assert check_covariance(p1, rho, rng.uniform(-5, 5), kraus=ops)


class TestCovariance:
    def test_random_inputs_are_covariant(self, rng):
        for _ in range(100):
            p = ThermalOpParams(rng.uniform(0, 6), rng.uniform())
            assert check_covariance(p, random_density(rng), rng.uniform(-10, 10))

    def test_zero_time(self, rng):
        assert check_covariance(ThermalOpParams(1.0, 0.3), random_density(rng), 0.0)

    def test_corrupted_kraus_set_is_not_covariant(self):
        p = ThermalOpParams(1.0, 0.7)
        k0, k1, km1 = kraus_operators(p)
        # the corrupted k_-1 also feeds |1> into |1>, mixing Bohr frequencies -E and 0
        bad = km1 + km1.T.conj() @ km1
        rho = DensityMatrix.from_pure([1, 1])
        assert not check_covariance(p, rho, 0.8, kraus=[k0, k1, bad])


class TestMarkovianity:
    @pytest.mark.parametrize("gap", [0.0, 0.5, 2.0, 5.0, 50.0])
    def test_weak_coupling_is_markovian(self, gap):
        assert is_markovian(ThermalOpParams(gap, 0.2))

    @pytest.mark.parametrize("gap", [0.0, 0.5, 2.0, 5.0, 30.0])
    def test_full_swap_is_not_markovian(self, gap):
        assert not is_markovian(ThermalOpParams(gap, 1.0))

    def test_boundary_is_markovian(self):
        for gap in (0.0, 0.3, 4.0):
            assert is_markovian(ThermalOpParams.equilibrium(gap))


def paper_printed_kraus(p):
    """Kraus set with the coefficient of k_-1 as typeset in the source: sqrt(G_{0|0})."""
    g = gibbs_stochastic_matrix(p)
    k0, k1, _ = kraus_operators(p)
    km1 = np.zeros((2, 2), dtype=complex)
    km1[0, 1] = math.sqrt(g[0, 0])
    return [k0, k1, km1]


def test_printed_coefficient_only_complete_at_equilibrium():
    p = ThermalOpParams(1.0, 0.5)
    total = sum(k.conj().T @ k for k in paper_printed_kraus(p))
    assert abs(total[1, 1] - 1) > 0.1
    eq = ThermalOpParams.equilibrium(1.0)
    total = sum(k.conj().T @ k for k in paper_printed_kraus(eq))
    assert np.allclose(total, np.eye(2), atol=1e-12)
    # the printed set still acts on rho correctly in that single case
    rho = DensityMatrix.from_pure([1, 2])
    assert np.allclose(apply_kraus(paper_printed_kraus(eq), rho.matrix), apply_thermal_op(eq, rho).matrix)
