"""State construction, sampling determinism, and file I/O."""

import json
import math

import numpy as np
import pytest

from qmono import states

# Frozen regression snapshot of the Haar stream at (seed=2024, index=0).
HAAR_2024_0 = np.array([
    -0.47923597722690014 - 0.09007831066720771j,
    -0.10240475348357159 - 0.17566938765201612j,
    0.22365223219233138 + 0.15720279281251920j,
    -0.25679254649280214 - 0.19005980598491937j,
    -0.25192822830596000 - 0.13041356494675554j,
    -0.16567262852284043 + 0.05814706235678596j,
    -0.46253606788471220 - 0.004313502398308148j,
    0.23151419480022580 - 0.40646408738487850j,
])

CANONICAL_B_2024_0 = {
    "p": (0.4087677640356068, 0.602062317852273, 0.34784975738125845,
          0.12422341148652019, 0.5779264406792004),
    "theta": 0.8840746703627292,
}


class TestNamedStates:
    def test_ghz_amplitudes(self):
        psi = states.make_ghz()
        want = np.zeros(8)
        want[0] = want[7] = 1.0 / math.sqrt(2.0)
        np.testing.assert_allclose(psi, want, atol=0)

    def test_w_amplitudes(self):
        psi = states.make_w()
        want = np.zeros(8)
        want[1] = want[2] = want[4] = 1.0 / math.sqrt(3.0)
        np.testing.assert_allclose(psi, want, atol=0)

    def test_bell_product_amplitudes(self):
        psi = states.make_bell_product(0.5)
        assert psi[2] == pytest.approx(0.5)
        assert psi[4] == pytest.approx(-0.5)
        assert psi[1] == pytest.approx(math.sqrt(0.5))
        assert np.sum(np.abs(psi) ** 2) == pytest.approx(1.0, abs=1e-15)

    @pytest.mark.parametrize("p1", [0.0, 1.0])
    def test_bell_product_endpoints_normalized(self, p1):
        assert np.sum(np.abs(states.make_bell_product(p1)) ** 2) == pytest.approx(1.0)

    @pytest.mark.parametrize("p1", [-0.1, 1.1, float("nan")])
    def test_bell_product_rejects_bad_weight(self, p1):
        with pytest.raises(ValueError):
            states.make_bell_product(p1)


class TestCanonical:
    P = (0.5, 0.5, 0.5, 0.25, math.sqrt(1.0 - 0.25 * 3 - 0.0625))

    def test_a_occupies_documented_indices(self):
        psi = states.make_canonical_a(self.P, 0.3)
        assert sorted(np.flatnonzero(np.abs(psi) > 0)) == [0, 1, 4, 6, 7]
        assert psi[0] == pytest.approx(0.5 * complex(math.cos(0.3), math.sin(0.3)))
        assert psi[1] == pytest.approx(0.5)

    def test_b_occupies_documented_indices(self):
        psi = states.make_canonical_b(self.P, 0.0)
        assert sorted(np.flatnonzero(np.abs(psi) > 0)) == [0, 1, 2, 4, 7]
        assert psi[0] == pytest.approx(0.5)

    def test_rejects_unnormalized_parameters(self):
        with pytest.raises(ValueError, match="must be 1"):
            states.make_canonical_a((0.5, 0.5, 0.5, 0.5, 0.5))

    def test_rejects_negative_parameter(self):
        with pytest.raises(ValueError):
            states.make_canonical_a((-0.5, 0.5, 0.5, 0.5, 0.0))

    @pytest.mark.parametrize("theta", [-0.1, math.pi])
    def test_rejects_theta_outside_range(self, theta):
        with pytest.raises(ValueError, match="theta"):
            states.make_canonical_a((1.0, 0.0, 0.0, 0.0, 0.0), theta)


class TestSampling:
    def test_haar_snapshot(self):
        psi = states.sample_haar(states.RngState(2024, 0))
        np.testing.assert_array_equal(psi, HAAR_2024_0)

    def test_haar_normalized(self):
        for i in range(10):
            psi = states.sample_haar(states.RngState(5, i))
            assert np.sum(np.abs(psi) ** 2) == pytest.approx(1.0, abs=1e-14)

    def test_streams_are_independent_per_index(self):
        a = states.sample_haar(states.RngState(5, 0))
        b = states.sample_haar(states.RngState(5, 1))
        assert np.max(np.abs(a - b)) > 1e-3

    def test_batch_is_bitwise_identical_to_singles(self):
        batch = states.sample_haar_batch(99, 16)
        singles = np.stack([states.sample_haar(states.RngState(99, i)) for i in range(16)])
        np.testing.assert_array_equal(batch, singles)

    def test_canonical_sample_snapshot(self):
        spec = states.sample_canonical(states.RngState(2024, 0), "canonical-b")
        assert spec.p == CANONICAL_B_2024_0["p"]
        assert spec.theta == CANONICAL_B_2024_0["theta"]

    def test_canonical_sample_is_valid_parametrization(self):
        for i in range(50):
            spec = states.sample_canonical(states.RngState(11, i), "canonical-a")
            assert sum(x * x for x in spec.p) == pytest.approx(1.0, abs=1e-12)
            assert all(x >= 0 for x in spec.p)
            assert 0.0 <= spec.theta < math.pi
            spec.build()

    def test_canonical_sample_rejects_other_families(self):
        with pytest.raises(ValueError):
            states.sample_canonical(states.RngState(0, 0), "ghz")


class TestFamilySpec:
    def test_build_each_family(self):
        assert states.StateFamilySpec(family="ghz").build()[0] != 0
        assert states.StateFamilySpec(family="w").build()[1] != 0
        assert states.StateFamilySpec(family="bell-product", p1=0.5).build()[2] != 0
        psi = states.StateFamilySpec(family="haar", seed=3).build()
        np.testing.assert_array_equal(psi, states.sample_haar(states.RngState(3, 0)))

    def test_missing_parameters_rejected(self):
        with pytest.raises(ValueError):
            states.StateFamilySpec(family="bell-product")
        with pytest.raises(ValueError):
            states.StateFamilySpec(family="canonical-a")
        with pytest.raises(ValueError):
            states.StateFamilySpec(family="haar")
        with pytest.raises(ValueError):
            states.StateFamilySpec(family="cluster")


class TestValidateAndFiles:
    def test_validate_renormalizes_inside_window(self):
        psi = np.zeros(8, dtype=complex)
        psi[0] = 1.0 + 1e-7
        out = states.validate(psi)
        assert np.sum(np.abs(out) ** 2) == pytest.approx(1.0, abs=1e-15)

    def test_validate_rejects_outside_window(self):
        psi = np.zeros(8, dtype=complex)
        psi[0] = 1.01
        with pytest.raises(ValueError, match="norm"):
            states.validate(psi)

    def test_roundtrip(self, tmp_path, rng):
        psi = rng.normal(size=8) + 1j * rng.normal(size=8)
        psi /= np.linalg.norm(psi)
        path = tmp_path / "state.json"
        states.write_state_file(path, psi)
        np.testing.assert_allclose(states.read_state_file(path), psi, atol=1e-15)

    def test_read_rejects_wrong_shape(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps([[1.0, 0.0]] * 7))
        with pytest.raises(ValueError, match="8 entries"):
            states.read_state_file(path)

    def test_read_rejects_non_numbers(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps([["x", 0.0]] + [[0.0, 0.0]] * 7))
        with pytest.raises(ValueError):
            states.read_state_file(path)
