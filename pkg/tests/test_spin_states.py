import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import entanglement_by_svd
from spinscatter.errors import InputError
from spinscatter.spin_states import (
    CG4,
    Basis,
    SingleSpinState,
    TwoSpinState,
    coupled_rotation,
    in_state_from_angle,
    magic_basis,
    phased_maximal_state,
    product_state,
    random_single_spin,
    random_two_spin_state,
    rotate,
    to_coupled,
    to_product,
)
from spinscatter.su2 import Rotation

H = 1 / math.sqrt(2)
angles = st.floats(-7, 7, allow_nan=False)


def coupled(v):
    return TwoSpinState.coupled(v)


def test_product_state_examples():
    up = SingleSpinState([1, 0])
    assert np.array_equal(product_state(up, up).amplitudes, [1, 0, 0, 0])
    t = math.pi / 3
    s = product_state(up, SingleSpinState([math.cos(t), math.sin(t)]))
    np.testing.assert_allclose(s.amplitudes, [math.cos(t), math.sin(t), 0, 0], atol=1e-15)
    assert s.basis is Basis.PRODUCT


def test_product_state_rejects_unnormalized():
    with pytest.raises(InputError):
        SingleSpinState([1, 1])
    with pytest.raises(InputError):
        product_state([1, 0], [1, 0])


@settings(max_examples=50, deadline=None)
@given(p1=angles, a1=angles, p2=angles, a2=angles)
def test_product_states_are_unentangled(p1, a1, p2, a2):
    s = product_state(SingleSpinState.from_polarization(p1, a1), SingleSpinState.from_polarization(p2, a2))
    assert s.is_normalized()
    assert entanglement_by_svd(s.amplitudes)[0] < 1e-10


def test_in_state_from_angle():
    assert np.array_equal(in_state_from_angle(0).amplitudes, [1, 0, 0, 0])
    np.testing.assert_allclose(in_state_from_angle(math.pi / 2).amplitudes, [0, 1, 0, 0], atol=1e-16)
    np.testing.assert_allclose(in_state_from_angle(math.pi / 4).amplitudes, [H, H, 0, 0], atol=1e-16)
    for bad in (-0.1, math.pi, 4.0, float("nan")):
        with pytest.raises(InputError):
            in_state_from_angle(bad)


def test_in_state_in_coupled_basis():
    # cos t |11> + sin t / sqrt2 (|00> + |10>)
    for t in np.linspace(0, 3, 7):
        c = to_coupled(in_state_from_angle(t))
        s = math.sin(t) / math.sqrt(2)
        np.testing.assert_allclose(c.amplitudes, [s, 0, s, math.cos(t)], atol=1e-15)


def test_basis_change_examples():
    np.testing.assert_allclose(to_coupled(TwoSpinState.product([0, 1, 0, 0])).amplitudes, [H, 0, H, 0], atol=1e-15)
    np.testing.assert_allclose(to_product(coupled([1, 0, 0, 0])).amplitudes, [0, H, -H, 0], atol=1e-15)
    np.testing.assert_allclose(to_product(coupled([0, 0, 0, 1])).amplitudes, [1, 0, 0, 0], atol=1e-15)


def test_cg4_matches_inverse():
    # inverse by general matrix inversion, compared to the transpose
    assert np.max(np.abs(np.linalg.inv(CG4) - CG4.T)) < 1e-12
    assert np.isrealobj(CG4)
    assert np.max(np.abs(CG4 @ CG4.T - np.eye(4))) < 1e-12


def test_round_trip_on_basis_states():
    for k in range(4):
        e = np.eye(4)[k]
        assert np.max(np.abs(to_product(to_coupled(TwoSpinState.product(e))).amplitudes - e)) < 1e-12
        assert np.max(np.abs(to_coupled(to_product(coupled(e))).amplitudes - e)) < 1e-12


def test_round_trip_random(rng):
    for _ in range(100):
        s = random_two_spin_state(rng)
        assert np.max(np.abs(to_product(to_coupled(s)).amplitudes - s.amplitudes)) < 1e-12


def test_basis_tag_checked():
    s = in_state_from_angle(0.3)
    with pytest.raises(InputError):
        to_product(s)
    with pytest.raises(InputError):
        to_coupled(to_coupled(s))
    with pytest.raises(InputError):
        rotate(to_coupled(s), Rotation())
    with pytest.raises(InputError):
        TwoSpinState("product", [1, 0, 0, 0])


def test_magic_basis():
    kets = magic_basis()
    assert set(kets) == {"EPR+", "EPR-", "Bell+", "Bell-"}
    np.testing.assert_allclose(kets["EPR+"].amplitudes, [0, H, H, 0])
    np.testing.assert_allclose(to_coupled(kets["EPR+"]).amplitudes, [0, 0, 1, 0], atol=1e-15)
    np.testing.assert_allclose(to_coupled(kets["EPR-"]).amplitudes, [1, 0, 0, 0], atol=1e-15)
    # Bell+- = (|11> +- |1-1>)/sqrt2
    np.testing.assert_allclose(to_coupled(kets["Bell+"]).amplitudes, [0, H, 0, H], atol=1e-15)
    np.testing.assert_allclose(to_coupled(kets["Bell-"]).amplitudes, [0, -H, 0, H], atol=1e-15)
    gram = np.array([[np.vdot(a.amplitudes, b.amplitudes) for b in kets.values()] for a in kets.values()])
    assert np.max(np.abs(gram - np.eye(4))) < 1e-12
    for k in kets.values():
        assert entanglement_by_svd(k.amplitudes)[0] == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("kind", ["E", "B"])
@pytest.mark.parametrize("sign", [1, -1])
def test_phased_maximal_states(kind, sign):
    s = phased_maximal_state(kind, sign, phase=0.7)
    assert s.is_normalized()
    assert entanglement_by_svd(s.amplitudes)[0] == pytest.approx(1.0, abs=1e-12)
    # second form: e^{i p}/sqrt2 (e^{+-i pi/4} A+ + e^{-+i pi/4} A-); with the
    # relative sign written as +- the lower-sign identity does not hold
    k = magic_basis()
    plus, minus = (k["EPR+"], k["EPR-"]) if kind == "E" else (k["Bell+"], k["Bell-"])
    alt = np.exp(0.7j) / math.sqrt(2) * (np.exp(sign * 1j * math.pi / 4) * plus.amplitudes
                                         + np.exp(-sign * 1j * math.pi / 4) * minus.amplitudes)
    assert np.max(np.abs(alt - s.amplitudes)) < 1e-12


def test_rotate_identity_and_norm(rng):
    s = random_two_spin_state(rng)
    assert np.max(np.abs(rotate(s, Rotation.identity()).amplitudes - s.amplitudes)) < 1e-15
    for _ in range(50):
        r = Rotation(*rng.uniform(-7, 7, size=3))
        assert rotate(s, r).is_normalized()


def test_rotate_preserves_entanglement(rng):
    for _ in range(50):
        s = random_two_spin_state(rng)
        r = Rotation(*rng.uniform(-7, 7, size=3))
        before, sv0 = entanglement_by_svd(s.amplitudes)
        after, sv1 = entanglement_by_svd(rotate(s, r).amplitudes)
        assert abs(before - after) < 1e-10
        assert np.max(np.abs(sv0 - sv1)) < 1e-10


def test_rotation_intertwines_with_coupling(rng):
    for _ in range(50):
        s = random_two_spin_state(rng)
        r = Rotation(*rng.uniform(-7, 7, size=3))
        lhs = to_coupled(rotate(s, r)).amplitudes
        rhs = coupled_rotation(r) @ to_coupled(s).amplitudes
        assert np.max(np.abs(lhs - rhs)) < 1e-12


def test_amplitude_lookup():
    s = in_state_from_angle(math.pi / 4)
    assert s.amplitude("+-") == pytest.approx(H)
    assert to_coupled(s).amplitude("11") == pytest.approx(H)
    with pytest.raises(InputError):
        s.amplitude("00")


def test_random_single_spin_normalized(rng):
    for _ in range(10):
        assert abs(np.linalg.norm(random_single_spin(rng).amplitudes) - 1) < 1e-12
