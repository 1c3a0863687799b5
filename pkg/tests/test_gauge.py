import numpy as np
import pytest
from hypothesis import given, strategies as st

from ncgkk.gauge import (
    FluctuationForm, GaugeElement, conjugation_residual, dual_action_residual, gauge_transform_field,
    gws_higgs, gws_one_form, gws_rep, gws_scalar_field, gws_T, gws_transform_higgs, inner_fluctuation,
    is_block_off_diagonal, normal_subgroup_witness, torus_dual_action,
)
from ncgkk.numeric import hermitian_eigenvalues, random_hermitian, random_unitary, spectrum_multiset_equal
from ncgkk.torus import build_nc_torus

Z1, Z2 = 0.7 - 1.1j, -0.3 + 2.0j
I2 = np.eye(2)


def test_zero_fluctuation():
    D = random_hermitian(3, np.random.default_rng(0))
    assert np.array_equal(inner_fluctuation(D, FluctuationForm.zero(3)), D)


def test_fluctuation_checks():
    with pytest.raises(ValueError):
        FluctuationForm(np.array([[0, 1], [0, 0]]))
    with pytest.raises(ValueError):
        inner_fluctuation(np.eye(3), FluctuationForm.zero(2))


def test_non_unitary_rejected():
    with pytest.raises(ValueError):
        GaugeElement(2 * np.eye(2))


def test_identity_transform(rng):
    D = random_hermitian(4, rng)
    w = FluctuationForm(random_hermitian(4, rng))
    out = gauge_transform_field(GaugeElement(np.eye(4)), w, D)
    assert np.allclose(out.operator, w.operator)


def test_cocycle_cancels(rng):
    D = random_hermitian(4, rng)
    u = GaugeElement(random_unitary(4, rng))
    w = gauge_transform_field(u, FluctuationForm.zero(4), D)
    back = gauge_transform_field(GaugeElement(u.u.conj().T), w, D)
    assert np.abs(back.operator).max() < 1e-12


@given(st.integers(0, 10**6))
def test_group_action_and_hermiticity(seed):
    r = np.random.default_rng(seed)
    D = random_hermitian(4, r)
    w = FluctuationForm(random_hermitian(4, r))
    u, v = GaugeElement(random_unitary(4, r)), GaugeElement(random_unitary(4, r))
    lhs = gauge_transform_field(v, gauge_transform_field(u, w, D), D).operator
    rhs = gauge_transform_field(GaugeElement(v.u @ u.u), w, D).operator
    assert np.abs(lhs - rhs).max() < 1e-12
    assert np.abs(lhs - lhs.conj().T).max() < 1e-12
    # D + w transforms to u (D + w) u*
    assert np.allclose(D + gauge_transform_field(u, w, D).operator, u.u @ (D + w.operator) @ u.u.conj().T)


def test_presentation_route_agrees(rng):
    D = random_hermitian(4, rng)
    a, b = random_unitary(4, rng), random_unitary(4, rng)
    w = FluctuationForm.from_presentation(D, [(a, b)], self_adjoint=False)
    u = GaugeElement(random_unitary(4, rng))
    out = gauge_transform_field(u, w, D)
    assert np.allclose(out.assemble(D), out.operator)


def test_torus_conjugation():
    model = build_nc_torus(8, 0.3, 2)
    for U in (model.LU1, model.LU2, model.LU1 @ model.LU2):
        assert conjugation_residual(model.spin(U), model.dirac.matrix, model.interior_spinor()) <= 1e-10


def test_torus_fluctuated_spectrum():
    # D + u[D, u*] against u D u*, on the interior block
    model = build_nc_torus(6, 0.3, 2)
    u = model.spin(model.LU1)
    D = model.dirac.matrix
    Dw = D + u @ (D @ u.conj().T - u.conj().T @ D)
    idx = np.flatnonzero(model.interior_spinor())
    s1 = hermitian_eigenvalues((u @ D @ u.conj().T)[np.ix_(idx, idx)])
    s2 = hermitian_eigenvalues(Dw[np.ix_(idx, idx)])
    assert spectrum_multiset_equal(s1, s2, 1e-9)


def test_gws_examples():
    assert np.allclose(gws_higgs(1, I2, 0, I2, Z1, Z2), (Z1, Z2), atol=0)
    assert gws_higgs(1, I2, 1, I2, Z1, Z2) == (0, 0)
    assert np.allclose(gws_higgs(1, I2, 0, np.diag([2, 3]), Z1, Z2), (2 * Z1, 3 * Z2), atol=0)


def test_gws_shape_error():
    with pytest.raises(ValueError):
        gws_higgs(1, np.eye(3), 0, I2, Z1, Z2)


def test_gws_fluctuation_rescales_row():
    # a = diag(0, I2), c = diag(1, 0): a[T, c] keeps only the lower-left block of T,
    # so w = a[T, c] + its adjoint equals T and D_T + w doubles the (z1, z2) row
    T = gws_T(Z1, Z2)
    w = gws_one_form(0, I2, 1, np.zeros((2, 2)), Z1, Z2)
    assert np.allclose(w, np.tril(T))
    Dw = inner_fluctuation(T, FluctuationForm(w + w.conj().T))
    assert np.allclose(Dw[0, 1:], 2 * np.array([Z1, Z2]))


@given(st.integers(0, 10**6))
def test_gws_block_off_diagonal(seed):
    r = np.random.default_rng(seed)
    c = lambda *s: r.normal(size=s) + 1j * r.normal(size=s)
    assert is_block_off_diagonal(gws_one_form(c()[()], c(2, 2), c()[()], c(2, 2), c()[()], c()[()]))


@given(st.integers(0, 10**6))
def test_gws_defining_rule(seed):
    r = np.random.default_rng(seed)
    phi = r.normal(size=2) + 1j * r.normal(size=2)
    u1 = np.exp(2j * np.pi * r.random())
    U2 = random_unitary(2, r)
    u = gws_rep(u1, U2)
    Phi = u @ gws_scalar_field(phi) @ u.conj().T
    assert np.abs(Phi[0, 1:] - gws_transform_higgs(u1, U2, phi)).max() < 1e-12
    assert is_block_off_diagonal(Phi, 1e-14)


def test_dual_action():
    assert np.array_equal(torus_dual_action(0, 0.3, 3).u, np.eye(49))
    model = build_nc_torus(6, 0.3, 2)
    for n in (1, 2, -3):
        assert dual_action_residual(model, n) <= 1e-12
    g = torus_dual_action(1, 0.3, 6).u
    assert np.allclose(np.abs(np.diag(g)), 1)
    # L(U2) does not change the vertical mode, so it is fixed
    assert np.allclose(g @ model.LU2 @ g.conj().T, model.LU2)


def test_normal_subgroup_witness():
    model = build_nc_torus(6, 0.3, 2)
    assert abs(normal_subgroup_witness(model, model.LU1) - 1) < 1e-12
    assert normal_subgroup_witness(model, model.LU2) < 1e-12
    assert abs(normal_subgroup_witness(model, model.LU1 @ model.LU1) - 2) < 1e-12
