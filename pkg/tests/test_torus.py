import numpy as np
import pytest
from hypothesis import given, strategies as st

from ncgkk.numeric import hermitian_eigenvalues, spectrum_multiset_equal
from ncgkk.torus import (
    build_circle, build_nc_torus, commutation_residual, doubled, interior_mask, invariant_part_torus,
    left_twist, mode_grid, shift_operator, star_phase, star_product_check, torus_product_operator,
)


def test_mode_grid_order():
    m, n = mode_grid(1)
    assert list(zip(m, n))[:3] == [(-1, -1), (-1, 0), (-1, 1)]


def test_shift_truncation():
    S = shift_operator(2, 1, 0)
    assert S.sum() == 4 * 5  # the top row of m-values has nowhere to go


def test_dirac_per_mode():
    model = build_nc_torus(2, 0.3)
    m, n = mode_grid(2)
    k = 7
    block = model.dirac.matrix[2 * k:2 * k + 2, 2 * k:2 * k + 2]
    want = np.array([[0, 1j * m[k] - n[k]], [-1j * m[k] - n[k], 0]])
    assert np.allclose(block, want)


def test_dirac_isospectral():
    # twisting the algebra does not touch D
    assert np.array_equal(build_nc_torus(3, 0.0).dirac.matrix, build_nc_torus(3, 0.3).dirac.matrix)


@pytest.mark.parametrize("theta", [0.0, 0.25, 0.3, 0.123])
def test_commutation(theta):
    assert commutation_residual(build_nc_torus(8, theta, 2)) <= 1e-12


def test_commutation_sign():
    # the conjugate phase must not work
    model = build_nc_torus(3, 0.3, 1)
    X = model.LU1 @ model.LU2 - np.conj(model.lam) * model.LU2 @ model.LU1
    assert np.abs(X[:, model.interior()]).max() > 1e-3


def test_theta_zero_is_classical():
    model = build_nc_torus(3, 0.0)
    assert np.allclose(model.LU1, model.U1) and np.allclose(model.LU2, model.U2)
    assert np.allclose(model.U1 @ model.U2, model.U2 @ model.U1)


def test_unitary_on_interior():
    model = build_nc_torus(5, 0.3, 1)
    mask = model.interior()
    for U in (model.LU1, model.LU2):
        assert np.allclose((U.conj().T @ U)[:, mask][mask], np.eye(mask.sum()))


def test_star_phase_by_hand():
    # L(U1) L(U2) = L(U1 * U2) with U1 U2 = shift (1, -1): phase lam^(1 * -0)... read off directly
    model = build_nc_torus(6, 0.3, 2)
    assert star_product_check((1, 0), (0, 1), model)
    assert star_product_check((0, 1), (1, 0), model)
    assert star_phase((0, 1), (1, 0)) == -1


@given(st.tuples(st.integers(-2, 2), st.integers(-2, 2)), st.tuples(st.integers(-2, 2), st.integers(-2, 2)),
       st.sampled_from([0.0, 0.25, 0.3, 0.71]))
def test_star_product(x, y, theta):
    model = build_nc_torus(7, theta, 4)
    assert star_product_check(x, y, model)


def test_star_margin_guard():
    with pytest.raises(ValueError):
        star_product_check((2, 0), (1, 0), build_nc_torus(4, 0.3, 2))


def test_build_errors():
    with pytest.raises(ValueError):
        build_nc_torus(0, 0.1)
    with pytest.raises(ValueError):
        build_nc_torus(2, 0.1, 3)


def test_box1_spectrum():
    s = hermitian_eigenvalues(build_nc_torus(1, 0.0).dirac.matrix)
    assert len(s.entries) == 5 and s.dim == 18


def test_spectrum_closed_form():
    # per mode the eigenvalues are +-|m + i n|
    N = 3
    m, n = mode_grid(N)
    r = np.hypot(m, n)
    want = np.sort(np.concatenate([r, -r]))
    got = hermitian_eigenvalues(build_nc_torus(N, 0.3).dirac.matrix).values()
    assert np.allclose(got, want, atol=1e-10)


@pytest.mark.parametrize("N", [4, 8])
@pytest.mark.parametrize("theta", [0.0, 0.25, 0.3])
def test_product_spectrum(N, theta):
    s1 = hermitian_eigenvalues(build_nc_torus(N, theta).dirac.matrix)
    s2 = hermitian_eigenvalues(torus_product_operator(N).matrix)
    assert spectrum_multiset_equal(s1, s2, 1e-9)


def test_invariant_part_is_doubled_circle():
    model = build_nc_torus(4, 0.3)
    D0 = invariant_part_torus(model).matrix
    C = build_circle(4)
    assert np.array_equal(D0, doubled(-C))
    # the sign is a unitary convention: spectra agree
    assert spectrum_multiset_equal(hermitian_eigenvalues(D0), hermitian_eigenvalues(doubled(C)), 1e-12)


def test_interior_mask_size():
    assert interior_mask(5, 2).sum() == 7 * 7


def test_left_twist_preserves_diagonal():
    D = np.diag(np.arange(9.0))
    assert np.array_equal(left_twist(D.astype(complex), 1, 0.37), D)
