"""Inner fluctuations, gauge transformations, the GWS finite triple and the torus dual action."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .numeric import as_matrix, kron
from .torus import TorusModel, mode_grid

HERM_TOL = 1e-12


def commutator(X, Y) -> np.ndarray:
    return X @ Y - Y @ X


@dataclass
class FluctuationForm:
    """omega = sum_j a_j [D, b_j], kept together with its presentation."""

    operator: np.ndarray
    presentation: list[tuple[np.ndarray, np.ndarray]] = field(default_factory=list)
    self_adjoint: bool = True

    def __post_init__(self):
        self.operator = as_matrix(self.operator)
        if self.self_adjoint:
            err = float(np.abs(self.operator - self.operator.conj().T).max()) if self.operator.size else 0.0
            if err > HERM_TOL:
                raise ValueError(f"one-form is not self-adjoint (|w - w*| = {err:.3g})")

    @classmethod
    def from_presentation(cls, D, pairs, self_adjoint: bool = True) -> "FluctuationForm":
        D = as_matrix(D)
        pairs = [(as_matrix(a), as_matrix(b)) for a, b in pairs]
        op = sum((a @ commutator(D, b) for a, b in pairs), np.zeros_like(D))
        return cls(op, pairs, self_adjoint)

    @classmethod
    def zero(cls, dim: int) -> "FluctuationForm":
        return cls(np.zeros((dim, dim), dtype=complex), [])

    def assemble(self, D) -> np.ndarray:
        D = as_matrix(D)
        return sum((a @ commutator(D, b) for a, b in self.presentation), np.zeros_like(D))


@dataclass
class GaugeElement:
    u: np.ndarray
    descriptor: str = "internal"
    tol: float = 1e-10

    def __post_init__(self):
        self.u = as_matrix(self.u)
        eye = np.eye(self.u.shape[0])
        err = max(np.abs(self.u @ self.u.conj().T - eye).max(), np.abs(self.u.conj().T @ self.u - eye).max())
        if err > self.tol:
            raise ValueError(f"gauge element is not unitary (error {err:.3g})")


def inner_fluctuation(D, omega: FluctuationForm) -> np.ndarray:
    D = as_matrix(D)
    if D.shape != omega.operator.shape:
        raise ValueError(f"shape mismatch {D.shape} vs {omega.operator.shape}")
    err = float(np.abs(omega.operator - omega.operator.conj().T).max())
    if err > HERM_TOL:
        raise ValueError("fluctuation is not Hermitian")
    return D + omega.operator


def gauge_transform_field(u: GaugeElement, omega: FluctuationForm, D) -> FluctuationForm:
    """omega -> u omega u* + u [D, u*], on the matrix and on the presentation."""
    D = as_matrix(D)
    U = u.u
    Us = U.conj().T
    op = U @ omega.operator @ Us + U @ commutator(D, Us)
    # u a [D, b] u* = (u a)[D, b u*] - (u a b)[D, u*]
    pres = []
    for a, b in omega.presentation:
        pres.append((U @ a, b @ Us))
        pres.append((-(U @ a @ b), Us))
    pres.append((U, Us))
    out = FluctuationForm(op, pres, self_adjoint=False)
    out.self_adjoint = omega.self_adjoint
    return out


def conjugation_residual(U, D, mask=None) -> float:
    """max entry of (u D u* - D - u[D,u*]) restricted to the columns in mask."""
    U = as_matrix(U)
    D = as_matrix(D)
    Us = U.conj().T
    X = U @ D @ Us - D - U @ commutator(D, Us)
    if mask is not None:
        X = X[:, mask]
    return float(np.abs(X).max()) if X.size else 0.0


# GWS finite triple -----------------------------------------------------------

def gws_T(z1: complex, z2: complex) -> np.ndarray:
    return np.array([[0, z1, z2], [np.conj(z1), 0, 0], [np.conj(z2), 0, 0]], dtype=complex)


def gws_rep(lam: complex, m) -> np.ndarray:
    out = np.zeros((3, 3), dtype=complex)
    out[0, 0] = lam
    out[1:, 1:] = as_matrix(m)
    return out


def gws_one_form(lam, m, lam_p, m_p, z1, z2) -> np.ndarray:
    """a [T, c] with a = (lam, m), c = (lam', m')."""
    a = gws_rep(lam, m)
    c = gws_rep(lam_p, m_p)
    return a @ commutator(gws_T(z1, z2), c)


def gws_higgs(lam, m, lam_p, m_p, z1, z2) -> tuple[complex, complex]:
    """Top row (phi1, phi2) of a[T, c] = lam ((z1, z2) m' - lam' (z1, z2))."""
    if np.shape(m) != (2, 2) or np.shape(m_p) != (2, 2):
        raise ValueError("m and m' must be 2x2")
    w = gws_one_form(lam, m, lam_p, m_p, z1, z2)
    return complex(w[0, 1]), complex(w[0, 2])


def is_block_off_diagonal(w, tol: float = 0.0) -> bool:
    w = as_matrix(w)
    return abs(w[0, 0]) <= tol and bool(np.all(np.abs(w[1:, 1:]) <= tol))


def gws_scalar_field(phi) -> np.ndarray:
    """Hermitian scalar field [[0, phi], [phi^*, 0]] in the 1+2 block structure."""
    phi = np.asarray(phi, dtype=complex)
    out = np.zeros((3, 3), dtype=complex)
    out[0, 1:] = phi
    out[1:, 0] = phi.conj()
    return out


def gws_transform_higgs(u1: complex, U2, phi) -> np.ndarray:
    """Defining-representation rule phi -> u1 phi U2^* for a constant unitary (u1, U2)."""
    return u1 * np.asarray(phi, dtype=complex) @ as_matrix(U2).conj().T


# torus dual action -----------------------------------------------------------

def torus_dual_action(n: int, theta: float, N: int, spinor: bool = False) -> GaugeElement:
    """Diagonal unitary exp(2 pi i n theta m) on the vertical mode m."""
    m, _ = mode_grid(N)
    g = np.diag(np.exp(2j * np.pi * n * theta * m))
    if spinor:
        g = kron(g, np.eye(2))
    return GaugeElement(g, descriptor=f"dual(n={n})")


def dual_action_residual(model: TorusModel, n: int) -> float:
    """Interior residual of Ad(g) L(U1) - exp(2 pi i n theta) L(U1)."""
    g = torus_dual_action(n, model.theta, model.N).u
    X = g @ model.LU1 @ g.conj().T - np.exp(2j * np.pi * n * model.theta) * model.LU1
    return float(np.abs(X[:, model.interior()]).max())


def normal_subgroup_witness(model: TorusModel, u: np.ndarray, n: int = 1) -> float:
    """Interior norm of [T, g u g*] for the extended element g; T the vertical number operator.

    For u homogeneous of vertical degree d the commutator is d g u g*, bounded by |d|.
    """
    g = torus_dual_action(n, model.theta, model.N).u
    m, _ = mode_grid(model.N)
    T = np.diag(m.astype(complex))
    C = commutator(T, g @ u @ g.conj().T)
    return float(np.linalg.norm(C[:, model.interior()], 2))
