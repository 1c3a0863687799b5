"""Truncated Fourier models of the noncommutative torus and the circle.

Basis e_{m,n} (x) C^2 with |m|, |n| <= N, ordered (m, n, spin) row-major.
delta_j e_{m,n} = i m_j e_{m,n}; D = i delta_1 (x) g1 + i delta_2 (x) g2 with
(g1, g2) = (sigma_y, sigma_x), i.e. per mode [[0, i m - n], [-i m - n, 0]].

Shifts: U1 raises m, U2 lowers n (both truncated, zero-padded). The left twist of
an operator homogeneous of shift (d1, d2) in (m, n) multiplies it on the right by
lam^(d2 * m) with lam = exp(2 pi i theta); with U2 lowering n this gives
L(U1) L(U2) = lam L(U2) L(U1) and L(x) L(y) = lam^(m1 n2) L(xy) with the shift
bidegrees, both exactly.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .numeric import clifford_generators, kron


@dataclass(frozen=True)
class TruncatedOperator:
    matrix: np.ndarray
    box: int
    spinor_rank: int = 1
    margin: int = 0
    modes: int = 2

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


def mode_grid(N: int) -> tuple[np.ndarray, np.ndarray]:
    r = np.arange(-N, N + 1)
    m, n = np.meshgrid(r, r, indexing="ij")
    return m.ravel(), n.ravel()


def shift_operator(N: int, dm: int, dn: int) -> np.ndarray:
    """Scalar operator e_{m,n} -> e_{m+dm, n+dn}, zero outside the box."""
    m, n = mode_grid(N)
    size = (2 * N + 1) ** 2
    S = np.zeros((size, size), dtype=complex)
    tm, tn = m + dm, n + dn
    ok = (np.abs(tm) <= N) & (np.abs(tn) <= N)
    src = np.flatnonzero(ok)
    dst = (tm[ok] + N) * (2 * N + 1) + (tn[ok] + N)
    S[dst, src] = 1.0
    return S


def left_twist(T: np.ndarray, N: int, theta: float) -> np.ndarray:
    """L(T) = sum_d T_d lam^(d2 p1): each entry (m',n') <- (m,n) gets lam^((n'-n) m)."""
    m, n = mode_grid(N)
    d2 = n[:, None] - n[None, :]
    return T * np.exp(2j * np.pi * theta * d2 * m[None, :])


def interior_mask(N: int, margin: int) -> np.ndarray:
    m, n = mode_grid(N)
    return (np.abs(m) <= N - margin) & (np.abs(n) <= N - margin)


@dataclass
class TorusModel:
    N: int
    theta: float
    margin: int
    U1: np.ndarray = field(repr=False)
    U2: np.ndarray = field(repr=False)
    LU1: np.ndarray = field(repr=False)
    LU2: np.ndarray = field(repr=False)
    delta1: np.ndarray = field(repr=False)
    delta2: np.ndarray = field(repr=False)
    dirac: TruncatedOperator = field(repr=False)

    @property
    def lam(self) -> complex:
        return np.exp(2j * np.pi * self.theta)

    def interior(self) -> np.ndarray:
        return interior_mask(self.N, self.margin)

    def interior_spinor(self) -> np.ndarray:
        return np.repeat(self.interior(), 2)

    def spin(self, T: np.ndarray) -> np.ndarray:
        """Scalar operator acting diagonally on the spinor index."""
        return kron(T, np.eye(2))

    def monomial(self, a: int, b: int) -> np.ndarray:
        """Classical (untwisted) U1^a U2^b: shift (a, -b)."""
        return shift_operator(self.N, a, -b)

    def twisted_monomial(self, a: int, b: int) -> np.ndarray:
        return left_twist(self.monomial(a, b), self.N, self.theta)


def build_nc_torus(N: int, theta: float, margin: int = 0) -> TorusModel:
    if N < 1:
        raise ValueError("N >= 1 required")
    if not 0 <= margin <= N:
        raise ValueError("0 <= margin <= N required")
    m, n = mode_grid(N)
    d1 = np.diag(1j * m.astype(complex))
    d2 = np.diag(1j * n.astype(complex))
    g1, g2 = clifford_generators("torus")
    D = 1j * kron(d1, g1) + 1j * kron(d2, g2)
    U1 = shift_operator(N, 1, 0)
    U2 = shift_operator(N, 0, -1)
    return TorusModel(
        N, theta, margin, U1, U2,
        left_twist(U1, N, theta), left_twist(U2, N, theta),
        d1, d2, TruncatedOperator(D, N, 2, margin),
    )


def interior_residual(model: TorusModel, X: np.ndarray, spinor: bool = False) -> float:
    """max |X v| over interior basis vectors v (columns)."""
    mask = model.interior_spinor() if spinor else model.interior()
    cols = X[:, mask]
    return float(np.abs(cols).max()) if cols.size else 0.0


def commutation_residual(model: TorusModel) -> float:
    lam = model.lam
    X = model.LU1 @ model.LU2 - lam * model.LU2 @ model.LU1
    return interior_residual(model, X)


def star_phase(x: tuple[int, int], y: tuple[int, int]) -> int:
    """Exponent m1 n2 of x * y = lam^(m1 n2) xy, from shift bidegrees of U1^a U2^b = (a, -b)."""
    n2 = -x[1]
    m1 = y[0]
    return m1 * n2


def star_product_check(x: tuple[int, int], y: tuple[int, int], model: TorusModel, tol: float = 1e-12) -> bool:
    """x, y given as exponent pairs (a, b) of U1^a U2^b."""
    need = abs(x[0]) + abs(y[0]), abs(x[1]) + abs(y[1])
    if max(need) > model.margin:
        raise ValueError(f"degree {need} exceeds margin {model.margin}")
    Lx = model.twisted_monomial(*x)
    Ly = model.twisted_monomial(*y)
    xy = model.monomial(*x) @ model.monomial(*y)
    rhs = model.lam ** star_phase(x, y) * left_twist(xy, model.N, model.theta)
    return interior_residual(model, Lx @ Ly - rhs) <= tol


def invariant_part_torus(model: TorusModel) -> TruncatedOperator:
    """Restriction of D to the m = 0 modes: [[0, i delta_2], [i delta_2, 0]]."""
    m, _ = mode_grid(model.N)
    idx = np.flatnonzero(np.repeat(m == 0, 2))
    D0 = model.dirac.matrix[np.ix_(idx, idx)]
    return TruncatedOperator(D0, model.N, 2, model.margin, modes=1)


def build_circle(N: int) -> np.ndarray:
    """Circle Dirac operator e_n -> n e_n, |n| <= N."""
    return np.diag(np.arange(-N, N + 1).astype(complex))


def doubled(D: np.ndarray) -> np.ndarray:
    """[[0, D], [D, 0]] written in the interleaved (n, spin) ordering used by the torus model."""
    return kron(D, np.array([[0, 1], [1, 0]], dtype=complex))


def torus_product_operator(N: int) -> TruncatedOperator:
    """[[0, S (x) 1 - i 1 (x) T], [S (x) 1 + i 1 (x) T, 0]], S the vertical number operator, T the circle Dirac."""
    if N < 1:
        raise ValueError("N >= 1 required")
    m, n = mode_grid(N)
    S = np.diag(m.astype(complex))
    T = np.diag(n.astype(complex))
    P = np.array([[0, 1], [0, 0]], dtype=complex)
    M = np.array([[0, 0], [1, 0]], dtype=complex)
    op = kron(S - 1j * T, P) + kron(S + 1j * T, M)
    return TruncatedOperator(op, N, 2)
