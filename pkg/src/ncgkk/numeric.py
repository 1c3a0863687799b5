"""Dense complex linear algebra: Hermitian spectra, tensor products, spectra as multisets."""
from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components


class NotSquareError(ValueError):
    pass


class NotHermitianError(ValueError):
    pass


def as_matrix(M) -> np.ndarray:
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2:
        raise NotSquareError(f"expected a 2d array, got shape {M.shape}")
    return M


def adjoint(M) -> np.ndarray:
    return as_matrix(M).conj().T


def kron(A, B) -> np.ndarray:
    """(A⊗B)[(i,k),(j,l)] = A[i,j] B[k,l]."""
    A = as_matrix(A)
    B = as_matrix(B)
    out = A[:, None, :, None] * B[None, :, None, :]
    return out.reshape(A.shape[0] * B.shape[0], A.shape[1] * B.shape[1])


# Pauli-type Hermitian generators; any two distinct ones anticommute and each squares to 1.
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
SIGMA_PLUS = np.array([[0, 1], [0, 0]], dtype=complex)
SIGMA_MINUS = np.array([[0, 0], [1, 0]], dtype=complex)


def clifford_generators(kind: str = "s3") -> tuple[np.ndarray, ...]:
    """Hermitian generators with g_k g_l + g_l g_k = 2 delta_kl.

    "s3": (γ¹, γ², γ³) = (σ_z, σ_y, σ_x), so iZ₂γ² + iZ₃γ³ = [[0, Z₊], [Z₋, 0]].
    "torus": (γ¹, γ²) = (σ_y, σ_x), giving D = [[0, δ₁+iδ₂], [−δ₁+iδ₂, 0]].
    """
    if kind == "s3":
        return SIGMA_Z.copy(), SIGMA_Y.copy(), SIGMA_X.copy()
    if kind == "torus":
        return SIGMA_Y.copy(), SIGMA_X.copy()
    raise ValueError(f"unknown Clifford family {kind!r}")


@dataclass(frozen=True)
class Spectrum:
    entries: tuple[tuple[float, int], ...]
    tol: float = 0.0

    @property
    def dim(self) -> int:
        return sum(m for _, m in self.entries)

    def values(self) -> np.ndarray:
        return np.repeat([e for e, _ in self.entries], [m for _, m in self.entries])

    def to_csv(self) -> str:
        return "".join(f"{_fmt(e)},{m}\n" for e, m in self.entries)

    def to_json(self) -> str:
        return json.dumps([[float(_fmt(e)), m] for e, m in self.entries])


def _fmt(x: float) -> str:
    s = f"{x:.12g}"
    return "0" if s == "-0" else s


def merge_sorted(values, tol: float) -> Spectrum:
    """Group sorted values: a new cluster starts when the gap to the previous value exceeds tol."""
    vals = np.sort(np.asarray(values, dtype=float))
    entries = []
    start = 0
    for i in range(1, len(vals) + 1):
        if i == len(vals) or vals[i] - vals[i - 1] > tol:
            cluster = vals[start:i]
            entries.append((float(np.mean(cluster)), int(len(cluster))))
            start = i
    return Spectrum(tuple(entries), tol)


def jacobi_symmetric(S: np.ndarray, tol: float = 1e-14, max_sweeps: int = 60) -> np.ndarray:
    """Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations."""
    A = np.array(S, dtype=float)
    n = A.shape[0]
    if n == 1:
        return A.diagonal().copy()
    scale = max(np.abs(A).max(), 1.0)
    for _ in range(max_sweeps):
        off = np.sqrt(max(np.sum(A * A) - np.sum(A.diagonal() ** 2), 0.0))
        if off <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if abs(apq) <= 1e-300 or abs(apq) < 1e-3 * tol * scale:
                    continue
                theta = (A[q, q] - A[p, p]) / (2.0 * apq)
                t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1.0)) if theta != 0 else 1.0
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                colp = A[:, p].copy()
                colq = A[:, q]
                A[:, p] = c * colp - s * colq
                A[:, q] = s * colp + c * colq
                rowp = A[p, :].copy()
                rowq = A[q, :]
                A[p, :] = c * rowp - s * rowq
                A[q, :] = s * rowp + c * rowq
    return A.diagonal().copy()


def _blocks(M: np.ndarray) -> list[np.ndarray]:
    # Permutation to block-diagonal form from the sparsity graph; spectra of blocks union to the whole.
    pattern = csr_matrix(np.abs(M) > 0)
    ncomp, labels = connected_components(pattern, directed=False)
    return [np.flatnonzero(labels == c) for c in range(ncomp)]


def hermitian_eigenvalues_raw(M, method: str = "jacobi") -> np.ndarray:
    M = as_matrix(M)
    out = []
    for idx in _blocks(M):
        B = M[np.ix_(idx, idx)]
        if method == "lapack":
            out.append(np.linalg.eigvalsh(B))
            continue
        # real-symmetric embedding [[Re, -Im], [Im, Re]] doubles every eigenvalue
        R = np.block([[B.real, -B.imag], [B.imag, B.real]])
        w = np.sort(jacobi_symmetric(R))
        out.append(w[::2])
    return np.sort(np.concatenate(out)) if out else np.zeros(0)


def hermitian_eigenvalues(M, tol: float | None = None, method: str = "jacobi") -> Spectrum:
    M = as_matrix(M)
    if M.shape[0] != M.shape[1]:
        raise NotSquareError(f"matrix is {M.shape[0]}x{M.shape[1]}")
    scale = max(1.0, float(np.abs(M).max())) if M.size else 1.0
    if tol is None:
        tol = 1e-9 * scale
    herm_err = float(np.abs(M - M.conj().T).max()) if M.size else 0.0
    if herm_err > tol:
        raise NotHermitianError(f"|M - M*|_max = {herm_err:.3g} exceeds tol {tol:.3g}")
    M = 0.5 * (M + M.conj().T)
    return merge_sorted(hermitian_eigenvalues_raw(M, method), tol)


def spectrum_multiset_equal(S1: Spectrum, S2: Spectrum, tol: float) -> bool:
    """Multiplicity-preserving matching of eigenvalues within tol."""
    v1 = S1.values()
    v2 = S2.values()
    if len(v1) != len(v2):
        return False
    # sorted matching is optimal for 1d bottleneck matching
    return bool(np.all(np.abs(np.sort(v1) - np.sort(v2)) <= tol))


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Product of n random complex Householder reflections times a diagonal phase."""
    U = np.eye(n, dtype=complex)
    for _ in range(n):
        v = rng.normal(size=n) + 1j * rng.normal(size=n)
        v /= np.linalg.norm(v)
        U = U - 2.0 * np.outer(U @ v, v.conj())
    return U * np.exp(2j * np.pi * rng.random(n))[None, :]


def random_hermitian(n: int, rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
    X = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return scale * 0.5 * (X + X.conj().T)
