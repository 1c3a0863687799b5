"""Line-bundle columns Psi_n over the two-sphere, the D0 calculus and the Hopf factorization.

Columns are kept unnormalised: entry k is the monomial a^(n-k) b^k (starred for n < 0)
together with the integer weight C(|n|, k), so no square roots enter.
Commutators with D0 live in the slot calculus of `star`: for n > 0 only the
sigma_- slot is populated, for n < 0 only sigma_+.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

from .star import (
    AlgebraMatrix,
    Elem,
    Phase,
    Tw,
    Zm,
    Zp,
    apply_derivation,
    slot_lmul,
)


@dataclass(frozen=True)
class IsometryColumn:
    n: int
    entries: tuple[Elem, ...]
    weights: tuple[int, ...]


def psi_column(n: int) -> IsometryColumn:
    m = abs(n)
    s = 1 if n >= 0 else -1
    entries = tuple(Elem.mono(0, s * (m - k), s * k) for k in range(m + 1))
    return IsometryColumn(n, entries, tuple(comb(m, k) for k in range(m + 1)))


def psi_gram(n: int) -> Elem:
    col = psi_column(n)
    out = Elem()
    for w, e in zip(col.weights, col.entries):
        out = out + (e.adjoint() * e).scale(w)
    return out


def _slot(n: int) -> str:
    return "minus" if n > 0 else "plus"


def _z(slot: str, u: Elem, table_id: int = 0) -> Elem:
    return apply_derivation("Zminus" if slot == "minus" else "Zplus", u, table_id)


def d0_commutator_column(n: int, table_id: int = 0) -> dict[str, list[Elem]]:
    """Slot components of [D0, Psi_n], entry by entry (weights not applied)."""
    if n == 0:
        raise ValueError("|n| >= 1 required")
    col = psi_column(n)
    out = {"plus": [Elem() for _ in col.entries], "minus": [Elem() for _ in col.entries]}
    for k, e in enumerate(col.entries):
        out["plus"][k] = _z("plus", e, table_id)
        out["minus"][k] = _z("minus", e, table_id)
    return out


def psi_d0_pairing(n: int, table_id: int = 0) -> dict[str, Elem]:
    """Psi_n^* [D0, Psi_n] in slot form; both slots vanish."""
    col = psi_column(n)
    cols = d0_commutator_column(n, table_id)
    out = {}
    for slot in ("plus", "minus"):
        s = Elem()
        for w, e, z in zip(col.weights, col.entries, cols[slot]):
            s = s + slot_lmul(e.adjoint(), z, slot).scale(w)
        out[slot] = s
    return out


def d0_gram(n: int, table_id: int = 0) -> AlgebraMatrix:
    """[D0, Psi_n]^* [D0, Psi_n] as a 2x2 matrix over the algebra.

    (sigma_- w)^* (sigma_- w) = w^* E11 w and E11 commutes with the twisted algebra,
    so the sigma_- slot lands in the (1,1) corner and sigma_+ in (2,2).
    """
    col = psi_column(n)
    cols = d0_commutator_column(n, table_id)
    corner = {}
    for slot in ("minus", "plus"):
        s = Elem()
        for w, z in zip(col.weights, cols[slot]):
            s = s + (z.adjoint() * z).scale(w)
        corner[slot] = s
    return AlgebraMatrix([[corner["minus"], Elem()], [Elem(), corner["plus"]]])


def projection(n: int) -> AlgebraMatrix:
    """p_n = Psi_hat W Psi_hat^*."""
    col = psi_column(n)
    rows = [[(ek * el.adjoint()).scale(wl) for el, wl in zip(col.entries, col.weights)] for ek in col.entries]
    return AlgebraMatrix(rows)


def projection_is_idempotent(n: int) -> bool:
    p = projection(n)
    return p @ p == p


# binomial identities ------------------------------------------------------------

def binomial_identity_check(nmax: int) -> list[tuple[str, int, int]]:
    """Return the list of (identity, n, k) violations; empty means all five hold."""
    if nmax < 2:
        raise ValueError("nmax >= 2 required")
    bad = []
    for n in range(1, nmax + 1):
        for k in range(1, n + 1):
            if k * comb(n, k) != n * comb(n - 1, k - 1):
                bad.append(("k C(n,k) = n C(n-1,k-1)", n, k))
            if (n - k) * comb(n, k) != n * comb(n - 1, k):
                bad.append(("(n-k) C(n,k) = n C(n-1,k)", n, k))
    for n in range(2, nmax + 1):
        for k in range(2, n + 1):
            if k * (k - 1) * comb(n, k) != n * (n - 1) * comb(n - 2, k - 2):
                bad.append(("k(k-1) C(n,k) = n(n-1) C(n-2,k-2)", n, k))
        for k in range(1, n):
            if k * (n - k) * comb(n, k) != n * (n - 1) * comb(n - 2, k - 1):
                bad.append(("k(n-k) C(n,k) = n(n-1) C(n-2,k-1)", n, k))
        for k in range(0, n - 1):
            if (n - k) * (n - k - 1) * comb(n, k) != n * (n - 1) * comb(n - 2, k):
                bad.append(("(n-k)(n-k-1) C(n,k) = n(n-1) C(n-2,k)", n, k))
    return bad


def _ab(i: int, k: int) -> Elem:
    """|a|^(2i) |b|^(2k) = x^i (1-x)^k; negative exponents only occur with zero coefficient."""
    x = Elem.mono(1, 0, 0)
    return (x ** i) * ((Elem.scalar(1) - x) ** k)


def aggregation_sums(n: int) -> tuple[Elem, Elem]:
    """The two groups of terms in the expansion of [D0,Psi_n]^*[D0,Psi_n]: (first pair, second pair).

    The first pair collects the linear-in-k pieces and should sum to 4n, the second the
    quadratic pieces and the cross term, which should cancel.
    """
    first = (_ab(1, n - 1) * n + _ab(n - 1, 1) * n).scale(4)
    for k in range(1, n):
        first = first + (_ab(n - k - 1, k + 1) * (n * comb(n - 1, k)) + _ab(n - k + 1, k - 1) * (n * comb(n - 1, k - 1))).scale(4)
    second = Elem()
    for k in range(0, n + 1):
        c1 = (n - k) ** 2 - (n - k)
        c2 = k * k - k
        if c1:
            second = second + _ab(n - k - 1, k + 1).scale(4 * comb(n, k) * c1)
        if c2:
            second = second + _ab(n - k + 1, k - 1).scale(4 * comb(n, k) * c2)
    for k in range(1, n):
        second = second + _ab(n - k, k).scale(-8 * k * (n - k) * comb(n, k))
    return first, second


def derivative_expression(n: int) -> Elem:
    """4 sum_k C(n,k) ((n-k)^2 |a|^2(n-k-1)|b|^2(k+1) + k^2 |a|^2(n-k+1)|b|^2(k-1) - 2k(n-k)|a|^2(n-k)|b|^2k)."""
    out = Elem()
    for k in range(n + 1):
        c = comb(n, k)
        if n - k:
            out = out + _ab(n - k - 1, k + 1).scale(4 * c * (n - k) ** 2)
        if k:
            out = out + _ab(n - k + 1, k - 1).scale(4 * c * k * k)
        if k and n - k:
            out = out + _ab(n - k, k).scale(-8 * c * k * (n - k))
    return out


# sections -------------------------------------------------------------------

@dataclass
class SpinorSection:
    plus: Elem
    minus: Elem
    base_weight: int

    def __post_init__(self):
        for comp, off in ((self.plus, 1), (self.minus, -1)):
            if not comp.is_zero() and comp.weights() != {self.base_weight + off}:
                raise ValueError(f"component weights {sorted(comp.weights())} != {self.base_weight + off}")

    def __eq__(self, other):
        return self.plus == other.plus and self.minus == other.minus


@dataclass
class OneFormSection:
    plus: Elem
    minus: Elem
    base_weight: int = field(default=0)

    def __post_init__(self):
        for comp, off in ((self.plus, 2), (self.minus, -2)):
            if not comp.is_zero() and comp.weights() != {self.base_weight + off}:
                raise ValueError(f"one-form component weights {sorted(comp.weights())} != {self.base_weight + off}")


def _check_weight(f: Elem, w: int):
    if not f.is_zero() and f.weights() != {w}:
        raise ValueError(f"expected weight {w}, got {sorted(f.weights())}")


def grassmann_apply(n: int, f: Elem) -> OneFormSection:
    """Grassmann connection p_n d on Psi_n f, pulled back through Psi_n^*.

    f has weight -n, so each entry of Psi_n f is a function on the base. The exterior
    derivative of the column is taken entrywise, projected with p_n and pulled back;
    the result is the pair of one-form coefficients of nabla_n f.
    """
    _check_weight(f, -n)
    col = psi_column(n)
    out = {}
    for slot in ("plus", "minus"):
        v = [_z(slot, e * f) for e in col.entries]
        pv = []
        for ek in col.entries:
            s = Elem()
            for el, wl, vl in zip(col.entries, col.weights, v):
                s = s + slot_lmul(ek * el.adjoint(), vl, slot).scale(wl)
            pv.append(s)
        pulled = Elem()
        for ek, wk, pvk in zip(col.entries, col.weights, pv):
            pulled = pulled + slot_lmul(ek.adjoint(), pvk, slot).scale(wk)
        out[slot] = pulled
    return OneFormSection(out["plus"], out["minus"], -n)


def connection_agreement_check(n: int, f: Elem) -> bool:
    g = grassmann_apply(n, f)
    return g.plus == Zp(f) and g.minus == Zm(f)


def dirac_direct(psi: SpinorSection) -> SpinorSection:
    """(iZ1 g1 + iZ2 g2 + iZ3 g3 + 1) with iZ1 the weight operator and iZ2 g2 + iZ3 g3 = Z+ s+ + Z- s-."""
    plus = Tw(psi.plus) + Zp(psi.minus) + psi.plus
    minus = -Tw(psi.minus) + Zm(psi.plus) + psi.minus
    return SpinorSection(plus, minus, psi.base_weight)


def vertical_term(n: int, psi: SpinorSection) -> SpinorSection:
    """T (x) Gamma0 read through the identification L_n (x) (L_1 + L_-1) = L_(n+1) + L_(n-1).

    The fibre weight n is traded for the total weight (n + 1 on the upper slot, n - 1 on the
    lower one) plus the grading, i.e. the operator (iZ1 + g1) g1 = iZ1 g1 + 1, with the total
    weight taken from the bookkeeping rather than recomputed from the normal form.
    """
    up = n + 1  # total weight of the upper slot
    lo = n - 1
    return SpinorSection(psi.plus.scale(up + 1), psi.minus.scale(-(lo - 1)), psi.base_weight)


def raw_vertical_shift(n: int) -> int:
    """Constant c with T (x) Gamma0 = iZ1 g1 + c on L_n (x) (L_1 + L_-1) (upper slot: n = (n+1) + c)."""
    return n - (n + 1)


def hopf_product_apply(f: Elem, s: SpinorSection) -> SpinorSection:
    """Product operator f (x) s -> T f (x) Gamma0 s + (nabla f) s + f (x) (D0 - 1/2) s.

    The connection is computed through the Grassmann route; D0 - 1/2 acts on the base
    spinor by Z+ s- (upper) and Z- s+ (lower); moving f past the sigma matrix of D0
    costs the q-twist of the slot calculus.
    """
    if s.base_weight != 0:
        raise ValueError("base spinor must be a section of L_1 + L_-1")
    if f.is_zero() or (s.plus.is_zero() and s.minus.is_zero()):
        n = f.weight() if not f.is_zero() else 0
        return SpinorSection(Elem(), Elem(), n)
    n = f.weight()
    nab = grassmann_apply(-n, f)
    horiz_plus = nab.plus * s.minus + slot_lmul(f, Zp(s.minus), "plus")
    horiz_minus = nab.minus * s.plus + slot_lmul(f, Zm(s.plus), "minus")
    psi = SpinorSection(f * s.plus, f * s.minus, n)
    vert = vertical_term(n, psi)
    return SpinorSection(vert.plus + horiz_plus, vert.minus + horiz_minus, n)


def monomials(max_degree: int) -> list[Elem]:
    """Normal-form monomials x^j a^p b^r with 2j + |p| + |r| <= max_degree."""
    out = []
    for j in range(max_degree // 2 + 1):
        rest = max_degree - 2 * j
        for p in range(-rest, rest + 1):
            for r in range(-(rest - abs(p)), rest - abs(p) + 1):
                out.append(Elem.mono(j, p, r))
    return out


@dataclass
class FactorizationReport:
    samples: int
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def factorization_samples(max_degree: int = 3, max_weight: int = 3):
    mons = monomials(max_degree)
    fs = [m for m in mons if abs(m.weight()) <= max_weight]
    sp = [Elem()] + [m for m in mons if m.weight() == 1]
    sm = [Elem()] + [m for m in mons if m.weight() == -1]
    for f in fs:
        for a in sp:
            for b in sm:
                yield f, SpinorSection(a, b, 0)


def factorization_check(samples=None) -> FactorizationReport:
    if samples is None:
        samples = factorization_samples()
    rep = FactorizationReport(0)
    for f, s in samples:
        rep.samples += 1
        lhs = hopf_product_apply(f, s)
        n = f.weight() if not f.is_zero() else 0
        rhs = dirac_direct(SpinorSection(f * s.plus, f * s.minus, n))
        if not (lhs.plus == rhs.plus and lhs.minus == rhs.minus):
            rep.failures.append((str(f), str(s.plus), str(s.minus), str(lhs.plus - rhs.plus), str(lhs.minus - rhs.minus)))
    return rep


__all__ = [
    "IsometryColumn", "psi_column", "psi_gram", "d0_commutator_column", "psi_d0_pairing", "d0_gram",
    "projection", "projection_is_idempotent", "binomial_identity_check", "aggregation_sums",
    "derivative_expression", "SpinorSection", "OneFormSection", "grassmann_apply",
    "connection_agreement_check", "dirac_direct", "hopf_product_apply", "factorization_check",
    "factorization_samples", "monomials", "raw_vertical_shift", "Phase",
]
