"""Acceptance criteria, one printed pass/fail line each at the stated tolerance.

Run with pytest (lines are echoed in the terminal summary) or directly as a script.
"""
import time

import numpy as np
import pytest

from ncgkk import gauge, hopf, spectra, torus
from ncgkk.numeric import hermitian_eigenvalues, spectrum_multiset_equal
from ncgkk.star import ONE, Elem
from ncgkk.verify import gauge_composition_residual, gws_examples, gws_rule_residual

RESULTS: list[str] = []
SEED = 42


def record(num: int, ok: bool, text: str):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {num}: {text}"
    RESULTS.append(line)
    print(line)
    assert ok, line


def test_1_symbolic_identities():
    t0 = time.perf_counter()
    bad = []
    for n in range(-12, 13):
        if hopf.psi_gram(n) != ONE:
            bad.append(("gram", n))
        if n == 0:
            continue
        if any(not v.is_zero() for v in hopf.psi_d0_pairing(n).values()):
            bad.append(("pairing", n))
        g = hopf.d0_gram(n)
        live = (0, 0) if n > 0 else (1, 1)
        for i in range(2):
            for j in range(2):
                want = Elem.scalar(4 * abs(n)) if (i, j) == live else Elem()
                if g.rows[i][j] != want:
                    bad.append(("d0_gram", n))
    bad += hopf.binomial_identity_check(50)
    for n in range(1, 13):
        first, second = hopf.aggregation_sums(n)
        if first != Elem.scalar(4 * n) or not second.is_zero():
            bad.append(("aggregation", n))
    dt = time.perf_counter() - t0
    record(1, not bad and dt < 10, f"exact identities |n| <= 12, binomials n <= 50: {len(bad)} violations, {dt:.2f} s (< 10 s)")


def test_2_hopf_factorization():
    t0 = time.perf_counter()
    rep = hopf.factorization_check(hopf.factorization_samples(3, 3))
    dt = time.perf_counter() - t0
    record(2, rep.ok and dt < 30, f"product operator = direct operator on {rep.samples} samples, "
                                  f"{len(rep.failures)} mismatches, {dt:.2f} s (< 30 s)")


def test_3_spectral_equivalence():
    bad = [n for n in range(101) if not spectra.tables_equal(spectra.d0_invariant_spectrum(n), spectra.s2_shifted_spectrum(n + 1))]
    record(3, not bad, f"exact multiset equality for n <= 100: {len(bad)} mismatches")


def test_4_summability():
    t0 = time.perf_counter()
    e3 = spectra.summability_exponent(spectra.s3_dirac_spectrum(200))
    e2 = spectra.summability_exponent(spectra.d0_invariant_spectrum(400))
    dt = time.perf_counter() - t0
    ok = 2.85 <= e3 <= 3.15 and 1.9 <= e2 <= 2.1 and dt < 5
    record(4, ok, f"exponents {e3:.4f} in [2.85, 3.15], {e2:.4f} in [1.9, 2.1], {dt:.2f} s (< 5 s)")


def test_5_torus_factorization():
    t0 = time.perf_counter()
    bad = []
    t16 = 0.0
    for N in (4, 8, 16):
        prod = hermitian_eigenvalues(torus.torus_product_operator(N).matrix)
        for theta in (0.0, 0.25, 0.3):
            ts = time.perf_counter()
            s = hermitian_eigenvalues(torus.build_nc_torus(N, theta).dirac.matrix)
            if N == 16:
                t16 = max(t16, time.perf_counter() - ts)
            if not spectrum_multiset_equal(s, prod, 1e-9):
                bad.append((N, theta))
    dt = time.perf_counter() - t0
    record(5, not bad and t16 < 60, f"9 (N, theta) spectra equal within 1e-9: {len(bad)} mismatches, "
                                     f"N=16 worst {t16:.2f} s (< 60 s), total {dt:.2f} s")


def test_6_deformation_relations():
    model = torus.build_nc_torus(8, 0.3, 2)
    res = torus.commutation_residual(model)
    rng = np.random.default_rng(SEED)
    pairs = 0
    fails = 0
    while pairs < 20:
        x = tuple(int(v) for v in rng.integers(-2, 3, 2))
        y = tuple(int(v) for v in rng.integers(-2, 3, 2))
        if max(abs(x[0]) + abs(y[0]), abs(x[1]) + abs(y[1])) > model.margin:
            continue
        pairs += 1
        fails += not torus.star_product_check(x, y, model, tol=1e-12)
    record(6, res <= 1e-12 and fails == 0, f"commutation residual {res:.2e} (<= 1e-12), star product {pairs - fails}/{pairs} pairs")


def test_7_gauge_identities():
    model = torus.build_nc_torus(8, 0.3, 2)
    mask = model.interior_spinor()
    conj = max(gauge.conjugation_residual(model.spin(U), model.dirac.matrix, mask)
               for U in (model.LU1, model.LU2, model.LU1 @ model.LU2))
    comp = gauge_composition_residual(10, SEED)
    record(7, conj <= 1e-10 and comp <= 1e-12, f"conjugation residual {conj:.2e} (<= 1e-10), composition {comp:.2e} (<= 1e-12)")


def test_8_gws_structure():
    rng = np.random.default_rng(SEED)
    c = lambda *s: rng.normal(size=s) + 1j * rng.normal(size=s)
    offdiag = all(gauge.is_block_off_diagonal(gauge.gws_one_form(c()[()], c(2, 2), c()[()], c(2, 2), c()[()], c()[()]))
                  for _ in range(100))
    z1, z2 = 0.7 - 1.1j, -0.3 + 2.0j
    examples = all(tuple(complex(g) for g in got) == tuple(complex(w) for w in want) for _, got, want in gws_examples(z1, z2))
    rule = gws_rule_residual(10, SEED)
    record(8, offdiag and examples and rule <= 1e-12,
           f"block-off-diagonal {offdiag}, worked examples exact {examples}, U(1)xU(2) rule residual {rule:.2e} (<= 1e-12)")


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_"):
            try:
                fn()
            except AssertionError:
                pass
