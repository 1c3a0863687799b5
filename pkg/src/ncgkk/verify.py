"""Verification suites. Each suite returns a list of Check rows; a report sorts and aggregates them."""
from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from . import gauge, hopf, spectra, torus
from .config import VerifyConfig
from .numeric import hermitian_eigenvalues, random_unitary, spectrum_multiset_equal
from .star import ONE, Elem, register_table, ZMINUS_TABLE, ZPLUS_TABLE, Phase

SUITES = ("symbolic", "hopf", "torus", "spectra", "gauge")


@dataclass
class Check:
    id: str
    anchor: str
    status: str          # pass | fail | skip
    residual: object = 0  # float, or a witness expression on failure

    @classmethod
    def exact(cls, cid: str, anchor: str, got, want) -> "Check":
        if got == want:
            return cls(cid, anchor, "pass", 0)
        return cls(cid, anchor, "fail", f"got {got}, want {want}")

    @classmethod
    def within(cls, cid: str, anchor: str, residual: float, tol: float) -> "Check":
        return cls(cid, anchor, "pass" if residual <= tol else "fail", float(residual))


@dataclass
class VerificationReport:
    suite: str
    checks: list[Check]
    elapsed: float
    config: dict = field(default_factory=dict)

    def __post_init__(self):
        self.checks = sorted(self.checks, key=lambda c: c.id)
        ids = [c.id for c in self.checks]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate check ids")

    @property
    def status(self) -> str:
        return "fail" if any(c.status == "fail" for c in self.checks) else "pass"

    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.status == "fail"]

    def to_json(self) -> str:
        return json.dumps({
            "suite": self.suite,
            "status": self.status,
            "elapsed": round(self.elapsed, 3),
            "config": self.config,
            "checks": [asdict(c) for c in self.checks],
        }, indent=2, default=str)

    def to_text(self) -> str:
        w = max((len(c.id) for c in self.checks), default=10)
        lines = [f"{c.id:<{w}}  {c.status:<4}  {_res(c.residual):<12}  {c.anchor}" for c in self.checks]
        npass = sum(c.status == "pass" for c in self.checks)
        lines.append(f"suite {self.suite}: {self.status} ({npass}/{len(self.checks)} pass, {self.elapsed:.2f} s)")
        return "\n".join(lines)


def _res(r) -> str:
    return f"{r:.3g}" if isinstance(r, float) else str(r)


def corrupted_table() -> int:
    """Register a derivation table with a wrong coefficient on Z_-(a); used as a negative fixture."""
    table = dict(ZMINUS_TABLE)
    table.update(ZPLUS_TABLE)
    table[(0, 1, 0)] = Elem.mono(0, 0, -1, Phase.lam(1) * 3)
    return register_table(table)


# suites ---------------------------------------------------------------------

def suite_symbolic(cfg: VerifyConfig) -> list[Check]:
    out = []
    tid = cfg.table_id
    for n in range(-cfg.nmax, cfg.nmax + 1):
        out.append(Check.exact(f"psi_gram[{n:+03d}]", "Psi_n^* Psi_n = 1", str(hopf.psi_gram(n)), str(ONE)))
        if n == 0:
            continue
        pair = hopf.psi_d0_pairing(n, tid)
        bad = {k: str(v) for k, v in pair.items() if not v.is_zero()}
        out.append(Check(f"pairing[{n:+03d}]", "Psi_n^* [D0, Psi_n] = 0", "fail" if bad else "pass", bad or 0))
        g = hopf.d0_gram(n, tid)
        live = (0, 0) if n > 0 else (1, 1)
        want = [[Elem(), Elem()], [Elem(), Elem()]]
        want[live[0]][live[1]] = Elem.scalar(4 * abs(n))
        got = [[str(e) for e in row] for row in g.rows]
        ok = g.rows == want
        out.append(Check(f"d0_gram[{n:+03d}]", "[D0, Psi_n]^* [D0, Psi_n] = 4|n| in one slot", "pass" if ok else "fail", 0 if ok else got))
    bad = hopf.binomial_identity_check(cfg.binomial_nmax)
    out.append(Check("binomial", f"five binomial identities, n <= {cfg.binomial_nmax}", "fail" if bad else "pass", bad[:3] if bad else 0))
    for n in range(1, cfg.nmax + 1):
        first, second = hopf.aggregation_sums(n)
        out.append(Check.exact(f"sum_4n[{n:02d}]", "first group sums to 4n", str(first), str(Elem.scalar(4 * n))))
        out.append(Check.exact(f"sum_zero[{n:02d}]", "second group sums to 0", str(second), "0"))
        out.append(Check.exact(f"deriv[{n:02d}]", "expanded derivative expression equals 4n", str(hopf.derivative_expression(n)), str(Elem.scalar(4 * n))))
    for n in range(-min(cfg.nmax, 4), min(cfg.nmax, 4) + 1):
        ok = hopf.projection_is_idempotent(n)
        out.append(Check(f"proj_idem[{n:+03d}]", "p_n^2 = p_n", "pass" if ok else "fail", 0 if ok else "p_n^2 != p_n"))
    return out


def suite_hopf(cfg: VerifyConfig) -> list[Check]:
    out = []
    rep = hopf.factorization_check(hopf.factorization_samples(cfg.factor_degree, cfg.factor_weight))
    out.append(Check("factorization", f"product operator = direct Dirac on {rep.samples} samples",
                     "pass" if rep.ok else "fail", 0 if rep.ok else rep.failures[:3]))
    bad = []
    count = 0
    for f in hopf.monomials(cfg.factor_degree):
        w = f.weight()
        if w == 0:
            continue
        count += 1
        if not hopf.connection_agreement_check(-w, f):
            bad.append(str(f))
    out.append(Check("grassmann", f"Grassmann connection vs twisted Z on {count} monomials", "fail" if bad else "pass", bad[:3] or 0))
    return out


def suite_torus(cfg: VerifyConfig) -> list[Check]:
    out = []
    rng = np.random.default_rng(cfg.seed)
    model = torus.build_nc_torus(cfg.box, cfg.theta, cfg.margin)
    out.append(Check.within("commutation", "L(U1)L(U2) = lam L(U2)L(U1) on the interior", torus.commutation_residual(model), 1e-12))
    half = max(cfg.margin // 2, 0)
    fails = []
    for _ in range(cfg.star_pairs):
        x = tuple(int(v) for v in rng.integers(-half, half + 1, 2))
        y = tuple(int(v) for v in rng.integers(-half, half + 1, 2))
        if not torus.star_product_check(x, y, model):
            fails.append((x, y))
    out.append(Check("star_product", f"L(x)L(y) = L(x*y), {cfg.star_pairs} random pairs", "fail" if fails else "pass", fails or 0))
    tol = 1e-9
    s1 = hermitian_eigenvalues(model.dirac.matrix)
    s2 = hermitian_eigenvalues(torus.torus_product_operator(cfg.box).matrix)
    ok = spectrum_multiset_equal(s1, s2, tol)
    out.append(Check("product_spectrum", f"spec D = spec of the product operator, box {cfg.box}", "pass" if ok else "fail", 0 if ok else f"{s1.entries[:3]} vs {s2.entries[:3]}"))
    D0 = torus.invariant_part_torus(model).matrix
    res = float(np.abs(D0 - torus.doubled(-torus.build_circle(cfg.box))).max())
    out.append(Check.within("invariant_part", "D0 is the doubled circle operator", res, 0.0))
    return out


def suite_spectra(cfg: VerifyConfig) -> list[Check]:
    out = []
    bad = [n for n in range(cfg.spectra_nmax + 1)
           if not spectra.tables_equal(spectra.d0_invariant_spectrum(n), spectra.s2_shifted_spectrum(n + 1))]
    out.append(Check("equivalence", f"spec D0 = spec(2 Dirac_S2 + 1/2) for n <= {cfg.spectra_nmax}", "fail" if bad else "pass", bad[:3] or 0))
    e3 = spectra.summability_exponent(spectra.s3_dirac_spectrum(cfg.s3_kmax))
    e2 = spectra.summability_exponent(spectra.d0_invariant_spectrum(cfg.d0_nmax))
    out.append(Check.within("summability_s3", "counting exponent of S3 is 3", abs(e3 - 3.0), 0.15))
    out.append(Check.within("summability_d0", "counting exponent of D0 is 2", abs(e2 - 2.0), 0.1))
    return out


def gauge_composition_residual(pairs: int, seed: int, dim: int = 4) -> float:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(pairs):
        H = random_unitary(dim, rng)
        D = H + H.conj().T
        b = random_unitary(dim, rng)
        w = gauge.FluctuationForm.from_presentation(D, [(b.conj().T, b)], self_adjoint=False)
        w = gauge.FluctuationForm(w.operator + w.operator.conj().T, [], self_adjoint=True)
        u = gauge.GaugeElement(random_unitary(dim, rng))
        v = gauge.GaugeElement(random_unitary(dim, rng))
        lhs = gauge.gauge_transform_field(v, gauge.gauge_transform_field(u, w, D), D)
        rhs = gauge.gauge_transform_field(gauge.GaugeElement(v.u @ u.u), w, D)
        worst = max(worst, float(np.abs(lhs.operator - rhs.operator).max()))
    return worst


def gws_rule_residual(samples: int, seed: int) -> float:
    """Max deviation of the conjugated scalar field from the rule phi -> u1 phi U2^*."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(samples):
        z = rng.normal(size=2) + 1j * rng.normal(size=2)
        m_p = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        phi = np.array(gauge.gws_higgs(1.0, np.eye(2), rng.normal(), m_p, *z))
        u1 = np.exp(2j * np.pi * rng.random())
        U2 = random_unitary(2, rng)
        u = gauge.gws_rep(u1, U2)
        Phi = u @ gauge.gws_scalar_field(phi) @ u.conj().T
        worst = max(worst, float(np.abs(Phi[0, 1:] - gauge.gws_transform_higgs(u1, U2, phi)).max()))
    return worst


def gws_examples(z1: complex, z2: complex) -> list[tuple[str, tuple, tuple]]:
    I = np.eye(2)
    return [
        ("gws_ex_plain", gauge.gws_higgs(1, I, 0, I, z1, z2), (z1, z2)),
        ("gws_ex_identity", gauge.gws_higgs(1, I, 1, I, z1, z2), (0, 0)),
        ("gws_ex_scaled", gauge.gws_higgs(1, I, 0, np.diag([2, 3]), z1, z2), (2 * z1, 3 * z2)),
    ]


def suite_gauge(cfg: VerifyConfig) -> list[Check]:
    out = []
    model = torus.build_nc_torus(cfg.box, cfg.theta, cfg.margin)
    mask = model.interior_spinor()
    for name, U in (("U1", model.LU1), ("U2", model.LU2), ("U1U2", model.LU1 @ model.LU2)):
        r = gauge.conjugation_residual(model.spin(U), model.dirac.matrix, mask)
        out.append(Check.within(f"conjugation[{name}]", "u D u* = D + u[D, u*] on the interior", r, 1e-10))
    out.append(Check.within("composition", f"gauge action is a group action, {cfg.gauge_pairs} pairs",
                            gauge_composition_residual(cfg.gauge_pairs, cfg.seed), 1e-12))
    z1, z2 = 0.7 - 1.1j, -0.3 + 2.0j
    for cid, got, want in gws_examples(z1, z2):
        out.append(Check.exact(cid, "worked Higgs example", tuple(complex(g) for g in got), tuple(complex(w) for w in want)))
    rng = np.random.default_rng(cfg.seed)
    cplx = lambda *shape: rng.normal(size=shape) + 1j * rng.normal(size=shape)
    offdiag = all(gauge.is_block_off_diagonal(gauge.gws_one_form(
        cplx()[()], cplx(2, 2), cplx()[()], cplx(2, 2), cplx()[()], cplx()[()])) for _ in range(20))
    out.append(Check("gws_offdiag", "a[T, c] is block-off-diagonal", "pass" if offdiag else "fail", 0 if offdiag else "diagonal block"))
    out.append(Check.within("gws_rule", "phi -> u1 phi U2^*", gws_rule_residual(cfg.gauge_pairs, cfg.seed), 1e-12))
    out.append(Check.within("dual_action", "Ad(g) L(U1) = lam^n L(U1)", gauge.dual_action_residual(model, 1), 1e-12))
    w = gauge.normal_subgroup_witness(model, model.LU1 @ model.LU2)
    out.append(Check.within("normal_subgroup", "[T, g u g*] bounded by the vertical degree", abs(w - 1.0), 1e-12))
    return out


SUITE_FUNCS = {
    "symbolic": suite_symbolic,
    "hopf": suite_hopf,
    "torus": suite_torus,
    "spectra": suite_spectra,
    "gauge": suite_gauge,
}


def run_verify(suite: str, cfg: VerifyConfig) -> VerificationReport:
    if suite != "all" and suite not in SUITE_FUNCS:
        raise ValueError(f"unknown suite {suite!r}")
    names = SUITES if suite == "all" else (suite,)
    t0 = time.perf_counter()
    checks = []
    for name in names:
        rows = SUITE_FUNCS[name](cfg)
        if suite == "all":
            for c in rows:
                c.id = f"{name}.{c.id}"
        checks += rows
    return VerificationReport(suite, checks, time.perf_counter() - t0, asdict(cfg))
