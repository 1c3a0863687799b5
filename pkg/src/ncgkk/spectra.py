"""Closed-form Dirac spectra with exact half-integer eigenvalues, and a summability fit."""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class SpectrumTable:
    entries: tuple[tuple[Fraction, int], ...]
    source: str = ""

    @classmethod
    def from_counter(cls, c: Counter, source: str = "") -> "SpectrumTable":
        return cls(tuple(sorted((Fraction(k), int(v)) for k, v in c.items() if v > 0)), source)

    def as_counter(self) -> Counter:
        return Counter({e: m for e, m in self.entries})

    @property
    def dim(self) -> int:
        return sum(m for _, m in self.entries)

    def to_csv(self) -> str:
        return "".join(f"{float(e):.12g},{m}\n" for e, m in self.entries)

    def to_json(self) -> str:
        return json.dumps([[_frac_str(e), m] for e, m in self.entries])


def _frac_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def s3_dirac_spectrum(kmax: int) -> SpectrumTable:
    if kmax < 0:
        raise ValueError("kmax >= 0 required")
    c = Counter()
    for k in range(kmax + 1):
        mult = (k + 1) * (k + 2)
        c[k + 3 * HALF] += mult
        c[-(k + 3 * HALF)] += mult
    return SpectrumTable.from_counter(c, f"s3(kmax={kmax})")


def d0_invariant_spectrum(nmax: int) -> SpectrumTable:
    if nmax < 0:
        raise ValueError("nmax >= 0 required")
    c = Counter()
    for n in range(nmax + 1):
        c[2 * n + 5 * HALF] += 2 * n + 2
        c[-(2 * n + 3 * HALF)] += 2 * n + 2
    return SpectrumTable.from_counter(c, f"d0(nmax={nmax})")


def s2_shifted_spectrum(lmax: int) -> SpectrumTable:
    """Spectrum of 2 Dirac_S2 + 1/2: 2l + 1/2 with multiplicity 2|l|, 0 < |l| <= lmax."""
    if lmax < 1:
        raise ValueError("lmax >= 1 required")
    c = Counter()
    for l in range(-lmax, lmax + 1):
        if l:
            c[2 * l + HALF] += 2 * abs(l)
    return SpectrumTable.from_counter(c, f"s2shifted(lmax={lmax})")


def tables_equal(t1: SpectrumTable, t2: SpectrumTable) -> bool:
    return t1.as_counter() == t2.as_counter()


def counting_function(table: SpectrumTable) -> tuple[np.ndarray, np.ndarray]:
    """(Lambda, N(Lambda)) at the distinct absolute eigenvalues."""
    c = Counter()
    for e, m in table.entries:
        c[abs(e)] += m
    lams = sorted(c)
    counts = np.cumsum([c[l] for l in lams])
    return np.array([float(l) for l in lams]), counts.astype(float)


class InsufficientData(ValueError):
    pass


def summability_exponent(table: SpectrumTable, window: float = 0.5) -> float:
    """Least-squares slope of log N(Lambda) vs log Lambda over the upper part of the log range."""
    lams, counts = counting_function(table)
    pos = lams > 0
    lams, counts = lams[pos], counts[pos]
    if len(lams) < 20:
        raise InsufficientData(f"need >= 20 distinct |eigenvalues|, got {len(lams)}")
    logl = np.log(lams)
    cut = logl[-1] - window * (logl[-1] - logl[0])
    sel = logl >= cut
    slope, _ = np.polyfit(logl[sel], np.log(counts[sel]), 1)
    return float(slope)


def constant_multiplicity_table(kmax: int) -> SpectrumTable:
    c = Counter()
    for k in range(1, kmax + 1):
        c[Fraction(k)] += 1
        c[Fraction(-k)] += 1
    return SpectrumTable.from_counter(c, f"constant(kmax={kmax})")
