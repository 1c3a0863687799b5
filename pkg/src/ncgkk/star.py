"""Exact polynomial *-algebra of the theta-deformed three-sphere.

Generators a, b with ab = q ba, ab* = q^-1 b*a, a and b normal, a*a + b*b = 1.
Coefficients are Laurent polynomials in a formal unimodular lam with q = lam^2,
over the Gaussian rationals. Elements are stored in the normal form

    sum  coeff * x^j * a^p * b^r,       x = a*a central,

where a^p means (a*)^(-p) for p < 0 and likewise for b. b*b is rewritten as 1 - x.

The derivations Z+ and Z- are the commutators with the horizontal Dirac operator,
read off in "slot" form: [D0, u] = sigma_- Z-(u) + sigma_+ Z+(u) with the sigma
matrix written to the left. Moving an element u left past sigma_-+ costs q^(+-deg2 u),
where deg2(a) = deg2(b*) = 1 and deg2(b) = deg2(a*) = -1; hence the twisted Leibniz rule

    Z-(uv) = Z-(u) v + q^deg2(u) u Z-(v),     Z+(uv) = Z+(u) v + q^-deg2(u) u Z+(v).

At lam = 1 everything reduces to the classical vector fields on SU(2).
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Union

Number = Union[int, Fraction]

_ZERO = Fraction(0)


def _gmul(x, y):
    return (x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0])


class Phase:
    """Laurent polynomial in lam with Gaussian rational coefficients."""

    __slots__ = ("c",)

    def __init__(self, c=None):
        self.c: dict[int, tuple[Fraction, Fraction]] = {}
        if c:
            for k, (re_, im_) in c.items():
                if re_ or im_:
                    self.c[k] = (Fraction(re_), Fraction(im_))

    @classmethod
    def const(cls, re_: Number = 1, im_: Number = 0) -> "Phase":
        return cls({0: (re_, im_)})

    @classmethod
    def lam(cls, k: int = 1) -> "Phase":
        return cls({k: (1, 0)})

    @classmethod
    def q(cls, k: int = 1) -> "Phase":
        return cls({2 * k: (1, 0)})

    @classmethod
    def coerce(cls, v) -> "Phase":
        if isinstance(v, Phase):
            return v
        if isinstance(v, complex):
            return cls.const(Fraction(v.real), Fraction(v.imag))
        return cls.const(Fraction(v))

    def is_zero(self) -> bool:
        return not self.c

    def __add__(self, other):
        other = Phase.coerce(other)
        out = dict(self.c)
        for k, v in other.c.items():
            if k in out:
                w = out[k]
                s = (w[0] + v[0], w[1] + v[1])
                if s[0] or s[1]:
                    out[k] = s
                else:
                    del out[k]
            else:
                out[k] = v
        p = Phase()
        p.c = out
        return p

    __radd__ = __add__

    def __neg__(self):
        p = Phase()
        p.c = {k: (-v[0], -v[1]) for k, v in self.c.items()}
        return p

    def __sub__(self, other):
        return self + (-Phase.coerce(other))

    def __mul__(self, other):
        other = Phase.coerce(other)
        out: dict[int, tuple[Fraction, Fraction]] = {}
        for k1, v1 in self.c.items():
            for k2, v2 in other.c.items():
                pr = _gmul(v1, v2)
                k = k1 + k2
                if k in out:
                    w = out[k]
                    out[k] = (w[0] + pr[0], w[1] + pr[1])
                else:
                    out[k] = pr
        p = Phase()
        p.c = {k: v for k, v in out.items() if v[0] or v[1]}
        return p

    __rmul__ = __mul__

    def conj(self) -> "Phase":
        """lam -> lam^-1, i -> -i."""
        p = Phase()
        p.c = {-k: (v[0], -v[1]) for k, v in self.c.items()}
        return p

    def evaluate(self, lam: complex) -> complex:
        return sum(complex(float(v[0]), float(v[1])) * lam ** k for k, v in self.c.items())

    def at_one(self) -> "Phase":
        re_ = sum((v[0] for v in self.c.values()), _ZERO)
        im_ = sum((v[1] for v in self.c.values()), _ZERO)
        return Phase.const(re_, im_)

    def __eq__(self, other):
        try:
            other = Phase.coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.c == other.c

    def __hash__(self):
        return hash(frozenset(self.c.items()))

    def __repr__(self):
        return f"Phase({self})"

    def __str__(self):
        if not self.c:
            return "0"
        parts = []
        for k in sorted(self.c):
            coeff = _gauss_str(self.c[k])
            parts.append(coeff if k == 0 else f"{coeff}*lam^{k}")
        return parts[0] if len(parts) == 1 else "(" + " + ".join(parts) + ")"


def _gauss_str(v) -> str:
    re_, im_ = v
    if not im_:
        return str(re_)
    if not re_:
        return f"{im_}i"
    sign = "+" if im_ > 0 else "-"
    return f"({re_}{sign}{abs(im_)}i)"


ONE_PHASE = Phase.const(1)

Key = tuple[int, int, int]


def _signed_pow_product(p1: int, p2: int) -> tuple[int, int]:
    """c^p1 c^p2 for a normal generator c: returns (number of c*c factors absorbed, exponent)."""
    if p1 == 0 or p2 == 0 or (p1 > 0) == (p2 > 0):
        return 0, p1 + p2
    return min(abs(p1), abs(p2)), p1 + p2


@lru_cache(maxsize=None)
def _key_product(k1: Key, k2: Key) -> tuple[tuple[Key, int, int], ...]:
    """Normal form of (x^j1 a^p1 b^r1)(x^j2 a^p2 b^r2) as ((key, q-exponent, integer coeff), ...)."""
    j1, p1, r1 = k1
    j2, p2, r2 = k2
    # b^r1 a^p2 = q^(-r1 p2) a^p2 b^r1
    qexp = -r1 * p2
    xa, p = _signed_pow_product(p1, p2)
    mb, r = _signed_pow_product(r1, r2)
    j = j1 + j2 + xa
    # (b*b)^mb = (1 - x)^mb
    return tuple(((j + i, p, r), qexp, comb(mb, i) * (-1) ** i) for i in range(mb + 1))


class Elem:
    """Element of the S3_theta polynomial algebra in normal form."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms: dict[Key, Phase] = {}
        if terms:
            for k, v in terms.items():
                v = Phase.coerce(v)
                if not v.is_zero():
                    self.terms[tuple(k)] = v

    # constructors
    @classmethod
    def mono(cls, j: int = 0, p: int = 0, r: int = 0, coeff=1) -> "Elem":
        if j < 0:
            raise ValueError("x-power must be nonnegative")
        return cls({(j, p, r): Phase.coerce(coeff)})

    @classmethod
    def scalar(cls, c) -> "Elem":
        return cls.mono(0, 0, 0, c)

    def copy(self) -> "Elem":
        e = Elem()
        e.terms = dict(self.terms)
        return e

    # arithmetic
    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        other = _coerce_elem(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            s = out[k] + v if k in out else v
            if s.is_zero():
                out.pop(k, None)
            else:
                out[k] = s
        e = Elem()
        e.terms = out
        return e

    __radd__ = __add__

    def __neg__(self):
        e = Elem()
        e.terms = {k: -v for k, v in self.terms.items()}
        return e

    def __sub__(self, other):
        return self + (-_coerce_elem(other))

    def __rsub__(self, other):
        return _coerce_elem(other) - self

    def scale(self, c) -> "Elem":
        c = Phase.coerce(c)
        e = Elem()
        e.terms = {k: v * c for k, v in self.terms.items()}
        e.terms = {k: v for k, v in e.terms.items() if not v.is_zero()}
        return e

    def __mul__(self, other):
        if not isinstance(other, Elem):
            return self.scale(other)
        return multiply(self, other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int):
        out = Elem.scalar(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        try:
            other = _coerce_elem(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # structure
    def adjoint(self) -> "Elem":
        out = Elem()
        for (j, p, r), c in self.terms.items():
            # (x^j a^p b^r)* = b^-r a^-p x^j
            t = multiply(Elem.mono(0, 0, -r), Elem.mono(j, -p, 0))
            out = out + t.scale(c.conj())
        return out

    def weights(self) -> set[int]:
        return {p + r for (_, p, r) in self.terms}

    def weight(self) -> int:
        w = self.weights()
        if len(w) != 1:
            raise ValueError(f"element is not homogeneous (weights {sorted(w)})")
        return w.pop()

    def deg2s(self) -> set[int]:
        return {p - r for (_, p, r) in self.terms}

    def deg2(self) -> int:
        d = self.deg2s()
        if len(d) != 1:
            raise ValueError(f"element is not homogeneous in the second degree ({sorted(d)})")
        return d.pop()

    def homogeneous_parts(self) -> dict[int, "Elem"]:
        parts: dict[int, Elem] = {}
        for k, v in self.terms.items():
            parts.setdefault(k[1] + k[2], Elem()).terms[k] = v
        return parts

    def at_one(self) -> "Elem":
        """Classical specialisation lam = 1."""
        out = Elem()
        for k, v in self.terms.items():
            out = out + Elem({k: v.at_one()})
        return out

    def __repr__(self):
        return f"Elem({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{self.terms[k]} * x^{k[0]} * a^{k[1]} * b^{k[2]}" for k in sorted(self.terms))


def _coerce_elem(v) -> Elem:
    if isinstance(v, Elem):
        return v
    return Elem.scalar(v)


_TERM_RE = re.compile(r"^\s*(.+?)\s*\*\s*x\^(-?\d+)\s*\*\s*a\^(-?\d+)\s*\*\s*b\^(-?\d+)\s*$")


def parse_elem(text: str) -> Elem:
    """Inverse of str(Elem) for terms whose coefficient is a rational or a single rational*lam^k."""
    text = text.strip()
    if text == "0":
        return Elem()
    out = Elem()
    for chunk in _split_terms(text):
        m = _TERM_RE.match(chunk)
        if not m:
            raise ValueError(f"cannot parse term {chunk!r}")
        out = out + Elem.mono(int(m.group(2)), int(m.group(3)), int(m.group(4)), _parse_phase(m.group(1)))
    return out


def _split_terms(text: str) -> list[str]:
    parts, depth, cur = [], 0, ""
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if depth == 0 and text.startswith(" + ", i):
            parts.append(cur)
            cur = ""
            i += 3
            continue
        cur += ch
        i += 1
    parts.append(cur)
    return parts


def _parse_phase(s: str) -> Phase:
    s = s.strip()
    if s.startswith("(") and s.endswith(")") and " + " in s:
        out = Phase()
        for part in _split_terms(s[1:-1]):
            out = out + _parse_phase(part)
        return out
    k = 0
    if "*lam^" in s:
        s, ks = s.split("*lam^")
        k = int(ks)
    s = s.strip("()")
    if s.endswith("i"):
        m = re.match(r"^(-?[\d/]+)([+-][\d/]+)i$", s)
        if m:
            return Phase({k: (Fraction(m.group(1)), Fraction(m.group(2)))})
        return Phase({k: (0, Fraction(s[:-1]))})
    return Phase({k: (Fraction(s), 0)})


def multiply(u: Elem, v: Elem) -> Elem:
    out: dict[Key, Phase] = {}
    for k1, c1 in u.terms.items():
        for k2, c2 in v.terms.items():
            c = c1 * c2
            for key, qexp, n in _key_product(k1, k2):
                t = c * Phase.q(qexp) * n if qexp else c * n
                out[key] = out[key] + t if key in out else t
    e = Elem()
    e.terms = {k: v for k, v in out.items() if not v.is_zero()}
    return e


# generators
ONE = Elem.scalar(1)
A = Elem.mono(0, 1, 0)
AS = Elem.mono(0, -1, 0)
B = Elem.mono(0, 0, 1)
BS = Elem.mono(0, 0, -1)
X = Elem.mono(1, 0, 0)

LETTERS = {"a": ("a", 1), "A": ("a", -1), "b": ("b", 1), "B": ("b", -1)}


def _tokens(word) -> list[str]:
    if isinstance(word, str):
        toks = re.findall(r"[ab]\*?", word.replace(" ", "").replace("·", ""))
        return ["A" if t == "a*" else "B" if t == "b*" else t for t in toks]
    return list(word)


def normalize(word) -> Elem:
    """Rewrite a word in a, a*, b, b* into normal form by adjacent swaps.

    Accepts "a b* a" style strings or sequences over {"a", "A", "b", "B"} (capitals starred).
    The rule used for a b-letter followed by an a-letter is b^e a^d = q^(-e d) a^d b^e,
    which packages the four defining commutation relations.
    """
    letters = [LETTERS[t] for t in _tokens(word)]
    qexp = 0
    changed = True
    while changed:
        changed = False
        for i in range(len(letters) - 1):
            if letters[i][0] == "b" and letters[i + 1][0] == "a":
                qexp -= letters[i][1] * letters[i + 1][1]
                letters[i], letters[i + 1] = letters[i + 1], letters[i]
                changed = True
    na = sum(1 for g, s in letters if g == "a" and s > 0)
    nas = sum(1 for g, s in letters if g == "a" and s < 0)
    nb = sum(1 for g, s in letters if g == "b" and s > 0)
    nbs = sum(1 for g, s in letters if g == "b" and s < 0)
    # a and a* commute (normality): a^na (a*)^nas = x^min a^(na-nas); same for b with b*b = 1 - x
    j = min(na, nas)
    m = min(nb, nbs)
    out = Elem()
    for i in range(m + 1):
        out = out + Elem.mono(j + i, na - nas, nb - nbs, comb(m, i) * (-1) ** i)
    return out.scale(Phase.q(qexp))


# derivations ---------------------------------------------------------------

ZMINUS_TABLE = {
    (0, 1, 0): Elem.mono(0, 0, -1, Phase.lam(1) * 2),
    (0, 0, 1): Elem.mono(0, -1, 0, Phase.lam(-1) * -2),
}
ZPLUS_TABLE = {
    (0, -1, 0): Elem.mono(0, 0, 1, Phase.lam(1) * -2),
    (0, 0, -1): Elem.mono(0, 1, 0, Phase.lam(-1) * 2),
}


def _factors(key: Key) -> list[Key]:
    j, p, r = key
    out: list[Key] = []
    out += [(0, -1, 0), (0, 1, 0)] * j  # x = a* a
    out += [(0, 1 if p > 0 else -1, 0)] * abs(p)
    out += [(0, 0, 1 if r > 0 else -1)] * abs(r)
    return out


@lru_cache(maxsize=None)
def _z_key(key: Key, sign: int, table_id: int) -> Elem:
    table = ZMINUS_TABLE if sign > 0 else ZPLUS_TABLE
    if table_id:
        table = _CUSTOM_TABLES[table_id]
    facs = _factors(key)
    out = Elem()
    prefix = Elem.scalar(1)
    prefix_deg2 = 0
    for i, f in enumerate(facs):
        zf = table.get(f)
        if zf is not None:
            suffix = Elem.scalar(1)
            for g in facs[i + 1:]:
                suffix = suffix * Elem({g: ONE_PHASE})
            term = prefix * zf * suffix
            out = out + term.scale(Phase.q(sign * prefix_deg2))
        prefix = prefix * Elem({f: ONE_PHASE})
        prefix_deg2 += f[1] - f[2]
    return out


_CUSTOM_TABLES: dict[int, dict] = {}


def register_table(table: dict) -> int:
    """Register an alternative generator table (used by tests to corrupt the derivation)."""
    tid = len(_CUSTOM_TABLES) + 1
    _CUSTOM_TABLES[tid] = table
    return tid


def apply_derivation(d: str, u: Elem, table_id: int = 0) -> Elem:
    """d in {"T", "Zplus", "Zminus"}."""
    if d == "T":
        out = Elem()
        out.terms = {k: c * (k[1] + k[2]) for k, c in u.terms.items() if k[1] + k[2] != 0}
        return out
    if d not in ("Zplus", "Zminus"):
        raise ValueError(f"unknown derivation {d!r}")
    sign = 1 if d == "Zminus" else -1
    out = Elem()
    for k, c in u.terms.items():
        out = out + _z_key(k, sign, table_id).scale(c)
    return out


def Zp(u: Elem) -> Elem:
    return apply_derivation("Zplus", u)


def Zm(u: Elem) -> Elem:
    return apply_derivation("Zminus", u)


def Tw(u: Elem) -> Elem:
    return apply_derivation("T", u)


def slot_lmul(u: Elem, w: Elem, slot: str) -> Elem:
    """u * (sigma w) = sigma * (q^(+-deg2 u) u w), slot "minus" (+) or "plus" (-)."""
    s = 1 if slot == "minus" else -1
    out = Elem()
    for d, part in _deg2_parts(u).items():
        out = out + (part * w).scale(Phase.q(s * d))
    return out


def _deg2_parts(u: Elem) -> dict[int, Elem]:
    parts: dict[int, Elem] = {}
    for k, v in u.terms.items():
        parts.setdefault(k[1] - k[2], Elem()).terms[k] = v
    return parts


class AlgebraMatrix:
    def __init__(self, rows: list[list[Elem]]):
        self.rows = [[_coerce_elem(e) for e in row] for row in rows]

    @property
    def shape(self):
        return len(self.rows), len(self.rows[0]) if self.rows else 0

    def __matmul__(self, other: "AlgebraMatrix") -> "AlgebraMatrix":
        n, m = self.shape
        m2, k = other.shape
        if m != m2:
            raise ValueError("shape mismatch")
        out = []
        for i in range(n):
            row = []
            for j in range(k):
                s = Elem()
                for l in range(m):
                    s = s + self.rows[i][l] * other.rows[l][j]
                row.append(s)
            out.append(row)
        return AlgebraMatrix(out)

    def adjoint(self) -> "AlgebraMatrix":
        n, m = self.shape
        return AlgebraMatrix([[self.rows[i][j].adjoint() for i in range(n)] for j in range(m)])

    def __eq__(self, other):
        return isinstance(other, AlgebraMatrix) and self.rows == other.rows

    def __str__(self):
        return "[" + "; ".join(", ".join(str(e) for e in row) for row in self.rows) + "]"


def elems_from(iterable: Iterable) -> list[Elem]:
    return [_coerce_elem(v) for v in iterable]
