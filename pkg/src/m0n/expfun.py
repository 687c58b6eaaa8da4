"""Exponential polynomials and the generating functions of single Betti numbers.

An :class:`ExpPoly` is a finite sum  sum_r p_r(z) e^{rz}  with rational
polynomial coefficients and integer exponents r >= 0.  The series
M(z) = sum_n P_n(L) z^{n-1}/(n-1)!  expands in powers of L as
sum_k alpha_k(z) L^k, and each alpha_k is an exponential polynomial obtained
by solving  alpha_k' = alpha_k + g_k  where g_k only involves alpha_0..alpha_{k-1}.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import factorial

from .errors import FormViolation
from .polycore import Poly, has_no_internal_zeros, is_log_concave, is_ultra_log_concave

Z = Poly([0, 1])


class ExpPoly:
    """Immutable  sum_r terms[r](z) * exp(r z)  with nonzero coefficients only."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for r, p in (terms or {}).items():
            if not isinstance(r, int) or r < 0:
                raise ValueError(f"exponent must be a nonnegative integer, got {r!r}")
            if not isinstance(p, Poly):
                p = Poly([p])
            if not p.is_zero():
                clean[r] = p
        object.__setattr__(self, "terms", dict(sorted(clean.items())))

    def __setattr__(self, name, value):
        raise AttributeError("ExpPoly is immutable")

    @classmethod
    def exp(cls, r: int = 1, coeff=1) -> "ExpPoly":
        return cls({r: Poly([coeff])})

    @classmethod
    def poly(cls, p: Poly) -> "ExpPoly":
        return cls({0: p})

    def coeff(self, r: int) -> Poly:
        return self.terms.get(r, Poly())

    def exponents(self) -> list[int]:
        return list(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        if not isinstance(other, ExpPoly):
            return NotImplemented
        out = dict(self.terms)
        for r, p in other.terms.items():
            out[r] = out[r] + p if r in out else p
        return ExpPoly(out)

    def __neg__(self):
        return ExpPoly({r: -p for r, p in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, ExpPoly):
            out = {}
            for r, p in self.terms.items():
                for s, q in other.terms.items():
                    pq = p * q
                    out[r + s] = out[r + s] + pq if r + s in out else pq
            return ExpPoly(out)
        if isinstance(other, Poly):
            return ExpPoly({r: p * other for r, p in self.terms.items()})
        return self.scale(other)

    __rmul__ = __mul__

    def scale(self, c) -> "ExpPoly":
        return ExpPoly({r: p.scale(c) for r, p in self.terms.items()})

    def differentiate(self) -> "ExpPoly":
        # d/dz (p e^{rz}) = (p' + r p) e^{rz}
        return ExpPoly({r: p.derivative() + p.scale(r) for r, p in self.terms.items()})

    def at_zero(self):
        return sum((p[0] for p in self.terms.values()), 0)

    def __eq__(self, other):
        if not isinstance(other, ExpPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(tuple(self.terms.items()))

    def __repr__(self):
        inner = ", ".join(f"{r}: {p.format('z')}" for r, p in self.terms.items())
        return f"ExpPoly({{{inner}}})"


def taylor_coeffs(f: ExpPoly, upto: int) -> list:
    """Maclaurin coefficients of z^0 .. z^upto, exactly."""
    out = []
    for j in range(upto + 1):
        total = Fraction(0)
        for r, p in f.terms.items():
            for i in range(min(j, len(p) - 1) + 1):
                if p[i]:
                    total += Fraction(p[i] * r ** (j - i), factorial(j - i))
        out.append(total)
    return out


def solve_linear_ode(g: ExpPoly) -> ExpPoly:
    """The unique y with y' = y + g and y(0) = 0.

    y = e^z * int_0^z e^{-s} g(s) ds, integrated term by term: for r != 1 the
    antiderivative of p(s) e^{(r-1)s} is h(s) e^{(r-1)s} with h' + (r-1) h = p;
    for r = 1 the integrand is a plain polynomial.
    """
    out = ExpPoly()
    for r, p in g.terms.items():
        c = r - 1
        if c == 0:
            out = out + ExpPoly({1: p.antiderivative()})
            continue
        d = p.degree
        h = [Fraction(0)] * (d + 1)
        h[d] = Fraction(p[d], c)
        for i in range(d - 1, -1, -1):
            h[i] = (p[i] - (i + 1) * h[i + 1]) / c
        hp = Poly(h)
        # definite integral from 0: h(z) e^{cz} - h(0); times e^z
        out = out + ExpPoly({r: hp}) - ExpPoly.exp(1, hp[0])
    residual = out.differentiate() - out - g
    assert residual.is_zero(), residual
    assert out.at_zero() == 0
    return out


def alpha_zero() -> ExpPoly:
    return ExpPoly({1: Poly([1]), 0: Poly([-1, -1])})


class LSeries:
    """M(z) modulo L^{K+1}: the list alpha_0..alpha_K of exponential polynomials.

    Powers of M are memoized per (power, L-degree) and only ever read
    coefficients that are already known.
    """

    def __init__(self, alphas=None):
        self.alphas: list[ExpPoly] = list(alphas) if alphas else [alpha_zero()]
        self._pow: dict[tuple[int, int], ExpPoly] = {}

    @property
    def order(self) -> int:
        return len(self.alphas) - 1

    def __getitem__(self, k: int) -> ExpPoly:
        return self.alphas[k]

    def power_coeff(self, ell: int, j: int) -> ExpPoly:
        """Coefficient of L^j in M^ell (requires j <= order)."""
        if ell == 0:
            return ExpPoly.exp(0) if j == 0 else ExpPoly()
        key = (ell, j)
        if key not in self._pow:
            acc = ExpPoly()
            for i in range(j + 1):
                acc = acc + self.alphas[i] * self.power_coeff(ell - 1, j - i)
            self._pow[key] = acc
        return self._pow[key]

    def forcing(self, k: int) -> ExpPoly:
        """g_k = sum_{l=1}^{k} [L^{k-l}] (M^l (1 + z + M)); needs alpha_0..alpha_{k-1}."""
        one_plus_z = Poly([1, 1])
        g = ExpPoly()
        for ell in range(1, k + 1):
            j = k - ell
            g = g + self.power_coeff(ell, j) * one_plus_z + self.power_coeff(ell + 1, j)
        return g

    def extend(self) -> ExpPoly:
        k = len(self.alphas)
        g = self.forcing(k)
        check_forcing_shape(g, k)
        alpha = solve_linear_ode(g)
        self.alphas.append(alpha)
        return alpha

    def difeq_residual(self) -> list[ExpPoly]:
        """Coefficients of L^0..L^K in (1 - L M) M' - (z + (1 + L) M)."""
        K = self.order
        d = [a.differentiate() for a in self.alphas]
        out = []
        for k in range(K + 1):
            r = d[k] - self.alphas[k]
            if k == 0:
                r = r - ExpPoly.poly(Z)
            else:
                r = r - self.alphas[k - 1]
                for i in range(k):
                    r = r - self.alphas[i] * d[k - 1 - i]
            out.append(r)
        return out


def check_forcing_shape(g: ExpPoly, k: int) -> None:
    """Raise FormViolation unless g_k has the shape proven for it.

    No e^{0z} term, dominant term k (k+1)^k/(k+1)! e^{(k+1)z}, the e^{z}
    coefficient of degree 2k-1 with leading sign (-1)^k, and for 1 < r <= k+1
    the e^{rz} coefficient of degree 2(k+1-r) with leading sign (-1)^{k+1-r}.
    """
    if set(g.exponents()) - set(range(1, k + 2)):
        raise FormViolation(f"g_{k} has exponents outside 1..{k + 1}: {g.exponents()}")
    top = g.coeff(k + 1)
    expected = Fraction(k * (k + 1) ** k, factorial(k + 1))
    if top != Poly([expected]):
        raise FormViolation(f"g_{k}: e^{{{k + 1}z}} coefficient {top} != {expected}")
    for r in range(1, k + 2):
        p = g.coeff(r)
        want_deg = 2 * k - 1 if r == 1 else 2 * (k + 1 - r)
        want_sign = (-1) ** k if r == 1 else (-1) ** (k + 1 - r)
        if p.is_zero() or p.degree != want_deg or (p.lead > 0) != (want_sign > 0):
            raise FormViolation(f"g_{k}: bad e^{{{r}z}} coefficient {p}")


def derive_alpha_series(K: int) -> LSeries:
    if K < 0:
        raise ValueError("K must be >= 0")
    series = LSeries()
    for _ in range(K):
        series.extend()
    for a in series.alphas:
        assert a.at_zero() == 0
    return series


@dataclass
class AlphaDecomposition:
    """alpha_k = p0 e^{(k+1)z} + sum_{m=1}^k (-1)^m p_m(z) e^{(k+1-m)z}.

    ``p[m-1]`` is p_m^{(k)} and ``c[m-1][j]`` its z^j coefficient.
    """

    k: int
    p0: Fraction
    p: list[Poly]
    c: list[list[Fraction]] = field(default_factory=list)

    def __post_init__(self):
        if not self.c:
            self.c = [[Fraction(pm[j]) for j in range(2 * (m + 1) + 1)] for m, pm in enumerate(self.p)]

    def pm(self, m: int) -> Poly:
        return self.p[m - 1]


def decompose_alpha(alpha_k: ExpPoly, k: int) -> AlphaDecomposition:
    if k < 1:
        raise ValueError("k must be >= 1")
    extra = set(alpha_k.exponents()) - set(range(1, k + 2))
    if extra:
        raise FormViolation(f"alpha_{k} has unexpected exponents {sorted(extra)}")
    top = alpha_k.coeff(k + 1)
    p0 = Fraction((k + 1) ** k, factorial(k + 1))
    if top != Poly([p0]):
        raise FormViolation(f"alpha_{k}: leading term {top} != {p0}")
    ps = []
    for m in range(1, k + 1):
        pm = alpha_k.coeff(k + 1 - m).scale((-1) ** m)
        if pm.is_zero() or pm.degree != 2 * m or pm.lead <= 0:
            raise FormViolation(f"p_{m}^({k}) = {pm} lacks degree {2 * m} / positive lead")
        ps.append(pm)
    return AlphaDecomposition(k, p0, ps)


@dataclass
class PEntry:
    k: int
    m: int
    positive: bool
    log_concave: bool
    ultra_log_concave: bool


@dataclass
class PConjectureReport:
    K: int
    entries: list[PEntry]

    @property
    def positivity_failures(self):
        return [(e.k, e.m) for e in self.entries if not e.positive]

    @property
    def log_concavity_failures(self):
        return [(e.k, e.m) for e in self.entries if not e.log_concave]

    @property
    def ulc_exceptions(self):
        return [(e.k, e.m) for e in self.entries if not e.ultra_log_concave]


EXPECTED_ULC_EXCEPTIONS = [(1, 1), (3, 3), (5, 5)]


def probe_p_conjecture(K: int, series: LSeries | None = None) -> PConjectureReport:
    """Positivity / log-concavity / ULC of every p_m^{(k)}, k <= K. Reports only."""
    if K < 1:
        raise ValueError("K must be >= 1")
    if series is None or series.order < K:
        series = derive_alpha_series(K)
    entries = []
    for k in range(1, K + 1):
        dec = decompose_alpha(series[k], k)
        for m, pm in enumerate(dec.p, start=1):
            c = list(pm.coeffs)
            entries.append(PEntry(
                k, m,
                positive=all(x > 0 for x in c),
                log_concave=is_log_concave(c) and has_no_internal_zeros(c),
                ultra_log_concave=is_ultra_log_concave(c, 2 * m),
            ))
    return PConjectureReport(K, entries)


def power_coeff_multinomial(alphas, ell: int, j: int) -> ExpPoly:
    """[L^j] M^ell by summing over all index tuples directly (test oracle)."""
    acc = ExpPoly()
    for idx in product(range(j + 1), repeat=ell):
        if sum(idx) != j:
            continue
        term = ExpPoly.exp(0)
        for i in idx:
            term = term * alphas[i]
        acc = acc + term
    return acc
