"""Truncated power series whose coefficients are polynomials in a second variable.

:class:`TSeries` is a series in an outer variable (``t`` by default) truncated
after t^order, each coefficient a :class:`Poly` in an inner variable.  The
inner polynomials can be truncated too (``inner_order``), which is how series
in L are cut off.  :class:`ZSeries` is the same arithmetic with the variable
roles named the other way; :meth:`TSeries.transpose` converts between them.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .errors import ConstantTermMismatch, TruncationTooSmall
from .expfun import derive_alpha_series, decompose_alpha
from .moduli import ClassCache, gamma_class, grothendieck_class
from .polycore import Poly


class TSeries:
    outer, inner = "t", "z"

    def __init__(self, coeffs, order: int, inner_order: int | None = None):
        cs = [c if isinstance(c, Poly) else Poly([c]) for c in coeffs][: order + 1]
        if inner_order is not None:
            cs = [c.truncate(inner_order) for c in cs]
        cs += [Poly()] * (order + 1 - len(cs))
        self.coeffs: tuple[Poly, ...] = tuple(cs)
        self.order = order
        self.inner_order = inner_order

    def _like(self, coeffs):
        return type(self)(coeffs, self.order, self.inner_order)

    def _check(self, other):
        if not isinstance(other, TSeries) or other.order != self.order:
            raise ValueError("series orders differ")

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i <= self.order else Poly()

    def __add__(self, other):
        self._check(other)
        return self._like([a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return self._like([-a for a in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def _inner_mul(self, a: Poly, b: Poly) -> Poly:
        if self.inner_order is None:
            return a * b
        return a.mul_truncated(b, self.inner_order)

    def __mul__(self, other):
        if isinstance(other, Poly):
            return self._like([self._inner_mul(a, other) for a in self.coeffs])
        if not isinstance(other, TSeries):
            return self._like([a.scale(other) for a in self.coeffs])
        self._check(other)
        out = [Poly()] * (self.order + 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j in range(self.order + 1 - i):
                b = other.coeffs[j]
                if not b.is_zero():
                    out[i + j] = out[i + j] + self._inner_mul(a, b)
        return self._like(out)

    __rmul__ = __mul__

    def shift_up(self, k: int = 1):
        """Multiply by outer**k."""
        return self._like([Poly()] * k + list(self.coeffs))

    def shift_down(self):
        """Divide by the outer variable; the constant term must vanish."""
        if not self.coeffs[0].is_zero():
            raise ValueError("series has a nonzero constant term")
        return self._like(list(self.coeffs[1:]))

    def d_inner(self):
        return self._like([a.derivative() for a in self.coeffs])

    def d_outer(self):
        """Outer derivative; the result is exact only through outer**(order-1)."""
        return self._like([self.coeffs[i].scale(i) for i in range(1, self.order + 1)])

    def exp(self):
        """exp(S) for S with zero constant term, via n F_n = sum_j j S_j F_{n-j}."""
        if not self.coeffs[0].is_zero():
            raise ValueError("exp needs a series with zero constant term")
        f = [Poly([1])]
        for n in range(1, self.order + 1):
            acc = Poly()
            for j in range(1, n + 1):
                if not self.coeffs[j].is_zero():
                    acc = acc + self._inner_mul(self.coeffs[j], f[n - j]).scale(j)
            f.append(acc.scale(Fraction(1, n)))
        return self._like(f)

    def log1p(self):
        """log(1 + S) for S with zero constant term, from (1 + S) L' = S'."""
        if not self.coeffs[0].is_zero():
            raise ValueError("log1p needs a series with zero constant term")
        out = [Poly()]
        for n in range(1, self.order + 1):
            acc = self.coeffs[n].scale(n)
            for j in range(1, n):
                acc = acc - self._inner_mul(out[j], self.coeffs[n - j]).scale(j)
            out.append(acc.scale(Fraction(1, n)))
        return self._like(out)

    def is_zero_upto(self, n: int) -> bool:
        return all(self.coeffs[i].is_zero() for i in range(min(n, self.order) + 1))

    def transpose(self, order: int, inner_order: int | None = None):
        """Swap the roles of the two variables."""
        cols = {}
        for i, c in enumerate(self.coeffs):
            for j, x in enumerate(c.coeffs):
                if x:
                    cols.setdefault(j, {})[i] = x
        new = []
        for j in range(order + 1):
            col = cols.get(j, {})
            new.append(Poly([col.get(i, 0) for i in range(max(col, default=-1) + 1)]))
        cls = ZSeries if type(self) is TSeries else TSeries
        return cls(new, order, inner_order)

    def __eq__(self, other):
        return isinstance(other, TSeries) and self.order == other.order and self.coeffs == other.coeffs

    def __repr__(self):
        terms = ", ".join(f"{self.outer}^{i}: {c.format(self.inner)}" for i, c in enumerate(self.coeffs) if not c.is_zero())
        return f"{type(self).__name__}(order={self.order}, {{{terms}}})"


class ZSeries(TSeries):
    """Series in z whose coefficients are polynomials in t (or in L)."""

    outer, inner = "z", "t"


def _egf(polys: dict[int, Poly], N_z: int, inner_order=None) -> ZSeries:
    """sum_n Q_n z^{n-1}/(n-1)! truncated after z^N_z."""
    coeffs = [Poly()] * (N_z + 1)
    for n, q in polys.items():
        if 1 <= n - 1 <= N_z:
            coeffs[n - 1] = q.scale(Fraction(1, factorial(n - 1)))
    return ZSeries(coeffs, N_z, inner_order)


def verify_M_ode(K_L: int, N_z: int, classes: dict | None = None, cache: ClassCache | None = None) -> bool:
    """(1 - L M) M' == z + (1 + L) M modulo L^{K_L+1} and z^{N_z}.

    ``classes`` may override individual P_n (as coefficient lists); used for
    mutation tests.
    """
    if K_L < 0 or N_z < 4:
        raise TruncationTooSmall(f"need K_L >= 0 and N_z >= 4, got {K_L}, {N_z}")
    cache = cache or ClassCache()
    polys = {n: grothendieck_class(cache, n).poly for n in range(3, N_z + 2)}
    for n, c in (classes or {}).items():
        polys[n] = Poly(c)
    M = _egf(polys, N_z, K_L)
    L = Poly([0, 1])
    z = ZSeries([0, 1], N_z, K_L)
    lhs = (ZSeries([1], N_z, K_L) - M * L) * M.d_outer()
    rhs = z + M * Poly([1, 1])
    return (lhs - rhs).is_zero_upto(N_z - 1)


def verify_G_ode(N_z: int, gammas: dict | None = None, cache: ClassCache | None = None) -> bool:
    """(1 - t G) G' == z + G modulo z^{N_z}."""
    if N_z < 4:
        raise TruncationTooSmall(f"need N_z >= 4, got {N_z}")
    cache = cache or ClassCache()
    polys = {n: gamma_class(cache, n).poly for n in range(3, N_z + 2)}
    for n, c in (gammas or {}).items():
        polys[n] = Poly(c)
    G = _egf(polys, N_z)
    t = Poly([0, 1])
    lhs = (ZSeries([1], N_z) - G * t) * G.d_outer()
    rhs = ZSeries([0, 1], N_z) + G
    return (lhs - rhs).is_zero_upto(N_z - 1)


@dataclass
class GFReport:
    K: int
    constant_term: Poly
    series_coeffs: list[Poly]
    expected: list[Poly]
    matches: dict[int, bool] = field(default_factory=dict)
    convention: str = "k>=0 with p_0 := 1"

    @property
    def all_match(self) -> bool:
        return self.constant_term == Poly([1]) and all(self.matches.values())


def pk_generating_series(K: int) -> TSeries:
    """exp(E) with E = -z - log(1+t)/t - log(1 - t(z+1))/t, modulo t^{K+1}."""
    order = K + 1
    t = TSeries([0, 1], order)
    log_a = t.log1p().shift_down()
    log_b = TSeries([0, Poly([-1, -1])], order).log1p().shift_down()
    E = TSeries([Poly([0, -1])], order) - log_a - log_b
    if not E[0].is_zero():
        raise ConstantTermMismatch(f"constant term of the exponent is {E[0]}, not 0")
    E = TSeries(E.coeffs[: K + 1], K)
    return E.exp()


def verify_pk_generating_function(K: int, series=None) -> GFReport:
    """Compare t^k coefficients of the conjectured generating function with p_k^{(k)}."""
    if K < 1:
        raise ValueError("K must be >= 1")
    F = pk_generating_series(K)
    if series is None or series.order < K:
        series = derive_alpha_series(K)
    expected = [decompose_alpha(series[k], k).pm(k) for k in range(1, K + 1)]
    report = GFReport(K, F[0], [F[k] for k in range(K + 1)], expected)
    for k in range(1, K + 1):
        report.matches[k] = F[k] == expected[k - 1]
    return report
