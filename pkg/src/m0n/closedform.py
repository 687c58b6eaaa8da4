"""Closed-form Betti numbers, Lambert W coefficients and asymptotic probes."""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import factorial

from .errors import FormViolation, NonIntegerResult
from .expfun import AlphaDecomposition
from .moduli import ClassCache, betti
from .polycore import Poly, binomial
from .series2 import TSeries

# lambert_convolution_check enumerates compositions up to this k
ENUMERATION_LIMIT = 12


def closed_form_betti(dec: AlphaDecomposition, n: int) -> int:
    """a_{k,n} from the coefficients of the p_m^{(k)}."""
    if n < 3:
        raise ValueError("n must be >= 3")
    k = dec.k
    total = Fraction((k + 1) ** (k + n - 1), factorial(k + 1))
    for m in range(1, k + 1):
        base = k - m + 1
        inner = Fraction(0)
        for j, c in enumerate(dec.c[m - 1]):
            if j > n - 1 or not c:
                continue
            inner += binomial(n - 1, j) * c * factorial(j) * base ** (n - 1 - j)
        total += (-1) ** m * inner
    if total.denominator != 1 or total < 0:
        raise NonIntegerResult(f"closed form for k={k}, n={n} gave {total}")
    return total.numerator


def _falling(j: int) -> Poly:
    """(n-1)(n-2)...(n-j) as a polynomial in n."""
    p = Poly([1])
    for i in range(1, j + 1):
        p = p * Poly([-i, 1])
    return p


@dataclass
class QPolyFamily:
    k: int
    q: list[Poly]

    @property
    def leading_constant(self) -> Fraction:
        return Fraction((self.k + 1) ** (self.k - 1), factorial(self.k + 1))

    def betti(self, n: int) -> Fraction:
        k = self.k
        total = self.leading_constant * (k + 1) ** n
        for m, qm in enumerate(self.q, start=1):
            total += (-1) ** m * qm(n) * (k + 1 - m) ** n
        return total


def q_polynomials(dec: AlphaDecomposition, samples=range(3, 12)) -> QPolyFamily:
    k = dec.k
    qs = []
    for m in range(1, k + 1):
        base = k - m + 1
        q = Poly()
        for j, c in enumerate(dec.c[m - 1]):
            if c:
                q = q + _falling(j).scale(Fraction(c, base ** (j + 1)))
        if q.is_zero() or q.degree != 2 * m or q.lead <= 0:
            raise FormViolation(f"q_{m}^({k}) = {q} lacks degree {2 * m} / positive lead")
        qs.append(q)
    fam = QPolyFamily(k, qs)
    for n in samples:
        if fam.betti(n) != closed_form_betti(dec, n):
            raise FormViolation(f"q-form and closed form disagree at k={k}, n={n}")
    return fam


@dataclass
class LambertSeries:
    order: int
    coeffs: list[Fraction]  # coeffs[i] is the t^i coefficient; coeffs[0] == 0

    def as_tseries(self) -> TSeries:
        return TSeries(self.coeffs, self.order)


def lambert_coeffs(J: int) -> LambertSeries:
    """Principal-branch W(t) through t^J, with W e^W = t checked."""
    if J < 1:
        raise ValueError("J must be >= 1")
    coeffs = [Fraction(0)] + [Fraction((-(j + 1)) ** j, factorial(j + 1)) for j in range(J)]
    ws = LambertSeries(J, coeffs)
    W = ws.as_tseries()
    assert W * W.exp() == TSeries([0, 1], J)
    return ws


def _tree_weight(j: int) -> Fraction:
    return Fraction((j + 1) ** j, factorial(j + 1))


def _convolution_by_enumeration(k: int) -> Fraction:
    total = Fraction(0)
    for ell in range(1, k + 1):
        for js in product(range(k - ell + 1), repeat=ell + 1):
            if sum(js) != k - ell:
                continue
            term = Fraction(1)
            for j in js:
                term *= _tree_weight(j)
            total += term
    return total


def _convolution_by_series(k: int) -> Fraction:
    S = TSeries([_tree_weight(j) for j in range(k + 1)], k)
    total = Fraction(0)
    power = S
    for ell in range(1, k + 1):
        power = power * S
        total += power[k - ell][0] if not power[k - ell].is_zero() else 0
    return total


def lambert_convolution_check(k: int) -> bool:
    """sum_l sum_{j_1+..+j_{l+1}=k-l} prod (j+1)^j/(j+1)! == k (k+1)^k/(k+1)!."""
    if k < 1:
        raise ValueError("k must be >= 1")
    rhs = Fraction(k * (k + 1) ** k, factorial(k + 1))
    by_series = _convolution_by_series(k)
    if k <= ENUMERATION_LIMIT:
        by_enum = _convolution_by_enumeration(k)
        assert by_enum == by_series, (k, by_enum, by_series)
    return by_series == rhs


def asymptotic_ratio(k: int, n: int, cache: ClassCache | None = None) -> Fraction:
    """a_{k,n} (k+1)! / (k+1)^{k+n-1}."""
    cache = cache if cache is not None else ClassCache()
    return Fraction(betti(cache, k, n) * factorial(k + 1), (k + 1) ** (k + n - 1))


def normalized_w_convergence(k: int, n: int, cache: ClassCache | None = None) -> Fraction:
    """t^{k+1} coefficient (-1)^k a_{k,n} / (k+1)^{n-1} of the normalized Betti series."""
    if n < k + 3:
        raise ValueError("need n >= k + 3")
    cache = cache if cache is not None else ClassCache()
    return Fraction((-1) ** k * betti(cache, k, n), (k + 1) ** (n - 1))


def ulc_ratio(cache: ClassCache, k: int, n: int) -> Fraction:
    """(a_k/C(d,k))^2 / (a_{k-1}/C(d,k-1) * a_{k+1}/C(d,k+1)) with d = n-3."""
    d = n - 3
    a = [betti(cache, i, n) for i in (k - 1, k, k + 1)]
    return Fraction(a[1] ** 2 * binomial(d, k - 1) * binomial(d, k + 1),
                    a[0] * a[2] * binomial(d, k) ** 2)


def ulc_holds_at(cache: ClassCache, i: int, n: int) -> bool:
    """ULC inequality of P_n at index i, cross-multiplied."""
    d = n - 3
    lo, mid, hi = (betti(cache, j, n) for j in (i - 1, i, i + 1))
    return mid * mid * binomial(d, i - 1) * binomial(d, i + 1) >= lo * hi * binomial(d, i) ** 2


@dataclass
class ThresholdReport:
    i: int
    n_max: int
    holds: dict[int, bool] = field(default_factory=dict)
    ratios: dict[int, Fraction] = field(default_factory=dict)

    @property
    def first_hold(self) -> int | None:
        return next((n for n, ok in self.holds.items() if ok), None)

    @property
    def threshold(self) -> int | None:
        """Smallest N with ULC at index i for every N <= n <= n_max."""
        N = None
        for n in sorted(self.holds, reverse=True):
            if not self.holds[n]:
                break
            N = n
        return N

    @property
    def holds_from_threshold(self) -> bool:
        N = self.threshold
        return N is not None and all(ok for n, ok in self.holds.items() if n >= N)

    @property
    def increasing_from(self) -> int | None:
        """Smallest n from which the ULC ratio grows strictly through n_max."""
        ns = sorted(self.ratios)
        if not ns:
            return None
        start = ns[-1]
        for a, b in zip(reversed(ns[:-1]), reversed(ns[1:])):
            if self.ratios[a] >= self.ratios[b]:
                break
            start = a
        return start


def ulc_threshold_probe(i: int, n_max: int, cache: ClassCache | None = None) -> ThresholdReport:
    """Scan n = i+4 .. n_max for ULC at index i of P_n."""
    if i < 1 or n_max < i + 4:
        raise ValueError("need i >= 1 and n_max >= i + 4")
    cache = cache if cache is not None else ClassCache()
    report = ThresholdReport(i, n_max)
    for n in range(i + 4, n_max + 1):
        report.ratios[n] = ulc_ratio(cache, i, n)
        report.holds[n] = ulc_holds_at(cache, i, n)
    return report
