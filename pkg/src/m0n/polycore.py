"""Dense univariate polynomials over the integers and rationals.

Coefficients are Python ints or :class:`fractions.Fraction`; integer inputs
stay integers under ring operations, so the integer-only paths never pay for
rational normalization.  Also holds the sequence predicates (palindromicity,
log-concavity, ultra-log-concavity), the gamma-vector decomposition of
palindromic polynomials and exact real-root counting via Sturm chains.
"""

from fractions import Fraction
from functools import reduce
from math import comb, gcd, lcm
from numbers import Rational
from typing import Iterable, Sequence

from .errors import LengthMismatch, NotPalindromic


def binomial(n: int, k: int) -> int:
    if k < 0 or n < 0 or k > n:
        return 0
    return comb(n, k)


def _normalize(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class Poly:
    """Immutable dense polynomial with ascending coefficients.

    The zero polynomial has no coefficients; its degree is undefined and
    ``degree`` raises on it.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        c = [_normalize(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def constant(cls, c) -> "Poly":
        return cls([c])

    @classmethod
    def monomial(cls, k: int, c=1) -> "Poly":
        return cls([0] * k + [c])

    @classmethod
    def one_plus_t_power(cls, m: int) -> "Poly":
        """(1+t)**m, built from binomial coefficients."""
        return cls([comb(m, i) for i in range(m + 1)])

    # -- basic queries -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        if not self.coeffs:
            raise ValueError("degree of the zero polynomial is undefined")
        return len(self.coeffs) - 1

    @property
    def lead(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __getitem__(self, i: int):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def __len__(self):
        return len(self.coeffs)

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.coeffs)

    # -- ring operations ---------------------------------------------------

    @staticmethod
    def _coerce(other) -> "Poly":
        if isinstance(other, Poly):
            return other
        if isinstance(other, Rational):
            return Poly([other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Poly([x + b[i] if i < len(b) else x for i, x in enumerate(a)])

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Rational):
            return self.scale(other)
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        return Poly(out)

    def __rmul__(self, other):
        if isinstance(other, Rational):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        result, base = Poly([1]), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def scale(self, c) -> "Poly":
        return Poly([c * x for x in self.coeffs])

    def mul_truncated(self, other: "Poly", n: int) -> "Poly":
        """Product modulo t**(n+1)."""
        a, b = self.coeffs[: n + 1], other.coeffs[: n + 1]
        if not a or not b:
            return Poly()
        out = [0] * min(len(a) + len(b) - 1, n + 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j in range(min(len(b), n + 1 - i)):
                out[i + j] += x * b[j]
        return Poly(out)

    def truncate(self, n: int) -> "Poly":
        return Poly(self.coeffs[: n + 1])

    def shift_degree(self, k: int) -> "Poly":
        """Multiply by t**k."""
        if not self.coeffs:
            return self
        return Poly([0] * k + list(self.coeffs))

    # -- calculus ----------------------------------------------------------

    def derivative(self) -> "Poly":
        return Poly([i * c for i, c in enumerate(self.coeffs)][1:])

    def antiderivative(self) -> "Poly":
        """Antiderivative with zero constant term."""
        return Poly([0] + [Fraction(c, i + 1) for i, c in enumerate(self.coeffs)])

    def shift_arg(self, c) -> "Poly":
        """The polynomial z -> p(z + c), by Horner's scheme."""
        result = Poly()
        step = Poly([c, 1])
        for a in reversed(self.coeffs):
            result = result * step + a
        return result

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return _normalize(acc) if isinstance(acc, Fraction) else acc

    eval = __call__

    # -- division ----------------------------------------------------------

    def __divmod__(self, other: "Poly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = [Fraction(c) for c in self.coeffs]
        d = other.degree
        lead = Fraction(other.lead)
        if len(r) - 1 < d:
            return Poly(), self
        q = [Fraction(0)] * (len(r) - d)
        for i in range(len(r) - 1 - d, -1, -1):
            coef = r[i + d] / lead
            q[i] = coef
            if coef:
                for j, b in enumerate(other.coeffs):
                    r[i + j] -= coef * b
        return Poly(q), Poly(r[:d])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError("division is not exact")
        return q

    def primitive(self) -> "Poly":
        """Positive rational multiple with coprime integer coefficients."""
        if not self.coeffs:
            return self
        fr = [Fraction(c) for c in self.coeffs]
        den = reduce(lcm, (c.denominator for c in fr), 1)
        ints = [int(c * den) for c in fr]
        g = reduce(gcd, ints, 0)
        return Poly([x // g for x in ints])

    # -- comparison & display ----------------------------------------------

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly({list(self.coeffs)!r})"

    def format(self, var: str = "t") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if i == 0:
                body = str(a)
            else:
                mono = var if i == 1 else f"{var}^{i}"
                body = mono if a == 1 else f"{a}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    __str__ = format


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Greatest common divisor, returned as a primitive integer polynomial."""
    while not b.is_zero():
        a, b = b, (a % b).primitive()
    if a.is_zero():
        return a
    return a.primitive()


# -- palindromes and gamma vectors -----------------------------------------


def is_palindromic(p: Poly, d: int | None = None) -> bool:
    """True iff coefficient i equals coefficient d-i for all i.

    ``d`` defaults to the degree; passing a larger ``d`` tests symmetry about
    the center d/2 (so ``t`` is palindromic with d=2).
    """
    if p.is_zero():
        raise ValueError("palindromicity of the zero polynomial is undefined")
    if d is None:
        d = p.degree
    if p.degree > d:
        return False
    return all(p[i] == p[d - i] for i in range(d + 1))


def gamma_decompose(p: Poly, d: int | None = None) -> Poly:
    """The gamma polynomial sum(g_i t^i) with p = sum g_i t^i (1+t)^(d-2i).

    Coefficients are found by successive elimination from the lowest power up,
    and the reconstruction is checked exactly before returning.
    """
    if d is None:
        d = p.degree
    if not is_palindromic(p, d):
        raise NotPalindromic(f"{p!r} is not symmetric with center {d}/2")
    residual = p
    gammas = []
    for i in range(d // 2 + 1):
        g = residual[i]
        gammas.append(g)
        if g:
            residual = residual - Poly.one_plus_t_power(d - 2 * i).shift_degree(i).scale(g)
    assert residual.is_zero(), residual
    result = Poly(gammas)
    assert gamma_reconstruct(result, d) == p
    return result


def gamma_reconstruct(gamma: Poly, d: int) -> Poly:
    """Inverse of :func:`gamma_decompose` for center d/2."""
    total = Poly()
    for i, g in enumerate(gamma.coeffs):
        if g:
            total = total + Poly.one_plus_t_power(d - 2 * i).shift_degree(i).scale(g)
    return total


# -- concavity predicates --------------------------------------------------


def is_log_concave(a: Sequence) -> bool:
    if len(a) == 0:
        raise ValueError("empty sequence")
    return all(a[i] * a[i] >= a[i - 1] * a[i + 1] for i in range(1, len(a) - 1))


def is_ultra_log_concave(a: Sequence, d: int) -> bool:
    """Log-concavity of a_i / C(d, i), compared after cross-multiplying."""
    if len(a) != d + 1:
        raise LengthMismatch(f"expected {d + 1} terms, got {len(a)}")
    return all(
        a[i] * a[i] * comb(d, i - 1) * comb(d, i + 1) >= a[i - 1] * a[i + 1] * comb(d, i) ** 2
        for i in range(1, d)
    )


def has_no_internal_zeros(a: Sequence) -> bool:
    nz = [i for i, x in enumerate(a) if x != 0]
    if not nz:
        return True
    return all(a[i] != 0 for i in range(nz[0], nz[-1] + 1))


# -- real roots ------------------------------------------------------------


def squarefree_decomposition(p: Poly) -> list[tuple[Poly, int]]:
    """Yun's algorithm: returns (f_i, i) with p = c * prod f_i**i, f_i squarefree
    and pairwise coprime.  Constant factors are dropped.

    b and c must share one scaling throughout, so neither is made primitive.
    """
    if p.is_zero():
        raise ValueError("zero polynomial")
    if p.degree == 0:
        return []
    dp = p.derivative()
    a = poly_gcd(p, dp)
    b = p.exact_div(a)
    c = dp.exact_div(a)
    dd = (c - b.derivative())
    out = []
    i = 1
    while b.degree > 0:
        a = poly_gcd(b, dd)
        b_next = b.exact_div(a)
        c = dd.exact_div(a)
        dd = c - b_next.derivative()
        if a.degree > 0:
            out.append((a, i))
        b = b_next
        i += 1
    return out


def sturm_chain(p: Poly) -> list[Poly]:
    """Signed remainder sequence of the squarefree part of ``p``.

    Every member is rescaled by a positive constant to a primitive integer
    polynomial, which keeps coefficient growth in check without affecting
    sign counts.
    """
    if p.is_zero():
        raise ValueError("zero polynomial")
    g = poly_gcd(p, p.derivative()) if p.degree > 0 else Poly([1])
    f = p.exact_div(g).primitive()
    chain = [f]
    if f.degree == 0:
        return chain
    chain.append(f.derivative().primitive())
    while True:
        r = -(chain[-2] % chain[-1])
        if r.is_zero():
            break
        chain.append(r.primitive())
    assert chain[-1].degree == 0
    return chain


def _sign_changes(signs: Iterable[int]) -> int:
    s = [x for x in signs if x != 0]
    return sum(1 for u, v in zip(s, s[1:]) if u != v)


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def count_distinct_real_roots(p: Poly) -> int:
    chain = sturm_chain(p)
    at_pos = _sign_changes(_sign(q.lead) for q in chain)
    at_neg = _sign_changes(_sign(q.lead) * (-1) ** q.degree for q in chain)
    return at_neg - at_pos


def real_root_count(p: Poly) -> int:
    """Number of real roots counted with multiplicity."""
    if p.is_zero():
        raise ValueError("zero polynomial")
    return sum(mult * count_distinct_real_roots(f) for f, mult in squarefree_decomposition(p))


def is_real_rooted(p: Poly) -> bool:
    return real_root_count(p) == p.degree
