"""Grothendieck classes of the moduli spaces M_{0,n} and their gamma polynomials.

The class of M_{0,n} is a polynomial P_n in the Lefschetz class L with
integer coefficients.  Both P_n and G_n = gamma(P_n) satisfy a quadratic
recursion over all smaller n, so everything is memoized in a
:class:`ClassCache` owned by the caller.

Index convention: the coefficient of L^k in P_n is written a_{k,n}; the
accessors below always take ``(k, n)`` in that order.
"""

import hashlib
import logging
from dataclasses import dataclass, field
from pathlib import Path

from .errors import InvalidN
from .polycore import Poly, binomial, gamma_decompose, is_palindromic

log = logging.getLogger(__name__)

CACHE_FORMAT = "m0n-class-cache v1"

# below this n the folded convolution is re-checked against the plain sum
_UNFOLDED_CHECK_LIMIT = 12


@dataclass(frozen=True)
class GClass:
    n: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = self.coeffs
        if len(c) != self.n - 2:
            raise ValueError(f"P_{self.n} must have {self.n - 2} coefficients, got {len(c)}")
        if c[0] != 1 or any(x <= 0 for x in c):
            raise ValueError(f"P_{self.n} must be positive with constant term 1")
        if c != c[::-1]:
            raise ValueError(f"P_{self.n} is not palindromic")

    @property
    def poly(self) -> Poly:
        return Poly(self.coeffs)

    @property
    def degree(self) -> int:
        return self.n - 3

    def euler_characteristic(self) -> int:
        return sum(self.coeffs)


@dataclass(frozen=True)
class GammaPoly:
    n: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != (self.n - 3) // 2 + 1:
            raise ValueError(f"G_{self.n} must have degree {(self.n - 3) // 2}")
        if self.coeffs[0] != 1:
            raise ValueError(f"G_{self.n} must have constant term 1")

    @property
    def poly(self) -> Poly:
        return Poly(self.coeffs)


@dataclass
class ClassCache:
    """Session memo tables n -> GClass and n -> GammaPoly.

    Entries are immutable and never replaced once stored.
    """

    classes: dict[int, GClass] = field(default_factory=dict)
    gammas: dict[int, GammaPoly] = field(default_factory=dict)


def _check_n(n):
    if not isinstance(n, int) or n < 3:
        raise InvalidN(f"n must be an integer >= 3, got {n!r}")


def _convolution(polys: dict[int, Poly], n: int) -> Poly:
    """sum_{i=3}^{n-2} C(n-2, i-1) Q_i Q_{n+1-i}, pairing i with n+1-i."""
    total = Poly()
    for i in range(3, (n + 1) // 2 + 1):
        j = n + 1 - i
        if j < 3:
            break
        if i == j:
            weight = binomial(n - 2, i - 1)
        else:
            weight = binomial(n - 2, i - 1) + binomial(n - 2, j - 1)
        total = total + (polys[i] * polys[j]).scale(weight)
    return total


def _convolution_unfolded(polys: dict[int, Poly], n: int) -> Poly:
    total = Poly()
    for i in range(3, n - 1):
        total = total + (polys[i] * polys[n + 1 - i]).scale(binomial(n - 2, i - 1))
    return total


def _class_recursion(polys: dict[int, Poly], n: int) -> Poly:
    prev = polys[n - 1]
    conv = _convolution(polys, n)
    if n <= _UNFOLDED_CHECK_LIMIT:
        assert conv == _convolution_unfolded(polys, n)
    return prev * Poly([1, 1]) + conv.shift_degree(1)


def _gamma_recursion(polys: dict[int, Poly], n: int) -> Poly:
    conv = _convolution(polys, n)
    if n <= _UNFOLDED_CHECK_LIMIT:
        assert conv == _convolution_unfolded(polys, n)
    return polys[n - 1] + conv.shift_degree(1)


def grothendieck_class(cache: ClassCache, n: int) -> GClass:
    """P_n with [M_{0,n}] = P_n(L), filling the cache bottom-up as needed."""
    _check_n(n)
    if n in cache.classes:
        return cache.classes[n]
    polys = {m: g.poly for m, g in cache.classes.items() if m < n}
    for m in range(3, n + 1):
        if m in polys:
            continue
        p = Poly([1]) if m == 3 else _class_recursion(polys, m)
        polys[m] = p
        gc = GClass(m, tuple(p.coeffs))
        assert gc.poly(1) == p(1)
        cache.classes.setdefault(m, gc)
    return cache.classes[n]


def betti(cache: ClassCache, k: int, n: int) -> int:
    """a_{k,n} = rank of H^{2k}(M_{0,n}); zero outside 0 <= k <= n-3."""
    _check_n(n)
    if k < 0 or k > n - 3:
        return 0
    return grothendieck_class(cache, n).coeffs[k]


def gamma_class(cache: ClassCache, n: int) -> GammaPoly:
    """G_n = gamma(P_n) by its own recursion, cross-checked against
    direct decomposition of P_n."""
    _check_n(n)
    if n in cache.gammas:
        return cache.gammas[n]
    polys = {m: g.poly for m, g in cache.gammas.items() if m < n}
    for m in range(3, n + 1):
        if m in polys:
            continue
        g = Poly([1]) if m == 3 else _gamma_recursion(polys, m)
        direct = gamma_decompose(grothendieck_class(cache, m).poly)
        assert g == direct, (m, g, direct)
        polys[m] = g
        cache.gammas.setdefault(m, GammaPoly(m, tuple(g.coeffs)))
    return cache.gammas[n]


def is_gamma_positive(g) -> bool:
    coeffs = g.coeffs if hasattr(g, "coeffs") else g
    return all(c >= 0 for c in coeffs)


def upto(cache: ClassCache, n_max: int):
    """Yield P_3, ..., P_{n_max} in order."""
    _check_n(n_max)
    for n in range(3, n_max + 1):
        yield grothendieck_class(cache, n)


# -- persisted cache ---------------------------------------------------------


def _body(cache: ClassCache) -> str:
    return "".join(
        f"{n}: {','.join(str(c) for c in cache.classes[n].coeffs)}\n"
        for n in sorted(cache.classes)
    )


def save_cache(cache: ClassCache, path) -> None:
    body = _body(cache)
    digest = hashlib.sha256(body.encode("utf-8")).hexdigest()
    text = f"# {CACHE_FORMAT}\n# sha256 {digest}\n{body}"
    Path(path).write_text(text, encoding="utf-8")


def load_cache(path) -> ClassCache:
    """Read a cache file; any defect yields an empty cache rather than an error."""
    cache = ClassCache()
    p = Path(path)
    if not p.exists():
        return cache
    try:
        lines = p.read_text(encoding="utf-8").splitlines(keepends=True)
        if len(lines) < 2 or lines[0].strip() != f"# {CACHE_FORMAT}":
            log.warning("discarding class cache %s: unknown format", p)
            return cache
        header = lines[1].split()
        body = "".join(lines[2:])
        if header[:2] != ["#", "sha256"] or len(header) != 3:
            raise ValueError("missing checksum")
        if hashlib.sha256(body.encode("utf-8")).hexdigest() != header[2]:
            log.warning("discarding class cache %s: checksum mismatch", p)
            return cache
        entries = {}
        for line in lines[2:]:
            key, _, vals = line.partition(":")
            n = int(key)
            entries[n] = GClass(n, tuple(int(v) for v in vals.strip().split(",")))
    except (ValueError, IndexError) as exc:
        log.warning("discarding class cache %s: %s", p, exc)
        return ClassCache()
    cache.classes.update(entries)
    return cache
