"""Command line interface.

    m0n classes --n 9 --format csv
    m0n gamma --n 11 --upto
    m0n betti --k 2 --n 10 --method closed
    m0n alpha --k 2
    m0n qpoly --k 3
    m0n check closed-vs-recursion --k-max 5 --n-max 30

Exact numbers are printed as decimal integers or ``p/q`` strings.  The class
cache path comes from ``--cache`` or the ``M0N_CACHE`` environment variable.
"""

import argparse
import json
import os
import sys
import time
from fractions import Fraction

from . import checks, closedform, expfun, moduli
from .errors import InvalidN, M0nError
from .polycore import Poly

CACHE_ENV = "M0N_CACHE"


def exact(x):
    """Lossless string form of an exact value (recursing into containers)."""
    if isinstance(x, bool) or x is None:
        return x
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, Poly):
        return [exact(c) for c in x.coeffs]
    if isinstance(x, float):
        return x
    if isinstance(x, dict):
        return {str(k): exact(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [exact(v) for v in x]
    return x


def csv_row(coeffs) -> str:
    return ",".join(exact(c) if not isinstance(c, str) else c for c in coeffs)


def dump_json(record) -> str:
    return json.dumps(record, separators=(",", ":"))


class Emitter:
    """Streams text/csv rows, or collects one JSON record per invocation."""

    def __init__(self, command, params, fmt, out=None):
        self.command, self.params, self.fmt = command, params, fmt
        self.out = out if out is not None else sys.stdout
        self.results, self.checks, self.findings = [], [], []
        self.t0 = time.perf_counter()

    def row(self, line, result=None):
        if self.fmt == "json":
            if result is not None:
                self.results.append(result)
        else:
            print(line, file=self.out, flush=False)

    def finish(self):
        if self.fmt == "json":
            record = {
                "command": self.command,
                "params": self.params,
                "results": self.results,
                "checks": self.checks,
                "findings": self.findings,
                "elapsed_ms": round((time.perf_counter() - self.t0) * 1000, 3),
            }
            print(dump_json(record), file=self.out)
        self.out.flush()


def _poly_rows(kind, args, cache, em):
    get = moduli.grothendieck_class if kind == "classes" else moduli.gamma_class
    var = "L" if kind == "classes" else "t"
    ns = range(3, args.n + 1) if args.upto else [args.n]
    for n in ns:
        c = get(cache, n).coeffs
        if args.format == "csv":
            line = f"n={n}:{csv_row(c)}" if args.upto else csv_row(c)
        else:
            line = f"n={n}: {Poly(c).format(var)}"
        em.row(line, {"n": n, "coeffs": exact(list(c))})


def cmd_classes(args, cache, em):
    _poly_rows("classes", args, cache, em)
    return 0


def cmd_gamma(args, cache, em):
    _poly_rows("gamma", args, cache, em)
    return 0


def cmd_betti(args, cache, em):
    k, n = args.k, args.n
    if n < 3:
        raise InvalidN(f"n must be >= 3, got {n}")
    if k < 0:
        raise ValueError("k must be >= 0")
    if args.method == "recursion" or k == 0 or k > n - 3:
        value = moduli.betti(cache, k, n)
    else:
        series = expfun.derive_alpha_series(k)
        value = closedform.closed_form_betti(expfun.decompose_alpha(series[k], k), n)
    em.row(str(value), {"k": k, "n": n, "method": args.method, "value": exact(value)})
    return 0


def cmd_alpha(args, cache, em):
    if args.k < 0:
        raise ValueError("k must be >= 0")
    alpha = expfun.derive_alpha_series(args.k)[args.k]
    for r, p in sorted(alpha.terms.items(), reverse=True):
        line = csv_row(p.coeffs) if args.format == "csv" else p.format("z")
        em.row(f"{r}: {line}", {"r": r, "poly": exact(p)})
    return 0


def cmd_qpoly(args, cache, em):
    if args.k < 1:
        raise ValueError("k must be >= 1")
    series = expfun.derive_alpha_series(args.k)
    fam = closedform.q_polynomials(expfun.decompose_alpha(series[args.k], args.k))
    em.row(f"lead: {exact(fam.leading_constant)}", {"leading_constant": exact(fam.leading_constant)})
    for m, q in enumerate(fam.q, start=1):
        line = csv_row(q.coeffs) if args.format == "csv" else q.format("n")
        em.row(f"q_{m}: {line}", {"m": m, "q": exact(q)})
    return 0


def cmd_check(args, cache, em):
    res = checks.run_suite(args.suite, cache, n_max=args.n_max, k_max=args.k_max, order=args.order)
    for case in res.cases:
        status = "PASS" if case.passed else ("FAIL" if case.theorem else "FINDING")
        kind = "theorem" if case.theorem else "conjecture"
        em.checks.append({"name": case.name, "passed": case.passed, "kind": kind,
                          "detail": exact(case.detail)})
        em.row(f"{status} [{kind}] {case.name}")
    em.findings.extend(res.findings)
    n_pass = sum(c.passed for c in res.cases)
    em.row(f"summary: {n_pass}/{len(res.cases)} passed, {len(res.findings)} findings, "
           f"theorem checks {'ok' if res.theorem_ok else 'FAILED'}")
    return 0 if res.theorem_ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="m0n", description=__doc__.splitlines()[0])
    parser.add_argument("--cache", help=f"class cache file (default: ${CACHE_ENV})")
    sub = parser.add_subparsers(dest="command", required=True)

    def fmt(p, default="csv"):
        p.add_argument("--format", choices=["json", "csv", "text"], default=default)

    for name, fn in (("classes", cmd_classes), ("gamma", cmd_gamma)):
        p = sub.add_parser(name)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--upto", action="store_true")
        fmt(p)
        p.set_defaults(func=fn)

    p = sub.add_parser("betti")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--method", choices=["recursion", "closed"], default="recursion")
    fmt(p, "text")
    p.set_defaults(func=cmd_betti)

    for name, fn in (("alpha", cmd_alpha), ("qpoly", cmd_qpoly)):
        p = sub.add_parser(name)
        p.add_argument("--k", type=int, required=True)
        fmt(p, "text")
        p.set_defaults(func=fn)

    p = sub.add_parser("check")
    p.add_argument("suite", choices=sorted(checks.SUITES))
    p.add_argument("--n-max", type=int, default=20)
    p.add_argument("--k-max", type=int, default=5)
    p.add_argument("--order", type=int, default=10)
    fmt(p, "text")
    p.set_defaults(func=cmd_check)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cache_path = args.cache or os.environ.get(CACHE_ENV)
    cache = moduli.load_cache(cache_path) if cache_path else moduli.ClassCache()
    params = {k: v for k, v in vars(args).items() if k not in ("func", "command", "cache", "format")}
    em = Emitter(args.command, params, args.format)
    try:
        code = args.func(args, cache, em)
    except (M0nError, ValueError) as exc:
        print(f"m0n {args.command}: error: {exc}", file=sys.stderr)
        return 2
    em.finish()
    if cache_path:
        moduli.save_cache(cache, cache_path)
    return code


if __name__ == "__main__":
    sys.exit(main())
