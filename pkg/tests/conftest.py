from functools import lru_cache
from math import comb
from pathlib import Path

import pytest

from m0n.expfun import derive_alpha_series
from m0n.moduli import ClassCache

DATA = Path(__file__).parent / "data"


def read_table(name):
    rows = {}
    for line in (DATA / name).read_text().splitlines():
        key, _, vals = line.partition(":")
        rows[int(key[2:])] = tuple(int(v) for v in vals.split(","))
    return rows


# coefficient rows of P_n and G_n for n = 3..11, as printed in the literature
KNOWN_CLASSES = read_table("classes_upto_11.csv")
KNOWN_GAMMAS = read_table("gamma_upto_11.csv")


@lru_cache(maxsize=None)
def naive_class(n):
    """Unfolded, unmemoized-per-call recursion on plain integer lists."""
    if n == 3:
        return (1,)
    prev = naive_class(n - 1)
    out = [0] * (n - 2)
    for i, c in enumerate(prev):
        out[i] += c
        out[i + 1] += c
    for i in range(3, n - 1):
        a, b = naive_class(i), naive_class(n + 1 - i)
        w = comb(n - 2, i - 1)
        for x, ca in enumerate(a):
            for y, cb in enumerate(b):
                out[x + y + 1] += w * ca * cb
    return tuple(out)


@pytest.fixture(scope="session")
def cache():
    return ClassCache()


@pytest.fixture(scope="session")
def alphas():
    return derive_alpha_series(8)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(mod.RESULTS, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
