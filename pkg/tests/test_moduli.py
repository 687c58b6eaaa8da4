import random

import pytest

from m0n.errors import InvalidN
from m0n.moduli import (
    ClassCache,
    GClass,
    _convolution,
    _convolution_unfolded,
    betti,
    gamma_class,
    grothendieck_class,
    is_gamma_positive,
    load_cache,
    save_cache,
)
from m0n.polycore import Poly, gamma_decompose, gamma_reconstruct, is_palindromic

from conftest import KNOWN_CLASSES, KNOWN_GAMMAS, naive_class


def test_base_case(cache):
    assert grothendieck_class(cache, 3).coeffs == (1,)


@pytest.mark.parametrize("n", range(3, 12))
def test_known_table(cache, n):
    assert grothendieck_class(cache, n).coeffs == KNOWN_CLASSES[n]


def test_against_naive_recursion(cache):
    for n in range(3, 31):
        assert grothendieck_class(cache, n).coeffs == naive_class(n)


def test_invalid_n(cache):
    for n in (2, 0, -1):
        with pytest.raises(InvalidN):
            grothendieck_class(cache, n)
        with pytest.raises(InvalidN):
            gamma_class(cache, n)
        with pytest.raises(InvalidN):
            betti(cache, 0, n)


@pytest.mark.parametrize("k,n,expected", [(1, 6, 16), (0, 100, 1), (4, 11, 861235), (9, 11, 0)])
def test_betti(cache, k, n, expected):
    assert betti(cache, k, n) == expected


def test_second_betti_formula(cache):
    for n in range(4, 60):
        assert 2 * betti(cache, 1, n) == 2 ** n - (n * n - n + 2)


def test_class_invariants(cache):
    for n in range(3, 50):
        g = grothendieck_class(cache, n)
        assert len(g.coeffs) == n - 2
        assert is_palindromic(g.poly)
        assert g.coeffs[0] == 1 and min(g.coeffs) > 0


def test_gclass_rejects_bad_data():
    with pytest.raises(ValueError):
        GClass(5, (1, 4, 2))
    with pytest.raises(ValueError):
        GClass(5, (1, 5))


def test_folded_convolution_matches_unfolded(cache):
    polys = {n: grothendieck_class(cache, n).poly for n in range(3, 25)}
    for n in range(4, 25):
        assert _convolution(polys, n) == _convolution_unfolded(polys, n)


def test_fill_order_irrelevant():
    reference = ClassCache()
    grothendieck_class(reference, 25)
    rng = random.Random(7)
    for _ in range(3):
        order = list(range(3, 26))
        rng.shuffle(order)
        c = ClassCache()
        for n in order:
            grothendieck_class(c, n)
            gamma_class(c, n)
        assert all(c.classes[n] == reference.classes[n] for n in range(3, 26))


@pytest.mark.parametrize("n", range(3, 12))
def test_gamma_list(cache, n):
    assert gamma_class(cache, n).coeffs == KNOWN_GAMMAS[n]


def test_gamma_recursion_equals_decomposition(cache):
    for n in range(3, 41):
        g = gamma_class(cache, n)
        assert g.poly == gamma_decompose(grothendieck_class(cache, n).poly)
        assert gamma_reconstruct(g.poly, n - 3) == grothendieck_class(cache, n).poly
        assert g.coeffs[0] == 1
        assert len(g.coeffs) - 1 == (n - 3) // 2


def test_gamma_positivity(cache):
    assert is_gamma_positive(gamma_class(cache, 5))
    assert not is_gamma_positive(Poly([1, -1]))
    assert is_gamma_positive(gamma_class(cache, 11))


class TestCacheFile:
    def test_round_trip(self, tmp_path):
        c = ClassCache()
        grothendieck_class(c, 15)
        path = tmp_path / "classes.txt"
        save_cache(c, path)
        text = path.read_text()
        assert text.splitlines()[0] == "# m0n-class-cache v1"
        assert "\n9: 1,219,3292,7723,3292,219,1\n" in text
        loaded = load_cache(path)
        assert loaded.classes == c.classes

    def test_checksum_mismatch_discards(self, tmp_path):
        c = ClassCache()
        grothendieck_class(c, 8)
        path = tmp_path / "classes.txt"
        save_cache(c, path)
        path.write_text(path.read_text().replace("5: 1,5,1", "5: 1,6,1"))
        assert load_cache(path).classes == {}

    def test_bad_version_discards(self, tmp_path):
        path = tmp_path / "classes.txt"
        path.write_text("# m0n-class-cache v0\n# sha256 00\n3: 1\n")
        assert load_cache(path).classes == {}

    def test_missing_file(self, tmp_path):
        assert load_cache(tmp_path / "nope").classes == {}

    def test_loaded_cache_extends(self, tmp_path):
        c = ClassCache()
        grothendieck_class(c, 8)
        path = tmp_path / "classes.txt"
        save_cache(c, path)
        loaded = load_cache(path)
        assert grothendieck_class(loaded, 14).coeffs == naive_class(14)
