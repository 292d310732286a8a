"""Interval exchange construction, evaluation, coding and first return."""

from fractions import Fraction as F

import numpy as np
import pytest

from conftest import golden_float_iet
from ietext import (
    IterateCapExceeded,
    LengthMismatch,
    NonPositiveLength,
    OutOfDomain,
    Permutation,
    ReduciblePermutation,
    make_iet,
)
from ietext.sampling import random_exact_iet, random_point


def test_offsets_two_intervals():
    T = make_iet([0.6, 0.4], (2, 1))
    assert T.offsets == (0.4, -0.6)
    assert T.cuts == (0.0, 0.6, 1.0)
    assert T.mode == "float"


def test_offsets_exact_thirds():
    T = make_iet([F(1, 3)] * 3, (3, 2, 1))
    assert T.offsets == (F(2, 3), F(0), F(-2, 3))
    assert T.mode == "exact"


def test_identity_permutation_rejected():
    with pytest.raises(ReduciblePermutation):
        make_iet([1, 1], (1, 2))


def test_reducible_permutation_names_prefix():
    with pytest.raises(ReduciblePermutation, match="1..2"):
        make_iet([1, 1, 1], (2, 1, 3))


def test_construction_errors():
    with pytest.raises(NonPositiveLength):
        make_iet([F(1), F(0)], (2, 1))
    with pytest.raises(LengthMismatch):
        make_iet([F(1)], (2, 1))
    with pytest.raises(LengthMismatch):
        make_iet([F(1), F(1), F(1)], (2, 1))
    with pytest.raises(TypeError):
        make_iet([F(1, 2), 0.5], (2, 1))


def test_apply_examples():
    T = make_iet([0.6, 0.4], (2, 1))
    assert T.apply(0.1) == 0.5
    assert T.apply(0.7) == pytest.approx(0.1)
    with pytest.raises(OutOfDomain):
        T.apply(1.0)
    with pytest.raises(OutOfDomain):
        T.apply(-0.1)


def test_interval_index_left_closed():
    T = make_iet([0.6, 0.4], (2, 1))
    assert T.interval_index(0.6) == 2
    assert T.interval_index(0.0) == 1
    T3 = make_iet([F(1, 3)] * 3, (3, 2, 1))
    assert T3.interval_index(F(1, 2)) == 2


def test_coding_word_rotation():
    # orbit of 0: 0 -> .4 -> .8 -> .2 -> .6, and 0.6 lies in I_2 = [0.6, 1)
    T = make_iet([F(6, 10), F(4, 10)], (2, 1))
    assert T.coding_word(F(0), 5) == (1, 1, 2, 1, 2)
    assert T.coding_word(F(0), 0) == ()


def test_coding_word_rational_rotation_periodic():
    T = make_iet([F(7, 10), F(3, 10)], (2, 1))  # rotation by 3/10
    word = T.coding_word(F(1, 20), 40)
    assert word[:10] * 4 == word  # purely periodic, period 10


def test_exact_rotation_orbit_closes():
    T = make_iet([F(7, 10), F(3, 10)], (2, 1))
    x = F(1, 20)
    for _ in range(10):
        x = T.apply(x)
    assert x == F(1, 20)


def test_measure_preservation_exact():
    rng = np.random.default_rng(2)
    for _ in range(20):
        T = random_exact_iet(int(rng.integers(2, 6)), rng, denominator=997)
        k = int(rng.integers(1, T.n + 1))
        lo, hi = T.cuts[k - 1], T.cuts[k]
        x = lo + (hi - lo) * F(int(rng.integers(0, 100)), 101)
        y = lo + (hi - lo) * F(int(rng.integers(0, 100)), 101)
        assert T.apply(x) - T.apply(y) == x - y


def test_bijectivity_exact_and_float():
    rng = np.random.default_rng(3)
    for _ in range(10):
        T = random_exact_iet(int(rng.integers(2, 6)), rng)
        inv = T.inverse()
        x = random_point(T, rng)
        assert inv.apply(T.apply(x)) == x
    Tf = golden_float_iet()
    invf = Tf.inverse()
    for _ in range(100):
        x = float(rng.random())
        assert invf.apply(Tf.apply(x)) == pytest.approx(x, abs=1e-12)


def test_coding_consistency():
    rng = np.random.default_rng(4)
    T = random_exact_iet(4, rng)
    x = random_point(T, rng)
    word = T.coding_word(x, 30)
    y = x
    for j in range(30):
        assert word[j] == T.interval_index(y)
        y = T.apply(y)


def test_first_return_whole_interval():
    rng = np.random.default_rng(5)
    T = random_exact_iet(3, rng)
    for _ in range(10):
        x = random_point(T, rng)
        point, steps, word = T.first_return(x, T.total)
        assert (point, steps, word) == (T.apply(x), 1, (T.interval_index(x),))


def test_first_return_hand_example():
    T = make_iet([F(7, 10), F(3, 10)], (2, 1))
    point, steps, word = T.first_return(F(1, 2), F(7, 10))
    assert (point, steps, word) == (F(1, 10), 2, (1, 2))


def test_first_return_cap():
    # rotation by 3/1000: return to a width-1/500 window needs ~1000 steps
    T = make_iet([F(997, 1000), F(3, 1000)], (2, 1))
    with pytest.raises(IterateCapExceeded):
        T.first_return(F(1, 1000), F(1, 500), cap=50)


def test_first_return_domain_checks():
    T = make_iet([F(1, 2), F(1, 2)], (2, 1))
    with pytest.raises(OutOfDomain):
        T.first_return(F(3, 4), F(1, 2))
    with pytest.raises(OutOfDomain):
        T.first_return(F(1, 4), F(2))


def test_permutation_api():
    p = Permutation((3, 1, 2))
    assert p.inverse_image(3) == 1
    assert p.inverse()(3) == 1
    assert p.is_irreducible()
    assert not Permutation((2, 1, 3)).is_irreducible()
    with pytest.raises(ValueError):
        Permutation((1, 1, 2))
