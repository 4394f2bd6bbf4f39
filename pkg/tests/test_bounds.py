"""Bound formulas and the per-position cross-derivation."""

import pytest

from cccodes.bounds import (
    johnson_bound,
    per_position_bound_31,
    size_bound_general,
    upper_22,
    upper_31,
)
from cccodes.core import Composition

C22 = Composition((2, 2))
C31 = Composition((3, 1))


def test_general_cases():
    assert size_bound_general(9, 8, C22).value == 2
    assert size_bound_general(9, 9, C22).value == 1
    assert size_bound_general(5, 2, C22).value == 30  # C(5,4) * 4!/(2!2!)
    assert size_bound_general(9, 6, C22) is None
    b = size_bound_general(12, 7, C22)
    assert b.value == 6 and b.caveat  # d = 2w-1 carries the large-n proviso


def test_general_rejects_unnormalized():
    assert size_bound_general(9, 6, Composition((2, 2, 1))) is None
    with pytest.raises(ValueError, match="not normalized"):
        size_bound_general(9, 6, Composition((1, 2)))
    with pytest.raises(ValueError):
        Composition((2, 0))  # entries must be positive


def test_d8_bound_matches_exhaustive_search():
    # independent oracle for the d = 2w case
    from cccodes.search import max_code
    assert max_code(9, 8, C22).size == 2 == size_bound_general(9, 8, C22).value


def test_johnson_closed_form_22():
    for n in range(4, 60):
        assert johnson_bound(n, 6, C22).value == (n * ((n - 1) // 3)) // 2
    assert johnson_bound(10, 6, C22).value == 15
    assert johnson_bound(10, 6, C31).value == 10


def test_upper_22_values():
    assert upper_22(10).value == 15
    assert upper_22(11).value == 16   # paper proves A = 15 < U here
    assert upper_22(13).value == 26
    with pytest.raises(ValueError):
        upper_22(3)


def test_upper_31_values():
    assert upper_31(16).value == 24
    assert upper_31(14).value == 17
    assert upper_31(9).value == 6
    assert upper_31(4).value == 1
    with pytest.raises(ValueError):
        upper_31(3)


def test_per_position_examples():
    assert per_position_bound_31(13).value == 16
    assert per_position_bound_31(16).value == 24
    assert per_position_bound_31(4).value == 1


def test_per_position_equals_closed_form_on_refined_residues():
    for n in range(4, 1001):
        if n % 9 in (4, 5, 7):
            assert per_position_bound_31(n).value == upper_31(n).value, n


def test_upper_vs_johnson():
    for n in range(4, 1001):
        assert upper_31(n).value <= johnson_bound(n, 6, C31).value
        assert upper_22(n).value == johnson_bound(n, 6, C22).value


def test_monotonicity():
    for n in range(4, 1000):
        assert upper_22(n + 1).value >= upper_22(n).value
        assert upper_31(n + 1).value >= upper_31(n).value
