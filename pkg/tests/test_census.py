"""Exhaustive enumeration: canonical order, tallies, witnesses, oracles."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qfermat.census import (
    CENSUS_MAX_N,
    CENSUS_MIN_N,
    CapacityError,
    EXPECTED_GENERIC_CY_N5,
    census_scalar_counts,
    enumerate_params,
    find_witness,
    index_to_params,
    params_to_index,
    run_census,
    total_count,
)
from qfermat.hilb1 import face_complex, hilb1, is_generic
from qfermat.koszulcy import column_sums, cy_criterion, is_twist_realizable

import _oracles
from _util import params_st


# ------------------------------------------------------------ canonical order


def test_total_count_formula():
    assert total_count(3) == 27
    assert total_count(4) == 4096
    assert total_count(5) == 9765625
    assert total_count(6) == 6 ** 15


@given(st.integers(3, 6), st.data())
def test_index_round_trip(n, data):
    index = data.draw(st.integers(0, total_count(n) - 1))
    p = index_to_params(n, index)
    assert params_to_index(p) == index


def test_enumeration_follows_the_index_order():
    stream = enumerate_params(3)
    for expected_index in range(27):
        p = next(stream)
        assert params_to_index(p) == expected_index
        assert p == index_to_params(3, expected_index)


def test_first_matrix_is_commutative():
    p = index_to_params(5, 0)
    assert all(e == 0 for row in p.exps for e in row)


def test_last_index_has_all_top_digits():
    p = index_to_params(3, 26)
    assert p.exponent(1, 2) == 2 and p.exponent(1, 3) == 2 and p.exponent(2, 3) == 2


@given(params_st(min_n=3, max_n=6))
def test_every_matrix_has_an_index(p):
    assert index_to_params(p.n, params_to_index(p)) == p


# ------------------------------------------------------------------- tallies


def test_three_generator_tallies(census3):
    assert census3.total == 27
    assert census3.count_cy == 9
    assert census3.count_generic == 18
    assert census3.count_generic_and_cy == 0
    assert census3.all_generic_cy_have_zero_column_sums
    assert census3.implication_counterexamples == ()
    assert census3.n4_dichotomy_holds is None
    assert census3.alternative_readings is None


def test_four_generator_tallies(census4):
    assert census4.total == 4096
    assert census4.count_cy == 256
    assert census4.count_generic == 1344
    assert census4.count_generic_and_cy == 192
    assert census4.n4_dichotomy_holds is True
    assert census4.dichotomy_counterexamples == ()


def test_tallies_match_naive_cyclotomic_sweep(census3, census4):
    for report, n in ((census3, 3), (census4, 4)):
        naive = _oracles.census_counts_bruteforce(n)
        assert report.total == naive["total"]
        assert report.count_cy == naive["count_cy"]
        assert report.count_generic == naive["count_generic"]
        assert report.count_generic_and_cy == naive["count_generic_and_cy"]


def test_tallies_match_the_scalar_second_pass(census3, census4):
    for report, n in ((census3, 3), (census4, 4)):
        scalar = census_scalar_counts(n)
        assert scalar["total"] == report.total
        assert scalar["count_cy"] == report.count_cy
        assert scalar["count_generic"] == report.count_generic
        assert scalar["count_generic_and_cy"] == report.count_generic_and_cy


def test_tallies_are_worker_count_invariant():
    single = run_census(4, workers=1)
    double = run_census(4, workers=2)
    eight = run_census(4, workers=8)
    for other in (double, eight):
        assert other.total == single.total
        assert other.count_cy == single.count_cy
        assert other.count_generic == single.count_generic
        assert other.count_generic_and_cy == single.count_generic_and_cy
        assert other.implication_counterexamples == single.implication_counterexamples
        assert other.witnesses == single.witnesses


def test_json_and_csv_round_out_the_report(census4):
    blob = census4.to_json_dict()
    assert blob["n"] == 4
    assert blob["total"] == 4096
    assert blob["count_generic_and_cy"] == 192
    names = dict(census4.csv_counts())
    assert names["total"] == 4096
    assert names["generic_and_cy"] == 192


# ------------------------------------------------------- the five-variable run


def test_five_generator_tallies(census5):
    assert census5.total == 9765625
    assert census5.count_cy == 78125
    assert census5.count_generic == 1135000
    assert census5.count_generic_and_cy == 15000


def test_five_generator_implication_fails_on_raw_matrices(census5):
    """Generic and CY does not force zero column sums matrix-by-matrix; the
    census records counterexamples instead of hiding them."""
    assert census5.all_generic_cy_have_zero_column_sums is False
    assert len(census5.implication_counterexamples) == 10
    first = census5.implication_counterexamples[0]
    assert first == 19929
    p = index_to_params(5, first)
    assert is_generic(p)
    report = cy_criterion(p)
    assert report.is_cy
    assert report.common_value == 4
    assert column_sums(p) == (4, 4, 4, 4, 4)


def test_five_generator_alternative_readings(census5):
    assert census5.alternative_readings == {
        "generic_only": 1135000,
        "generic_and_zero_column_sums": 3000,
    }
    assert census5.alternative_readings["generic_and_zero_column_sums"] == (
        EXPECTED_GENERIC_CY_N5
    )


def test_counterexamples_all_verify(census5):
    for index in census5.implication_counterexamples:
        p = index_to_params(5, index)
        assert is_generic(p)
        r = cy_criterion(p)
        assert r.is_cy and r.common_value != 0


def test_twist_shift_bijection_between_common_value_classes(census5):
    """Adding a twist matrix with digit sum s maps generic CY matrices with
    common column-sum value c bijectively onto those with value c + s, so all
    five classes have the same size and the raw count is five times the
    zero-sum slice."""
    from qfermat.qalgebra import from_twist, validate_params

    shift = from_twist([1, 0, 0, 0, 0])
    for index in census5.implication_counterexamples[:3]:
        p = index_to_params(5, index)
        base = cy_criterion(p).common_value
        merged = validate_params(
            5,
            [
                [(p.exps[i][j] + shift.exps[i][j]) % 5 for j in range(5)]
                for i in range(5)
            ],
        )
        assert is_generic(merged) == is_generic(p)
        r = cy_criterion(merged)
        assert r.is_cy
        assert r.common_value == (base + 1) % 5
    assert census5.count_generic_and_cy == 5 * census5.alternative_readings[
        "generic_and_zero_column_sums"
    ]


# ------------------------------------------------------------------ witnesses


def test_witnesses_satisfy_their_predicates(census5):
    assert census5.witnesses
    for w in census5.witnesses:
        assert is_generic(w)
        assert cy_criterion(w).is_cy


def test_find_witness_is_the_canonical_first_match():
    w = find_witness(4, ["generic", "cy"])
    index = params_to_index(w)
    assert index == 29
    for i in range(index):
        p = index_to_params(4, i)
        assert not (is_generic(p) and cy_criterion(p).is_cy)


def test_find_witness_aliases():
    a = find_witness(4, ["generic", "cy"])
    b = find_witness(4, ["is_generic", "is_cy"])
    assert a == b
    full = find_witness(4, ["full"])
    assert full is not None
    assert face_complex(full).is_full
    assert is_twist_realizable(full) is not None


def test_contradictory_predicates_have_no_witness():
    assert find_witness(3, ["full", "generic"]) is None


def test_find_witness_rejects_unknown_predicates():
    with pytest.raises(ValueError):
        find_witness(4, ["shiny"])


def test_five_generator_witness_has_fifty_points(generic_cy_witness5):
    report = hilb1(generic_cy_witness5, "A")
    assert report.discrete and report.total_points == 50
    assert is_twist_realizable(generic_cy_witness5) is None


# ------------------------------------------------------------------ capacity


def test_census_bounds():
    assert CENSUS_MIN_N == 3 and CENSUS_MAX_N == 6
    with pytest.raises(CapacityError):
        run_census(7)
    with pytest.raises(CapacityError):
        next(enumerate_params(8))
    with pytest.raises(ValueError):
        run_census(2)
