from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from oracles import multinomial_constant_term, naive_constant_term
from lgmirror.corpus import get_example
from lgmirror.exact import LaurentPolynomial
from lgmirror.periods import (D0_PREFACTOR_READING, IseriesReading, Series, calibrate_iseries, check_period_condition,
                              compare_series, default_n_terms, exponential_twist, grassmannian_coefficient,
                              grassmannian_iseries, harmonic_gamma, main_period, projective_ci_iseries,
                              projective_ci_lg)
from lgmirror.quiver import NotFanoError
from lgmirror.transform import ModelSpec

# hand-written exponent dictionaries, independent of the package
G24_SUPERPOTENTIAL = {  # variables a_1_1, a_1_2, a_2_1, a_2_2
    (1, 0, 0, 0): 1, (-1, 0, 1, 0): 1, (0, -1, 0, 1): 1, (-1, 1, 0, 0): 1, (0, 0, -1, 1): 1, (0, 0, 0, -1): 1,
}
QUADRIC_THREEFOLD = {  # variables a_1_1, a_1_2, a_2_1
    (-1, 1, 0): 1, (0, 0, -1): 1, (-1, 0, 1): 1, (0, -1, 0): 1, (1, 0, 0): 1,
}


def test_harmonic_numbers():
    assert harmonic_gamma(0) == 0
    assert harmonic_gamma(1) == 1
    assert harmonic_gamma(4) == Fraction(25, 12)
    with pytest.raises(ValueError):
        harmonic_gamma(-1)


def test_reference_constant_terms():
    assert multinomial_constant_term(G24_SUPERPOTENTIAL, 4) == 48
    assert multinomial_constant_term(G24_SUPERPOTENTIAL, 8) == 15120
    assert [multinomial_constant_term(QUADRIC_THREEFOLD, j) for j in (3, 6)] == [12, 540]


def test_calibration_picks_the_reading_matching_the_references():
    cal = calibrate_iseries()
    assert cal.reading == IseriesReading("di*d", 2, 1)
    assert [v for _, _, v in cal.evidence] == [48, 12, 540]
    rejected = dict(cal.rejected)
    assert D0_PREFACTOR_READING in rejected
    assert rejected[D0_PREFACTOR_READING] != (48, 12, 540)
    assert "reading" in cal.to_json_data()


def test_grassmannian_iseries_values():
    g24 = grassmannian_iseries(ModelSpec.grassmannian(2, ()), 9)
    assert g24[4] == 48 and g24[8] == 15120
    assert [g24[j] for j in (1, 2, 3, 5, 6, 7)] == [0] * 6
    q = grassmannian_iseries(ModelSpec.grassmannian(2, (1,)), 7)
    assert q == [1, 0, 0, 12, 0, 0, 540]


def test_factorial_prefactor_reading_disagrees():
    assert grassmannian_coefficient(2, (1,), 1, D0_PREFACTOR_READING) != 12


def test_projective_iseries():
    assert projective_ci_iseries(ModelSpec.projective(4, (3,)), 7) == [1, 0, 12, 0, 540, 0, 33600]
    assert projective_ci_iseries(ModelSpec.projective(5, (2, 2)), 5) == [1, 0, 8, 0, 216]
    assert projective_ci_iseries(ModelSpec.projective(3, ()), 9)[4] == 24


def test_projective_lg_shape():
    f = projective_ci_lg(ModelSpec.projective(5, (2, 2)))
    assert f.variables.names == ("x_1_1", "x_2_1", "y_1")
    assert len(f.used_variables()) == 5 - 2


def test_projective_lg_against_oracle():
    f = projective_ci_lg(ModelSpec.projective(5, (2, 2)))
    terms = {e: c for e, c in f.terms.items()}
    got = main_period(f, 7)
    assert got == [naive_constant_term(terms, j) for j in range(7)]


@pytest.mark.parametrize("example_id,values", [
    ("quadric-threefold", [1, 0, 0, 12, 0, 0, 540]),
    ("degree-40", [1, 0, 6, 0, 114, 0, 2940]),
    ("X10-dim-4", [1, 0, 12, 0, 684]),
])
def test_mirror_periods_against_oracle(example_id, values):
    e = get_example(example_id)
    f = e.expected_laurent()
    terms = dict(f.terms)
    assert [naive_constant_term(terms, j) for j in range(len(values))] == values
    spec = ModelSpec.grassmannian(e.k, e.degrees)
    assert grassmannian_iseries(spec, len(values)) == values


@pytest.mark.parametrize("k,degrees", [(2, (1,)), (2, (2,)), (3, (1, 1, 1)), (3, (2, 1)), (2, (1, 1)), (3, (1, 1, 1, 1))])
def test_period_condition_holds(k, degrees):
    report = check_period_condition(ModelSpec.grassmannian(k, degrees), n_terms=7)
    assert report.passed, report.mismatches
    if report.spec.index == 1:
        assert report.alpha == 0


def test_exponential_twist():
    s = Series([1, 0, 2])
    assert exponential_twist(s, 0) == s
    assert exponential_twist(s, 1) == [1, 1, 3]


def test_compare_series_reports_mismatches():
    verdict, alpha, bad = compare_series(Series([1, 0, 5]), Series([1, 0, 6]), 2)
    assert verdict == "fail" and bad == [2] and alpha is None


def test_series_helpers():
    f = LaurentPolynomial.parse("x + 1/x")
    assert main_period(f, 5).n_terms == 5
    assert default_n_terms(f) == 8
    with pytest.raises(ValueError):
        main_period(f, 0)
    assert Series([1, Fraction(1, 2)]).to_json_data() == ["1", "1/2"]


def test_non_fano_specs_are_rejected():
    with pytest.raises(NotFanoError):
        grassmannian_iseries(ModelSpec.grassmannian(2, (2, 2)), 4)
    with pytest.raises(NotFanoError):
        projective_ci_iseries(ModelSpec.projective(3, (4,)), 4)


@settings(max_examples=20, deadline=None)
@given(st.integers(2, 6).flatmap(lambda n: st.tuples(
    st.just(n), st.lists(st.integers(1, 3), max_size=3).filter(lambda ds: sum(ds) < n + 1))))
def test_projective_period_matches_iseries(spec):
    n, degrees = spec
    s = ModelSpec.projective(n, degrees)
    f = projective_ci_lg(s)
    terms = 6 if len(f.used_variables()) <= 4 else 4
    period = main_period(f, terms)
    iseries = projective_ci_iseries(s, terms)
    assert period == iseries
    # coefficients are nonnegative integers supported on multiples of the index
    assert all(c >= 0 and Fraction(c).denominator == 1 for c in period.coefficients)
    assert all(c == 0 for j, c in enumerate(period.coefficients) if j % s.index)


@settings(max_examples=20, deadline=None)
@given(st.integers(2, 5), st.integers(0, 3))
def test_grassmannian_coefficients_are_integers(k, d):
    for degrees in ((), (1,), (2,), (1, 1)):
        spec = ModelSpec.grassmannian(k, degrees)
        if spec.index < 1:
            continue
        c = grassmannian_coefficient(k, degrees, d, calibrate_iseries().reading)
        assert Fraction(c).denominator == 1 and c >= 0
