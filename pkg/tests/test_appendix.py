import itertools

import pytest
from hypothesis import given, settings, strategies as st

from lgmirror.appendix import (A1_PARTITION, A2_PARTITION, NefPartition, PartitionError, a1_chain,
                               appendix_x_change, build_weight_matrix, column_term, default_partition, f_columns,
                               m_columns, run_appendix, torus_chart_substitute, validate_partition,
                               x_change_bindings)
from lgmirror.corpus import get_example
from lgmirror.exact import LaurentPolynomial, RationalFunction, parse_expression, require_laurent, rf_substitute
from lgmirror.quiver import NotFanoError, assemble_laurent, build_initial_triplet

EXPECTED_K2 = [
    [1, 0, 0, 1, 1, 1],
    [1, 1, 1, 0, 0, 1],
]
EXPECTED_K4 = [
    [1, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1],
    [1, 1, 0, 0, 0, 0, 1, 0, 0, 1, 1, 1],
    [1, 1, 1, 0, 0, 1, 0, 0, 0, 0, 1, 1],
    [1, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 1],
]


def test_weight_matrices_for_k2_and_k4():
    assert build_weight_matrix(2) == EXPECTED_K2
    assert build_weight_matrix(4) == EXPECTED_K4


@pytest.mark.parametrize("k", range(2, 7))
def test_weight_matrix_shape(k):
    d = build_weight_matrix(k)
    assert len(d) == k and all(len(row) == 3 * k for row in d)
    # every row has the anticanonical class k + 2
    assert all(sum(row) == k + 2 for row in d)


def test_superpotential_in_x_variables():
    w, fs = appendix_x_change(2)
    assert w == LaurentPolynomial.parse(
        "x_1_1 + x_1_2 + 1/(x_1_1*x_1_2*x_2_3) + 1/(x_1_1*x_2_2*x_2_3) + x_2_2 + x_2_3")
    assert [f.to_text() for f in fs] == ["x_1_1", "x_1_2 + x_2_2", "x_2_3"]


@pytest.mark.parametrize("k", range(2, 6))
def test_x_change_recovers_plain_superpotential(k):
    plain = assemble_laurent(build_initial_triplet(k, auxiliary=False))
    w, _ = appendix_x_change(k)
    assert rf_substitute(RationalFunction(plain), x_change_bindings(k), w.variables) == RationalFunction(w)


@pytest.mark.parametrize("k", range(2, 6))
def test_f_columns_have_class_one(k):
    d = build_weight_matrix(k)
    for j in range(1, k + 2):
        cols = f_columns(k, j)
        assert [sum(row[c - 1] for c in cols) for row in d] == [1] * k
        assert sum((column_term(k, c) for c in cols), LaurentPolynomial.zero(column_term(k, 1).variables)) \
            == appendix_x_change(k)[1][j - 1]


def test_a1_and_a2_examples():
    for example_id, p in (("A.1", A1_PARTITION), ("A.2", A2_PARTITION)):
        e = get_example(example_id)
        assert run_appendix(e.k, e.degrees, p).result == e.expected_laurent()


def test_a1_chain_reaches_the_main_route_mirror():
    chain = a1_chain()
    phi1 = parse_expression("(1/(y_1_2*y_2_2*y_2_3))*(1 + y_1_2 + y_2_2 + (y_1_2 + y_2_2)*y_2_3)^3")
    assert chain["phi1"] == require_laurent(phi1)
    assert chain["phi2"] == get_example("cubic-G24").expected_laurent()


@pytest.mark.parametrize("bad,message", [
    (NefPartition.of((3, 4), [(1, 2, 5)]), "class"),
    (NefPartition.of((3, 4), [(1, 2, 3, 5)]), "twice"),
    (NefPartition.of((3,), [(1, 2, 5, 6)]), "M columns"),
    (NefPartition.of((3, 4), [(1, 2, 5, 9)]), "range"),
    (NefPartition((3, 4), ((1, 2, 5, 6),), (3,)), "distinguished"),
    (NefPartition.of((3, 4), [(1, 2, 5, 6), (1,)]), "parts"),
])
def test_partition_errors(bad, message):
    with pytest.raises(PartitionError, match=message):
        validate_partition(2, (3,), bad)


def test_non_fano_and_bad_input():
    with pytest.raises(NotFanoError):
        run_appendix(2, (4,))
    with pytest.raises(ValueError):
        run_appendix(1, (1,))
    with pytest.raises(ValueError):
        run_appendix(3, (0,))


def test_partition_json_round_trip():
    data = {"E": [3, 4], "Em": [[1, 2, 5, 6]], "sm": [1]}
    assert NefPartition.from_json(data) == A1_PARTITION
    assert A1_PARTITION.to_json_data() == data


def test_empty_partition_leaves_polynomial_unchanged():
    w, _ = appendix_x_change(3)
    assert torus_chart_substitute(w, 3, NefPartition.of(m_columns(3), [])) == w


def _valid_partitions(k, degrees):
    """All partitions of the x columns into groups of f_j's with the given sizes."""
    for order in itertools.permutations(range(1, k + 2)):
        parts, j = [], 0
        for d in degrees:
            parts.append([c for f in order[j:j + d] for c in f_columns(k, f)])
            j += d
        yield NefPartition.of(m_columns(k), parts)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([(2, (1,)), (2, (2,)), (2, (1, 1)), (3, (2, 1)), (3, (1, 1)), (3, (3,)), (4, (2, 1)),
                        (4, (1, 1, 1))]),
       st.integers(0, 10_000))
def test_random_partitions_stay_laurent(spec, seed):
    k, degrees = spec
    options = list(itertools.islice(_valid_partitions(k, degrees), 50))
    p = options[seed % len(options)]
    validate_partition(k, degrees, p)
    out = run_appendix(k, degrees, p).result
    assert len(out.used_variables()) <= 2 * k - len(degrees)
    assert all(c > 0 for c in out.terms.values())


@pytest.mark.parametrize("k,degrees", [(2, (1,)), (3, (2, 1)), (4, (1, 1, 1, 1))])
def test_default_partition_is_valid(k, degrees):
    p = default_partition(k, degrees)
    validate_partition(k, degrees, p)
    assert p.distinguished == tuple(min(part) for part in p.parts)
