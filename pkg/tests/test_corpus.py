import pytest

from lgmirror.corpus import EXAMPLES, get_example, regenerate
from lgmirror.exact import LaurentPolynomial, parse_expression


@pytest.mark.parametrize("record", EXAMPLES, ids=[e.id for e in EXAMPLES])
def test_example_regenerates(record):
    assert regenerate(record) == record.expected_laurent()


@pytest.mark.parametrize("record", EXAMPLES, ids=[e.id for e in EXAMPLES])
def test_expected_text_round_trip(record):
    f = record.expected_laurent()
    assert LaurentPolynomial.parse(f.to_text()) == f
    assert parse_expression(f.to_text()) == record.expected_rational()


def test_ids_are_unique_and_lookup_works():
    ids = [e.id for e in EXAMPLES]
    assert len(ids) == len(set(ids)) == 18
    assert get_example("V14").k == 4
    with pytest.raises(KeyError):
        get_example("no-such-example")


def test_unknown_method():
    from dataclasses import replace
    with pytest.raises(ValueError):
        regenerate(replace(get_example("V14"), method="guess"))
