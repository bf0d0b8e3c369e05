import pytest

from lgmirror.exact import LaurentPolynomial, RationalFunction, rf_substitute
from lgmirror.quiver import (BlockHistory, NotFanoError, all_arrows, assemble_laurent, auxiliary_pullback,
                             build_initial_triplet, build_mwgamma_weighting, build_quiver, fano_index, is_vertical,
                             lambda_00s, lambda_degrees, select_blocks, sort_degrees, validate_block_history, var)


def test_quiver_size():
    # 2k-1 vertical arrows plus one sentinel arrow, and k+1 horizontal arrows
    for k in range(2, 7):
        q = build_quiver(k)
        assert len(q.arrows) == 3 * k
        assert len(q.horizontal_arrows()) == k + 1
        assert len(q.vertices) == 2 * k + 2


def test_plain_superpotential_of_g24():
    f = assemble_laurent(build_initial_triplet(2, auxiliary=False))
    expected = LaurentPolynomial.parse(
        "a_1_1 + a_2_1/a_1_1 + a_2_2/a_1_2 + a_1_2/a_1_1 + a_2_2/a_2_1 + 1/a_2_2")
    assert f == expected


def test_auxiliary_form_pulls_back_to_plain_form():
    for k in (2, 3, 4):
        aux = assemble_laurent(build_initial_triplet(k))
        plain = assemble_laurent(build_initial_triplet(k, auxiliary=False))
        pulled = rf_substitute(RationalFunction(aux), auxiliary_pullback(k))
        assert pulled == RationalFunction(plain)


def test_sort_degrees_keeps_positions():
    assert sort_degrees([1, 3, 2]) == ([3, 2, 1], [1, 2, 0])
    with pytest.raises(ValueError):
        sort_degrees([0, 1])


@pytest.mark.parametrize("k,degrees,kinds", [
    (2, [1], ["horizontal"]),
    (3, [2, 1], ["horizontal", "horizontal"]),
    (2, [3], ["mixed"]),
    (3, [2, 2], ["horizontal", "mixed"]),
    (4, [2, 2, 1], ["horizontal", "horizontal", "vertical"]),
    (3, [1, 1, 1, 1], ["horizontal"] * 3 + ["vertical"]),
])
def test_block_selection(k, degrees, kinds):
    blocks = select_blocks(k, degrees)
    assert [b.kind for b in blocks] == kinds
    used = set()
    for b in blocks:
        assert not used & b.arrows
        used |= b.arrows
    assert used <= all_arrows(k)


def test_blocks_have_the_degree_as_size():
    for b, d in zip(select_blocks(5, [3, 2, 1]), [3, 2, 1]):
        assert b.size == d


def test_non_fano_is_rejected():
    assert fano_index(2, [4]) == 0
    with pytest.raises(NotFanoError):
        select_blocks(2, [4])
    with pytest.raises(ValueError):
        select_blocks(1, [1])


def test_vertical_block_consists_of_row_arrows():
    b = select_blocks(2, [2, 1])[-1]
    assert all(is_vertical(a) is False for a in b.arrows)
    assert b.arrows == frozenset(((i, 1), (i, 2)) for i in (1, 2))


@pytest.mark.parametrize("history,r,ok", [
    (BlockHistory.of(), 1, True),
    (BlockHistory.of(), 3, True),
    (BlockHistory.of((), {2}, 3), 3, True),
    (BlockHistory.of({3}, {2, 4}, 5), 5, True),
    (BlockHistory.of((), (), 2), 2, False),
    (BlockHistory.of({2}, {2, 4}, 5), 5, False),
    (BlockHistory.of((), {2}, 3), 2, False),
])
def test_block_history_validation(history, r, ok):
    assert validate_block_history(history, r)[0] is ok


def test_lambda_00s_matches_mwgamma_with_one_weight_row():
    for k in range(2, 7):
        for s in range(2, k + 1):
            lam = lambda_00s(s, k)
            mw = build_mwgamma_weighting(BlockHistory.of((), {s - 1}, s), s, k)
            for name in lam.domain | mw.domain:
                assert lam[name] == mw[name], (k, s, name)


def test_lambda_00s_for_single_row_is_mwgamma_of_empty_history():
    for k in range(2, 6):
        lam = lambda_00s(1, k)
        mw = build_mwgamma_weighting(BlockHistory.of(), 1, k)
        assert {n: lam[n] for n in lam.domain} == {n: mw[n] for n in mw.domain}


def test_lambda_degrees():
    lam = build_mwgamma_weighting(BlockHistory.of({3}, {2, 4}, 5), 5, 6)
    f = LaurentPolynomial.parse("a_1_1*a_5_1 + a_4_1/a_1_2")
    assert sorted(lambda_degrees(lam, f)) == [0, 3]
    assert lam[var(1, 1)] == -1 and lam[var(3, 1)] == -1 and lam[var(2, 2)] == -1
