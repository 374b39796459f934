import pytest

from loopcoh.algebra import AlgebraError
from loopcoh.indexsets import IF, IFPRIME, IT, IndexSetSpec, enumerate_set, member, witness


def test_examples():
    assert enumerate_set(IndexSetSpec(IF, 2, 2, 2), 16) == [4, 6, 12, 14]
    assert enumerate_set(IndexSetSpec(IF, 2, 5, 2), 34) == [8, 14, 28, 34]
    assert enumerate_set(IndexSetSpec(IF, 2, 3, 2), 12) == [4, 8, 12]


def test_witness():
    assert witness(IndexSetSpec(IF, 2, 2, 2), 6) == (1, 1)
    assert witness(IndexSetSpec(IF, 2, 2, 2), 8) is None
    with pytest.raises(AlgebraError):
        witness(IndexSetSpec(IFPRIME, 2, 3, 2), 4)


def test_ifprime_requires_alpha_two():
    with pytest.raises(AlgebraError):
        IndexSetSpec(IFPRIME, 2, 3, 4)


def test_bad_params():
    with pytest.raises(AlgebraError):
        IndexSetSpec(IF, 0, 2)
    with pytest.raises(AlgebraError):
        IndexSetSpec(IF, 1, 4)
    with pytest.raises(AlgebraError):
        IndexSetSpec("XX", 1, 2)


def test_ifprime_divisible_case():
    # IF(2,3,2) = 4N; remove 4N, add 2 + 4N
    assert enumerate_set(IndexSetSpec(IFPRIME, 2, 3, 2), 20) == [6, 10, 14, 18]
    # r = 1: IF(1,2,2) = 2N, IF' = 4 + 2N
    assert enumerate_set(IndexSetSpec(IFPRIME, 1, 2, 2), 10) == [4, 6, 8, 10]


@pytest.mark.parametrize("r", range(1, 9))
@pytest.mark.parametrize("p", (2, 3, 5, 7))
def test_intersection_and_periodicity(r, p):
    S_F, S_T = IndexSetSpec(IF, r, p, 2), IndexSetSpec(IT, r, p, 2)
    N = 6 * S_F.period
    both = [k for k in range(1, N + 1) if member(S_F, k) and member(S_T, k)]
    if (r + 1) % p == 0:
        assert both == list(range(2 * r, N + 1, 2 * r))
    else:
        assert both == []
    for k in range(1, N - S_F.period + 1):
        assert member(S_F, k) == member(S_F, k + S_F.period)
        assert member(S_T, k) == member(S_T, k + S_T.period)
        if k % 2 == 0 and k >= 2:
            witness(S_F, k)
            witness(S_T, k)
