import numpy as np
import pytest

from loopcoh import derived
from loopcoh.derived import (
    DegreeOverflow, alpha_cycle, beta_cycle, beta_explicit, build_level, de_rham_on_homology,
    default_cutoff, expected_de_rham, face, homology_dim, homology_table, level, omega,
    shuffle_product, shuffle_identities, unnormalized_homology_dim, verify_cycles,
)
from loopcoh.loopspace import loop_model

GRID = [(1, 2, 2), (2, 2, 2), (2, 3, 2), (1, 3, 2), (1, 2, 4)]


def test_cutoff_warning():
    lv = build_level(2, 3, 2, 1, internal_cutoff=3)
    assert lv.warnings and "below" in lv.warnings[0]
    assert build_level(2, 3, 2, 1).warnings == []


def test_level_zero_dims():
    # F_p[x] (x) Lambda(dx): one class in each degree alpha*k and alpha*k + alpha - 1
    assert [level(1, 2, 2, 0).dim(j) for j in range(6)] == [1] * 6
    assert [level(1, 2, 4, 0).dim(j) for j in range(9)] == [1, 0, 0, 1, 1, 0, 0, 1, 1]


def test_d0_of_dy1():
    lv = level(2, 5, 2, 1)
    # (r+1) x^r dx in level 0, exponents (x, dx)
    assert face(2, 5, 2, 1, 0, lv.gen(lv.idy(1))) == {(2, 1): 3}


@pytest.mark.parametrize("r,p,a", GRID)
def test_simplicial_object(r, p, a):
    for j in range(default_cutoff(r, a) + 1):
        assert derived.simplicial_identity_failures(r, p, a, 3, j) == []
        assert derived.derivation_failures(r, p, a, 3, j) == []
    assert build_level(r, p, a, 2).identity_failures == []


@pytest.mark.parametrize("r,p,a", GRID)
def test_normalized_equals_unnormalized(r, p, a):
    for q in range(4):
        for j in range(default_cutoff(r, a) + 1):
            assert homology_dim(r, p, a, q, j) == unnormalized_homology_dim(r, p, a, q, j)


def test_table_examples():
    H = homology_table(1, 2, 2, 0)
    assert [H.table[(0, j)] for j in range(6)] == [1, 1, 1, 1, 0, 0]
    H = homology_table(2, 2, 2, 1)
    live = sorted(k for k, v in H.table.items() if v and k[0] == 1)
    assert live == [(1, 6), (1, 7), (1, 8), (1, 9)]


@pytest.mark.parametrize("r,p,a", GRID)
def test_table_matches_closed_form(r, p, a):
    H = homology_table(r, p, a, 3)
    assert H.mismatches() == []
    assert all(row["match"] for row in H.rows())


@pytest.mark.parametrize("r,p,a", GRID)
def test_named_cycles(r, p, a):
    for i in range(4):
        rep = verify_cycles(r, p, a, i)
        assert all(rep.values()), rep


def test_beta_formula():
    assert beta_cycle(2, 5, 2, 2) == beta_explicit(2, 5, 2, 2)
    A = level(2, 5, 2, 1).alg
    # beta_1 = x dy1 - (r+1) dx y1
    assert beta_cycle(2, 5, 2, 1) == A.add(A.mul(A.var("x"), A.var("dy1")),
                                            A.scale(A.mul(A.var("dx"), A.var("y1")), -3))


def test_shuffle_examples():
    r, p, a = 1, 3, 2
    A2 = level(r, p, a, 2).alg
    one = level(r, p, a, 0).alg.one()
    w1 = omega(r, p, a, 1)
    assert shuffle_product(r, p, a, one, 0, w1, 1) == w1
    assert shuffle_product(r, p, a, w1, 1, w1, 1) == A2.scale(omega(r, p, a, 2), 2)
    assert derived.homologous(r, p, a, 2, shuffle_product(r, p, a, alpha_cycle(r, p, a, 1), 1,
                                                          alpha_cycle(r, p, a, 1), 1), {})
    with pytest.raises(DegreeOverflow):
        shuffle_product(r, p, a, w1, 1, w1, 1, max_simplicial=1)


@pytest.mark.parametrize("r,p,a", GRID)
def test_shuffle_identities(r, p, a):
    res = shuffle_identities(r, p, a, 3)
    assert res and all(res.values()), res


def test_de_rham_examples():
    # b_1 -> (1 + (r+1)) a_1 = 4 a_1 for r = 2 (coprime needs p not dividing 3)
    assert de_rham_on_homology(2, 5, 2, 1)[("b", 1, 1)] == {("a", 1, 1): 4}
    assert de_rham_on_homology(2, 5, 2, 1)[("a", 1, 1)] == {}
    for lab, img in de_rham_on_homology(2, 3, 2, 2).items():
        if lab[0] == 0:
            assert img == {}        # d(gamma_i) = 0


@pytest.mark.parametrize("r,p,a", GRID)
def test_de_rham_matches_closed_form_and_loop_model(r, p, a):
    model = loop_model(r, p, a)
    for i in range(4):
        got = de_rham_on_homology(r, p, a, i)
        assert got == expected_de_rham(r, p, a, i)
        for lab, img in got.items():
            if lab != ("1",):
                assert model.d(lab) == img
