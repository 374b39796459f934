from fractions import Fraction

import numpy as np
import pytest

from loopcoh import geodesy
from loopcoh.algebra import (
    GF, QQ, ZZ, AlgebraError, GradedAlgebra, QuotientRing, Variable, in_span, is_prime,
    kernel_basis, mat_vec, matrix, rank, rref, solve,
)


def test_is_prime():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]
    with pytest.raises(AlgebraError):
        GF(4)


def test_rref_identity_and_zero(use_numba):
    R, rk, piv = rref(np.eye(2, dtype=np.int64), GF(3), use_numba=use_numba)
    assert rk == 2 and piv == [0, 1]
    R, rk, piv = rref(np.zeros((3, 4), dtype=np.int64), GF(3), use_numba=use_numba)
    assert rk == 0 and piv == []


def test_rref_dependent_rows(use_numba):
    R, rk, piv = rref(np.array([[1, 2], [2, 4]]), GF(5), use_numba=use_numba)
    assert rk == 1 and piv == [0]
    assert R.tolist() == [[1, 2], [0, 0]]


def test_rref_rational():
    M = matrix([[1, 2], [3, 4]], QQ)
    R, rk, piv = rref(M, QQ)
    assert rk == 2 and R[0, 0] == Fraction(1) and R[0, 1] == 0


def test_kernel_basis_examples():
    assert kernel_basis(np.eye(3, dtype=np.int64), GF(2)) == []
    assert len(kernel_basis(np.zeros((2, 3), dtype=np.int64), GF(7))) == 3
    (v,) = kernel_basis(np.array([[1, 1]]), GF(2))
    assert v.tolist() == [1, 1]


def test_kernel_vectors_are_annihilated():
    M = np.array([[1, 2, 3, 4], [2, 4, 1, 0], [3, 1, 4, 4]])
    F = GF(5)
    ker = kernel_basis(M, F)
    assert len(ker) + rank(M, F) == 4
    for v in ker:
        assert not np.any(mat_vec(M, v, F))


def test_in_span_and_solve():
    F = GF(3)
    assert in_span([np.array([1, 1, 0]), np.array([0, 1, 1])], np.array([1, 2, 1]), F)
    assert not in_span([np.array([1, 1, 0])], np.array([0, 0, 1]), F)
    assert solve(np.array([[1, 1], [0, 1]]), np.array([1, 2]), F) == [2, 2]
    assert solve(np.array([[1], [1]]), np.array([1, 2]), F) is None


def test_integers_rejected():
    with pytest.raises(AlgebraError, match="field required"):
        matrix([[1]], ZZ)
    R = QuotientRing([Variable("x", 2)], [{(3,): 1}], ZZ)
    with pytest.raises(AlgebraError, match="field required"):
        R.ideal_membership({(3,): 1})
    with pytest.raises(AlgebraError, match="field required"):
        R.degree_basis(2)


def test_degree_parity_enforced():
    with pytest.raises(AlgebraError):
        GradedAlgebra([Variable("x", 3)], GF(2))
    with pytest.raises(AlgebraError):
        GradedAlgebra([Variable("s", 2, True)], GF(2))


def test_graded_commutativity_signs():
    A = GradedAlgebra([Variable("a", 1, True), Variable("b", 3, True), Variable("x", 2)], QQ)
    a, b, x = A.var("a"), A.var("b"), A.var("x")
    assert A.mul(a, b) == A.scale(A.mul(b, a), -1)
    assert A.mul(a, x) == A.mul(x, a)
    assert A.mul(a, a) == {}


def test_truncated_polynomial_basis():
    R = QuotientRing([Variable("x", 2)], [{(3,): 1}], GF(7))
    assert R.degree_basis(4) == [(2,)]
    assert R.dims(8) == [1, 0, 1, 0, 1, 0, 0, 0, 0]


def test_projective_bundle_degree_four():
    R = geodesy.projective_bundle_ring(2, GF(5))
    assert len(R.degree_basis(4)) == 2


def test_ideal_membership_examples():
    R = geodesy.projective_bundle_ring(2, GF(5))
    assert R.ideal_membership({(3, 0): 1})
    assert R.ideal_membership(geodesy.q_poly(4))
    assert not R.ideal_membership({(2, 1): 1})
    with pytest.raises(AlgebraError, match="inhomogeneous"):
        R.ideal_membership({(1, 0): 1, (2, 0): 1})


def test_multiply_examples():
    R = geodesy.projective_bundle_ring(2, GF(5))
    b = {(1, 1): 1}
    assert R.multiply(R.one(), b) == R.reduce(b)
    # x1 * x1^r = x1^(r+1) lies in the ideal, so the coset is zero
    assert R.multiply({(1, 0): 1}, {(2, 0): 1}) == {}
    S = geodesy.unit_tangent_ring(1, 2)
    sigma = S.var("sigma")
    assert S.multiply(sigma, sigma) == {}


def test_multiply_associative_and_commutative():
    R = geodesy.unit_tangent_ring(2, 3)
    basis = [m for d in range(8) for m in R.degree_basis(d)]
    for a in basis:
        for b in basis:
            ab = R.multiply({a: 1}, {b: 1})
            ba = R.multiply({b: 1}, {a: 1})
            sign = -1 if (R.degree(a) * R.degree(b)) % 2 else 1
            assert ab == R.reduce(R.scale(ba, sign))
            for c in basis:
                assert R.multiply(ab, {c: 1}) == R.multiply({a: 1}, R.multiply({b: 1}, {c: 1}))
