"""Property tests for the stated invariants."""
import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from loopcoh import geodesy
from loopcoh.algebra import GF, kernel_basis, mat_vec, rank, rref
from loopcoh.indexsets import IF, IT, IndexSetSpec, member
from loopcoh.loopspace import TruncSpaceParams, loop_model, main_module, main_poincare
from loopcoh.series import PowerSeries, RationalSeries, even_part, expand, odd_part

primes = st.sampled_from([2, 3, 5, 7, 11])


@st.composite
def matrices(draw, max_dim=7):
    p = draw(primes)
    m = draw(st.integers(1, max_dim))
    n = draw(st.integers(1, max_dim))
    entries = draw(st.lists(st.integers(0, p - 1), min_size=m * n, max_size=m * n))
    return np.array(entries, dtype=np.int64).reshape(m, n), p


@given(matrices())
def test_rref_idempotent(mp):
    M, p = mp
    R, rk, piv = rref(M, GF(p))
    R2, rk2, piv2 = rref(R, GF(p))
    assert np.array_equal(R, R2) and rk == rk2 == len(piv) and piv == piv2


@given(matrices())
def test_rank_nullity(mp):
    M, p = mp
    ker = kernel_basis(M, GF(p))
    assert rank(M, GF(p)) + len(ker) == M.shape[1]
    for v in ker:
        assert not np.any(mat_vec(M, v, GF(p)))


@given(matrices(max_dim=12))
def test_numba_matches_numpy(mp):
    M, p = mp
    a = rref(M, GF(p), use_numba=True)
    b = rref(M, GF(p), use_numba=False)
    assert np.array_equal(a[0], b[0]) and a[1:] == b[1:]


@settings(max_examples=60)
@given(st.integers(1, 4), st.sampled_from([2, 3, 5]), st.integers(0, 10), st.data())
def test_membership_scalar_invariant_and_qcheck(r, p, m, data):
    coeffs = data.draw(st.lists(st.integers(0, p - 1), min_size=m + 1, max_size=m + 1))
    c = data.draw(st.integers(1, p - 1))
    R = geodesy.projective_bundle_ring(r, GF(p))
    P = {(m - k, k): v for k, v in enumerate(coeffs) if v}
    cP = {mono: v * c for mono, v in P.items()}
    assert R.ideal_membership(P) == R.ideal_membership(cP)
    assert R.ideal_membership(P) == geodesy.qcheck_membership(P, r, p)


den_factors = st.lists(st.integers(1, 6), max_size=3)
polys = st.lists(st.integers(-3, 3), min_size=1, max_size=5)


@given(polys, den_factors, polys, den_factors, st.integers(0, 20))
def test_expand_is_multiplicative(n1, d1, n2, d2, N):
    a, b = RationalSeries.make([n1], den=d1), RationalSeries.make([n2], den=d2)
    assert expand(a * b, N) == expand(a, N) * expand(b, N)


@given(polys, den_factors, polys, den_factors, st.integers(0, 20))
def test_expand_is_additive(n1, d1, n2, d2, N):
    a, b = RationalSeries.make([n1], den=d1), RationalSeries.make([n2], den=d2)
    assert expand(a + b, N) == expand(a, N) + expand(b, N)


@given(st.lists(st.integers(-5, 5), min_size=1, max_size=15))
def test_even_odd_split(cs):
    P = PowerSeries(tuple(cs), len(cs) - 1)
    assert even_part(P) + odd_part(P) == P


@given(st.integers(1, 8), st.sampled_from([2, 3, 5, 7]), st.integers(1, 400))
def test_membership_periodic(r, p, k):
    for kind in (IF, IT):
        S = IndexSetSpec(kind, r, p, 2)
        assert member(S, k) == member(S, k + S.period)


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 8), st.sampled_from([2, 3, 5, 7]))
def test_main_module_series(r, p):
    N = TruncSpaceParams(r, p, 2).default_cutoff()
    assert main_module(r, p, N).series(N) == main_poincare(r, p, N)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 5), st.sampled_from([0, 2, 3, 5]), st.sampled_from([2, 4]), st.integers(1, 60))
def test_d_squared_and_dims(r, p, alpha, n):
    m = loop_model(r, p, alpha)
    for lab in m.basis(n):
        assert m.apply_d(m.d(lab)) == {}
    if p and (r + 1) % p and n % 2 == 0:
        assert m.dim(n) == m.dim(n - 1)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 3), st.sampled_from([2, 3, 5]), st.data())
def test_loop_products_commute_and_associate(r, p, data):
    m = loop_model(r, p, 2)
    labs = [lab for n in range(0, 4 * (2 * r) + 1) for lab in m.basis(n)]
    a, b, c = (data.draw(st.sampled_from(labs)) for _ in range(3))
    sign = -1 if m.is_odd(a) and m.is_odd(b) else 1
    ab = m.multiply({a: 1}, {b: 1})
    ba = m.multiply({b: 1}, {a: 1})
    assert ab == {k: m._norm(sign * v) for k, v in ba.items() if m._norm(sign * v)}
    assert m.multiply(ab, {c: 1}) == m.multiply({a: 1}, m.multiply({b: 1}, {c: 1}))
