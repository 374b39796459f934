"""Grassmannians, spaces of geodesics and unit tangent bundles of CP^r.

All rings are presented as ``QuotientRing`` values; the structural claims
(membership criterion for (Q_r, Q_{r+1}), kernel of multiplication by
x1 - x2, restriction to the diagonal) are checked by linear algebra.
"""
from __future__ import annotations

import contextlib
from dataclasses import dataclass, field

import numpy as np

from .algebra import GF, QQ, AlgebraError, Field, QuotientRing, Variable, as_field, kernel_basis, rank
from .series import PowerSeries, RationalSeries, expand, one_minus

COPRIME = "coprime"
DIV_DIVIDING = "divisible_dividing"
DIV_NOT_DIVIDING = "divisible_not_dividing"

_MUTATIONS: set = set()


@contextlib.contextmanager
def mutation(name):
    """Deliberately corrupt a formula, to check that the checks notice.

    ``qk-sign`` negates the ``x1 x2^(k-1)`` term of ``Q_k`` for ``k >= 2``.
    """
    _MUTATIONS.add(name)
    try:
        yield
    finally:
        _MUTATIONS.discard(name)


# ----------------------------------------------------------- sequences

def phi_sequence(r):
    """phi_0..phi_{r+1} in Z[c1, c2], exponents ``(e_c1, e_c2)``."""
    phis = [{(0, 0): 1}, {(1, 0): -1}]
    for _ in range(2, r + 2):
        a, b = phis[-1], phis[-2]
        nxt = {}
        for (i, j), c in a.items():
            nxt[(i + 1, j)] = nxt.get((i + 1, j), 0) - c
        for (i, j), c in b.items():
            nxt[(i, j + 1)] = nxt.get((i, j + 1), 0) - c
        phis.append({m: c for m, c in nxt.items() if c})
    return phis[: r + 2]


def q_poly(k):
    """Q_k = sum x1^i x2^(k-i), exponents ``(i, k-i)``."""
    Q = {(i, k - i): 1 for i in range(k + 1)}
    if "qk-sign" in _MUTATIONS and k >= 2:
        Q[(1, k - 1)] = -1
    return Q


def q_sequence(r):
    return [q_poly(k) for k in range(r + 2)]


def q_recursion_holds(kmax):
    """Q_i = (x1+x2) Q_{i-1} - x1 x2 Q_{i-2} over Z for 2 <= i <= kmax."""
    for i in range(2, kmax + 1):
        rhs = {}
        for (a, b), c in q_poly(i - 1).items():
            rhs[(a + 1, b)] = rhs.get((a + 1, b), 0) + c
            rhs[(a, b + 1)] = rhs.get((a, b + 1), 0) + c
        for (a, b), c in q_poly(i - 2).items():
            rhs[(a + 1, b + 1)] = rhs.get((a + 1, b + 1), 0) - c
        if {m: c for m, c in rhs.items() if c} != q_poly(i):
            return False
    return True


def q_diagonal_holds(kmax):
    """Q_k(x1, x1) = (k+1) x1^k."""
    return all(sum(q_poly(k).values()) == k + 1 for k in range(kmax + 1))


# --------------------------------------------------------------- rings

def grassmann_ring(r, F=QQ):
    phis = phi_sequence(r)
    return QuotientRing([Variable("c1", 2), Variable("c2", 4)], [phis[r], phis[r + 1]], F,
                        name=f"Gr(2,{r + 1})")


def projective_bundle_ring(r, F=QQ):
    return QuotientRing([Variable("x1", 2), Variable("x2", 2)], [q_poly(r), q_poly(r + 1)], F,
                        name=f"F[x1,x2]/(Q{r},Q{r + 1})")


def projective_bundle_series(r) -> RationalSeries:
    return RationalSeries.make([one_minus(2 * r), one_minus(2 * r + 2)], den=[2, 2])


def unit_tangent_ring(r, p):
    F = GF(p)
    if (r + 1) % p == 0:
        xs = [Variable("x", 2), Variable("sigma", 2 * r - 1, True)]
        top = r + 1
    else:
        xs = [Variable("x", 2), Variable("sigmabar", 2 * r + 1, True)]
        top = r
    return QuotientRing(xs, [{(top, 0): 1}], F, name="H*(S(tau))")


def unit_tangent_series(r, p) -> RationalSeries:
    if (r + 1) % p == 0:
        return RationalSeries.make([one_minus(2 * r + 2), [1] + [0] * (2 * r - 2) + [1]], den=[2])
    return RationalSeries.make([one_minus(2 * r), [1] + [0] * (2 * r) + [1]], den=[2])


@dataclass
class GeodesicBorelPresentation:
    r: int
    p: int
    n: int
    case: str
    ring: QuotientRing

    def series(self) -> RationalSeries:
        if self.case == COPRIME:
            return projective_bundle_series(self.r)
        return unit_tangent_series(self.r, self.p) * RationalSeries.make(den=[2])


def geodesic_borel_ring(r, p, n):
    F = GF(p)
    if n % p:
        return GeodesicBorelPresentation(r, p, n, COPRIME, projective_bundle_ring(r, F))
    if (r + 1) % p == 0:
        ring = QuotientRing([Variable("u", 2), Variable("x", 2), Variable("sigma", 2 * r - 1, True)],
                            [{(0, r + 1, 0): 1}], F)
        return GeodesicBorelPresentation(r, p, n, DIV_DIVIDING, ring)
    ring = QuotientRing([Variable("u", 2), Variable("x", 2), Variable("sigmabar", 2 * r + 1, True)],
                        [{(0, r, 0): 1}], F)
    return GeodesicBorelPresentation(r, p, n, DIV_NOT_DIVIDING, ring)


# ------------------------------------------------------ membership

def coefficient_list(P, m):
    """``[p_0..p_m]`` for ``P = sum p_i x1^i x2^(m-i)``."""
    out = [0] * (m + 1)
    for (i, j), c in P.items():
        if i + j != m:
            raise AlgebraError("inhomogeneous")
        out[i] += c
    return out


def qcheck_membership(P, r, p=None) -> bool:
    """Membership in (Q_r, Q_{r+1}) by comparing coefficients.

    ``P`` is a coefficient list ``[p_0..p_m]`` or a polynomial dict.  The
    coefficients ``p_i`` with ``max(0, m-r) <= i <= min(m, r)`` must agree.
    Below degree ``r`` the ideal is zero, so there ``P`` must vanish.
    """
    if isinstance(P, dict):
        m = None
        for (i, j) in P:
            m = i + j
            break
        if m is None:
            return True
        coeffs = coefficient_list(P, m)
    else:
        coeffs = list(P)
        m = len(coeffs) - 1
    norm = (lambda c: c % p) if p else (lambda c: c)
    coeffs = [norm(c) for c in coeffs]
    if m < r:
        return not any(coeffs)
    window = coeffs[max(0, m - r): min(m, r) + 1]
    return len(set(window)) <= 1


def a_class(r, k):
    """a_k = x1^k * sum_{i<r} (i+1) x1^i x2^(r-1-i)."""
    return {(k + i, r - 1 - i): i + 1 for i in range(r)}


def a_class_identity_holds(r, k):
    """(x2 - x1) a_k = x1^k (Q_r - (r+1) x1^r) over Z."""
    a = a_class(r, k)
    lhs = {}
    for (i, j), c in a.items():
        lhs[(i, j + 1)] = lhs.get((i, j + 1), 0) + c
        lhs[(i + 1, j)] = lhs.get((i + 1, j), 0) - c
    rhs = {(i + k, j): c for (i, j), c in q_poly(r).items()}
    rhs[(r + k, 0)] = rhs.get((r + k, 0), 0) - (r + 1)
    clean = lambda d: {m: c for m, c in d.items() if c}
    return clean(lhs) == clean(rhs)


@dataclass
class KernelReport:
    r: int
    p: int
    kernel_dims: dict = field(default_factory=dict)
    cokernel_dims: dict = field(default_factory=dict)
    kernel: dict = field(default_factory=dict)
    a_indices: list = field(default_factory=list)
    a_span: bool = False
    identity: bool = False

    @property
    def expected_dim(self):
        return self.r + 1 if (self.r + 1) % self.p == 0 else self.r

    @property
    def ok(self):
        return (
            sum(self.kernel_dims.values()) == self.expected_dim
            and sum(self.cokernel_dims.values()) == self.expected_dim
            and self.a_span
            and self.identity
        )


def multiplication_matrix(ring, element, d, shift):
    """Matrix of ``b -> element*b`` from degree ``d`` to ``d + shift``."""
    src = ring.degree_basis(d)
    tgt = ring.degree_basis(d + shift)
    cols = [ring.coords(ring.mul({b: 1}, element), d + shift) for b in src]
    M = np.zeros((len(tgt), len(src)), dtype=np.int64)
    for j, col in enumerate(cols):
        M[:, j] = col
    return M


def kernel_of_x1_minus_x2(r, p, cutoff=None) -> KernelReport:
    F = GF(p)
    A = projective_bundle_ring(r, F)
    top = 4 * r - 2
    if cutoff is None:
        cutoff = top
    rep = KernelReport(r, p)
    elt = {(1, 0): 1, (0, 1): -1}
    for d in range(0, cutoff + 1, 2):
        M = multiplication_matrix(A, elt, d, 2)
        src = A.degree_basis(d)
        if not src:
            continue
        rk = rank(M, F) if M.size else 0
        rep.kernel_dims[d] = len(src) - rk
        rep.cokernel_dims[d + 2] = len(A.degree_basis(d + 2)) - rk
        if rep.kernel_dims[d]:
            rep.kernel[d] = [A.from_vector(_lift(v, A, d), d) for v in kernel_basis(M, F)]
    rep.cokernel_dims[0] = 1
    first = 0 if (r + 1) % p == 0 else 1
    rep.a_indices = list(range(first, r + 1))
    ok = True
    for k in range(0, r + 1):
        d = 2 * (k + r - 1)
        a = a_class(r, k)
        nonzero = not A.ideal_membership(a)
        killed = A.ideal_membership(A.mul(a, elt))
        if k in rep.a_indices:
            ok &= nonzero and killed and rep.kernel_dims.get(d, 0) == 1
        elif k == 0:
            ok &= not (nonzero and killed)
    # no kernel outside the degrees of the a_k
    degs = {2 * (k + r - 1) for k in rep.a_indices}
    ok &= all(dim == 0 for d, dim in rep.kernel_dims.items() if d not in degs)
    rep.a_span = ok
    rep.identity = all(a_class_identity_holds(r, k) for k in range(r + 1))
    return rep


def _lift(v, ring, d):
    full = ring.vector({}, d)
    basis = ring._reduction(d)[2]
    for i, c in zip(basis, v):
        full[i] = c
    return full


def restriction_is_surjective(r, p):
    """x1, x2 -> x from F_p[x1,x2]/(Q_r,Q_{r+1}) to the even part of the unit
    tangent ring: relations must map to zero and the image must span."""
    A = projective_bundle_ring(r, GF(p))
    S = unit_tangent_ring(r, p)
    x = S.var("x")
    for rel in A.relations:
        if not S.ideal_membership(A.apply_hom([x, x], rel, S)):
            return False
    for d in range(0, 4 * r + 1, 2):
        tgt = S.degree_basis(d)
        if not tgt:
            continue
        if len(A.degree_basis(d)) < len(tgt):
            return False
        imgs = [S.coords(A.apply_hom([x, x], {b: 1}, S), d) for b in A.degree_basis(d)]
        if rank(imgs, GF(p)) != len(tgt):
            return False
    return True


# ------------------------------------------------------------ reports

def report_rows(space, r, p=None, n=1, N=None):
    """Rows ``(space, r, p, n, degree, dim, basis)`` for a named space."""
    F = GF(p) if p else QQ
    if space == "grassmann":
        ring = grassmann_ring(r, F)
    elif space == "geodesics":
        ring = projective_bundle_ring(r, F)
    elif space == "unit-tangent":
        ring = unit_tangent_ring(r, p)
    elif space == "borel":
        ring = geodesic_borel_ring(r, p, n).ring
    else:
        raise AlgebraError(f"unknown space {space!r}")
    if N is None:
        N = 4 * r + 2
    rows = []
    for d in range(N + 1):
        basis = ring.degree_basis(d)
        rows.append({
            "space": space, "r": r, "p": p, "n": n, "degree": d, "dim": len(basis),
            "basis": [ring.format_mono(m) for m in basis],
        })
    return rows


def field_of(p) -> Field:
    return as_field(p) if p else QQ
