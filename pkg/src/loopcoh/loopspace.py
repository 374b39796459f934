"""Cohomology of the free loop space of a truncated projective space.

Models ``H*(LX; F_p)`` for ``H*(X) = F_p[x]/(x^(r+1))`` with the degree -1
action differential, the index-set bookkeeping for ``H*(LX_hT)``, and the
rational variant.

Divisible case (p | r+1): basis ``x^j (dx)^e gamma_i``, labels ``(j, e, i)``.
Coprime case: basis ``b0^(j-1) b_i`` and ``b0^(j-1) a_i`` for ``1 <= j <= r``,
labels ``("b", i, j)`` / ``("a", i, j)``, plus the unit ``("1",)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .algebra import GF, QQ, AlgebraError, Field, is_prime, rank
from .indexsets import IF, IFPRIME, IT, IndexSetSpec, chi, member
from .series import PowerSeries, RationalSeries, expand, geometric, one_minus, series_of_index_set

DIVISIBLE = "divisible"
COPRIME = "coprime"
UNIT = ("1",)


@dataclass(frozen=True)
class TruncSpaceParams:
    r: int
    p: int
    alpha: int = 2

    def __post_init__(self):
        if self.r < 1:
            raise AlgebraError("r must be positive")
        if self.alpha < 2 or self.alpha % 2:
            raise AlgebraError("alpha must be even and positive")
        if self.p and not is_prime(self.p):
            raise AlgebraError(f"{self.p} is not prime")

    @property
    def rho(self):
        return (self.r + 1) * self.alpha - 2

    @property
    def divisible(self):
        return bool(self.p) and (self.r + 1) % self.p == 0

    @property
    def field(self) -> Field:
        return GF(self.p) if self.p else QQ

    def default_cutoff(self):
        return 6 * self.rho * max(self.p, 1)


def binom_mod(n, k, p):
    """C(n, k) mod p by Lucas's theorem (exact integer when ``p == 0``)."""
    if k < 0 or k > n:
        return 0
    if not p:
        return math.comb(n, k)
    out = 1
    while n or k:
        a, b = n % p, k % p
        if b > a:
            return 0
        out = out * math.comb(a, b) % p
        n //= p
        k //= p
    return out


class LoopAlgebraModel:
    """``H*(LX)`` with its action differential ``d``.

    ``p = 0`` gives rational coefficients; the coprime description then
    applies with every ``(r+1)i + j`` invertible.
    """

    def __init__(self, params: TruncSpaceParams):
        self.params = params
        self.case = DIVISIBLE if params.divisible else COPRIME
        self.field = params.field

    # -- basis
    def basis(self, n):
        r, a, rho = self.params.r, self.params.alpha, self.params.rho
        out = []
        if n < 0:
            return out
        if self.case == DIVISIBLE:
            for j in range(r + 1):
                for e in (0, 1):
                    rest = n - j * a - e * (a - 1)
                    if rest >= 0 and rest % rho == 0:
                        out.append((j, e, rest // rho))
            return sorted(out)
        if n == 0:
            return [UNIT]
        for j in range(1, r + 1):
            rest = n - a * j
            if rest >= 0 and rest % rho == 0:
                out.append(("b", rest // rho, j))
            rest = n - a * j + 1
            if rest >= 0 and rest % rho == 0:
                out.append(("a", rest // rho, j))
        return sorted(out)

    def degree(self, label):
        r, a, rho = self.params.r, self.params.alpha, self.params.rho
        if self.case == DIVISIBLE:
            j, e, i = label
            return j * a + e * (a - 1) + rho * i
        if label == UNIT:
            return 0
        kind, i, j = label
        return rho * i + a * j - (1 if kind == "a" else 0)

    def dim(self, n):
        return len(self.basis(n))

    def dims(self, N):
        return [self.dim(n) for n in range(N + 1)]

    def name(self, label):
        if self.case == DIVISIBLE:
            j, e, i = label
            parts = []
            if j:
                parts.append("x" if j == 1 else f"x^{j}")
            if e:
                parts.append("dx")
            if i:
                parts.append(f"gamma_{i}")
            return "*".join(parts) or "1"
        if label == UNIT:
            return "1"
        kind, i, j = label
        pre = "" if j == 1 else ("b0*" if j == 2 else f"b0^{j - 1}*")
        return f"{pre}{kind}{i}"

    # -- structure
    def _norm(self, c):
        return self.field.norm(c)

    def d(self, label):
        """Action differential on a basis element, as ``{label: coeff}``."""
        if self.case == DIVISIBLE:
            j, e, i = label
            if e == 0 and j >= 1:
                c = self._norm(j)
                return {(j - 1, 1, i): c} if c else {}
            return {}
        if label == UNIT or label[0] == "a":
            return {}
        _, i, j = label
        c = self._norm((self.params.r + 1) * i + j)
        return {("a", i, j): c} if c else {}

    def action_matrix(self, n):
        """Matrix of ``d: H^n -> H^(n-1)`` (rows: target basis)."""
        src, tgt = self.basis(n), self.basis(n - 1)
        idx = {l: k for k, l in enumerate(tgt)}
        dtype = np.int64 if self.field.kind == "Fp" else object
        M = np.zeros((len(tgt), len(src)), dtype=dtype)
        if dtype is object:
            M[:] = Fraction(0)
        for col, l in enumerate(src):
            for t, c in self.d(l).items():
                M[idx[t], col] = c
        return M

    def d_rank(self, n):
        M = self.action_matrix(n)
        return rank(M, self.field) if M.size else 0

    def product(self, u, v):
        """Product of two basis elements as ``{label: coeff}``."""
        r, p = self.params.r, self.params.p
        if self.case == DIVISIBLE:
            (j, e, i), (l, f, k) = u, v
            if e + f > 1 or j + l > r:
                return {}
            c = self._norm(binom_mod(i + k, i, p))
            return {(j + l, e + f, i + k): c} if c else {}
        if u == UNIT:
            return {v: self._norm(1)}
        if v == UNIT:
            return {u: self._norm(1)}
        (ku, i, j), (kv, k, l) = u, v
        if ku == "a" and kv == "a":
            return {}
        if j + l > r:
            return {}
        kind = "a" if "a" in (ku, kv) else "b"
        c = self._norm(binom_mod(i + k, i, p))
        return {(kind, i + k, j + l): c} if c else {}

    def multiply(self, P, Q):
        out = {}
        for u, a in P.items():
            for v, b in Q.items():
                for w, c in self.product(u, v).items():
                    out[w] = out.get(w, 0) + a * b * c
        return {w: self._norm(c) for w, c in out.items() if self._norm(c)}

    def apply_d(self, P):
        out = {}
        for u, a in P.items():
            for w, c in self.d(u).items():
                out[w] = out.get(w, 0) + a * c
        return {w: self._norm(c) for w, c in out.items() if self._norm(c)}

    def is_odd(self, label):
        return self.degree(label) % 2 == 1

    def basis_upto(self, N):
        return [l for n in range(N + 1) for l in self.basis(n)]

    def relation_set(self):
        """The defining relations of the coprime presentation, as text."""
        return [
            "a_i*a_j",
            "b_i*b_j - C(i+j,i)*b0*b_(i+j)",
            "b_i*a_j - C(i+j,i)*b0*a_(i+j)",
            "b0^r*b_i",
            "b0^r*a_i",
        ]


def loop_model(r, p, alpha=2):
    if alpha % 2:
        raise AlgebraError("alpha must be even")
    return LoopAlgebraModel(TruncSpaceParams(r, p, alpha))


# ------------------------------------------------------------ counting

def action_counts(params: TruncSpaceParams, k, model=None):
    """``(dim ker, dim im, dim coker)`` of ``d: H^(2k) -> H^(2k-1)``."""
    model = model or LoopAlgebraModel(params)
    rk = model.d_rank(2 * k)
    return model.dim(2 * k) - rk, rk, model.dim(2 * k - 1) - rk


def predicted_counts(params: TruncSpaceParams, k):
    """The same three numbers, read off from the index sets alone."""
    r, p, a, rho = params.r, params.p, params.alpha, params.rho
    n = 2 * k
    ker = int(member(IndexSetSpec(IF, r, p, a), n))
    im = int(member(IndexSetSpec(IT, r, p, a), n))
    if not params.divisible:
        coker = ker
    else:
        coker = int((ker and n % rho != 0) or (k > 1 and (n - 2) % rho == 0))
    return ker, im, coker


def summed_kernel(params, m, model=None):
    model = model or LoopAlgebraModel(params)
    top = params.rho * params.p * m
    return sum(action_counts(params, k, model)[0] for k in range(1, top // 2 + 1))


def summed_cokernel(params, m, model=None):
    """Summed over ``2 <= 2k <= rho p m``, plus ``+2`` when ``p | r+1``."""
    model = model or LoopAlgebraModel(params)
    top = params.rho * params.p * m + (2 if params.divisible else 0)
    return sum(action_counts(params, k, model)[2] for k in range(1, top // 2 + 1))


def expected_summed(params, m):
    return m * (params.r + 1) if params.divisible else m * params.r


# ----------------------------------------------------------- main module

@dataclass
class GradedUModule:
    """Graded F_p[u]-module by generator degrees; ``|u| = 2``."""

    free: list
    torsion: list
    cutoff: int
    labels: dict = field(default_factory=dict)

    def series(self, N=None) -> PowerSeries:
        N = self.cutoff if N is None else N
        out = PowerSeries.zero(N)
        for f in self.free:
            if f <= N:
                out = out + geometric(2, N, f)
        return out + PowerSeries.from_terms(_count(self.torsion), N)

    def u_times(self, kind, deg):
        """Degree of ``u * generator`` or ``None`` when it vanishes."""
        return deg + 2 if kind == "free" else None

    def to_json(self):
        return {"free": sorted(self.free), "torsion": sorted(self.torsion), "cutoff": self.cutoff}

    @classmethod
    def from_json(cls, obj):
        return cls(list(obj["free"]), list(obj["torsion"]), int(obj["cutoff"]))


def _count(xs):
    out = {}
    for x in xs:
        out[x] = out.get(x, 0) + 1
    return out


def main_module(r, p, N=None) -> GradedUModule:
    params = TruncSpaceParams(r, p, 2)
    N = params.default_cutoff() if N is None else N
    IFs = IndexSetSpec(IF, r, p, 2)
    IFp = IndexSetSpec(IFPRIME, r, p, 2)
    ITs = IndexSetSpec(IT, r, p, 2)
    free, torsion, labels = [0], [], {("f", 0): 0}
    for n in range(2, N + 2, 2):
        if member(IFs, n) and n <= N:
            free.append(n)
            labels[("f", n)] = n
        if member(IFp, n) and n - 1 <= N:
            free.append(n - 1)
            labels[("f", n - 1)] = n - 1
        if member(ITs, n) and n - 1 <= N:
            torsion.append(n - 1)
            labels[("t", n - 1)] = n - 1
    return GradedUModule(sorted(free), sorted(torsion), N, labels)


def main_poincare(r, p, N=None) -> PowerSeries:
    """``(1 + P_IF(t)) / (1 - t)``."""
    N = TruncSpaceParams(r, p, 2).default_cutoff() if N is None else N
    P = series_of_index_set(IndexSetSpec(IF, r, p, 2), N)
    return (P + PowerSeries.monomial(0, N)) * geometric(1, N)


def main_poincare_closed(r, p) -> RationalSeries:
    """The product form, valid when ``p | r+1``."""
    if (r + 1) % p:
        raise AlgebraError("product form needs p | r+1")
    return RationalSeries.make([one_minus(2 * (r + 1))], den=[1, 2 * r, 2 * p])


def reassembled_poincare(r, p, N):
    """``(1 + P_IF + P_IF'/t)/(1 - t^2) + P_IT/t``."""
    M = N + 1
    P_IF = series_of_index_set(IndexSetSpec(IF, r, p, 2), M)
    P_IFp = series_of_index_set(IndexSetSpec(IFPRIME, r, p, 2), M)
    P_IT = series_of_index_set(IndexSetSpec(IT, r, p, 2), M)
    one = PowerSeries.monomial(0, M)
    inner = (one + P_IF).truncate(N) + P_IFp.shift(-1)
    return inner * geometric(2, N) + P_IT.shift(-1)


def two_sets_identity(r, p, N):
    """``(P_IT + P_IF, t^2/(1-t^2) + (1 - chi) t^(2r)/(1-t^(2r)))``."""
    lhs = series_of_index_set(IndexSetSpec(IT, r, p, 2), N) + series_of_index_set(IndexSetSpec(IF, r, p, 2), N)
    rhs = geometric(2, N, 2)
    if not chi(p, r + 1):
        rhs = rhs + geometric(2 * r, N, 2 * r)
    return lhs, rhs


def ifprime_identity(r, p, N):
    """``P_IF' = P_IF - (1 - chi) t^(2r) (1 - t^2)/(1 - t^(2r))``."""
    lhs = series_of_index_set(IndexSetSpec(IFPRIME, r, p, 2), N)
    rhs = series_of_index_set(IndexSetSpec(IF, r, p, 2), N)
    if not chi(p, r + 1):
        rhs = rhs - expand(RationalSeries.make([one_minus(2)], den=[2 * r], shift=2 * r), N)
    return lhs, rhs


# ------------------------------------------------------ number theory

def consecutive_runs(r, p, N, length):
    """Starting points ``2k`` of runs ``2k, 2k+2, ...`` of the given length in IF."""
    S = IndexSetSpec(IF, r, p, 2)
    mem = [member(S, n) for n in range(N + 2 * length + 1)]
    return [n for n in range(2, N + 1, 2) if all(mem[n + 2 * t] for t in range(length))]


def pair_condition_violations(r, p, N, require_k_odd=True):
    """Pairs ``{2k, 2k+2}`` in IF(r,p,2), p not dividing r+1, breaking the
    condition ``p = 2``, ``r`` even (and ``k`` odd when requested)."""
    if (r + 1) % p == 0:
        return []
    bad = []
    for n in consecutive_runs(r, p, N, 2):
        k = n // 2
        ok = p == 2 and r % 2 == 0 and (k % 2 == 1 or not require_k_odd)
        if not ok:
            bad.append(n)
    return bad


# ------------------------------------------------------------ rational

@dataclass
class RationalLoopModel:
    r: int
    alpha: int
    cutoff: int
    dims: list
    iso_degrees: list


def rational_degree_list(r, alpha, N):
    """Degrees carrying a class in ``H*(LX; Q)``, from the (i, j) pairs."""
    rho = (r + 1) * alpha - 2
    degs = {0}
    i = 0
    while rho * i + alpha <= N + 1:
        for j in range(1, r + 1):
            for n in (rho * i + alpha * j, rho * i + alpha * j - 1):
                if n <= N:
                    degs.add(n)
        i += 1
    return sorted(degs)


def rational_loop_model(r, alpha, N=None) -> RationalLoopModel:
    model = LoopAlgebraModel(TruncSpaceParams(r, 0, alpha))
    N = 6 * model.params.rho if N is None else N
    dims = model.dims(N)
    iso = [n for n in range(1, N + 1)
           if model.dim(n) and model.d_rank(n) == model.dim(n) == model.dim(n - 1)]
    return RationalLoopModel(r, alpha, N, dims, iso)


def rational_borel_series(r, alpha, N) -> PowerSeries:
    """``1/(1 - t^2) + sum t^(rho i + alpha j - 1)``."""
    rho = (r + 1) * alpha - 2
    terms = {}
    i = 0
    while rho * i + alpha - 1 <= N:
        for j in range(1, r + 1):
            n = rho * i + alpha * j - 1
            terms[n] = terms.get(n, 0) + 1
        i += 1
    return geometric(2, N) + PowerSeries.from_terms(terms, N)
