"""Exact linear algebra over F_p and Q, and graded quotient rings.

Polynomials are plain dicts ``{exponent tuple: coefficient}``.  Matrices over
F_p are int64 numpy arrays with entries in ``[0, p)``; over Q they are object
arrays of ``Fraction``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _kernels


class AlgebraError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


@dataclass(frozen=True)
class Field:
    """Coefficient domain: F_p (``kind='Fp'``), Q, or Z (presentation only)."""

    kind: str
    p: int = 0

    def __post_init__(self):
        if self.kind == "Fp" and not is_prime(self.p):
            raise AlgebraError(f"{self.p} is not prime")
        if self.kind not in ("Fp", "Q", "Z"):
            raise AlgebraError(f"unknown field kind {self.kind!r}")

    @property
    def is_field(self):
        return self.kind != "Z"

    @property
    def characteristic(self):
        return self.p if self.kind == "Fp" else 0

    def norm(self, c):
        if self.kind == "Fp":
            return int(c) % self.p
        if self.kind == "Q":
            return Fraction(c)
        return int(c)

    def __str__(self):
        return {"Fp": f"F_{self.p}", "Q": "Q", "Z": "Z"}[self.kind]


def GF(p: int) -> Field:
    return Field("Fp", p)


QQ = Field("Q")
ZZ = Field("Z")


def as_field(F) -> Field:
    if isinstance(F, Field):
        return F
    if F is None:
        return QQ
    return GF(int(F))


# ---------------------------------------------------------------- matrices

def matrix(entries, F) -> np.ndarray:
    """Canonical matrix over ``F`` from a nested sequence or array."""
    F = as_field(F)
    if F.kind == "Fp":
        a = np.array(entries, dtype=np.int64)
        if a.ndim == 1:
            a = a.reshape(1, -1) if a.size else a.reshape(0, 0)
        return np.ascontiguousarray(a % F.p)
    if F.kind == "Z":
        raise AlgebraError("field required")
    a = np.array(entries, dtype=object)
    if a.ndim == 1:
        a = a.reshape(1, -1) if a.size else a.reshape(0, 0)
    out = np.empty(a.shape, dtype=object)
    for idx in np.ndindex(a.shape):
        out[idx] = Fraction(a[idx])
    return out


def _rref_rational(a):
    rows, cols = a.shape
    pivots = []
    rank = 0
    for c in range(cols):
        if rank == rows:
            break
        piv = next((i for i in range(rank, rows) if a[i, c] != 0), None)
        if piv is None:
            continue
        if piv != rank:
            a[[rank, piv]] = a[[piv, rank]]
        a[rank] = a[rank] / a[rank, c]
        for i in range(rows):
            if i != rank and a[i, c] != 0:
                a[i] = a[i] - a[i, c] * a[rank]
        pivots.append(c)
        rank += 1
    return rank, pivots


def rref(M, F, use_numba=None):
    """Reduced row-echelon form: ``(R, rank, pivot_columns)``."""
    F = as_field(F)
    a = matrix(M, F).copy()
    if a.size == 0:
        return a, 0, []
    if F.kind == "Fp":
        rank, piv = _kernels.rref_inplace(a, F.p, use_numba)
    else:
        rank, piv = _rref_rational(a)
    return a, rank, piv


def rank(M, F) -> int:
    return rref(M, F)[1]


def kernel_basis(M, F) -> list:
    """Basis of ``{v : M v = 0}``, one vector per free column."""
    F = as_field(F)
    a = matrix(M, F)
    cols = a.shape[1]
    R, rk, piv = rref(a, F)
    free = [c for c in range(cols) if c not in set(piv)]
    zero = 0 if F.kind == "Fp" else Fraction(0)
    out = []
    for fc in free:
        v = np.array([zero] * cols, dtype=np.int64 if F.kind == "Fp" else object)
        v[fc] = 1 if F.kind == "Fp" else Fraction(1)
        for row, pc in enumerate(piv):
            v[pc] = F.norm(-R[row, fc])
        out.append(v)
    return out


def mat_vec(M, v, F):
    F = as_field(F)
    if F.kind == "Fp":
        return (np.asarray(M, dtype=np.int64) @ np.asarray(v, dtype=np.int64)) % F.p
    return np.asarray(M, dtype=object).dot(np.asarray(v, dtype=object))


def in_span(rows, v, F) -> bool:
    """Whether ``v`` lies in the row span of ``rows``."""
    rows = list(rows)
    if not rows:
        return not np.any(matrix([v], F))
    return rank(rows + [v], F) == rank(rows, F)


# ------------------------------------------------------- graded algebras

@dataclass(frozen=True)
class Variable:
    name: str
    degree: int
    exterior: bool = False


def _vars(variables):
    out = []
    for v in variables:
        if isinstance(v, Variable):
            out.append(v)
        else:
            out.append(Variable(*v))
    for v in out:
        if v.degree < 1:
            raise AlgebraError("variable degrees must be positive")
        if v.exterior and v.degree % 2 == 0:
            raise AlgebraError(f"exterior variable {v.name} needs odd degree")
        if not v.exterior and v.degree % 2 == 1:
            raise AlgebraError(f"polynomial variable {v.name} needs even degree")
    return tuple(out)


class GradedAlgebra:
    """Free graded-commutative algebra: polynomial on even, exterior on odd
    variables, over ``F``."""

    def __init__(self, variables, F):
        self.variables = _vars(variables)
        self.field = as_field(F)
        self.names = [v.name for v in self.variables]
        self.degrees = [v.degree for v in self.variables]
        self.ext = [i for i, v in enumerate(self.variables) if v.exterior]
        self._mono_cache = {}

    @property
    def nvars(self):
        return len(self.variables)

    def index(self, name):
        return self.names.index(name)

    def degree(self, mono) -> int:
        return sum(e * d for e, d in zip(mono, self.degrees))

    def one(self):
        return {(0,) * self.nvars: self.field.norm(1)}

    def var(self, name, coeff=1):
        e = [0] * self.nvars
        e[self.index(name)] = 1
        return {tuple(e): self.field.norm(coeff)}

    def const(self, c):
        c = self.field.norm(c)
        return {(0,) * self.nvars: c} if c else {}

    def monomials(self, d):
        """Monomials of degree ``d``, lexicographically descending."""
        if d in self._mono_cache:
            return self._mono_cache[d]
        out = []
        n = self.nvars

        def rec(i, rem, acc):
            if i == n:
                if rem == 0:
                    out.append(tuple(acc))
                return
            deg = self.degrees[i]
            top = 1 if self.variables[i].exterior else rem // deg
            for e in range(min(top, rem // deg), -1, -1):
                acc.append(e)
                rec(i + 1, rem - e * deg, acc)
                acc.pop()

        if d >= 0:
            rec(0, d, [])
        self._mono_cache[d] = out
        return out

    def mono_mul(self, a, b):
        """``(sign, a*b)`` with the Koszul sign, or ``None`` if zero."""
        flips = 0
        for i in self.ext:
            if b[i]:
                if a[i]:
                    return None
                flips += sum(a[j] for j in self.ext if j > i)
        return (-1 if flips & 1 else 1), tuple(x + y for x, y in zip(a, b))

    def mul(self, P, Q):
        out = {}
        norm = self.field.norm
        for ma, ca in P.items():
            for mb, cb in Q.items():
                r = self.mono_mul(ma, mb)
                if r is None:
                    continue
                s, m = r
                out[m] = out.get(m, 0) + s * ca * cb
        return {m: norm(c) for m, c in out.items() if norm(c)}

    def add(self, *polys):
        out = {}
        for P in polys:
            for m, c in P.items():
                out[m] = out.get(m, 0) + c
        norm = self.field.norm
        return {m: norm(c) for m, c in out.items() if norm(c)}

    def scale(self, P, c):
        norm = self.field.norm
        return {m: norm(v * c) for m, v in P.items() if norm(v * c)}

    def sub(self, P, Q):
        return self.add(P, self.scale(Q, -1))

    def power(self, P, k):
        out = self.one()
        for _ in range(k):
            out = self.mul(out, P)
        return out

    def homogeneous_degree(self, P):
        degs = {self.degree(m) for m in P}
        if len(degs) > 1:
            raise AlgebraError("inhomogeneous")
        return degs.pop() if degs else None

    def vector(self, P, d):
        """Coordinates of ``P`` in the monomial basis of degree ``d``."""
        monos = self.monomials(d)
        idx = self._index(d)
        if self.field.kind == "Fp":
            v = np.zeros(len(monos), dtype=np.int64)
        else:
            v = np.array([Fraction(0)] * len(monos), dtype=object)
        for m, c in P.items():
            v[idx[m]] = c
        return v

    def _index(self, d):
        key = ("idx", d)
        if key not in self._mono_cache:
            self._mono_cache[key] = {m: i for i, m in enumerate(self.monomials(d))}
        return self._mono_cache[key]

    def from_vector(self, v, d):
        monos = self.monomials(d)
        norm = self.field.norm
        return {monos[i]: norm(c) for i, c in enumerate(v) if norm(c)}

    def format_mono(self, m):
        parts = []
        for name, e in zip(self.names, m):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"

    def format(self, P):
        if not P:
            return "0"
        terms = []
        for m in sorted(P, reverse=True):
            c = P[m]
            mono = self.format_mono(m)
            if mono == "1":
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms)

    def apply_hom(self, images, P, target):
        """Image of ``P`` under the algebra map sending variable i to
        ``images[i]`` (a polynomial of ``target``)."""
        out = {}
        cache = {}
        for m, c in P.items():
            img = target.const(c)
            for i, e in enumerate(m):
                if e == 0:
                    continue
                key = (i, e)
                if key not in cache:
                    cache[key] = target.power(images[i], e)
                img = target.mul(img, cache[key])
                if not img:
                    break
            out = target.add(out, img)
        return out

    def apply_derivation(self, values, P, odd):
        """Derivation sending variable i to ``values[i]``.  For an odd
        derivation, passing a factor ``a`` costs ``(-1)^|a|``."""
        out = {}
        for m, c in P.items():
            factors = [i for i, e in enumerate(m) for _ in range(e)]
            for pos, i in enumerate(factors):
                before = [0] * self.nvars
                after = [0] * self.nvars
                for j in factors[:pos]:
                    before[j] += 1
                for j in factors[pos + 1:]:
                    after[j] += 1
                before = tuple(before)
                s = -1 if (odd and self.degree(before) % 2) else 1
                t = self.mul({before: s * c}, values[i])
                out = self.add(out, self.mul(t, {tuple(after): 1}))
        return out


class QuotientRing(GradedAlgebra):
    """Graded-commutative ring modulo homogeneous relations.

    ``degree_basis(d)`` lists the monomials of degree ``d`` that are not
    leading (pivot) columns of the reduced span of degree-``d`` multiples of
    the relations, columns taken in lexicographically descending order.
    """

    def __init__(self, variables, relations, F, name=None):
        super().__init__(variables, F)
        self.relations = []
        for rel in relations:
            rel = {tuple(m): self.field.norm(c) for m, c in rel.items()}
            rel = {m: c for m, c in rel.items() if c}
            if not rel:
                continue
            self.homogeneous_degree(rel)
            self.relations.append(rel)
        self.name = name
        self._deg = {}

    def _require_field(self):
        if not self.field.is_field:
            raise AlgebraError("field required")

    def _reduction(self, d):
        if d in self._deg:
            return self._deg[d]
        self._require_field()
        monos = self.monomials(d)
        rows = []
        for rel in self.relations:
            rd = self.degree(next(iter(rel)))
            if rd > d:
                continue
            for m in self.monomials(d - rd):
                prod = self.mul({m: 1}, rel)
                if prod:
                    rows.append(self.vector(prod, d))
        if rows and monos:
            R, rk, piv = rref(np.array(rows), self.field)
            R = R[:rk]
        else:
            R, piv = None, []
        basis = [i for i in range(len(monos)) if i not in set(piv)]
        self._deg[d] = (R, piv, basis)
        return self._deg[d]

    def degree_basis(self, d):
        if d < 0:
            raise AlgebraError("degree must be non-negative")
        _, _, basis = self._reduction(d)
        monos = self.monomials(d)
        return [monos[i] for i in basis]

    def dim(self, d):
        return len(self.degree_basis(d))

    def dims(self, N):
        return [self.dim(d) for d in range(N + 1)]

    def reduce_vector(self, v, d):
        R, piv, _ = self._reduction(d)
        v = v.copy()
        if R is None:
            return v
        if self.field.kind == "Fp":
            p = self.field.p
            for row, c in enumerate(piv):
                if v[c]:
                    v = (v - v[c] * R[row]) % p
        else:
            for row, c in enumerate(piv):
                if v[c] != 0:
                    v = v - v[c] * R[row]
        return v

    def reduce(self, P):
        """Normal form: the unique representative supported on basis monomials."""
        self._require_field()
        d = self.homogeneous_degree(P)
        if d is None:
            return {}
        return self.from_vector(self.reduce_vector(self.vector(P, d), d), d)

    def coords(self, P, d=None):
        """Coordinates of the coset of ``P`` in ``degree_basis``."""
        if d is None:
            d = self.homogeneous_degree(P)
        if d is None:
            raise AlgebraError("degree required for the zero polynomial")
        _, _, basis = self._reduction(d)
        v = self.reduce_vector(self.vector(P, d), d) if P else self.vector({}, d)
        return [v[i] for i in basis]

    def ideal_membership(self, P) -> bool:
        self._require_field()
        d = self.homogeneous_degree(P)
        if d is None:
            return True
        return not self.reduce(P)

    def multiply(self, a, b):
        return self.reduce(self.mul(a, b))


def monomial(*exps):
    return tuple(exps)


def poly_from_terms(terms):
    """``{exponents: coeff}`` from an iterable of ``(coeff, exponents)``."""
    out = {}
    for c, e in terms:
        e = tuple(e)
        out[e] = out.get(e, 0) + c
    return {m: c for m, c in out.items() if c}


def monomials_up_to(alg: GradedAlgebra, N: int):
    return list(itertools.chain.from_iterable(alg.monomials(d) for d in range(N + 1)))


def solve(A, b, F):
    """One solution ``c`` of ``A c = b`` (columns of ``A`` as unknowns), or
    ``None`` if the system is inconsistent."""
    F = as_field(F)
    A = matrix(A, F)
    rows, cols = A.shape
    aug = np.concatenate([A, matrix(np.asarray(b).reshape(-1, 1), F)], axis=1) if rows else None
    if aug is None:
        return [F.norm(0)] * cols
    R, rk, piv = rref(aug, F)
    if cols in piv:
        return None
    sol = [F.norm(0)] * cols
    for row, c in enumerate(piv):
        sol[c] = F.norm(R[row, cols])
    return sol
