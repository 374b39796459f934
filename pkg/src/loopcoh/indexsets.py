"""The index sets IF, IT and IF' locating free and transfer classes.

For a truncation ``F_p[x]/(x^(r+1))`` with ``|x| = alpha`` and
``rho = (r+1)*alpha - 2``, a degree ``k`` belongs to IF (resp. IT) when
``k = rho*i + alpha*j`` with ``chi_p(r+1) <= j <= r``, ``i >= 0`` and
``p`` dividing (resp. not dividing) ``(r+1)*i + j``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .algebra import AlgebraError, is_prime

IF, IT, IFPRIME = "IF", "IT", "IFprime"


def chi(p: int, s: int) -> int:
    return 0 if s % p == 0 else 1


@dataclass(frozen=True)
class IndexSetSpec:
    kind: str
    r: int
    p: int
    alpha: int = 2

    def __post_init__(self):
        if self.kind not in (IF, IT, IFPRIME):
            raise AlgebraError(f"unknown index set {self.kind!r}")
        if self.r < 1 or not is_prime(self.p):
            raise AlgebraError("need r >= 1 and p prime")
        if self.alpha < 2 or self.alpha % 2:
            raise AlgebraError("alpha must be even and positive")
        if self.kind == IFPRIME and self.alpha != 2:
            raise AlgebraError("IFprime is only defined for alpha = 2")

    @property
    def rho(self):
        return (self.r + 1) * self.alpha - 2

    @property
    def period(self):
        return self.rho * self.p


def witnesses(spec: IndexSetSpec, k: int):
    """All ``(i, j)`` exhibiting ``k`` in IF or IT (IFprime uses IF)."""
    r, p, a, rho = spec.r, spec.p, spec.alpha, spec.rho
    want_div = spec.kind != IT
    out = []
    for j in range(chi(p, r + 1), r + 1):
        rest = k - a * j
        if rest < 0 or rest % rho:
            continue
        i = rest // rho
        if ((r + 1) * i + j) % p == 0 and want_div:
            out.append((i, j))
        elif ((r + 1) * i + j) % p != 0 and not want_div:
            out.append((i, j))
    return out


def witness(spec: IndexSetSpec, k: int):
    """The unique witness ``(i, j)`` for membership, or ``None``."""
    if spec.kind == IFPRIME:
        raise AlgebraError("IFprime members carry no (i, j) witness")
    if k == 0:
        return None
    w = witnesses(spec, k)
    if len(w) > 1:
        raise AssertionError(f"non-unique witness for {k} in {spec}: {w}")
    return w[0] if w else None


def member(spec: IndexSetSpec, k: int) -> bool:
    if k <= 0:
        return False
    if spec.kind == IFPRIME:
        base = IndexSetSpec(IF, spec.r, spec.p, 2)
        if spec.p > 0 and (spec.r + 1) % spec.p == 0:
            r2 = 2 * spec.r
            if k > 2 and (k - 2) % r2 == 0:
                return True
            if k % r2 == 0:
                return False
        return member(base, k)
    return bool(witnesses(spec, k))


def enumerate_set(spec: IndexSetSpec, N: int):
    return [k for k in range(1, N + 1) if member(spec, k)]
