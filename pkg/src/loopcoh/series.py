"""Truncated integer power series and rational series with (1 - t^k)
denominators."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from . import indexsets


@dataclass(frozen=True)
class PowerSeries:
    coeffs: tuple
    cutoff: int

    def __post_init__(self):
        c = tuple(int(x) for x in self.coeffs[: self.cutoff + 1])
        c = c + (0,) * (self.cutoff + 1 - len(c))
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def zero(cls, N):
        return cls((), N)

    @classmethod
    def monomial(cls, k, N, c=1):
        return cls.from_terms({k: c}, N)

    @classmethod
    def from_terms(cls, terms, N):
        c = [0] * (N + 1)
        for k, v in terms.items():
            if 0 <= k <= N:
                c[k] += v
        return cls(tuple(c), N)

    def __getitem__(self, k):
        return self.coeffs[k] if 0 <= k <= self.cutoff else 0

    def __len__(self):
        return self.cutoff + 1

    def _n(self, other):
        return min(self.cutoff, other.cutoff)

    def __add__(self, other):
        N = self._n(other)
        return PowerSeries(tuple(self[k] + other[k] for k in range(N + 1)), N)

    def __sub__(self, other):
        N = self._n(other)
        return PowerSeries(tuple(self[k] - other[k] for k in range(N + 1)), N)

    def __neg__(self):
        return PowerSeries(tuple(-c for c in self.coeffs), self.cutoff)

    def __mul__(self, other):
        if isinstance(other, int):
            return PowerSeries(tuple(other * c for c in self.coeffs), self.cutoff)
        N = self._n(other)
        out = [0] * (N + 1)
        for i, a in enumerate(self.coeffs[: N + 1]):
            if a:
                for j in range(N + 1 - i):
                    out[i + j] += a * other[j]
        return PowerSeries(tuple(out), N)

    __rmul__ = __mul__

    def shift(self, k):
        """Multiply by ``t^k``; negative ``k`` requires the low terms to vanish."""
        if k < 0 and any(self.coeffs[:-k]):
            raise ValueError("division by t of a series with low-order terms")
        if k >= 0:
            return PowerSeries((0,) * k + self.coeffs, self.cutoff)
        # dividing loses the top -k coefficients' successors; cutoff shrinks
        return PowerSeries(self.coeffs[-k:], self.cutoff + k)

    def truncate(self, N):
        return PowerSeries(self.coeffs, min(N, self.cutoff))

    def even_part(self):
        return PowerSeries(tuple(c if k % 2 == 0 else 0 for k, c in enumerate(self.coeffs)), self.cutoff)

    def odd_part(self):
        return PowerSeries(tuple(c if k % 2 else 0 for k, c in enumerate(self.coeffs)), self.cutoff)

    def dominates(self, other):
        N = self._n(other)
        return all(self[k] >= other[k] for k in range(N + 1))

    def to_list(self):
        return list(self.coeffs)

    def render(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{c} {mono}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"

    def __str__(self):
        return self.render()


def poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def one_minus(k, c=1):
    """The polynomial ``1 - c t^k`` as a coefficient list."""
    out = [0] * (k + 1)
    out[0] += 1
    out[k] -= c
    return out


@dataclass(frozen=True)
class RationalSeries:
    """``numerator / prod (1 - t^k)^mult``."""

    numerator: tuple
    denominator: tuple = field(default=())

    def __post_init__(self):
        num = list(int(c) for c in self.numerator)
        while num and num[-1] == 0:
            num.pop()
        object.__setattr__(self, "numerator", tuple(num))
        den = Counter()
        for k, m in (self.denominator.items() if isinstance(self.denominator, dict) else self.denominator):
            if k < 1:
                raise ValueError("denominator factors need k >= 1")
            den[k] += m
        object.__setattr__(self, "denominator", tuple(sorted((k, m) for k, m in den.items() if m)))

    @classmethod
    def make(cls, num_factors=(), den=(), shift=0, coeff=1):
        """Product of ``coeff * t^shift``, the polynomial factors in
        ``num_factors`` and ``1/(1-t^k)`` for each ``k`` in ``den``."""
        num = [0] * shift + [coeff]
        for f in num_factors:
            num = poly_mul(num, list(f))
        return cls(tuple(num), tuple(Counter(den).items()))

    def __mul__(self, other):
        den = Counter(dict(self.denominator))
        den.update(dict(other.denominator))
        return RationalSeries(tuple(poly_mul(list(self.numerator), list(other.numerator))), tuple(den.items()))

    def __add__(self, other):
        a, b = Counter(dict(self.denominator)), Counter(dict(other.denominator))
        common = a | b
        na = list(self.numerator)
        for k, m in (common - a).items():
            for _ in range(m):
                na = poly_mul(na, one_minus(k))
        nb = list(other.numerator)
        for k, m in (common - b).items():
            for _ in range(m):
                nb = poly_mul(nb, one_minus(k))
        n = max(len(na), len(nb))
        num = [(na[i] if i < len(na) else 0) + (nb[i] if i < len(nb) else 0) for i in range(n)]
        return RationalSeries(tuple(num), tuple(common.items()))

    def expand(self, N):
        return expand(self, N)

    def render(self):
        def poly(c):
            terms = []
            for k, v in enumerate(c):
                if not v:
                    continue
                mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
                s = str(abs(v)) if not mono or abs(v) != 1 else ""
                terms.append(("-" if v < 0 else "+") + (s + mono))
            if not terms:
                return "0"
            out = " ".join(t[0] + " " + t[1:] for t in terms).strip()
            return out[2:] if out.startswith("+ ") else "-" + out[2:]

        den = "".join(
            f"(1 - {'t' if k == 1 else f't^{k}'})" + (f"^{m}" if m > 1 else "")
            for k, m in self.denominator
        )
        num = poly(self.numerator)
        if len(self.denominator) > 1 or any(m > 1 for _, m in self.denominator):
            den = f"({den})"
        return f"({num}) / {den}" if den else num


def expand(rs: RationalSeries, N: int) -> PowerSeries:
    """Expansion to ``t^N``; each ``1/(1-t^k)`` is a stride-``k`` prefix sum."""
    c = [0] * (N + 1)
    for k, v in enumerate(rs.numerator[: N + 1]):
        c[k] = v
    for k, m in rs.denominator:
        for _ in range(m):
            for n in range(k, N + 1):
                c[n] += c[n - k]
    return PowerSeries(tuple(c), N)


def geometric(k, N, start=0):
    """``t^start / (1 - t^k)`` expanded."""
    return expand(RationalSeries.make(shift=start, den=[k]), N)


def series_of_index_set(spec, N: int) -> PowerSeries:
    return PowerSeries.from_terms({k: 1 for k in indexsets.enumerate_set(spec, N)}, N)


def odd_part(P: PowerSeries) -> PowerSeries:
    return P.odd_part()


def even_part(P: PowerSeries) -> PowerSeries:
    return P.even_part()
