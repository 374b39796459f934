"""Serre and Morse spectral-sequence pages for LCP^r_hT.

Serre: ``E2 = F_p[u] (x) H*(LX)`` with ``d2(y) = u*dy``; ``E3`` is computed
from ranks of the action matrix and, independently, from the generators and
relations of the ``E3`` presentation.

Morse: the ``E1`` columns for the energy filtration, equivariant and not.
The differentials themselves are not modelled; only page sizes and the
structural constraints they must obey.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from . import geodesy
from .algebra import GF, QuotientRing, Variable
from .indexsets import IF, IT, IndexSetSpec, member
from .loopspace import LoopAlgebraModel, TruncSpaceParams, binom_mod, main_poincare
from .series import PowerSeries, RationalSeries, expand, geometric, one_minus, series_of_index_set


@dataclass
class BigradedPage:
    """``(s, t) -> dim``; for Morse pages ``t`` is the total degree."""

    name: str
    entries: dict
    cutoff: int
    labels: dict = field(default_factory=dict)
    total_degree_is_t: bool = False

    def total(self, s, t):
        return t if self.total_degree_is_t else s + t

    def total_series(self, N=None) -> PowerSeries:
        N = self.cutoff if N is None else N
        terms = {}
        for (s, t), d in self.entries.items():
            n = self.total(s, t)
            terms[n] = terms.get(n, 0) + d
        return PowerSeries.from_terms(terms, N)

    def __getitem__(self, key):
        return self.entries.get(key, 0)

    def nonzero(self):
        return {k: v for k, v in sorted(self.entries.items()) if v}

    def to_rows(self):
        return [
            {"s": s, "t": t, "dim": d, "labels": sorted(self.labels.get((s, t), []))}
            for (s, t), d in sorted(self.entries.items()) if d
        ]

    def grid(self):
        """Filtration across, degree down."""
        live = self.nonzero()
        if not live:
            return "(none)"
        ss = sorted({s for s, _ in live})
        ts = sorted({t for _, t in live})
        w = max(3, max(len(str(v)) for v in live.values()) + 1)
        head = "t\\s".rjust(5) + "".join(str(s).rjust(w) for s in ss)
        lines = [head]
        for t in ts:
            row = "".join((str(live[(s, t)]) if (s, t) in live else ".").rjust(w) for s in ss)
            lines.append(str(t).rjust(5) + row)
        return "\n".join(lines)


def _add(entries, labels, key, label=None, n=1):
    entries[key] = entries.get(key, 0) + n
    if label is not None:
        labels.setdefault(key, []).append(label)


# ---------------------------------------------------------------- Serre

def serre_e2(r, p, N, alpha=2) -> BigradedPage:
    model = LoopAlgebraModel(TruncSpaceParams(r, p, alpha))
    entries, labels = {}, {}
    for t in range(N + 1):
        basis = model.basis(t)
        for s in range(0, N - t + 1, 2):
            if basis:
                entries[(s, t)] = len(basis)
                labels[(s, t)] = [_upow(s // 2) + model.name(b) for b in basis]
    return BigradedPage("E2", entries, N, labels)


def _upow(a):
    return "" if a == 0 else ("u*" if a == 1 else f"u^{a}*")


def d2_target(s, t):
    """``d2`` maps bidegree ``(s, t)`` to ``(s + 2, t - 1)``."""
    return s + 2, t - 1


def serre_e3_rank(r, p, N, alpha=2) -> BigradedPage:
    """E3 from ranks of ``d: H^t -> H^(t-1)``."""
    model = LoopAlgebraModel(TruncSpaceParams(r, p, alpha))
    ranks = [model.d_rank(t) for t in range(N + 2)]
    entries = {}
    for t in range(N + 1):
        dim = model.dim(t)
        for s in range(0, N - t + 1, 2):
            v = dim - ranks[t] - (ranks[t + 1] if s >= 2 else 0)
            if v:
                entries[(s, t)] = v
    return BigradedPage("E3", entries, N)


def serre_e3_presentation(r, p, N, alpha=2) -> BigradedPage:
    """E3 from the generators and relations of its presentation."""
    params = TruncSpaceParams(r, p, alpha)
    rho = params.rho
    entries, labels = {}, {}
    if params.divisible:
        m = (r + 1) // p
        i = 0
        while rho * i <= N:
            g = "" if i == 0 else f"*gamma_{i}"
            for b in range(m):
                for c in (0, 1):
                    t = p * alpha * b + c * (p * alpha - 1) + rho * i
                    name = _mono([("phi", b), ("q", c)]) + g
                    for s in range(0, N - t + 1, 2):
                        _add(entries, labels, (s, t), _upow(s // 2) + name)
                for j in range(p - 1):
                    t = j * alpha + alpha - 1 + p * alpha * b + rho * i
                    if t <= N:
                        _add(entries, labels, (0, t), _mono([(f"delta_{j}", 1), ("phi", b)]) + g)
            i += 1
        return BigradedPage("E3", entries, N, labels)
    for s in range(0, N + 1, 2):
        _add(entries, labels, (s, 0), _upow(s // 2) + "1")
    i = 0
    while rho * i + alpha - 1 <= N:
        for k in range(1, r + 1):
            if ((r + 1) * i + k) % p == 0:
                for t, name in ((rho * i + alpha * k, f"v_{i}^({k})"), (rho * i + alpha * k - 1, f"w_{i}^({k})")):
                    for s in range(0, N - t + 1, 2):
                        _add(entries, labels, (s, t), _upow(s // 2) + name)
            else:
                t = rho * i + alpha * k - 1
                if t <= N:
                    _add(entries, labels, (0, t), f"T_{i}^({k})")
        i += 1
    return BigradedPage("E3", entries, N, labels)


def _mono(parts):
    out = []
    for name, e in parts:
        if e == 1:
            out.append(name)
        elif e > 1:
            out.append(f"{name}^{e}")
    return "*".join(out) or "1"


def serre_e3(r, p, N, alpha=2):
    """Both computations of E3; they must agree entrywise."""
    a, b = serre_e3_rank(r, p, N, alpha), serre_e3_presentation(r, p, N, alpha)
    b.entries = {k: v for k, v in b.entries.items() if v}
    return a, b


def e3_closed_form(r, p, N, alpha=2) -> PowerSeries:
    """Poincare series of E3 from the closed formula."""
    params = TruncSpaceParams(r, p, alpha)
    rho = params.rho
    if params.divisible:
        pre = RationalSeries.make([one_minus((r + 1) * alpha)], den=[p * alpha, rho])
        first = RationalSeries.make([[1] + [0] * (p * alpha - 2) + [1]], den=[2])
        second = RationalSeries.make([[0] * (alpha - 1) + [1] + [0] * ((p - 1) * alpha - 1) + [-1]], den=[alpha])
        return expand(pre * (first + second), N)
    M = N + 1
    P_IF = series_of_index_set(IndexSetSpec(IF, r, p, alpha), M)
    P_IT = series_of_index_set(IndexSetSpec(IT, r, p, alpha), M)
    inner = (PowerSeries.monomial(0, M) + P_IF).truncate(N) + P_IF.shift(-1)
    return inner * geometric(2, N) + P_IT.shift(-1)


def serre_collapse_check(r, p, N=None) -> bool:
    N = TruncSpaceParams(r, p, 2).default_cutoff() if N is None else N
    return serre_e3_rank(r, p, N).total_series(N) == main_poincare(r, p, N)


def image_column_check(r, p, N):
    """``E3^(0,t) - E3^(2,t)`` is the image of ``d`` in ``H^t``; in odd
    degree ``2k - 1`` it is one-dimensional exactly when ``2k`` is in IT."""
    page = serre_e3_rank(r, p, N + 2)
    spec = IndexSetSpec(IT, r, p, 2)
    bad = []
    for t in range(1, N + 1, 2):
        diff = page[(0, t)] - page[(2, t)]
        if diff != int(member(spec, t + 1)):
            bad.append((0, t))
    return bad


def presentation_ring(r, p, N, alpha=2):
    """The coprime E3 presentation as a quotient ring truncated at total
    degree ``N`` (for small cross-checks of the enumeration)."""
    params = TruncSpaceParams(r, p, alpha)
    if params.divisible:
        raise ValueError("coprime case only")
    rho = params.rho
    gens = []
    i = 0
    while rho * i + alpha - 1 <= N:
        for k in range(1, r + 1):
            if ((r + 1) * i + k) % p == 0:
                gens.append(("v", i, k, rho * i + alpha * k))
                gens.append(("w", i, k, rho * i + alpha * k - 1))
            else:
                gens.append(("T", i, k, rho * i + alpha * k - 1))
        i += 1
    gens = [g for g in gens if g[3] <= N]
    variables = [Variable("u", 2)] + [Variable(f"{g[0]}{g[1]}_{g[2]}", g[3], g[3] % 2 == 1) for g in gens]
    n = len(variables)
    pos = {(g[0], g[1], g[2]): idx + 1 for idx, g in enumerate(gens)}

    def mono(*idx):
        e = [0] * n
        for j in idx:
            e[j] += 1
        return tuple(e)

    rels = []
    for a_idx, a in enumerate(gens):
        ia = pos[a[:3]]
        if a[0] == "T":
            rels.append({mono(0, ia): 1})
        for b in gens[a_idx:]:
            ib = pos[b[:3]]
            if ia == ib and a[3] % 2:
                continue  # exterior squares vanish already
            kinds = {a[0], b[0]}
            if a[0] == b[0] == "T" or kinds == {"T", "w"} or a[0] == b[0] == "w":
                rels.append({mono(ia, ib): 1})
                continue
            # remaining cases involve a v
            v, o = (a, b) if a[0] == "v" else (b, a)
            i2, k2 = v[1] + o[1], v[2] + o[2]
            rel = {mono(ia, ib): 1}
            c = binom_mod(i2, v[1], p) if k2 <= r else 0
            if c:
                key = (o[0], i2, k2)
                if key in pos:
                    rel[mono(pos[key])] = -c
                elif rho * i2 + alpha * k2 - (0 if o[0] == "v" else 1) <= N:
                    raise AssertionError(f"missing generator {key}")
            rels.append(rel)
    return QuotientRing(variables, rels, GF(p))


# ---------------------------------------------------------------- Morse

@dataclass
class MorseColumn:
    n: int
    shift: int
    free: list = field(default_factory=list)      # (label, degree)
    finite: dict = field(default_factory=dict)    # degree -> dim
    finite_labels: dict = field(default_factory=dict)

    def series(self, N) -> PowerSeries:
        out = PowerSeries.from_terms(self.finite, N)
        for _, d in self.free:
            if d <= N:
                out = out + geometric(2, N, d)
        return out

    @property
    def free_rank(self):
        return len(self.free)

    @property
    def total_finite_dim(self):
        return sum(self.finite.values())


@dataclass
class MorseE1Catalog:
    r: int
    p: int
    equivariant: bool
    cutoff: int
    columns: dict

    def series(self, N=None) -> PowerSeries:
        N = self.cutoff if N is None else N
        out = PowerSeries.zero(N)
        for col in self.columns.values():
            out = out + col.series(N)
        return out

    def page(self) -> BigradedPage:
        entries, labels = {}, {}
        N = self.cutoff
        for n, col in self.columns.items():
            for d, dim in col.finite.items():
                if d <= N and dim:
                    entries[(n, d)] = entries.get((n, d), 0) + dim
                    labels.setdefault((n, d), []).extend(col.finite_labels.get(d, []))
            for lab, d in col.free:
                for a, t in enumerate(range(d, N + 1, 2)):
                    entries[(n, t)] = entries.get((n, t), 0) + 1
                    labels.setdefault((n, t), []).append(_upow(a) + lab)
        return BigradedPage("E1", entries, N, labels, total_degree_is_t=True)


def morse_shift(r, n):
    return 2 * r * (n - 1) + 1


def _ring_dims(ring, top):
    return {d: ring.dim(d) for d in range(top + 1) if ring.dim(d)}


def morse_e1(r, p, equivariant=True, N=None) -> MorseE1Catalog:
    N = TruncSpaceParams(r, p, 2).default_cutoff() if N is None else N
    div = (r + 1) % p == 0
    cols = {}
    if equivariant:
        cols[0] = MorseColumn(0, 0, free=[(_xpow(i), 2 * i) for i in range(r + 1)])
    else:
        cols[0] = MorseColumn(0, 0, finite={2 * i: 1 for i in range(r + 1)},
                              finite_labels={2 * i: [_xpow(i)] for i in range(r + 1)})
    geo = geodesy.projective_bundle_ring(r, GF(p))
    geo_dims = _ring_dims(geo, 4 * r)
    ut = geodesy.unit_tangent_ring(r, p)
    ut_dims = _ring_dims(ut, 4 * r + 2)
    n = 1
    while morse_shift(r, n) <= N:
        sh = morse_shift(r, n)
        col = MorseColumn(n, sh)
        if not equivariant:
            col.finite = {sh + d: v for d, v in ut_dims.items()}
            col.finite_labels = {sh + d: [f"alpha_{n}*{ut.format_mono(m)}" for m in ut.degree_basis(d)]
                                 for d in ut_dims}
        elif n % p:
            col.finite = {sh + d: v for d, v in geo_dims.items()}
            col.finite_labels = {sh + d: [f"alpha_{n}*{geo.format_mono(m)}" for m in geo.degree_basis(d)]
                                 for d in geo_dims}
        else:
            for i in range(r):
                col.free.append((f"alpha_{n}*{_xpow(i)}", 2 * r * (n - 1) + 2 * i + 1))
            if div:
                col.free.append((f"alpha_{n}*{_xpow(r)}", 2 * r * (n - 1) + 2 * r + 1))
                for i in range(r + 1):
                    col.free.append((f"zeta_{n}*{_xpow(i)}", 2 * r * n + 2 * i))
            else:
                for i in range(r):
                    col.free.append((f"zetabar_{n}*{_xpow(i)}", 2 * r * n + 2 + 2 * i))
        cols[n] = col
        n += 1
    return MorseE1Catalog(r, p, equivariant, N, cols)


def _xpow(i):
    return "1" if i == 0 else ("x" if i == 1 else f"x^{i}")


def morse_closed_form(r, p) -> RationalSeries:
    if (r + 1) % p == 0:
        return RationalSeries.make([one_minus(2 * r + 2)], den=[1, 2, 2 * p * r])
    num = [0] * (2 * p * r + 3)
    num[0] += 1
    num[2 * r + 2] -= 1
    num[2 * p * r] -= 1
    num[2 * p * r + 2] += 1
    return RationalSeries.make([num], den=[1, 2, 2 * p * r])


def morse_three_term(r, p, N) -> PowerSeries:
    """Sum of the three column families, term by term."""
    col0 = RationalSeries.make([one_minus(2 * r + 2)], den=[2, 2])
    torsion = RationalSeries.make(
        [one_minus(2 * r * (p - 1)), one_minus(2 * r), one_minus(2 * r + 2)],
        den=[2 * p * r, 2 * r, 2, 2], shift=1)
    if (r + 1) % p == 0:
        last_num = [0] * (2 * r * p + 1)
        last_num[2 * r * (p - 1) + 1] += 1
        last_num[2 * r * p] += 1
        free = RationalSeries.make([one_minus(2 * r + 2), last_num], den=[2, 2, 2 * p * r])
    else:
        last_num = [0] * (2 * r * p + 3)
        last_num[2 * r * (p - 1) + 1] += 1
        last_num[2 * r * p + 2] += 1
        free = RationalSeries.make([one_minus(2 * r), last_num], den=[2, 2, 2 * p * r])
    return expand(col0, N) + expand(torsion, N) + expand(free, N)


def odd_count(r, p, m, N=None):
    """``sum_{1<=n<=m}`` of odd-degree dims of the non-equivariant columns."""
    N = N if N is not None else morse_shift(r, m + 1) + 4 * r + 4
    cat = morse_e1(r, p, equivariant=False, N=N)
    return sum(v for n in range(1, m + 1) for d, v in cat.columns[n].finite.items() if d % 2)


# ------------------------------------------------------- structural checks

@dataclass
class CheckReport:
    r: int
    p: int
    results: dict = field(default_factory=dict)   # name -> list of failures

    def record(self, name, failures):
        self.results[name] = list(failures)

    @property
    def ok(self):
        return all(not f for f in self.results.values())

    def failures(self):
        return [
            {"check": name, "r": self.r, "p": self.p, "where": list(w) if isinstance(w, tuple) else w}
            for name, fs in self.results.items() for w in fs
        ]


def structural_checks(r, p, N=None) -> CheckReport:
    N = TruncSpaceParams(r, p, 2).default_cutoff() if N is None else N
    rep = CheckReport(r, p)
    eq = morse_e1(r, p, True, N)
    neq = morse_e1(r, p, False, N)
    page = eq.page()

    # (i) even total degree only in columns 0 and pm
    rep.record("even-columns", [k for k, v in page.entries.items() if v and k[1] % 2 == 0 and k[0] % p])

    # (ii) odd part of the E1 series is t times the even part
    P1 = eq.series(N)
    rep.record("odd=t*even", [
        (0, k) for k in range(1, N + 1, 2) if P1[k] != P1[k - 1]
    ])

    # (iii) localisation ranks: column pm is free of rank dim(non-equivariant column m)
    bad = []
    for n, col in eq.columns.items():
        if n and n % p == 0 and (n // p) in neq.columns:
            if col.free_rank != sum(geodesy.unit_tangent_ring(r, p).dims(4 * r + 2)):
                bad.append((n, col.free_rank))
    rep.record("localised-rank", bad)

    # (iv) twisted action: column n of the p-fold twist uses S(tau)^(pn)
    bad = []
    for n, col in neq.columns.items():
        lhs = col.series(N) * geometric(2, N)
        if n == 0:
            rhs = expand(RationalSeries.make([one_minus(2 * r + 2)], den=[2, 2]), N)
        else:
            pres = geodesy.geodesic_borel_ring(r, p, p * n)
            rhs = expand(pres.series(), N).shift(morse_shift(r, n)).truncate(N)
        if lhs != rhs:
            bad.append((n, "series"))
    rep.record("twisted=F_p[u]*plain", bad)

    # (v) E_infinity below E1; surjectivity onto the plain E1 in odd degrees
    Einf = main_poincare(r, p, N)
    rep.record("Einf<=E1", [(None, k) for k in range(N + 1) if Einf[k] > P1[k]])
    bad = []
    for n, col in neq.columns.items():
        ecol = eq.columns[n]
        es = ecol.series(N)
        for d, v in col.finite.items():
            if d % 2 and d <= N and es[d] < v:
                bad.append((n, d))
    rep.record("odd-surjective", bad)
    D = P1 - Einf
    rep.record("gap-divisible-by-1+t", [(None, k) for k in range(0, N, 2) if D[k] != D[k + 1]])

    # closed forms of the assembled series
    rep.record("closed-form", [(None, k) for k in range(N + 1) if P1[k] != expand(morse_closed_form(r, p), N)[k]])
    three = morse_three_term(r, p, N)
    rep.record("three-term", [(None, k) for k in range(N + 1) if P1[k] != three[k]])

    # Borel column n agrees with the geodesic Borel ring
    bad = []
    for n, col in eq.columns.items():
        if n == 0:
            continue
        pres = geodesy.geodesic_borel_ring(r, p, n)
        rhs = expand(pres.series(), N).shift(morse_shift(r, n)).truncate(N)
        if col.series(N) != rhs:
            bad.append((n, pres.case))
    rep.record("column=borel-ring", bad)

    # odd counts per column of the plain E1
    want = r + 1 if (r + 1) % p == 0 else r
    rep.record("odd-count", [
        (n, sum(v for d, v in col.finite.items() if d % 2))
        for n, col in neq.columns.items()
        if n and sum(v for d, v in col.finite.items() if d % 2) != want
    ])

    # degree gap: from column pm only columns pm+1, pm+2 are reachable
    bad = []
    for n, col in eq.columns.items():
        if n and n % p == 0 and col.free:
            top = max(d for _, d in col.free)
            if top > 2 * r * (n + 1):
                bad.append((n, top))
            for s in range(3, p + 2):
                if morse_shift(r, n + s) <= top + 1:
                    bad.append((n, s))
    rep.record("reach", bad)
    return rep
