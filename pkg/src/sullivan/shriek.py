"""Module cochains on the path model and the inductive shriek cocycle.

A cochain ``f`` is a left ``∧V⊗∧V``-linear map from the path model to
``∧V⊗∧V``.  It is determined by its values on monomials in the barred
generators; on a general monomial ``a·w`` (``a`` in primes/double primes,
``w`` in bars) we use ``f(a·w) = (-1)^{|f||a|} a·f(w)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Dict, List, Optional

from .algebra import ONE, Poly, basis, kill, mono_degree, split_monomial
from .models import MultiplicationModel, default_bound


class MalformedModel(ValueError):
    pass


def _koszul(a: int, b: int) -> int:
    return -1 if (a * b) % 2 else 1


class DualCochain:
    """A module cochain of fixed degree, defined on the first ``stage`` generators.

    Values are produced on demand by ``rule(w)`` (or looked up in
    ``values``, missing entries being zero) and memoized.
    """

    def __init__(self, M: MultiplicationModel, stage: int, degree: int,
                 rule: Optional[Callable] = None, values: Optional[dict] = None, label: str = ""):
        self.M = M
        self.stage = stage
        self.degree = degree
        self.label = label
        self._rule = rule
        self._values: Dict[tuple, Poly] = {}
        self._bars = set(M.bar[:stage])
        self._left = M.doubled
        if values is not None:
            for w, v in values.items():
                self._check_bar(w)
                self._values[w] = self._check_value(w, v)
            self._rule = self._rule or (lambda w: Poly.zero(M.table))

    def __repr__(self):
        return f"DualCochain({self.label or '?'}, stage={self.stage}, degree={self.degree})"

    @property
    def table(self):
        return self.M.table

    def _check_bar(self, w):
        for g, _ in w:
            if g not in self._bars:
                raise ValueError(f"{self.table[g].name} is not a bar generator of stage {self.stage}")

    def _check_value(self, w, v: Poly) -> Poly:
        if not v:
            return v
        for m in v.terms:
            for g, _ in m:
                if g not in self._left:
                    raise ValueError(f"value on {w} involves the bar generator {self.table[g].name}")
        want = mono_degree(self.table, w) + self.degree
        if v.degree() != want:
            raise ValueError(f"value on {w} has degree {v.degree()}, expected {want}")
        return v

    def value(self, w) -> Poly:
        hit = self._values.get(w)
        if hit is not None:
            return hit
        self._check_bar(w)
        v = self._check_value(w, self._rule(w))
        self._values[w] = v
        return v

    def __call__(self, p: Poly) -> Poly:
        return self.apply(p)

    def apply(self, p: Poly) -> Poly:
        """Evaluate on an arbitrary element of the stage's path model."""
        T = self.table
        out = Poly.zero(T)
        for m, c in p.terms.items():
            a, w = split_monomial(m, self._left)
            fw = self.value(w)
            if not fw:
                continue
            sign = _koszul(self.degree, mono_degree(T, a))
            out = out + (Poly.monomial(T, a) * fw).scale(c * sign)
        return out

    def bar_basis(self, n: int) -> list:
        return basis(self.table, n, self._bars)

    def table_of_values(self, N: int) -> Dict[tuple, Poly]:
        """All nonzero values on bar monomials of degree at most ``N``."""
        out = {}
        for n in range(N + 1):
            for w in self.bar_basis(n):
                v = self.value(w)
                if v:
                    out[w] = v
        return out


def identity_cochain(M: MultiplicationModel) -> DualCochain:
    """The cochain on the empty model with ``f(1) = 1``."""
    return DualCochain(M, 0, 0, values={ONE: Poly.one(M.table)}, label="f0")


def cochain_differential(f: DualCochain) -> DualCochain:
    """``(Df)(w) = d(f(w)) - (-1)^{|f|} f(dw)``."""
    d = f.M.model.d
    s = -1 if f.degree % 2 else 1

    def rule(w):
        return d(f.value(w)) - f.apply(d(Poly.monomial(f.table, w))).scale(s)

    return DualCochain(f.M, f.stage, f.degree + 1, rule, label=f"D({f.label})")


def cochain_is_zero(f: DualCochain, N: int):
    """First bar monomial of degree <= N with a nonzero value, or None."""
    for n in range(N + 1):
        for w in f.bar_basis(n):
            if f.value(w):
                return w
    return None


def phi(f: DualCochain) -> DualCochain:
    """Extend ``f`` over the next generator ``x`` of the filtration.

    odd x:  Φf(u) = (x'' - x')f(u) - (-1)^{|f|} f(x'(x)·u),  Φf(u x̄^k) = 0 for k >= 1
    even x: Φf(u x̄) = (-1)^{|f|+|u|} f(u),  Φf(u) = 0
    """
    M = f.M
    k = f.stage
    if k >= len(M.base.table):
        raise ValueError("cochain already covers every generator")
    T = M.table
    g = M.base.table[k]
    xb = M.bar[k]
    xp = M.xprime[k]
    outside = [j for j in xp.generators_used() if j not in M.stage(k)]
    if outside:
        raise MalformedModel(f"x' of {g.name} involves {T[outside[0]].name}")
    label = f"Φ{k}"

    if g.odd:
        diff = T.gen(M.dprime[k]) - T.gen(M.prime[k])
        s = -1 if f.degree % 2 else 1

        def rule(w):
            if w and w[-1][0] == xb:
                return Poly.zero(T)
            u = Poly.monomial(T, w)
            return diff * f.value(w) - f.apply(xp * u).scale(s)

        deg = f.degree + g.degree
    else:
        def rule(w):
            if not w or w[-1][0] != xb:
                return Poly.zero(T)
            u = w[:-1]
            sign = _koszul(1, f.degree + mono_degree(T, u))
            return f.value(u).scale(sign)

        deg = f.degree + 1 - g.degree
    return DualCochain(M, k + 1, deg, rule, label=label)


def shriek_degree(A) -> int:
    return sum(g.degree if g.odd else 1 - g.degree for g in A.table)


@dataclass
class GoodCocycle:
    cochain: DualCochain
    stages: List[DualCochain]
    verified_to: int

    @property
    def degree(self) -> int:
        return self.cochain.degree


class NotACocycle(ArithmeticError):
    pass


def build_good_cocycle(M: MultiplicationModel, N: Optional[int] = None, start: Optional[DualCochain] = None) -> GoodCocycle:
    """Iterate ``phi`` from the identity cochain; verify ``Df = 0`` up to degree ``N``."""
    f = start if start is not None else identity_cochain(M)
    stages = [f]
    while f.stage < len(M.base.table):
        f = phi(f)
        stages.append(f)
    N = default_bound(M.base) if N is None else N
    bad = cochain_is_zero(cochain_differential(f), N)
    if bad is not None:
        raise NotACocycle(f"D(delta) is nonzero on {bad}")
    return GoodCocycle(f, stages, N)


# -- goodness and nontriviality ------------------------------------------------------------

def even_bar_product(M: MultiplicationModel) -> tuple:
    return tuple((M.bar[i], 1) for i in M.base.even)


def odd_difference_product(M: MultiplicationModel) -> Poly:
    """``∏_j (y_j'' - y_j')`` over the odd generators in filtration order."""
    T = M.table
    out = Poly.one(T)
    for j in M.base.odd:
        out = out * (T.gen(M.dprime[j]) - T.gen(M.prime[j]))
    return out


def in_pair_ideal(M: MultiplicationModel, p: Poly) -> bool:
    """Every monomial contains ``y_j' y_j''`` for some odd ``y_j``."""
    pairs = [(M.prime[j], M.dprime[j]) for j in M.base.odd]
    for m in p.terms:
        gens = {g for g, _ in m}
        if not any(a in gens and b in gens for a, b in pairs):
            return False
    return True


@dataclass
class GoodnessReport:
    condition_a: bool
    sign: Optional[int]
    remainder: Optional[Poly]
    condition_b: bool
    violation: Optional[tuple]
    bound: int

    @property
    def good(self) -> bool:
        return self.condition_a and self.condition_b


def check_goodness(f: DualCochain, N: Optional[int] = None) -> GoodnessReport:
    """Conditions (a) and (b); (b) is scanned over bar monomials of degree <= N."""
    M = f.M
    N = default_bound(M.base) if N is None else N
    top = f.value(even_bar_product(M))
    prod = odd_difference_product(M)
    sign = rem = None
    for s in (1, -1):
        u = top - prod.scale(s)
        if in_pair_ideal(M, u):
            sign, rem = s, u
            break
    odd_bars = {M.bar[j] for j in M.base.odd}
    violation = None
    for n in range(N + 1):
        for w in f.bar_basis(n):
            if any(g in odd_bars for g, _ in w) and f.value(w):
                violation = w
                break
        if violation is not None:
            break
    return GoodnessReport(sign is not None, sign, rem, violation is None, violation, N)


@dataclass
class NontrivialityCertificate:
    holds: bool
    sign: Optional[int]
    evaluation: Poly
    expected: Poly
    reason: Optional[str] = None


def verify_nontriviality(f: DualCochain) -> NontrivialityCertificate:
    """Evaluate ``pr∘(ε·id)`` on ``f(x̄_1⋯x̄_p)`` and compare with ``±y_1⋯y_q``."""
    M = f.M
    A = M.base
    g = kill(M.eps_id(f.value(even_bar_product(M))), set(A.even))
    target = Poly.one(A.table)
    for j in A.odd:
        target = target * A.table.gen(j)
    from .models import is_semipure

    if not is_semipure(A):
        return NontrivialityCertificate(False, None, g, target, "input is not semi-pure")
    for s in (1, -1):
        if g == target.scale(s):
            return NontrivialityCertificate(True, s, g, target)
    return NontrivialityCertificate(False, None, g, target, "evaluation is not ±y_1⋯y_q")


@dataclass
class PQVanishingReport:
    p: int
    q: int
    values: Dict[tuple, Poly] = field(default_factory=dict)

    @property
    def vanishes(self) -> bool:
        return not any(self.values.values())

    def failures(self) -> list:
        return [w for w, v in self.values.items() if v]


def check_pq_vanishing(f: DualCochain) -> PQVanishingReport:
    """``μ∘f`` on every product of ``n`` distinct even bars for ``p - q < n <= p``."""
    M = f.M
    evens = M.base.even
    p, q = len(evens), len(M.base.odd)
    rep = PQVanishingReport(p, q)
    for n in range(max(p - q + 1, 0), p + 1):
        for subset in combinations(evens, n):
            w = tuple((M.bar[i], 1) for i in subset)
            rep.values[w] = M.mu(f.value(w))
    return rep


def mu_composite_vanishes(f: DualCochain, N: int):
    """First bar monomial of degree <= N where ``μ∘f`` is nonzero, or None; plus the count scanned."""
    count = 0
    for n in range(N + 1):
        for w in f.bar_basis(n):
            count += 1
            v = f.M.mu(f.value(w))
            if v:
                return (w, v), count
    return None, count
