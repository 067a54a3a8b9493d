"""Presented cdgas, the path (multiplication) model and the free loop model."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence

from .algebra import (
    Generator,
    GeneratorTable,
    Poly,
    basis,
    in_monomial_ideal,
    mono_hits,
    _substitute_images,
)
from .cohomology import (
    ChainMap,
    IdealComplex,
    QuotientComplex,
    induced_map,
    is_surjective,
)
from .derivations import Derivation, apply, is_differential, nilpotent_partial_sum
from .linalg import Indexer, Unsolvable, solve


class InvalidPresentation(ValueError):
    pass


class CoboundaryError(ArithmeticError):
    """No primitive exists in the requested kernel (a violated precondition)."""


class CdgaPresentation:
    """A free graded-commutative algebra with a differential."""

    def __init__(self, table: GeneratorTable, differential: Derivation):
        if differential.table != table:
            raise InvalidPresentation("differential over a different table")
        self.table = table
        self.differential = differential
        self._slices: dict = {}

    def __repr__(self):
        return f"CdgaPresentation({self.describe()})"

    def describe(self) -> str:
        parts = []
        for i, g in enumerate(self.table):
            dg = self.differential.on(i)
            parts.append(f"{g.name}:{g.degree}" + (f" d={dg}" if dg else ""))
        return "; ".join(parts)

    def basis(self, n: int) -> list:
        return basis(self.table, n)

    def d(self, p: Poly) -> Poly:
        return apply(self.differential, p)

    def dgen(self, name_or_index) -> Poly:
        return self.differential.on(
            name_or_index if isinstance(name_or_index, int) else self.table.index(name_or_index)
        )

    def gen(self, name_or_index) -> Poly:
        return self.table.gen(name_or_index)

    @property
    def even(self) -> List[int]:
        return [i for i, g in enumerate(self.table) if not g.odd and g.role == "base"]

    @property
    def odd(self) -> List[int]:
        return [i for i, g in enumerate(self.table) if g.odd and g.role == "base"]

    def validate(self) -> "CdgaPresentation":
        """Check d^2 = 0, the filtration order and V^1 = 0."""
        for i, g in enumerate(self.table):
            if g.role == "base" and g.degree < 2:
                raise InvalidPresentation(f"generator {g.name!r} has degree {g.degree} < 2")
            late = [j for j in self.differential.on(i).generators_used() if j >= i]
            if late:
                raise InvalidPresentation(
                    f"d({g.name}) uses {self.table[late[0]].name!r}, which is not earlier in the filtration"
                )
        if self.differential.degree != 1:
            raise InvalidPresentation("differential must have degree +1")
        if not is_differential(self.differential):
            bad = next(
                self.table[i].name for i, v in self.differential.images.items() if self.d(v)
            )
            raise InvalidPresentation(f"d^2 != 0 on {bad!r}")
        return self

    def reorder(self, order: Sequence[int]) -> "CdgaPresentation":
        """The same algebra with generators listed in ``order``."""
        table = GeneratorTable(tuple(self.table[i] for i in order))
        pos = {old: new for new, old in enumerate(order)}
        emb = {old: table.gen(new) for old, new in pos.items()}
        images = {pos[i]: _substitute_images(v, emb, table) for i, v in self.differential.images.items()}
        return CdgaPresentation(table, Derivation(table, 1, images)).validate()


def cdga(generators, differentials: Optional[Mapping[str, object]] = None) -> CdgaPresentation:
    """Build and validate a presentation.

    ``generators`` is a list of ``(name, degree)``; differentials map names
    to ``Poly`` or expression strings.
    """
    from .parsing import parse_poly

    table = GeneratorTable.of(*generators)
    images = {}
    for name, v in (differentials or {}).items():
        images[name] = parse_poly(v, table) if isinstance(v, str) else v
    return CdgaPresentation(table, Derivation(table, 1, images)).validate()


@dataclass
class AlgebraMap:
    """A cdga morphism given by generator images."""

    source: object
    target: object
    images: Dict[int, Poly]
    post: Optional[object] = None  # projection applied after substitution

    def __call__(self, p: Poly) -> Poly:
        r = _substitute_images(p, self.images, self.target.table)
        return self.post(r) if self.post is not None else r


def identity_map(A) -> AlgebraMap:
    return AlgebraMap(A, A, {i: A.table.gen(i) for i in range(len(A.table))})


def is_semipure(A: CdgaPresentation) -> bool:
    even = set(A.even)
    return all(in_monomial_ideal(A.dgen(i), even) for i in A.even)


def is_pure(A: CdgaPresentation) -> bool:
    even = set(A.even)
    if any(A.dgen(i) for i in A.even):
        return False
    return all(all(j in even for m in A.dgen(i).terms for j, _ in m) for i in A.odd)


def prime_name(name: str) -> str:
    return name + "′"


def dprime_name(name: str) -> str:
    return name + "″"


def bar_name(name: str) -> str:
    return name[0] + "̄" + name[1:]


@dataclass
class MultiplicationModel:
    """Relative Sullivan model of the multiplication map of ``base``.

    Generators of ``model`` are laid out as all primes, all double primes,
    then all bars, each block in the base filtration order.
    """

    base: CdgaPresentation
    model: CdgaPresentation
    prime: List[int]
    dprime: List[int]
    bar: List[int]
    xprime: Dict[int, Poly]
    m: AlgebraMap
    solved: List[int] = field(default_factory=list)

    @property
    def table(self) -> GeneratorTable:
        return self.model.table

    @property
    def doubled(self) -> set:
        return set(self.prime) | set(self.dprime)

    def stage(self, k: int) -> set:
        """Generator indices of the sub-model on the first ``k`` base generators."""
        return set(self.prime[:k]) | set(self.dprime[:k]) | set(self.bar[:k])

    def embed(self, p: Poly, copy: str) -> Poly:
        """``b -> b'`` (copy="prime") or ``b -> b''`` (copy="dprime")."""
        idx = self.prime if copy == "prime" else self.dprime
        return _substitute_images(p, {i: self.table.gen(idx[i]) for i in range(len(idx))}, self.table)

    def mu(self, p: Poly) -> Poly:
        """Multiplication ``v', v'' -> v``; bars are sent to zero."""
        return self.m(p)

    def eps_id(self, p: Poly) -> Poly:
        """``v' -> 0``, ``v'' -> v``."""
        T = self.base.table
        images = {}
        for i in range(len(T)):
            images[self.prime[i]] = Poly.zero(T)
            images[self.dprime[i]] = T.gen(i)
            images[self.bar[i]] = Poly.zero(T)
        return _substitute_images(p, images, T)

    def even_ideal(self, exclude_bar_of: Optional[int] = None) -> set:
        """Generators of the ideal spanned by the even primes, double primes and their bars."""
        out = set()
        for i in self.base.even:
            out.add(self.prime[i])
            out.add(self.dprime[i])
            if i != exclude_bar_of:
                out.add(self.bar[i])
        return out


def _model_table(A: CdgaPresentation) -> GeneratorTable:
    gens = []
    for role, namer, shift in (("prime", prime_name, 0), ("dprime", dprime_name, 0), ("bar", bar_name, -1)):
        for i, g in enumerate(A.table):
            gens.append(Generator(namer(g.name), g.degree + shift, role, i))
    return GeneratorTable(tuple(gens))


def _solve_primitive(src, f, c: Poly, n: int, allowed=None, ideal=None) -> Poly:
    """Shared core of the kernel-restricted coboundary solve."""
    if src.d(c):
        raise ValueError("c is not a cocycle")
    if f(c):
        raise ValueError("c is not in the kernel of f")
    if not c:
        return Poly.zero(src.table)
    cands = [m for m in basis(src.table, n - 1, allowed) if ideal is None or mono_hits(m, ideal)]
    idx = Indexer()
    cols = []
    for m in cands:
        b = Poly.monomial(src.table, m)
        col = {idx(("d", mm)): v for mm, v in src.d(b).terms.items()}
        for mm, v in f(b).terms.items():
            col[idx(("f", mm))] = v
        cols.append(col)
    target = {idx(("d", mm)): v for mm, v in c.terms.items()}
    try:
        x = solve(cols, target)
    except Unsolvable:
        raise CoboundaryError(
            f"no primitive of {c} in degree {n - 1} within the kernel "
            f"({len(cands)} unknowns, {len(idx.index)} equations)"
        ) from None
    return Poly(src.table, {cands[j]: v for j, v in x.items()})


def solve_coboundary_in_kernel(f, c: Poly, n: int, allowed=None, ideal=None) -> Poly:
    """Return ``c'`` of degree ``n-1`` with ``d c' = c`` and ``f(c') = 0``.

    ``f`` is a map whose ``source`` is a complex.  ``allowed`` restricts the
    search to monomials in those generators; ``ideal`` to monomials hitting
    at least one of those generators.  Among all solutions the one
    supported on the earliest independent basis monomials is returned.
    """
    return _solve_primitive(f.source, f, c, n, allowed, ideal)


class _Partial:
    """A presentation whose differential is still being filled in."""

    def __init__(self, table, images):
        self.table = table
        self.differential = Derivation(table, 1, images)

    def d(self, p):
        return apply(self.differential, p)


def _build(A: CdgaPresentation, nice: bool) -> MultiplicationModel:
    A.validate()
    n = len(A.table)
    T = _model_table(A)
    prime = list(range(n))
    dprime = list(range(n, 2 * n))
    bar = list(range(2 * n, 3 * n))
    emb1 = {i: T.gen(prime[i]) for i in range(n)}
    emb2 = {i: T.gen(dprime[i]) for i in range(n)}
    dimg = {}
    for i in range(n):
        dv = A.dgen(i)
        if dv:
            dimg[prime[i]] = _substitute_images(dv, emb1, T)
            dimg[dprime[i]] = _substitute_images(dv, emb2, T)
    s = Derivation(T, -1, {**{prime[i]: T.gen(bar[i]) for i in range(n)},
                           **{dprime[i]: T.gen(bar[i]) for i in range(n)}})
    m_images = {}
    for i in range(n):
        m_images[prime[i]] = A.table.gen(i)
        m_images[dprime[i]] = A.table.gen(i)
        m_images[bar[i]] = Poly.zero(A.table)

    even = set(A.even)
    xprime: Dict[int, Poly] = {}
    solved = []
    for k in range(n):
        partial = _Partial(T, dimg)
        vk1 = T.gen(prime[k])
        cand = nilpotent_partial_sum(s, partial.differential, vk1)
        target = partial.d(T.gen(dprime[k])) - partial.d(vk1)
        mk = AlgebraMap(partial, A, m_images)
        ideal = None
        if nice and k in even:
            ideal = {prime[i] for i in even if i < k} | {dprime[i] for i in even if i < k} | {
                bar[i] for i in even if i < k}
        ok = partial.d(cand) == target and not mk(cand)
        if ok and ideal is not None:
            ok = in_monomial_ideal(cand, ideal)
        if not ok:
            allowed = set(prime[:k]) | set(dprime[:k]) | set(bar[:k])
            cand = _solve_primitive(partial, mk, target, A.table[k].degree + 1,
                                    allowed=allowed, ideal=ideal)
            solved.append(k)
        xprime[k] = cand
        dimg[bar[k]] = T.gen(dprime[k]) - vk1 - cand

    model = CdgaPresentation(T, Derivation(T, 1, dimg)).validate()
    m = AlgebraMap(model, A, m_images)
    M = MultiplicationModel(A, model, prime, dprime, bar, xprime, m, solved)
    _check_model(M)
    return M


def _check_model(M: MultiplicationModel) -> None:
    for i in range(len(M.table)):
        g = M.table.gen(i)
        if M.m(M.model.d(g)) != M.base.d(M.m(g)):
            raise ArithmeticError(f"m is not a cochain map on {M.table[i].name}")
    for k, xp in M.xprime.items():
        dv = M.base.dgen(k)
        if M.model.d(xp) != M.embed(dv, "dprime") - M.embed(dv, "prime") or M.m(xp):
            raise ArithmeticError(f"x' for {M.base.table[k].name} violates its contract")


def build_multiplication_model(A: CdgaPresentation) -> MultiplicationModel:
    """Path model ``(∧V'⊗∧V''⊗∧V̄, d) -> (∧V, d)`` with ``dv̄ = v'' - v' - x'(v)``.

    ``x'(v)`` is the exponential sum ``sum_{n>=1} (sd)^n v' / n!``.
    """
    return _build(A, nice=False)


def build_loop_model(A: CdgaPresentation) -> CdgaPresentation:
    """``(∧V⊗∧V̄, d̄)`` with ``d̄v = dv`` and ``d̄v̄ = -s̄(dv)``."""
    A.validate()
    n = len(A.table)
    gens = list(A.table.generators) + [
        Generator(bar_name(g.name), g.degree - 1, "bar", i) for i, g in enumerate(A.table)
    ]
    T = GeneratorTable(tuple(gens))
    emb = {i: T.gen(i) for i in range(n)}
    sbar = loop_s(T, n)
    images = {}
    for i in range(n):
        dv = _substitute_images(A.dgen(i), emb, T)
        if dv:
            images[i] = dv
            images[n + i] = -apply(sbar, dv)
    return CdgaPresentation(T, Derivation(T, 1, images)).validate()


def loop_s(T: GeneratorTable, n: int) -> Derivation:
    """The degree -1 derivation ``v -> v̄``, ``v̄ -> 0`` on a loop-model table."""
    return Derivation(T, -1, {i: T.gen(n + i) for i in range(n)})


def loop_projection(M: MultiplicationModel, L: CdgaPresentation) -> AlgebraMap:
    """``μ⊗id``: ``v', v'' -> v`` and ``v̄ -> v̄``."""
    n = len(M.base.table)
    images = {}
    for i in range(n):
        images[M.prime[i]] = L.table.gen(i)
        images[M.dprime[i]] = L.table.gen(i)
        images[M.bar[i]] = L.table.gen(n + i)
    return AlgebraMap(M.model, L, images)


# -- niceness ------------------------------------------------------------------

@dataclass
class NicenessReport:
    condition_a: bool
    condition_a_violation: Optional[str]
    condition_b: bool
    condition_b_violation: Optional[str]
    bound: int
    m_prime_iso: Dict[int, bool]
    m_dprime_iso: Dict[int, bool]
    m_prime_surjective: Dict[int, bool]
    exponential_xprime: bool

    @property
    def condition_c(self) -> bool:
        return all(self.m_prime_iso.values()) and all(self.m_dprime_iso.values())

    @property
    def nice(self) -> bool:
        return self.condition_a and self.condition_b and self.condition_c


def default_bound(A: CdgaPresentation) -> int:
    return 2 * max(A.table.degrees, default=0) + 4


def ideal_maps(M: MultiplicationModel):
    """``m': Ī_V -> I_V`` and ``m'': quotient -> quotient``."""
    A = M.base
    bar_ideal = M.even_ideal()
    base_ideal = set(A.even)
    src_i = IdealComplex(M.model, bar_ideal)
    tgt_i = IdealComplex(A, base_ideal)
    src_q = QuotientComplex(M.model, bar_ideal)
    tgt_q = QuotientComplex(A, base_ideal)
    m1 = ChainMap(src_i, tgt_i, M.m)
    m2 = ChainMap(src_q, tgt_q, lambda p: tgt_q.project(M.m(p)))
    return m1, m2


def build_nice_model(A: CdgaPresentation, N: Optional[int] = None, report: bool = True):
    """Path model whose even ``x'`` lie in the ideal ``Ī_V``, plus a niceness report.

    With ``report=False`` the (costly) quasi-isomorphism checks are skipped
    and ``None`` is returned in place of the report.
    """
    if not is_semipure(A):
        raise ValueError("build_nice_model needs a semi-pure algebra")
    M = _build(A, nice=True)
    if not report:
        return M, None
    N = default_bound(A) if N is None else N
    ideal = M.even_ideal()
    viol_a = None
    for g in sorted(ideal):
        dg = M.model.dgen(g)
        if not in_monomial_ideal(dg, ideal):
            viol_a = f"d({M.table[g].name}) = {dg}"
            break
    viol_b = None
    for i in A.even:
        sub = M.even_ideal(exclude_bar_of=i)
        dg = M.model.dgen(M.bar[i])
        if not in_monomial_ideal(dg, sub):
            viol_b = f"d({M.table[M.bar[i]].name}) = {dg}"
            break
    m1, m2 = ideal_maps(M)
    h1 = induced_map(m1, N)
    h2 = induced_map(m2, N)
    report = NicenessReport(
        condition_a=viol_a is None,
        condition_a_violation=viol_a,
        condition_b=viol_b is None,
        condition_b_violation=viol_b,
        bound=N,
        m_prime_iso={n: h.iso for n, h in h1.items()},
        m_dprime_iso={n: h.iso for n, h in h2.items()},
        m_prime_surjective={n: is_surjective(m1, n) for n in range(N + 1)},
        exponential_xprime=not M.solved,
    )
    return M, report


# -- quasi-isomorphism checks -------------------------------------------------------

@dataclass
class QuasiIsoReport:
    bound: int
    degrees: Dict[int, object]

    @property
    def iso(self) -> bool:
        return all(h.iso for h in self.degrees.values())

    def failures(self) -> List[int]:
        return [n for n, h in self.degrees.items() if not h.iso]


def check_quasi_iso(f, N: int) -> QuasiIsoReport:
    return QuasiIsoReport(N, induced_map(f, N))
