"""Certified triviality of the dual loop product and coproduct.

Every positive verdict is backed by exact identities checked up to a
degree bound; failure to certify is reported as ``not-certified`` and is
never evidence of nontriviality.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional

from .algebra import Generator, GeneratorTable, Poly, _substitute_images
from .derivations import Derivation, apply
from .models import (
    AlgebraMap,
    CdgaPresentation,
    CoboundaryError,
    MultiplicationModel,
    _solve_primitive,
    bar_name,
    build_multiplication_model,
    build_nice_model,
    default_bound,
    is_semipure,
)
from .reductions import ReductionError, semipure_reduce
from .shriek import (
    DualCochain,
    build_good_cocycle,
    check_goodness,
    check_pq_vanishing,
    mu_composite_vanishes,
)

CERTIFIED = "certified-trivial"
NOT_CERTIFIED = "not-certified"


@dataclass
class TrivialityCertificate:
    operation: str                 # "Dlcop" or "Dlp"
    verdict: str
    route: Optional[str]
    reason: str
    bound: int
    algebra: Optional[CdgaPresentation] = None   # the algebra the witness lives on
    cocycle: Optional[DualCochain] = None
    witness: Dict[str, object] = field(default_factory=dict)

    @property
    def certified(self) -> bool:
        return self.verdict == CERTIFIED


def _counts(A):
    return len(A.even), len(A.odd)


def _path_model(A: CdgaPresentation) -> MultiplicationModel:
    if is_semipure(A):
        return build_nice_model(A, report=False)[0]
    return build_multiplication_model(A)


def _evidence(A: CdgaPresentation, N: int) -> dict:
    """First nonzero value of ``μ∘δ_!``, surfaced when nothing is certified."""
    M = _path_model(A)
    f = build_good_cocycle(M, N).cochain
    hit, scanned = mu_composite_vanishes(f, N)
    if hit is None:
        return {"mu_delta_vanishes_to": N, "scanned": scanned}
    w, v = hit
    return {"mu_delta_nonzero_at": Poly.monomial(M.table, w), "value": v}


# -- Dlcop ------------------------------------------------------------------------------

def find_odd_cocycle_generator(A: CdgaPresentation) -> Optional[int]:
    """Latest odd generator with ``dx = 0`` (scanning the filtration backwards)."""
    for i in reversed(A.odd):
        if not A.dgen(i):
            return i
    return None


def _semipure_or_reduce(A, reduce, N):
    if is_semipure(A):
        return A, None
    if not reduce:
        return None, "input is not semi-pure"
    try:
        red = semipure_reduce(A, N)
    except ReductionError as e:
        return None, f"semi-pure reduction unavailable: {e}"
    if red.guard is not None and not red.guard.iso:
        raise ArithmeticError("semi-pure reduction failed its quasi-isomorphism guard")
    return red.result, None


def dlcop_part3(A: CdgaPresentation, N: int) -> TrivialityCertificate:
    """``dim V^even < dim V^odd``: the good cocycle satisfies ``μ∘δ_! = 0``."""
    p, q = _counts(A)
    if p >= q:
        return TrivialityCertificate("Dlcop", NOT_CERTIFIED, "part3", f"p = {p} is not less than q = {q}", N, A)
    B, why = _semipure_or_reduce(A, True, N)
    if B is None:
        return TrivialityCertificate("Dlcop", NOT_CERTIFIED, "part3", why, N, A)
    M = _path_model(B)
    f = build_good_cocycle(M, N).cochain
    good = check_goodness(f, N)
    pq = check_pq_vanishing(f)
    # μ(a·δ(w)) = μ(a)·μ(δ(w)), so bar monomials suffice
    hit, scanned = mu_composite_vanishes(f, N)
    witness = {"goodness": good, "pq_vanishing": pq, "scanned": scanned, "reduced": B is not A}
    if hit is not None:
        w, v = hit
        witness.update(mu_delta_nonzero_at=Poly.monomial(M.table, w), value=v)
        return TrivialityCertificate("Dlcop", NOT_CERTIFIED, "part3",
                                     "μ∘δ_! is nonzero; this contradicts the expected vanishing", N, B, f, witness)
    return TrivialityCertificate("Dlcop", CERTIFIED, "part3",
                                 f"p = {p} < q = {q}; μ∘δ_! vanishes on every bar monomial of degree <= {N}",
                                 N, B, f, witness)


def in_diagonal_ideal(M: MultiplicationModel, x: int, p: Poly) -> bool:
    """Membership in ``(x'' - x')``: the ideal is the kernel of ``x'' -> x'``."""
    return not _substitute_images(p, {M.dprime[x]: M.table.gen(M.prime[x])}, M.table)


def dlcop_part1(A: CdgaPresentation, N: int, generator: Optional[str] = None,
                reduce: bool = False) -> TrivialityCertificate:
    """Odd cocycle generator ``x`` placed first; the induction stays inside ``(x'' - x')``."""
    B, why = _semipure_or_reduce(A, reduce, N)
    if B is None:
        return TrivialityCertificate("Dlcop", NOT_CERTIFIED, "part1", why, N, A)
    if generator is not None:
        if generator not in B.table:
            return TrivialityCertificate("Dlcop", NOT_CERTIFIED, "part1",
                                         f"generator {generator!r} not present after reduction", N, B)
        x = B.table.index(generator)
        if not B.table[x].odd or B.dgen(x):
            return TrivialityCertificate("Dlcop", NOT_CERTIFIED, "part1",
                                         f"{generator} is not an odd cocycle generator", N, B)
    else:
        x = find_odd_cocycle_generator(B)
        if x is None:
            return TrivialityCertificate("Dlcop", NOT_CERTIFIED, "part1",
                                         "no odd generator with dx = 0", N, B)
    order = [x] + [i for i in range(len(B.table)) if i != x]
    C = B.reorder(order)
    M = _path_model(C)
    G = build_good_cocycle(M, N)
    stage_checks = []
    for st in G.stages[1:]:
        bad = None
        for n in range(N + 1):
            for w in st.bar_basis(n):
                if not in_diagonal_ideal(M, 0, st.value(w)):
                    bad = w
                    break
            if bad is not None:
                break
        stage_checks.append((st.stage, bad is None))
        if bad is not None:
            return TrivialityCertificate("Dlcop", NOT_CERTIFIED, "part1",
                                         f"stage {st.stage} leaves the ideal at {bad}", N, C, st,
                                         {"stages": stage_checks})
    f = G.cochain
    hit, scanned = mu_composite_vanishes(f, N)
    witness = {"stages": stage_checks, "scanned": scanned, "generator": C.table[0].name,
               "stage_cochains": G.stages[1:]}
    if hit is not None:
        return TrivialityCertificate("Dlcop", NOT_CERTIFIED, "part1", "μ∘δ_! is nonzero", N, C, f, witness)
    return TrivialityCertificate(
        "Dlcop", CERTIFIED, "part1",
        f"odd cocycle generator {C.table[0].name}; every stage lies in (x'' - x') up to degree {N}",
        N, C, f, witness)


def analyze_dlcop(A: CdgaPresentation, route: str = "auto", N: Optional[int] = None,
                  generator: Optional[str] = None, reduce_semipure: bool = False) -> TrivialityCertificate:
    N = default_bound(A) if N is None else N
    if route == "part3":
        return dlcop_part3(A, N)
    if route == "part1":
        return dlcop_part1(A, N, generator, reduce_semipure)
    if route != "auto":
        raise ValueError(f"unknown Dlcop route {route!r}")
    tried = []
    p, q = _counts(A)
    if p < q:
        c = dlcop_part3(A, N)
        if c.certified:
            return c
        tried.append(f"part3: {c.reason}")
    else:
        tried.append(f"part3: p = {p} is not less than q = {q}")
    c = dlcop_part1(A, N, generator, reduce_semipure)
    if c.certified:
        return c
    tried.append(f"part1: {c.reason}")
    out = TrivialityCertificate("Dlcop", NOT_CERTIFIED, None, "; ".join(tried), N, A)
    out.witness = _evidence(A, N)
    return out


# -- Dlp ----------------------------------------------------------------------------------

@dataclass
class SectionComplex:
    """``P ⊗ L ⊗ L`` (``target``) and ``∧V ⊗ L ⊗ L`` (``source``) for the section."""

    M: MultiplicationModel
    source: CdgaPresentation
    target: CdgaPresentation
    bar1: List[int]
    bar2: List[int]
    sbar1: List[int]
    sbar2: List[int]
    eps: AlgebraMap


def _with_suffix(name, k):
    return bar_name(name) + ("₁" if k == 1 else "₂")


def section_complexes(M: MultiplicationModel) -> SectionComplex:
    A = M.base
    n = len(A.table)
    TM = M.table
    gens = list(TM.generators)
    bar1 = list(range(3 * n, 4 * n))
    bar2 = list(range(4 * n, 5 * n))
    for k in (1, 2):
        gens += [Generator(_with_suffix(g.name, k), g.degree - 1, f"bar{k}", i) for i, g in enumerate(A.table)]
    T = GeneratorTable(tuple(gens))
    lift = {i: T.gen(i) for i in range(len(TM))}
    images = {i: _substitute_images(v, lift, T) for i, v in M.model.differential.images.items()}
    s1 = Derivation(T, -1, {M.prime[i]: T.gen(bar1[i]) for i in range(n)})
    s2 = Derivation(T, -1, {M.dprime[i]: T.gen(bar2[i]) for i in range(n)})
    for i in range(n):
        dv = A.dgen(i)
        if dv:
            images[bar1[i]] = -apply(s1, _lift(M.embed(dv, "prime"), T))
            images[bar2[i]] = -apply(s2, _lift(M.embed(dv, "dprime"), T))
    target = CdgaPresentation(T, Derivation(T, 1, images))

    sgens = list(A.table.generators)
    sbar1 = list(range(n, 2 * n))
    sbar2 = list(range(2 * n, 3 * n))
    for k in (1, 2):
        sgens += [Generator(_with_suffix(g.name, k), g.degree - 1, f"bar{k}", i) for i, g in enumerate(A.table)]
    S = GeneratorTable(tuple(sgens))
    semb = {i: S.gen(i) for i in range(n)}
    t1 = Derivation(S, -1, {i: S.gen(sbar1[i]) for i in range(n)})
    t2 = Derivation(S, -1, {i: S.gen(sbar2[i]) for i in range(n)})
    simages = {}
    for i in range(n):
        dv = _substitute_images(A.dgen(i), semb, S)
        if dv:
            simages[i] = dv
            simages[sbar1[i]] = -apply(t1, dv)
            simages[sbar2[i]] = -apply(t2, dv)
    source = CdgaPresentation(S, Derivation(S, 1, simages))
    for P in (target, source):
        if any(P.d(v) for v in P.differential.images.values()):
            raise ArithmeticError("d^2 != 0 in the section complexes")

    eps = {}
    for i in range(n):
        eps[M.prime[i]] = S.gen(i)
        eps[M.dprime[i]] = S.gen(i)
        eps[M.bar[i]] = Poly.zero(S)
        eps[bar1[i]] = S.gen(sbar1[i])
        eps[bar2[i]] = S.gen(sbar2[i])
    return SectionComplex(M, source, target, bar1, bar2, sbar1, sbar2, AlgebraMap(target, source, eps))


def _lift(p: Poly, T: GeneratorTable) -> Poly:
    return _substitute_images(p, {i: T.gen(i) for i in range(len(p.table))}, T)


@dataclass
class Section:
    complexes: SectionComplex
    images: Dict[int, Poly]            # source generator -> target element
    corrections: Dict[str, Poly]       # the chosen y for each v̄₂

    def __call__(self, p: Poly) -> Poly:
        return _substitute_images(p, self.images, self.complexes.target.table)


def build_section_psi(M: MultiplicationModel) -> Section:
    """Algebra map ``ψ`` with ``(ε̄⊗id)ψ = id`` and ``dψ = ψd``.

    Built generator by generator in filtration order: ``ψ(v) = v'``,
    ``ψ(v̄₁) = v̄₁`` and ``ψ(v̄₂) = v̄₂ + y`` where ``y`` solves
    ``dy = ψ(dv̄₂) - d(v̄₂)`` inside the kernel of ``ε̄⊗id`` using only
    generators of earlier stages.
    """
    X = section_complexes(M)
    S, T = X.source, X.target
    n = len(M.base.table)
    images: Dict[int, Poly] = {}
    corrections = {}
    for k in range(n):
        images[k] = T.table.gen(M.prime[k])
        images[X.sbar1[k]] = T.table.gen(X.bar1[k])
        psi_d = _substitute_images(S.dgen(X.sbar2[k]), images, T.table)
        alpha = psi_d - T.dgen(X.bar2[k])
        allowed = M.stage(k) | set(X.bar1[:k]) | set(X.bar2[:k])
        try:
            y = _solve_primitive(T, X.eps, alpha, M.base.table[k].degree, allowed=allowed)
        except CoboundaryError as e:
            raise CoboundaryError(f"section correction for {S.table[X.sbar2[k]].name}: {e}") from None
        images[X.sbar2[k]] = T.table.gen(X.bar2[k]) + y
        corrections[S.table[X.sbar2[k]].name] = y
    psi = Section(X, images, corrections)
    for i in range(len(S.table)):
        g = S.table.gen(i)
        if X.eps(psi(g)) != g:
            raise ArithmeticError(f"(ε̄⊗id)ψ != id on {S.table[i].name}")
        if psi(S.d(g)) != T.d(psi(g)):
            raise ArithmeticError(f"ψ is not a chain map on {S.table[i].name}")
    return psi


def shriek_tensor_id(f: DualCochain, X: SectionComplex, p: Poly) -> Poly:
    """``(δ⊗id)(a·w·r) = (-1)^{|δ||a|} a·δ(w)·r`` on ``P ⊗ L ⊗ L``."""
    T = X.target.table
    M = X.M
    left = M.doubled
    paths = set(M.bar)
    out = Poly.zero(T)
    for m, c in p.terms.items():
        a = tuple(t for t in m if t[0] in left)
        w = tuple(t for t in m if t[0] in paths)
        r = tuple(t for t in m if t[0] not in left and t[0] not in paths)
        fw = f.value(w)
        if not fw:
            continue
        da = sum(T[g].degree * e for g, e in a)
        sign = -1 if (f.degree * da) % 2 else 1
        out = out + Poly.monomial(T, a) * _lift(fw, T) * Poly.monomial(T, r).scale(c * sign)
    return out


def find_even_top_generator(A: CdgaPresentation) -> Optional[int]:
    """Latest even generator that no other differential mentions."""
    used = set()
    for v in A.differential.images.values():
        used |= v.generators_used()
    for i in reversed(A.even):
        if i not in used:
            return i
    return None


def analyze_dlp(A: CdgaPresentation, N: Optional[int] = None, generator: Optional[str] = None,
                reduce_semipure: bool = False) -> TrivialityCertificate:
    """Semi-pure ``A`` with an even generator ``x`` on top of the filtration."""
    N = default_bound(A) if N is None else N
    B, why = _semipure_or_reduce(A, reduce_semipure, N)
    if B is None:
        return TrivialityCertificate("Dlp", NOT_CERTIFIED, "part2", why, N, A)
    if generator is not None:
        if generator not in B.table:
            return TrivialityCertificate("Dlp", NOT_CERTIFIED, "part2",
                                         f"generator {generator!r} not present", N, B)
        x = B.table.index(generator)
        used = set().union(*(v.generators_used() for v in B.differential.images.values()))
        if B.table[x].odd or x in used:
            return TrivialityCertificate("Dlp", NOT_CERTIFIED, "part2",
                                         f"{generator} is not an even top generator", N, B)
    else:
        x = find_even_top_generator(B)
        if x is None:
            return TrivialityCertificate("Dlp", NOT_CERTIFIED, "part2",
                                         "no decomposition V = W ⊕ Kx with x even on top", N, B)
    order = [i for i in range(len(B.table)) if i != x] + [x]
    C = B.reorder(order)
    M = _path_model(C)
    f = build_good_cocycle(M, N).cochain
    psi = build_section_psi(M)
    X = psi.complexes
    top_bar = M.bar[len(C.table) - 1]
    scanned = 0
    for deg in range(N + 1):
        for m in X.source.basis(deg):
            scanned += 1
            img = psi(Poly.monomial(X.source.table, m))
            if any(g == top_bar for mm in img.terms for g, _ in mm):
                raise ArithmeticError("image of ψ involves the bar of the top generator")
            v = shriek_tensor_id(f, X, img)
            if v:
                return TrivialityCertificate("Dlp", NOT_CERTIFIED, "part2",
                                             f"(δ_!⊗id)ψ is nonzero on {Poly.monomial(X.source.table, m)}",
                                             N, C, f, {"section": psi, "value": v})
    return TrivialityCertificate(
        "Dlp", CERTIFIED, "part2",
        f"even top generator {C.table[-1].name}; (ε̄⊗id)ψ = id and (δ_!⊗id)ψ = 0 up to degree {N}",
        N, C, f, {"section": psi, "scanned": scanned})
