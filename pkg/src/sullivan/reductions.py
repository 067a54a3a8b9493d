"""Structure reductions: semi-pure replacement of quadratic algebras and
splitting off contractible factors of pure algebras."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import Generator, GeneratorTable, Poly, _substitute_images, kill
from .cohomology import ChainMap, cohomology_dims
from .derivations import Derivation
from .linalg import Echelon, integerize, kernel, solve
from .models import AlgebraMap, CdgaPresentation, QuasiIsoReport, check_quasi_iso, is_pure, is_semipure


class ReductionError(ValueError):
    pass


def word_length(m) -> int:
    return sum(e for _, e in m)


def linear_part(p: Poly) -> Dict[int, Fraction]:
    return {m[0][0]: c for m, c in p.terms.items() if word_length(m) == 1}


def _topological(deps: Dict[int, set]) -> List[int]:
    """Order indices so each comes after its dependencies; ties by index."""
    order, done = [], set()
    pending = sorted(deps)
    while pending:
        for i in pending:
            if deps[i] <= done:
                order.append(i)
                done.add(i)
                pending.remove(i)
                break
        else:
            raise ReductionError("differential has no triangular ordering")
    return order


def _assemble(work: GeneratorTable, keep: Sequence[int], images: Dict[int, Poly],
              rename: Optional[Dict[int, str]] = None) -> Tuple[CdgaPresentation, Dict[int, int]]:
    """Presentation on the generators ``keep`` of ``work`` in a triangular order.

    ``images`` maps kept indices to differentials written over ``work``.
    Returns the presentation and the map from work index to new index.
    """
    keep = list(keep)
    kept = set(keep)
    deps = {}
    for i in keep:
        used = images[i].generators_used() if i in images else set()
        stray = used - kept
        if stray:
            raise ReductionError(f"d({work[i].name}) leaves the kept generators")
        deps[i] = used
    order = _topological(deps)
    rename = rename or {}
    table = GeneratorTable(tuple(Generator(rename.get(i, work[i].name), work[i].degree) for i in order))
    pos = {old: new for new, old in enumerate(order)}
    emb = {old: table.gen(new) for old, new in pos.items()}
    d = {pos[i]: _substitute_images(images[i], emb, table) for i in keep if i in images and images[i]}
    return CdgaPresentation(table, Derivation(table, 1, d)).validate(), pos


# -- semi-pure replacement ---------------------------------------------------------------------

@dataclass
class SemipureReduction:
    source: CdgaPresentation
    result: CdgaPresentation
    cancelled: List[str]          # names of the even generators in U
    projection: AlgebraMap        # source -> result, a surjective quasi-isomorphism
    guard: Optional[QuasiIsoReport]

    @property
    def unchanged(self) -> bool:
        return not self.cancelled


def _check_quadratic(A: CdgaPresentation):
    for i, g in enumerate(A.table):
        for m in A.dgen(i).terms:
            if word_length(m) > 2:
                raise ReductionError(
                    f"d({g.name}) has a term of word length {word_length(m)}; "
                    "supply a presentation with quadratic differential"
                )


def semipure_reduce(A: CdgaPresentation, N: Optional[int] = None) -> SemipureReduction:
    """Cancel the even generators hit by the linear part of ``d``.

    ``V^even = U ⊕ ker d0`` with ``U`` spanned by pivot generators;
    the odd side is re-coordinatized so that ``d u`` becomes a generator,
    and the contractible pairs ``(u, du)`` are divided out.  With ``N``
    set, the projection is checked to be a quasi-isomorphism up to ``N``.
    """
    A.validate()
    _check_quadratic(A)
    T = A.table
    n = len(T)
    even = A.even
    odd = A.odd
    d0 = {i: linear_part(A.dgen(i)) for i in range(n)}

    # U: even generators whose d0 is independent of the earlier ones
    ech = Echelon()
    U = []
    for i in even:
        v, _ = integerize(d0[i])
        if v and ech.add(v):
            U.append(i)
    kvecs = kernel([d0[i] for i in even])
    w_even = {}
    for kv in kvecs:
        lead = max(kv)
        w_even[even[lead]] = {even[j]: c for j, c in kv.items()}
    # W^odd: odd generators completing d0(U)
    ech_odd = Echelon()
    for u in U:
        ech_odd.add(integerize(d0[u])[0])
    w_odd = [j for j in odd if ech_odd.add({j: 1})]

    if not U:
        ident = AlgebraMap(A, A, {i: T.gen(i) for i in range(n)})
        guard = check_quasi_iso(ChainMap(A, A, ident), N) if N is not None else None
        return SemipureReduction(A, A, [], ident, guard)

    # work table: W^even, W^odd, U, t_u  (new coordinates for ∧V)
    gens, forward = [], {}
    for i in sorted(w_even):
        forward[len(gens)] = Poly(T, {((j, 1),): c for j, c in w_even[i].items()})
        gens.append(Generator(T[i].name, T[i].degree))
    for j in w_odd:
        forward[len(gens)] = T.gen(j)
        gens.append(Generator(T[j].name, T[j].degree))
    u_idx, t_idx = [], []
    for u in U:
        u_idx.append(len(gens))
        forward[len(gens)] = T.gen(u)
        gens.append(Generator(T[u].name, T[u].degree))
    for u in U:
        t_idx.append(len(gens))
        forward[len(gens)] = A.dgen(u)
        gens.append(Generator("d" + T[u].name, T[u].degree + 1))
    W = GeneratorTable(tuple(gens))

    # invert forward on generators by increasing degree
    cols = [linear_part(forward[k]) for k in range(len(W))]
    backward: Dict[int, Poly] = {}
    for i in sorted(range(n), key=lambda i: T[i].degree):
        coeffs = solve(cols, {i: Fraction(1)})
        lin_comb = Poly.zero(W)
        rest = Poly.zero(T)
        for k, c in coeffs.items():
            lin_comb = lin_comb + W.gen(k).scale(c)
            img = forward[k]
            rest = rest + Poly(T, {m: v for m, v in img.terms.items() if word_length(m) > 1}).scale(c)
        # rest only involves generators of lower degree, already inverted
        backward[i] = lin_comb - _substitute_images(rest, backward, W)

    def to_new(p: Poly) -> Poly:
        return _substitute_images(p, backward, W)

    for k, img in forward.items():
        if to_new(img) != W.gen(k):
            raise ArithmeticError("coordinate change is not invertible")

    dead = set(u_idx) | set(t_idx)
    keep = [k for k in range(len(W)) if k not in dead]
    images = {k: kill(to_new(A.d(forward[k])), dead) for k in keep}
    result, pos = _assemble(W, keep, images)
    proj_images = {i: _substitute_images(kill(backward[i], dead), {k: result.table.gen(pos[k]) for k in keep}, result.table)
                   for i in range(n)}
    proj = AlgebraMap(A, result, proj_images)
    if not is_semipure(result):
        raise ArithmeticError("reduction did not produce a semi-pure algebra")
    guard = check_quasi_iso(ChainMap(A, result, proj), N) if N is not None else None
    return SemipureReduction(A, result, [T[u].name for u in U], proj, guard)


# -- pure algebras -----------------------------------------------------------------------------

@dataclass
class PureDecomposition:
    source: CdgaPresentation
    product: CdgaPresentation        # core ⊗ contractible on one table
    core: CdgaPresentation
    contractible: CdgaPresentation
    phi: AlgebraMap                  # source -> product
    psi: AlgebraMap                  # product -> source
    steps: List[Tuple[str, str]]     # (x0, y0) pairs split off, in order


def divide_by_linear(P: Poly, x0: int, a: Poly) -> Poly:
    """Exact quotient of ``P`` by ``x0 - a`` in a commutative polynomial ring.

    ``a`` must not involve ``x0``; raises if the remainder is nonzero.
    """
    T = P.table
    coeffs: Dict[int, Poly] = {}
    for m, c in P.terms.items():
        e = dict(m).get(x0, 0)
        rest = tuple(t for t in m if t[0] != x0)
        coeffs[e] = coeffs.get(e, Poly.zero(T)) + Poly.monomial(T, rest, c)
    if not coeffs:
        return Poly.zero(T)
    top = max(coeffs)
    b = Poly.zero(T)
    carry = Poly.zero(T)
    xg = T.gen(x0)
    for k in range(top, 0, -1):
        carry = coeffs.get(k, Poly.zero(T)) + a * carry
        b = b + carry * xg ** (k - 1)
    if coeffs.get(0, Poly.zero(T)) + a * carry:
        raise ReductionError("polynomial is not divisible by x0 - a")
    return b


def _find_linear_pair(B: CdgaPresentation, core: set):
    for j in sorted(core):
        g = B.table[j]
        if not g.odd:
            continue
        lin = {i: c for i, c in linear_part(B.dgen(j)).items() if i in core}
        if lin:
            x0 = max(lin)
            return j, x0, lin[x0]
    return None


def pure_decompose(A: CdgaPresentation, N: Optional[int] = None) -> PureDecomposition:
    """Split ``A ≅ core ⊗ contractible`` with a minimal pure core.

    Each step picks an odd ``y0`` with ``dy0 = c(x0 - a)`` and changes
    variables ``x0 -> x0 - a``, ``y_j -> y_j - y0 b_j``.  With ``N`` set,
    ``H^+`` of the contractible factor is checked to vanish up to ``N``.
    """
    if not is_pure(A):
        raise ReductionError("pure_decompose needs a pure algebra")
    B = A
    core = set(range(len(A.table)))
    contractible: List[int] = []
    phi_img = {i: A.table.gen(i) for i in range(len(A.table))}
    psi_img = {i: A.table.gen(i) for i in range(len(A.table))}
    steps = []
    while True:
        hit = _find_linear_pair(B, core)
        if hit is None:
            break
        y0, x0, c = hit
        T = B.table
        a = -(B.dgen(y0) - T.gen(x0).scale(c)).scale(Fraction(1) / c)
        eta = {x0: a}
        new_d: Dict[int, Poly] = {}
        f_img: Dict[int, Poly] = {}   # B -> B' on generators, written over T
        g_img: Dict[int, Poly] = {}   # B' -> B
        f_img[x0] = T.gen(x0) + a
        g_img[x0] = T.gen(x0) - a
        f_img[y0] = T.gen(y0).scale(c)
        g_img[y0] = T.gen(y0).scale(Fraction(1) / c)
        for j in range(len(T)):
            if j in (x0, y0):
                continue
            dj = B.dgen(j)
            if not T[j].odd or not dj:
                f_img[j] = g_img[j] = T.gen(j)
                if dj:
                    new_d[j] = dj
                continue
            ed = _substitute_images(dj, eta, T)
            bj = divide_by_linear(dj - ed, x0, a)
            f_bj = _substitute_images(bj, {x0: T.gen(x0) + a}, T)
            f_img[j] = T.gen(j) + T.gen(y0) * f_bj
            g_img[j] = T.gen(j) - T.gen(y0).scale(Fraction(1) / c) * bj
            if ed:
                new_d[j] = ed
        new_d[y0] = T.gen(x0)
        core -= {x0, y0}
        contractible += [x0, y0]
        order = sorted(core) + contractible
        Bn, pos = _assemble(T, order, {k: v for k, v in new_d.items()})
        # _assemble may reorder; re-express maps over the new table
        emb = {k: Bn.table.gen(pos[k]) for k in range(len(T))}
        f_new = {k: _substitute_images(v, emb, Bn.table) for k, v in f_img.items()}
        g_new = {pos[k]: v for k, v in g_img.items()}
        phi_img = {i: _substitute_images(v, f_new, Bn.table) for i, v in phi_img.items()}
        psi_img = {k: _substitute_images(v, psi_img, A.table) for k, v in g_new.items()}
        core = {pos[k] for k in core}
        contractible = [pos[k] for k in contractible]
        B = Bn
        steps.append((T[x0].name, T[y0].name))

    phi = AlgebraMap(A, B, phi_img)
    psi = AlgebraMap(B, A, psi_img)
    _verify_inverse(A, B, phi, psi)
    core_p, _ = _assemble(B.table, sorted(core), {i: B.dgen(i) for i in core})
    cont_p, _ = _assemble(B.table, contractible, {i: B.dgen(i) for i in contractible})
    if N is not None:
        dims = cohomology_dims(cont_p, N).dims
        if any(dims[k] for k in dims if k > 0):
            raise ArithmeticError("contractible factor has positive-degree cohomology")
    return PureDecomposition(A, B, core_p, cont_p, phi, psi, steps)


def _verify_inverse(A, B, phi, psi):
    for i in range(len(A.table)):
        g = A.table.gen(i)
        if psi(phi(g)) != g:
            raise ArithmeticError(f"psi∘phi != id on {A.table[i].name}")
        if phi(A.d(g)) != B.d(phi(g)):
            raise ArithmeticError(f"phi is not a chain map on {A.table[i].name}")
    for i in range(len(B.table)):
        g = B.table.gen(i)
        if phi(psi(g)) != g:
            raise ArithmeticError(f"phi∘psi != id on {B.table[i].name}")
        if psi(B.d(g)) != A.d(psi(g)):
            raise ArithmeticError(f"psi is not a chain map on {B.table[i].name}")
