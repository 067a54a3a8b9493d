"""Degreewise cohomology of presented cochain complexes over Q.

A *complex* here is anything with a ``table``, a ``basis(n)`` method
returning the monomial basis of degree ``n`` and a ``d(poly)`` method.
Presentations of cdgas qualify directly; ``IdealComplex`` and
``QuotientComplex`` cut them along a monomial ideal generated by a set of
generators.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional

from .algebra import Poly, kill, mono_hits
from .linalg import Echelon, integerize, kernel, rank


class NotAChainMap(ValueError):
    pass


class IdealComplex:
    """The subcomplex spanned by monomials containing one of ``gens``."""

    def __init__(self, complex_, gens):
        self.ambient = complex_
        self.table = complex_.table
        self.gens = frozenset(gens)
        self._slices: dict = {}

    def basis(self, n):
        return [m for m in self.ambient.basis(n) if mono_hits(m, self.gens)]

    def d(self, p: Poly) -> Poly:
        return self.ambient.d(p)


class QuotientComplex:
    """The quotient by the ideal generated by ``gens``."""

    def __init__(self, complex_, gens):
        self.ambient = complex_
        self.table = complex_.table
        self.gens = frozenset(gens)
        self._slices: dict = {}

    def basis(self, n):
        return [m for m in self.ambient.basis(n) if not mono_hits(m, self.gens)]

    def project(self, p: Poly) -> Poly:
        return kill(p, self.gens)

    def d(self, p: Poly) -> Poly:
        return kill(self.ambient.d(p), self.gens)


@dataclass
class ChainMap:
    source: object
    target: object
    fn: Callable[[Poly], Poly]

    def __call__(self, p: Poly) -> Poly:
        return self.fn(p)


@dataclass
class DegreeSlice:
    degree: int
    basis: list
    index: dict
    d_columns: List[dict]


def coordinates(p: Poly, index: dict, where: str = "") -> dict:
    out = {}
    for m, c in p.terms.items():
        j = index.get(m)
        if j is None:
            raise ValueError(f"term {m} of {p} lies outside the {where} basis")
        out[j] = c
    return out


def degree_slice(C, n: int) -> DegreeSlice:
    cache = getattr(C, "_slices", None)
    if cache is not None and n in cache:
        return cache[n]
    b = C.basis(n)
    index = {m: j for j, m in enumerate(b)}
    nxt = C.basis(n + 1)
    nindex = {m: j for j, m in enumerate(nxt)}
    cols = [coordinates(C.d(Poly.monomial(C.table, m)), nindex, f"degree {n + 1}") for m in b]
    s = DegreeSlice(n, b, index, cols)
    if cache is not None:
        cache[n] = s
    return s


def _as_poly(C, vec: dict, b: list) -> Poly:
    return Poly(C.table, {b[j]: c for j, c in vec.items()})


@dataclass
class CohomologyReport:
    dims: Dict[int, int]
    representatives: Dict[int, List[Poly]] = field(repr=False)

    def dims_list(self) -> list:
        return [self.dims[n] for n in sorted(self.dims)]


def _boundary_echelon(C, n: int) -> Echelon:
    ech = Echelon()
    if n >= 1:
        prev = degree_slice(C, n - 1)
        for col in prev.d_columns:
            v = integerize(col)[0]
            if v:
                ech.add(v)
    return ech


def _degree_cohomology(C, n: int):
    s = degree_slice(C, n)
    cycles = kernel(s.d_columns)
    bech = _boundary_echelon(C, n)
    reps = []
    for z in cycles:
        if bech.add(integerize(z)[0]):
            reps.append(_as_poly(C, z, s.basis))
    return reps


def cohomology_dims(C, N: int, modulus: Optional[int] = None) -> CohomologyReport:
    """Dimensions (and representative cocycles) of ``H^n`` for ``0 <= n <= N``.

    With ``modulus`` set only the dimensions are computed, by rank mod a
    prime; this is a fast cross-check, not a certificate.
    """
    if N < 0:
        raise ValueError("degree bound must be non-negative")
    dims, reps = {}, {}
    if modulus is not None:
        ranks = {-1: 0}
        for n in range(N + 1):
            ranks[n] = rank(degree_slice(C, n).d_columns, modulus)
        for n in range(N + 1):
            dims[n] = len(degree_slice(C, n).basis) - ranks[n] - ranks[n - 1]
        return CohomologyReport(dims, {})
    for n in range(N + 1):
        reps[n] = _degree_cohomology(C, n)
        dims[n] = len(reps[n])
    return CohomologyReport(dims, reps)


@dataclass
class InducedDegree:
    degree: int
    source_dim: int
    target_dim: int
    matrix: List[List[Fraction]]
    rank: int

    @property
    def injective(self) -> bool:
        return self.rank == self.source_dim

    @property
    def surjective(self) -> bool:
        return self.rank == self.target_dim

    @property
    def iso(self) -> bool:
        return self.injective and self.surjective


def check_chain_map(f, n: int) -> None:
    """Raise ``NotAChainMap`` unless ``f d = d f`` on the degree-``n`` basis."""
    for m in f.source.basis(n):
        b = Poly.monomial(f.source.table, m)
        if f(f.source.d(b)) != f.target.d(f(b)):
            raise NotAChainMap(f"f d != d f on {b}")


def induced_map(f, N: int) -> Dict[int, InducedDegree]:
    """Matrices of ``H(f)`` on representative bases for degrees ``0..N``."""
    out = {}
    for n in range(N + 1):
        check_chain_map(f, n)
        src_reps = _degree_cohomology(f.source, n)
        tgt = degree_slice(f.target, n)
        tgt_reps = _degree_cohomology(f.target, n)
        ech = _boundary_echelon(f.target, n)
        for i, h in enumerate(tgt_reps):
            v, scale = integerize(coordinates(h, tgt.index, "target"))
            ech.add(v, {i: scale})
        matrix = [[Fraction(0)] * len(src_reps) for _ in tgt_reps]
        for j, z in enumerate(src_reps):
            v, scale = integerize(coordinates(f(z), tgt.index, "target"))
            if not v:
                continue
            red, tag = ech.reduce(v, {-1: scale})
            if red:
                raise ValueError("image of a cocycle is not a cocycle")
            lam = tag.pop(-1)
            for i, c in tag.items():
                matrix[i][j] = Fraction(-c, lam)
        r = rank([{j: row[j] for j in range(len(row)) if row[j]} for row in matrix])
        out[n] = InducedDegree(n, len(src_reps), len(tgt_reps), matrix, r)
    return out


def is_surjective(f, n: int) -> bool:
    """Whether ``f`` is onto in degree ``n`` at the chain level."""
    tgt = degree_slice(f.target, n)
    images = [coordinates(f(Poly.monomial(f.source.table, m)), tgt.index, "target")
              for m in f.source.basis(n)]
    return rank(images) == len(tgt.basis)


def d_squared_zero(C, N: int) -> bool:
    """Exact check that consecutive differential matrices compose to zero."""
    for n in range(N + 1):
        for m in C.basis(n):
            if C.d(C.d(Poly.monomial(C.table, m))):
                return False
    return True


def slice_dims(C, N: int) -> Dict[int, int]:
    return {n: len(C.basis(n)) for n in range(N + 1)}
