"""Free graded-commutative algebras over Q with Koszul signs.

A monomial is a tuple of ``(generator_index, multiplicity)`` pairs with
strictly increasing indices.  Odd generators appear with multiplicity 1.
All signs are resolved when a product is normalised, so two ``Poly``
objects are equal exactly when their term dictionaries are equal.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Optional, Sequence, Tuple, Union

Monomial = Tuple[Tuple[int, int], ...]
ONE: Monomial = ()

Scalar = Union[int, Fraction]


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int
    # "base" for generators of V; "prime"/"dprime"/"bar"/"bar1"/"bar2" for
    # the copies living in doubled and path algebras.
    role: str = "base"
    source: Optional[int] = None

    @property
    def odd(self) -> bool:
        return self.degree % 2 == 1


@dataclass(frozen=True)
class GeneratorTable:
    generators: Tuple[Generator, ...]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)
    _odd: tuple = field(init=False, repr=False, compare=False, hash=False)
    _degrees: tuple = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        gens = tuple(self.generators)
        object.__setattr__(self, "generators", gens)
        index = {}
        for i, g in enumerate(gens):
            if g.degree < 1:
                raise ValueError(f"generator {g.name!r} has non-positive degree {g.degree}")
            if g.name in index:
                raise ValueError(f"duplicate generator name {g.name!r}")
            index[g.name] = i
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "_odd", tuple(g.degree % 2 == 1 for g in gens))
        object.__setattr__(self, "_degrees", tuple(g.degree for g in gens))

    @classmethod
    def of(cls, *pairs) -> "GeneratorTable":
        """``GeneratorTable.of(("x", 2), ("y", 3))``."""
        return cls(tuple(p if isinstance(p, Generator) else Generator(*p) for p in pairs))

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __getitem__(self, i) -> Generator:
        return self.generators[i]

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown generator {name!r}") from None

    def __contains__(self, name) -> bool:
        return name in self._index

    @property
    def odd(self) -> tuple:
        return self._odd

    @property
    def degrees(self) -> tuple:
        return self._degrees

    def names(self) -> list:
        return [g.name for g in self.generators]

    def gen(self, name_or_index) -> "Poly":
        i = name_or_index if isinstance(name_or_index, int) else self.index(name_or_index)
        return Poly(self, {((i, 1),): Fraction(1)})

    def gens(self) -> list:
        return [self.gen(i) for i in range(len(self))]

    def indices(self, role: str) -> list:
        return [i for i, g in enumerate(self.generators) if g.role == role]


def mono_degree(table: GeneratorTable, m: Monomial) -> int:
    degs = table.degrees
    return sum(degs[i] * e for i, e in m)


def mono_mul(a: Monomial, b: Monomial, odd: Sequence[bool]):
    """Return ``(sign, a*b)`` or ``None`` when the product vanishes."""
    if not a:
        return 1, b
    if not b:
        return 1, a
    remaining = 0
    for i, _ in a:
        if odd[i]:
            remaining += 1
    out = []
    sign = 1
    ia = ib = 0
    la, lb = len(a), len(b)
    while ia < la and ib < lb:
        ga, ea = a[ia]
        gb, eb = b[ib]
        if ga < gb:
            out.append(a[ia])
            if odd[ga]:
                remaining -= 1
            ia += 1
        elif gb < ga:
            out.append(b[ib])
            if odd[gb] and remaining & 1:
                sign = -sign
            ib += 1
        else:
            if odd[ga]:
                return None
            out.append((ga, ea + eb))
            ia += 1
            ib += 1
    if ia < la:
        out.extend(a[ia:])
    elif ib < lb:
        for gb, eb in b[ib:]:
            if odd[gb] and remaining & 1:
                sign = -sign
            out.append((gb, eb))
    return sign, tuple(out)



class Poly:
    """Exact element of a free graded-commutative algebra."""

    __slots__ = ("table", "terms", "_hash")

    def __init__(self, table: GeneratorTable, terms: Optional[Mapping[Monomial, Scalar]] = None):
        self.table = table
        self.terms = {} if not terms else {m: Fraction(c) for m, c in terms.items() if c != 0}
        self._hash = None

    @classmethod
    def _raw(cls, table, terms: dict) -> "Poly":
        p = cls.__new__(cls)
        p.table = table
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls, table):
        return cls._raw(table, {})

    @classmethod
    def one(cls, table):
        return cls._raw(table, {ONE: Fraction(1)})

    @classmethod
    def constant(cls, table, c):
        c = Fraction(c)
        return cls._raw(table, {ONE: c} if c else {})

    @classmethod
    def monomial(cls, table, m: Monomial, c: Scalar = 1):
        c = Fraction(c)
        return cls._raw(table, {m: c} if c else {})

    # -- inspection -------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def items(self):
        return self.terms.items()

    def coefficient(self, m: Monomial) -> Fraction:
        return self.terms.get(m, Fraction(0))

    def degrees(self) -> set:
        return {mono_degree(self.table, m) for m in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def degree(self) -> Optional[int]:
        """Degree of a homogeneous element; ``None`` for zero."""
        degs = self.degrees()
        if not degs:
            return None
        if len(degs) > 1:
            raise ValueError(f"{self} is not homogeneous")
        return degs.pop()

    def generators_used(self) -> set:
        return {i for m in self.terms for i, _ in m}

    # -- arithmetic -------------------------------------------------------
    def _check(self, other: "Poly"):
        if other.table is not self.table and other.table != self.table:
            raise ValueError("polynomials over different generator tables")

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.constant(self.table, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for m, c in other.terms.items():
            v = terms.get(m, 0) + c
            if v:
                terms[m] = v
            else:
                terms.pop(m, None)
        return Poly._raw(self.table, terms)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.table, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: Scalar) -> "Poly":
        c = Fraction(c)
        if not c:
            return Poly.zero(self.table)
        return Poly._raw(self.table, {m: v * c for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Poly):
            return NotImplemented
        self._check(other)
        return Poly._raw(self.table, _mul_terms(self.terms, other.terms, self.table.odd))

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, c):
        if isinstance(c, (int, Fraction)):
            return self.scale(Fraction(1) / Fraction(c))
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = Poly.one(self.table)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.table == other.table and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == ({ONE: Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        return format_poly(self)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda mc: _mono_sort_key(self.table, mc[0]))


def _mul_terms(ta: dict, tb: dict, odd) -> dict:
    out: dict = {}
    for ma, ca in ta.items():
        for mb, cb in tb.items():
            r = mono_mul(ma, mb, odd)
            if r is None:
                continue
            sign, m = r
            v = out.get(m, 0) + (ca * cb if sign > 0 else -ca * cb)
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return out


def mul(p: Poly, q: Poly) -> Poly:
    return p * q


def _mono_sort_key(table, m: Monomial):
    return (mono_degree(table, m), tuple(-e for e in _dense(table, m)))


def _dense(table, m: Monomial):
    v = [0] * len(table)
    for i, e in m:
        v[i] = e
    return v


def format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_monomial(table: GeneratorTable, m: Monomial) -> str:
    if not m:
        return "1"
    parts = []
    for i, e in m:
        name = table[i].name
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts)


def format_poly(p: Poly) -> str:
    if not p.terms:
        return "0"
    out = []
    for m, c in p.sorted_terms():
        neg = c < 0
        a = -c if neg else c
        mono = format_monomial(p.table, m)
        if mono == "1":
            body = format_coeff(a)
        elif a == 1:
            body = mono
        else:
            body = f"{format_coeff(a)}*{mono}"
        if not out:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


# -- degreewise bases --------------------------------------------------------

@lru_cache(maxsize=4096)
def _basis(table: GeneratorTable, n: int, allowed: Optional[frozenset]) -> tuple:
    idx = [i for i in range(len(table)) if allowed is None or i in allowed]
    degs = table.degrees
    odd = table.odd
    out = []

    def rec(pos, remaining, acc):
        if remaining == 0:
            out.append(tuple(acc))
            return
        if pos == len(idx):
            return
        g = idx[pos]
        dg = degs[g]
        top = 1 if odd[g] else remaining // dg
        top = min(top, remaining // dg)
        for e in range(top, -1, -1):
            if e:
                acc.append((g, e))
            rec(pos + 1, remaining - e * dg, acc)
            if e:
                acc.pop()

    if n >= 0:
        rec(0, n, [])
    return tuple(out)


def basis(table: GeneratorTable, n: int, allowed: Optional[Iterable[int]] = None) -> list:
    """All monomials of total degree ``n`` (optionally only in ``allowed`` generators).

    Ordered lexicographically by exponent vector, larger exponents on
    earlier generators first.
    """
    key = None if allowed is None else frozenset(allowed)
    return list(_basis(table, n, key))


# -- algebra homomorphisms ----------------------------------------------------

def substitute(p: Poly, sigma: Mapping, target: Optional[GeneratorTable] = None) -> Poly:
    """Apply the algebra homomorphism determined by ``sigma`` on generators.

    ``sigma`` maps generator indices (or names) of ``p.table`` to ``Poly``
    values over ``target``; unmapped generators go to themselves when the
    source and target tables coincide.
    """
    src = p.table
    if target is None:
        target = next((v.table for v in sigma.values() if isinstance(v, Poly)), src)
    images = {}
    for k, v in sigma.items():
        i = k if isinstance(k, int) else src.index(k)
        if isinstance(v, (int, Fraction)):
            v = Poly.constant(target, v)
        if v.table != target:
            raise ValueError("substitution values over different tables")
        if v and v.degree() != src[i].degree:
            raise ValueError(
                f"substitution for {src[i].name!r} has degree {v.degree()}, expected {src[i].degree}"
            )
        images[i] = v
    return _substitute_images(p, images, target)


def _substitute_images(p: Poly, images: Mapping[int, Poly], target: GeneratorTable) -> Poly:
    same = target == p.table
    powers: dict = {}

    def image(i):
        if i in images:
            return images[i]
        if same:
            return target.gen(i)
        raise ValueError(f"no image given for generator {p.table[i].name!r}")

    def power(i, e):
        key = (i, e)
        if key not in powers:
            powers[key] = image(i) if e == 1 else image(i) ** e
        return powers[key]

    out: dict = {}
    odd = target.odd
    for m, c in p.terms.items():
        acc = {ONE: c}
        for i, e in m:
            acc = _mul_terms(acc, power(i, e).terms, odd)
            if not acc:
                break
        for mm, cc in acc.items():
            v = out.get(mm, 0) + cc
            if v:
                out[mm] = v
            else:
                out.pop(mm, None)
    return Poly._raw(target, out)


def kill(p: Poly, indices: Iterable[int]) -> Poly:
    """Set the given generators to zero (quotient by the ideal they generate)."""
    dead = set(indices)
    return Poly._raw(p.table, {m: c for m, c in p.terms.items() if not any(i in dead for i, _ in m)})


def mono_hits(m: Monomial, indices) -> bool:
    return any(i in indices for i, _ in m)


def in_monomial_ideal(p: Poly, indices) -> bool:
    """Membership in the ideal generated by a set of generators."""
    s = set(indices)
    return all(mono_hits(m, s) for m in p.terms)


def split_monomial(m: Monomial, left: set):
    """Split a monomial into its ``left``-generator part and the rest.

    Only sign-free when every ``left`` index precedes every other index,
    which is how the path-algebra tables are laid out.
    """
    lpart = tuple(t for t in m if t[0] in left)
    rpart = tuple(t for t in m if t[0] not in left)
    return lpart, rpart


def reindex(p: Poly, mapping: Mapping[int, int], target: GeneratorTable) -> Poly:
    """Rename generators along an index map (signs recomputed if order changes)."""
    return _substitute_images(p, {i: target.gen(j) for i, j in mapping.items()}, target)
