"""Graded derivations of free graded-commutative algebras."""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Optional

from .algebra import ONE, GeneratorTable, Monomial, Poly, _mul_terms


class NonNilpotent(RuntimeError):
    """An iterated derivation failed to reach zero within its cap."""


class Derivation:
    """A derivation of degree ``degree`` determined by its generator images.

    Generators missing from ``images`` are sent to zero.
    """

    def __init__(self, table: GeneratorTable, degree: int, images: Optional[Mapping] = None):
        self.table = table
        self.degree = degree
        self.images: dict = {}
        for k, v in (images or {}).items():
            i = k if isinstance(k, int) else table.index(k)
            if v.table != table:
                raise ValueError("derivation image over a different table")
            if v:
                want = table[i].degree + degree
                got = v.degree()
                if got != want:
                    raise ValueError(
                        f"image of {table[i].name!r} has degree {got}, expected {want}"
                    )
                self.images[i] = v
        self._cache: dict = {}

    def __repr__(self):
        body = ", ".join(f"{self.table[i].name} -> {v}" for i, v in sorted(self.images.items()))
        return f"Derivation(deg={self.degree}; {body})"

    def on(self, i) -> Poly:
        i = i if isinstance(i, int) else self.table.index(i)
        return self.images.get(i) or Poly.zero(self.table)

    def __call__(self, p: Poly) -> Poly:
        return apply(self, p)

    def _apply_mono(self, m: Monomial) -> dict:
        hit = self._cache.get(m)
        if hit is not None:
            return hit
        table = self.table
        odd = table.odd
        degs = table.degrees
        odd_self = self.degree % 2 == 1
        out: dict = {}
        prefix_deg = 0
        for pos, (g, e) in enumerate(m):
            img = self.images.get(g)
            if img is not None:
                # theta(g^e) = e g^(e-1) theta(g) for even g
                factor = img.terms
                if e > 1:
                    factor = _mul_terms({((g, e - 1),): Fraction(e)}, factor, odd)
                left = m[:pos]
                right = m[pos + 1:]
                t = _mul_terms({left: Fraction(1)}, factor, odd) if left else factor
                if right:
                    t = _mul_terms(t, {right: Fraction(1)}, odd)
                negate = odd_self and prefix_deg % 2 == 1
                for mm, c in t.items():
                    v = out.get(mm, 0) + (-c if negate else c)
                    if v:
                        out[mm] = v
                    else:
                        out.pop(mm, None)
            prefix_deg += degs[g] * e
        self._cache[m] = out
        return out


def apply(theta: Derivation, p: Poly) -> Poly:
    """Extend ``theta`` to ``p`` by the graded Leibniz rule."""
    if p.table != theta.table:
        raise ValueError("derivation and polynomial over different tables")
    out: dict = {}
    for m, c in p.terms.items():
        if m == ONE:
            continue
        for mm, cc in theta._apply_mono(m).items():
            v = out.get(mm, 0) + c * cc
            if v:
                out[mm] = v
            else:
                out.pop(mm, None)
    return Poly._raw(p.table, out)


def bracket(d: Derivation, s: Derivation) -> Derivation:
    """The graded commutator ``ds - (-1)^{|d||s|} sd`` as a derivation."""
    if d.table != s.table:
        raise ValueError("derivations over different tables")
    sign = -1 if (d.degree * s.degree) % 2 else 1
    images = {}
    for i in range(len(d.table)):
        g = d.table.gen(i)
        v = apply(d, apply(s, g)) - apply(s, apply(d, g)).scale(sign)
        if v:
            images[i] = v
    return Derivation(d.table, d.degree + s.degree, images)


def add(theta: Derivation, rho: Derivation, c: int = 1) -> Derivation:
    """``theta + c*rho`` for derivations of equal degree."""
    if theta.degree != rho.degree or theta.table != rho.table:
        raise ValueError("incompatible derivations")
    images = {}
    for i in range(len(theta.table)):
        v = theta.on(i) + rho.on(i).scale(c)
        if v:
            images[i] = v
    return Derivation(theta.table, theta.degree, images)


def compose_on_generators(a: Derivation, b: Derivation) -> dict:
    """Values of the (non-derivation) composite ``a∘b`` on each generator."""
    return {i: apply(a, apply(b, a.table.gen(i))) for i in range(len(a.table))}


def is_differential(d: Derivation) -> bool:
    if d.degree != 1:
        raise ValueError("a differential has degree +1")
    return all(not apply(d, v) for v in d.images.values())


def _iteration_cap(p: Poly, cap: Optional[int]) -> int:
    if cap is not None:
        return cap
    degs = p.degrees()
    return 10 * max(max(degs, default=0), 1)


def exp(theta: Derivation, p: Poly, cap: Optional[int] = None) -> Poly:
    """``sum_n theta^n p / n!`` for a locally nilpotent degree-0 derivation."""
    if theta.degree != 0:
        raise ValueError("exponential needs a derivation of degree 0")
    limit = _iteration_cap(p, cap)
    total = p
    term = p
    n = 0
    while True:
        term = apply(theta, term)
        if not term:
            return total
        n += 1
        if n > limit:
            raise NonNilpotent(f"theta^n did not vanish after {limit} steps; last term {term}")
        term = term.scale(Fraction(1, n))
        total = total + term


def nilpotent_partial_sum(s: Derivation, d: Derivation, p: Poly, cap: Optional[int] = None) -> Poly:
    """``sum_{n>=1} (sd)^n p / n!``."""
    limit = _iteration_cap(p, cap)
    total = Poly.zero(p.table)
    term = p
    n = 0
    while True:
        term = apply(s, apply(d, term))
        if not term:
            return total
        n += 1
        if n > limit:
            raise NonNilpotent(f"(sd)^n did not vanish after {limit} steps; last term {term}")
        term = term.scale(Fraction(1, n))
        total = total + term
