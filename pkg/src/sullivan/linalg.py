"""Sparse exact linear algebra over Q, fraction-free.

Vectors are dicts ``{column: int}``.  Rational input is scaled to integers
once; every elimination step is the two-row cross multiplication followed
by division by the row content, so entries never leave Z and stay small.

Each stored row may carry a *tag*: a second sparse integer vector that
records which input combination produced it.  Tags turn the same routine
into a kernel finder and a linear solver.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Dict, Hashable, Iterable, List, Optional, Tuple

IntVec = Dict[int, int]


def integerize(vec: dict) -> Tuple[IntVec, int]:
    """Clear denominators of a rational vector.

    Returns ``(ints, scale)`` with ``ints = scale * vec``.
    """
    lcm = 1
    for c in vec.values():
        if isinstance(c, Fraction):
            den = c.denominator
            lcm = lcm * den // gcd(lcm, den)
    ints = {}
    for k, c in vec.items():
        v = c * lcm
        if isinstance(v, Fraction):
            v = v.numerator
        if v:
            ints[k] = int(v)
    return ints, lcm


def _content(vec: IntVec, tag: Optional[dict]) -> int:
    g = 0
    for v in vec.values():
        g = gcd(g, v)
        if g == 1:
            return 1
    if tag:
        for v in tag.values():
            g = gcd(g, v)
            if g == 1:
                return 1
    return g


def _axpy(a: int, x: dict, b: int, y: dict) -> dict:
    """Return ``a*x - b*y``."""
    out = {k: a * v for k, v in x.items()} if a != 1 else dict(x)
    for k, v in y.items():
        w = out.get(k, 0) - b * v
        if w:
            out[k] = w
        else:
            out.pop(k, None)
    return out


class Echelon:
    """Incrementally built row-echelon basis of a subspace.

    Every stored row's pivot is its smallest column, so reducing a vector
    by repeatedly clearing its smallest column is a complete membership
    test.  ``modulus`` switches to arithmetic in Z/p (tags unsupported).
    """

    def __init__(self, modulus: Optional[int] = None):
        self.rows: Dict[int, Tuple[IntVec, Optional[dict]]] = {}
        self.modulus = modulus

    def __len__(self):
        return len(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, vec: IntVec, tag: Optional[dict] = None):
        """Reduce until the leading column is not a pivot.  Returns ``(vec, tag)``."""
        if self.modulus is not None:
            return self._reduce_mod(vec), None
        vec = dict(vec)
        tag = dict(tag) if tag is not None else None
        rows = self.rows
        while vec:
            col = min(vec)
            row = rows.get(col)
            if row is None:
                break
            rvec, rtag = row
            a, b = rvec[col], vec[col]
            g = gcd(a, b)
            a //= g
            b //= g
            if a < 0:
                a, b = -a, -b
            vec = _axpy(a, vec, b, rvec)
            if tag is not None:
                tag = _axpy(a, tag, b, rtag or {})
            c = _content(vec, tag)
            if c > 1:
                vec = {k: v // c for k, v in vec.items()}
                if tag is not None:
                    tag = {k: v // c for k, v in tag.items()}
        return vec, tag

    def _reduce_mod(self, vec: IntVec) -> IntVec:
        p = self.modulus
        vec = {k: v % p for k, v in vec.items() if v % p}
        rows = self.rows
        while vec:
            col = min(vec)
            row = rows.get(col)
            if row is None:
                break
            rvec = row[0]
            f = vec[col]
            for k, v in rvec.items():
                w = (vec.get(k, 0) - f * v) % p
                if w:
                    vec[k] = w
                else:
                    vec.pop(k, None)
        return vec

    def add(self, vec: IntVec, tag: Optional[dict] = None) -> bool:
        """Insert ``vec``; return False when it was already in the span."""
        vec, tag = self.reduce(vec, tag)
        if not vec:
            return False
        col = min(vec)
        if self.modulus is not None:
            inv = pow(vec[col], -1, self.modulus)
            vec = {k: v * inv % self.modulus for k, v in vec.items()}
        self.rows[col] = (vec, tag)
        return True

    def contains(self, vec: IntVec) -> bool:
        return not self.reduce(vec)[0]


def rank(vectors: Iterable[dict], modulus: Optional[int] = None) -> int:
    ech = Echelon(modulus)
    for v in vectors:
        iv = integerize(v)[0] if modulus is None else _mod_vec(v, modulus)
        if iv:
            ech.add(iv)
    return ech.rank


def _mod_vec(v: dict, p: int) -> IntVec:
    out = {}
    for k, c in v.items():
        c = Fraction(c)
        r = c.numerator * pow(c.denominator, -1, p) % p
        if r:
            out[k] = r
    return out


def kernel(columns: List[dict]) -> List[Dict[int, Fraction]]:
    """Basis of ``{x : sum_j x_j columns[j] = 0}``.

    Kernel vectors come out in the order the dependent columns are found;
    each has a nonzero entry at its own column index and none beyond it.
    """
    ech = Echelon()
    out = []
    for j, col in enumerate(columns):
        vec, scale = integerize(col)
        tag = {j: scale}
        if not vec:
            out.append({j: Fraction(1)})
            continue
        red, rtag = ech.reduce(vec, tag)
        if red:
            ech.rows[min(red)] = (red, rtag)
        else:
            out.append(_normalize(rtag, j))
    return out


def _normalize(tag: dict, lead: int) -> Dict[int, Fraction]:
    c = tag[lead]
    return {k: Fraction(v, c) for k, v in sorted(tag.items()) if v}


class Unsolvable(ValueError):
    """Raised when a linear system has no solution."""


def solve(columns: List[dict], target: dict) -> Dict[int, Fraction]:
    """Find ``x`` with ``sum_j x_j columns[j] = target``.

    Columns are scanned in order and only those independent of their
    predecessors receive nonzero weight, so the answer is deterministic.
    """
    ech = Echelon()
    for j, col in enumerate(columns):
        vec, scale = integerize(col)
        if vec:
            ech.add(vec, {j: scale})
    tvec, tscale = integerize(target)
    if not tvec:
        return {}
    key = -1
    red, rtag = ech.reduce(tvec, {key: tscale})
    if red:
        raise Unsolvable("target is not in the column span")
    lam = rtag[key]
    return {k: Fraction(-v, lam) for k, v in sorted(rtag.items()) if k != key and v}


class Indexer:
    """Assigns consecutive integer columns to hashable keys."""

    def __init__(self, keys: Iterable[Hashable] = ()):
        self.index: Dict[Hashable, int] = {}
        for k in keys:
            self(k)

    def __call__(self, key) -> int:
        i = self.index.get(key)
        if i is None:
            i = self.index[key] = len(self.index)
        return i

    def vector(self, items) -> dict:
        return {self(k): c for k, c in items}
