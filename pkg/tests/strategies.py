"""Hypothesis strategies and the corpus shared by the test modules."""

from fractions import Fraction

from hypothesis import strategies as st

from sullivan.algebra import GeneratorTable, Poly, basis
from sullivan.models import cdga


def corpus():
    return {
        "S3": cdga([("y", 3)]),
        "P": cdga([("x", 2)]),
        "S2": cdga([("x", 2), ("y", 3)], {"y": "x^2"}),
        "Q": cdga([("x", 2), ("y1", 3), ("y2", 3)], {"y1": "x^2"}),
        "R": cdga([("y1", 3), ("y2", 3), ("y3", 5)], {"y3": "y1*y2"}),
    }


MIXED = GeneratorTable.of(("a", 2), ("u", 1), ("v", 3), ("b", 4), ("w", 3), ("c", 2))

coefficients = st.one_of(
    st.integers(-4, 4).filter(bool).map(Fraction),
    st.tuples(st.integers(-4, 4).filter(bool), st.integers(2, 5)).map(lambda t: Fraction(*t)),
)


@st.composite
def homogeneous(draw, table=MIXED, max_degree=8, allowed=None, degree=None):
    n = draw(st.integers(0, max_degree)) if degree is None else degree
    b = basis(table, n, allowed)
    if not b:
        return Poly.zero(table)
    picks = draw(st.lists(st.sampled_from(b), min_size=1, max_size=4, unique=True))
    return Poly(table, {m: draw(coefficients) for m in picks})


@st.composite
def pure_algebras(draw):
    """Random pure algebras: even generators first, odd ones with d in the even part."""
    evens = draw(st.lists(st.sampled_from([2, 4]), min_size=1, max_size=2))
    odds = draw(st.lists(st.sampled_from([3, 5, 7]), min_size=1, max_size=3))
    gens = [(f"x{i}", d) for i, d in enumerate(evens)] + [(f"y{j}", d) for j, d in enumerate(odds)]
    table = GeneratorTable.of(*gens)
    even_idx = set(range(len(evens)))
    diffs = {}
    for j, d in enumerate(odds):
        b = basis(table, d + 1, even_idx)
        if b and draw(st.booleans()):
            picks = draw(st.lists(st.sampled_from(b), min_size=1, max_size=3, unique=True))
            diffs[f"y{j}"] = Poly(table, {m: draw(coefficients) for m in picks})
    return cdga(gens, diffs)


def sample_algebras():
    """Corpus plus a few extra shapes (odd-odd quadratic, two evens)."""
    out = dict(corpus())
    out["AB"] = cdga([("a", 2), ("b", 2), ("y", 3), ("z", 3)], {"y": "a*b", "z": "a^2 - b^2"})
    out["S2xS3"] = cdga([("x", 2), ("y", 3), ("z", 3)], {"y": "x^2"})
    return out


algebras = st.one_of(st.sampled_from(sorted(sample_algebras().items())).map(lambda kv: kv[1]), pure_algebras())
