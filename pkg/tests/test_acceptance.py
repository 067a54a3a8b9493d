"""Acceptance criteria 1-11.

Run with ``pytest tests/test_acceptance.py``; a PASS/FAIL line per
criterion is printed in the terminal summary.
"""

import json
import os
import re
import time
from fractions import Fraction
from itertools import combinations

import pytest

from sullivan.algebra import Poly, basis, substitute
from sullivan.cli import main
from sullivan.cohomology import cohomology_dims, d_squared_zero
from sullivan.derivations import Derivation, apply
from sullivan.models import (
    bar_name,
    build_loop_model,
    build_multiplication_model,
    build_nice_model,
    cdga,
    check_quasi_iso,
    is_pure,
    is_semipure,
)
from sullivan.reductions import linear_part, pure_decompose, semipure_reduce
from sullivan.shriek import build_good_cocycle, check_goodness, check_pq_vanishing, verify_nontriviality
from sullivan.triviality import CERTIFIED, NOT_CERTIFIED, analyze_dlcop, analyze_dlp, shriek_tensor_id

from properties import PROPERTIES
from strategies import corpus

CORPUS = corpus()
CORPUS_DIR = os.path.join(os.path.dirname(__file__), "..", "corpus")


def criterion(number, title):
    return pytest.mark.criterion(number, title)


def gens(M):
    return {g.name: M.table.gen(i) for i, g in enumerate(M.table)}


def all_monomials(P, N):
    for n in range(N + 1):
        yield from basis(P.table, n)


# -- 1 ---------------------------------------------------------------------------------------

@criterion(1, "models square to zero; m is a quasi-isomorphism in degrees <= 12; < 30 s")
@pytest.mark.parametrize("name", sorted(CORPUS))
def test_models_are_correct(name):
    t0 = time.perf_counter()
    A = CORPUS[name]
    M = build_multiplication_model(A)
    L = build_loop_model(A)
    for P in (M.model, L):
        # d^2 is a derivation, so vanishing on generators is exact everywhere
        for i in range(len(P.table)):
            assert P.d(P.d(P.table.gen(i))).is_zero()
        assert d_squared_zero(P, 12)
    rep = check_quasi_iso(M.m, 12)
    assert rep.iso, rep.failures()
    assert sorted(rep.degrees) == list(range(13))
    assert time.perf_counter() - t0 < 30


# -- 2 ---------------------------------------------------------------------------------------

@criterion(2, "S^2: x'(y) = (x''+x')x̄ and dȳ = y'' - y' - (x''+x')x̄")
def test_even_sphere_xprime():
    M = build_multiplication_model(CORPUS["S2"])
    g = gens(M)
    xp, xpp, xb = g["x′"], g["x″"], g["x̄"]
    yp, ypp = g["y′"], g["y″"]
    # independent oracle: iterate s∘d by hand on the stage-one model
    T = M.table
    d1 = Derivation(T, 1, {"x̄": xpp - xp, "y′": xp ** 2, "y″": xpp ** 2})
    s = Derivation(T, -1, {"x′": xb, "x″": xb, "y′": g[bar_name("y")], "y″": g[bar_name("y")]})
    total, term, n = Poly.zero(T), yp, 0
    while True:
        term = apply(s, apply(d1, term))
        if not term:
            break
        n += 1
        term = term.scale(Fraction(1, n))
        total = total + term
    assert total == (xpp + xp) * xb
    assert M.xprime[1] == total
    assert M.model.d(g[bar_name("y")]) == ypp - yp - (xpp + xp) * xb


# -- 3 ---------------------------------------------------------------------------------------

@criterion(3, "S^2 shriek values, μδ_!(1) = 2x, goodness and nontriviality with sign +")
def test_even_sphere_shriek():
    M = build_multiplication_model(CORPUS["S2"])
    f = build_good_cocycle(M, 12).cochain
    g = gens(M)
    xbar = ((M.table.index("x̄"), 1),)
    ybar = M.table.index(bar_name("y"))
    assert f.value(()) == g["x″"] + g["x′"]
    assert f.value(xbar) == g["y″"] - g["y′"]
    for w in f.bar_basis(12):
        if any(i == ybar for i, _ in w):
            assert f.value(w).is_zero()
    x = CORPUS["S2"].gen("x")
    assert M.mu(f.value(())) == x.scale(2)
    assert M.mu(f.value(xbar)).is_zero()
    good = check_goodness(f, 12)
    assert good.good and good.sign == 1
    cert = verify_nontriviality(f)
    assert cert.holds and cert.sign == 1


# -- 4 ---------------------------------------------------------------------------------------

@criterion(4, "S^3, Q, R: Dlcop certified trivial, μ∘δ_! = 0 on all monomials of degree <= 12; < 60 s")
@pytest.mark.parametrize("name", ["S3", "Q", "R"])
def test_dlcop_trivial_when_more_odd(name):
    t0 = time.perf_counter()
    A = CORPUS[name]
    assert len(A.even) < len(A.odd)
    c = analyze_dlcop(A, N=12)
    assert c.verdict == CERTIFIED and c.route == "part3"
    f = c.cocycle
    M = f.M
    checked = 0
    for m in all_monomials(M.model, 12):
        assert M.mu(f.apply(Poly.monomial(M.table, m))).is_zero(), m
        checked += 1
    assert checked > 0
    assert time.perf_counter() - t0 < 60


# -- 5 ---------------------------------------------------------------------------------------

@criterion(5, "P and ∧(x:4): Dlp certified trivial, both section identities exact to degree 12")
@pytest.mark.parametrize("A", [CORPUS["P"], cdga([("x", 4)])], ids=["P", "x4"])
def test_dlp_trivial_with_even_top(A):
    c = analyze_dlp(A, N=12)
    assert c.verdict == CERTIFIED and c.route == "part2"
    psi = c.witness["section"]
    X = psi.complexes
    for m in all_monomials(X.source, 12):
        p = Poly.monomial(X.source.table, m)
        img = psi(p)
        assert X.eps(img) == p
        assert shriek_tensor_id(c.cocycle, X, img).is_zero()
        assert psi(X.source.d(p)) == X.target.d(img)


# -- 6 ---------------------------------------------------------------------------------------

@criterion(6, "∧(y:3, z:5): part (1) route certifies Dlcop; every stage lies in (y'' - y')")
def test_part1_route():
    A = cdga([("y", 3), ("z", 5)])
    c = analyze_dlcop(A, route="part1", generator="y", N=12)
    assert c.verdict == CERTIFIED and c.route == "part1"
    M = c.cocycle.M
    x = M.table.index("y′")
    xx = M.table.index("y″")
    stages = c.witness["stage_cochains"]
    assert len(stages) == len(A.table)
    for st in stages:
        for w in st.bar_basis(12):
            v = st.value(w)
            # membership in (y'' - y'): the value dies under y'' -> y'
            assert substitute(v, {xx: M.table.gen(x)}).is_zero()
    f = c.cocycle
    for m in all_monomials(M.model, 12):
        assert M.mu(f.apply(Poly.monomial(M.table, m))).is_zero()


# -- 7 ---------------------------------------------------------------------------------------

@criterion(7, "μ∘δ_! vanishes on every n-fold product of even bars for n > p - q")
@pytest.mark.parametrize("name", sorted(CORPUS))
def test_pq_vanishing(name):
    A = CORPUS[name]
    M, _ = build_nice_model(A, report=False)
    f = build_good_cocycle(M, 12).cochain
    assert check_goodness(f, 12).good
    p, q = len(A.even), len(A.odd)
    rep = check_pq_vanishing(f)
    expected = {tuple((M.bar[i], 1) for i in sub)
                for n in range(p + 1) if n > p - q
                for sub in combinations(A.even, n)}
    assert set(rep.values) == expected
    for w in expected:
        assert M.mu(f.value(w)).is_zero()


# -- 8 ---------------------------------------------------------------------------------------

@criterion(8, "property suites, 500 cases each, zero failures")
@pytest.mark.parametrize("name", list(PROPERTIES))
def test_property_suite(name):
    PROPERTIES[name]()


# -- 9 ---------------------------------------------------------------------------------------

QUADRATIC = {
    "a,y,z5,x4": cdga([("a", 2), ("y", 3), ("z", 5), ("x", 4)], {"x": "z + a*y"}),
    "a,y,z,x": cdga([("a", 2), ("y", 3), ("z", 3), ("x", 2)], {"y": "a^2", "x": "z"}),
}


@criterion(9, "semi-pure reduction and pure decomposition")
@pytest.mark.parametrize("name", sorted(QUADRATIC))
def test_semipure_reduction(name):
    A = QUADRATIC[name]
    assert not is_semipure(A)
    r = semipure_reduce(A, 12)
    assert is_semipure(r.result)
    assert cohomology_dims(A, 12).dims == cohomology_dims(r.result, 12).dims


PURE = {
    "S3": CORPUS["S3"], "P": CORPUS["P"], "S2": CORPUS["S2"], "Q": CORPUS["Q"],
    "x4,y3": cdga([("x", 4), ("y", 3)], {"y": "x"}),
    "x1,x2,y": cdga([("x1", 2), ("x2", 4), ("y", 3)], {"y": "x2 - x1^2"}),
}


@criterion(9, "semi-pure reduction and pure decomposition")
@pytest.mark.parametrize("name", sorted(PURE))
def test_pure_decomposition(name):
    A = PURE[name]
    assert is_pure(A)
    dec = pure_decompose(A, 12)
    for i in range(len(A.table)):
        g = A.table.gen(i)
        assert dec.psi(dec.phi(g)) == g
    for i in range(len(dec.product.table)):
        g = dec.product.table.gen(i)
        assert dec.phi(dec.psi(g)) == g
    h = cohomology_dims(dec.contractible, 12).dims
    assert h[0] == 1 and all(h[n] == 0 for n in range(1, 13))
    assert is_pure(dec.core)
    # minimal: no linear part survives in the core
    for v in dec.core.differential.images.values():
        assert not linear_part(v)


# -- 10 --------------------------------------------------------------------------------------

@criterion(10, "S^3 loop cohomology 1,0,1,1,... in degrees 0..12")
def test_odd_sphere_loop_table():
    oracle = [sum(1 for a in (0, 1) for b in range(n + 1) if 3 * a + 2 * b == n) for n in range(13)]
    assert oracle == [1, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1]
    assert cohomology_dims(build_loop_model(CORPUS["S3"]), 12).dims_list() == oracle


# -- 11 --------------------------------------------------------------------------------------

CLAIMS_NONTRIVIAL = re.compile(r"non-?trivial|is not trivial", re.IGNORECASE)


@criterion(11, "S^2 is not certified, witness μδ_!(1) = 2x; no report claims nontriviality")
def test_negative_control(tmp_path, capsys):
    c = analyze_dlcop(CORPUS["S2"], N=12)
    assert c.verdict == NOT_CERTIFIED
    assert c.witness["mu_delta_nonzero_at"] == Poly.one(c.witness["mu_delta_nonzero_at"].table)
    assert c.witness["value"] == CORPUS["S2"].gen("x").scale(2)

    out = tmp_path / "batch.json"
    code = main(["triviality", "--batch", CORPUS_DIR, "--max-degree", "8", "--json", str(out)])
    text = capsys.readouterr().out
    assert code == 0
    doc = json.loads(out.read_text(encoding="utf-8"))
    assert not CLAIMS_NONTRIVIAL.search(text)
    assert not CLAIMS_NONTRIVIAL.search(json.dumps(doc, ensure_ascii=False))
    verdicts = {r["verdict"] for d in doc["batch"] for r in d["results"].values()}
    assert verdicts <= {CERTIFIED, NOT_CERTIFIED}
    s2 = next(d for d in doc["batch"] if d["input"]["path"] == "s2.alg")
    assert s2["results"]["Dlcop"]["verdict"] == NOT_CERTIFIED
    assert s2["results"]["Dlcop"]["value"] == "2*x"


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
