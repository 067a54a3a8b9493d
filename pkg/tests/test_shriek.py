import pytest

from sullivan.algebra import Poly
from sullivan.models import bar_name, build_multiplication_model, build_nice_model, cdga
from sullivan.shriek import (
    DualCochain,
    build_good_cocycle,
    check_goodness,
    check_pq_vanishing,
    cochain_differential,
    cochain_is_zero,
    identity_cochain,
    mu_composite_vanishes,
    phi,
    shriek_degree,
    verify_nontriviality,
)

from strategies import corpus

C = corpus()
YBAR = bar_name("y")


def gens(M):
    return {g.name: M.table.gen(i) for i, g in enumerate(M.table)}


def mono(M, name):
    return ((M.table.index(name), 1),)


def test_even_sphere_shriek_values():
    M = build_multiplication_model(C["S2"])
    f = build_good_cocycle(M, 10).cochain
    g = gens(M)
    assert f.degree == shriek_degree(C["S2"]) == 2
    assert f.value(()) == g["x″"] + g["x′"]
    assert f.value(mono(M, "x̄")) == g["y″"] - g["y′"]
    for w in f.bar_basis(6):
        if any(i == M.table.index(YBAR) for i, _ in w):
            assert f.value(w).is_zero()
    x = M.base.gen("x")
    assert M.mu(f.value(())) == x.scale(2)
    assert M.mu(f.value(mono(M, "x̄"))).is_zero()


def test_two_step_phi_by_hand():
    M = build_multiplication_model(C["S2"])
    f1 = phi(identity_cochain(M))
    # even x: f1(x̄) = f0(1) = 1 and f1(1) = 0
    assert f1.stage == 1 and f1.degree == -1
    assert f1.value(mono(M, "x̄")) == Poly.one(M.table)
    assert f1.value(()).is_zero()


@pytest.mark.parametrize("name", ["S2", "Q", "R", "S3", "P"])
def test_good_cocycle_is_good_and_nontrivial(name):
    A = C[name]
    M, _ = build_nice_model(A, report=False)
    f = build_good_cocycle(M, 10).cochain
    rep = check_goodness(f, 10)
    assert rep.good, rep
    cert = verify_nontriviality(f)
    assert cert.holds, cert
    assert cochain_is_zero(cochain_differential(f), 10) is None


def test_even_sphere_sign_is_plus():
    M, _ = build_nice_model(C["S2"], report=False)
    f = build_good_cocycle(M, 10).cochain
    assert check_goodness(f).sign == 1
    assert verify_nontriviality(f).sign == 1


def test_pq_vanishing_for_two_even_one_odd_excess():
    A = cdga([("a", 2), ("b", 2), ("y", 3), ("z", 3)], {"y": "a*b", "z": "a^2 - b^2"})
    M, _ = build_nice_model(A, report=False)
    f = build_good_cocycle(M, 8).cochain
    rep = check_pq_vanishing(f)
    assert rep.p == 2 and rep.q == 2
    # n ranges over 1..2
    assert {len(w) for w in rep.values} == {1, 2}
    assert rep.vanishes


def test_mu_composite_surfaces_first_nonzero():
    M = build_multiplication_model(C["S2"])
    f = build_good_cocycle(M, 6).cochain
    hit, count = mu_composite_vanishes(f, 6)
    assert hit[0] == ()
    assert hit[1] == M.base.gen("x").scale(2)
    assert count == 1


def test_cochain_values_must_avoid_bars_and_respect_degree():
    M = build_multiplication_model(C["S2"])
    g = gens(M)
    with pytest.raises(ValueError):
        DualCochain(M, 1, 0, values={(): g["x̄"]})
    with pytest.raises(ValueError):
        DualCochain(M, 1, 0, values={(): g["x′"]})


def test_module_linearity_sign():
    M = build_multiplication_model(C["S2"])
    g = gens(M)
    f = build_good_cocycle(M, 6).cochain
    # f(y' * x̄) = (-1)^{|f| |y'|} y' f(x̄) and |f| is even
    assert f.apply(g["y′"] * g["x̄"]) == g["y′"] * f.value(mono(M, "x̄"))
    odd = phi(phi(identity_cochain(M)))
    assert odd.degree == 2
