import pytest

from sullivan.algebra import GeneratorTable
from sullivan.derivations import Derivation, NonNilpotent, add, apply, bracket, exp, is_differential
from sullivan.parsing import parse_poly

T = GeneratorTable.of(("x", 2), ("y", 3), ("z", 3))


def P(text):
    return parse_poly(text, T)


def test_image_degree_is_enforced():
    with pytest.raises(ValueError):
        Derivation(T, 1, {"y": P("x")})


def test_odd_derivation_picks_up_koszul_sign():
    d = Derivation(T, 1, {"y": P("x^2")})
    # d(z*y) = d(z) y - z d(y) = -z*x^2
    assert apply(d, P("z*y")) == -P("x^2*z")
    assert is_differential(d)


def test_bracket_of_odd_derivations_is_anticommutator():
    d = Derivation(T, 1, {"y": P("x^2")})
    s = Derivation(T, -1, {"y": P("x")})
    b = bracket(d, s)
    assert b.degree == 0
    # ds(y) + sd(y) = d(x) + s(x^2) = 0
    assert b.on("y").is_zero()
    assert b.on("x").is_zero()


def test_exp_of_nilpotent_derivation():
    theta = Derivation(T, 0, {"z": P("y")})
    assert exp(theta, P("z")) == P("z + y")
    # z*y -> (z + y)*y = z*y
    assert exp(theta, P("z*y")) == P("z*y")


def test_exp_detects_non_nilpotent():
    theta = Derivation(T, 0, {"x": P("x")})
    with pytest.raises(NonNilpotent):
        exp(theta, P("x"), cap=5)


def test_add_derivations():
    a = Derivation(T, 0, {"z": P("y")})
    b = Derivation(T, 0, {"y": P("z")})
    c = add(a, b, -1)
    assert c.on("z") == P("y") and c.on("y") == -P("z")
