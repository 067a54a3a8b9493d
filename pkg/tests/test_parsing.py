from fractions import Fraction

import pytest

from sullivan.algebra import GeneratorTable
from sullivan.parsing import ParseError, parse_algebra_text, parse_poly

T = GeneratorTable.of(("x", 2), ("y1", 3), ("y2", 3))


def test_expression_grammar():
    p = parse_poly("  x ^ 3 - 2/3*x*x + (y1 + y2)*x ", T)
    assert p.coefficient(((0, 2),)) == Fraction(-2, 3)
    assert p.coefficient(((0, 3),)) == 1
    assert parse_poly("-(x)", T) == -T.gen("x")
    assert parse_poly("y1*y1", T).is_zero()


@pytest.mark.parametrize("bad", ["x +", "x ** 2", "q", "x^-1", "2x", "(x"])
def test_bad_expressions(bad):
    with pytest.raises(ParseError):
        parse_poly(bad, T)


def test_algebra_file_roundtrip():
    a = parse_algebra_text("# S^2\ngenerator x 2\ngenerator y 3\nd y = x^2\n")
    assert a.generators == [("x", 2), ("y", 3)]
    assert str(a.differentials["y"]) == "x^2"


def test_empty_file_is_the_unit_algebra():
    a = parse_algebra_text("")
    assert a.generators == [] and a.differentials == {}


def test_decompose_directive():
    a = parse_algebra_text("generator y 3\ngenerator z 5\ndecompose dlcop y\n")
    assert a.decompositions == {"dlcop": "y"}


@pytest.mark.parametrize("text, line", [
    ("generator x 2\ngenerator x 4\n", 2),
    ("generator x 1\n", 1),
    ("generator x two\n", 1),
    ("generator x 2\n\nd y = x\n", 3),
    ("generator x 2\ngenerator y 3\nd y = x\n", 3),
    ("generator y 3\ngenerator x 2\nd y = x^2\n", 3),
    ("generator x 2\nbogus\n", 2),
    ("generator 2x 2\n", 1),
])
def test_errors_carry_line_numbers(text, line):
    with pytest.raises(ParseError) as e:
        parse_algebra_text(text)
    assert e.value.line == line
    assert f"line {line}" in str(e.value)
