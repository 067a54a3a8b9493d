"""Text formats: polynomial expressions and algebra presentation files.

Algebra file::

    # comment
    generator x 2
    generator y 3
    d y = x^2
    decompose dlp x

Generators are listed in filtration order; ``d`` of a generator may only
mention generators declared before it.  Missing ``d`` lines mean zero.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .algebra import GeneratorTable, Generator, Poly


class ParseError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[^\W\d]\w*[′″']*)|(?P<op>[-+*^/()]))")


def _tokens(text: str):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos:].strip()[:1]!r} in {text!r}")
        pos = m.end()
        kind = m.lastgroup
        out.append((kind, m.group(kind)))
    return out


class _ExprParser:
    # expr   := term (('+'|'-') term)*
    # term   := factor ('*' factor)*
    # factor := ('-'|'+') factor | atom ('^' int)?
    # atom   := int ('/' int)? | name | '(' expr ')'

    def __init__(self, text: str, table: GeneratorTable, allowed: Optional[set]):
        self.toks = _tokens(text)
        self.pos = 0
        self.table = table
        self.allowed = allowed
        self.text = text

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else (None, None)

    def take(self, value=None):
        tok = self.peek()
        if tok[0] is None or (value is not None and tok[1] != value):
            raise ParseError(f"expected {value or 'token'} in {self.text!r}")
        self.pos += 1
        return tok

    def parse(self) -> Poly:
        if not self.toks:
            raise ParseError("empty expression")
        p = self.expr()
        if self.pos != len(self.toks):
            raise ParseError(f"trailing input {self.peek()[1]!r} in {self.text!r}")
        return p

    def expr(self) -> Poly:
        p = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Poly:
        p = self.factor()
        while self.peek()[1] == "*":
            self.take()
            p = p * self.factor()
        return p

    def factor(self) -> Poly:
        if self.peek()[1] in ("-", "+"):
            op = self.take()[1]
            f = self.factor()
            return -f if op == "-" else f
        a = self.atom()
        if self.peek()[1] == "^":
            self.take()
            kind, val = self.take()
            if kind != "num":
                raise ParseError(f"exponent must be a non-negative integer in {self.text!r}")
            a = a ** int(val)
        return a

    def atom(self) -> Poly:
        kind, val = self.take()
        if kind == "num":
            c = Fraction(int(val))
            if self.peek()[1] == "/":
                self.take()
                k2, v2 = self.take()
                if k2 != "num" or int(v2) == 0:
                    raise ParseError(f"bad rational literal in {self.text!r}")
                c = c / int(v2)
            return Poly.constant(self.table, c)
        if kind == "name":
            if val not in self.table:
                raise ParseError(f"unknown generator {val!r}")
            if self.allowed is not None and val not in self.allowed:
                raise ParseError(f"generator {val!r} is referenced before it is available")
            return self.table.gen(val)
        if val == "(":
            p = self.expr()
            self.take(")")
            return p
        raise ParseError(f"unexpected {val!r} in {self.text!r}")


def parse_poly(text: str, table: GeneratorTable, allowed: Optional[set] = None) -> Poly:
    """Parse ``text`` as an element of the free algebra on ``table``."""
    return _ExprParser(text, table, allowed).parse()


@dataclass
class AlgebraFile:
    generators: List[Tuple[str, int]]
    differentials: Dict[str, Poly]
    decompositions: Dict[str, str] = field(default_factory=dict)
    table: Optional[GeneratorTable] = None


_NAME = re.compile(r"^[^\W\d]\w*$")


def parse_algebra_text(text: str) -> AlgebraFile:
    gens: List[Tuple[str, int, int]] = []
    seen = {}
    dlines = []
    decomps = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        words = line.split()
        head = words[0]
        if head == "generator":
            if len(words) != 3:
                raise ParseError("expected 'generator <name> <degree>'", lineno)
            name, deg = words[1], words[2]
            if not _NAME.match(name):
                raise ParseError(f"invalid generator name {name!r}", lineno)
            if name in seen:
                raise ParseError(f"duplicate generator {name!r}", lineno)
            try:
                degree = int(deg)
            except ValueError:
                raise ParseError(f"degree {deg!r} is not an integer", lineno) from None
            if degree < 2:
                raise ParseError(f"generator {name!r} has degree {degree}; need degree >= 2", lineno)
            seen[name] = len(gens)
            gens.append((name, degree, lineno))
        elif head == "d":
            m = re.match(r"^d\s+(\S+)\s*=\s*(.*)$", line)
            if not m:
                raise ParseError("expected 'd <name> = <expression>'", lineno)
            dlines.append((lineno, m.group(1), m.group(2)))
        elif head == "decompose":
            if len(words) != 3 or words[1] not in ("dlcop", "dlp"):
                raise ParseError("expected 'decompose dlcop|dlp <name>'", lineno)
            decomps[words[1]] = words[2]
        else:
            raise ParseError(f"unknown directive {head!r}", lineno)

    table = GeneratorTable(tuple(Generator(n, d) for n, d, _ in gens))
    diffs: Dict[str, Poly] = {}
    for lineno, name, expr in dlines:
        if name not in seen:
            raise ParseError(f"differential of undeclared generator {name!r}", lineno)
        if name in diffs:
            raise ParseError(f"second differential for {name!r}", lineno)
        k = seen[name]
        earlier = {n for n, _, _ in gens[:k]}
        try:
            p = parse_poly(expr, table, allowed=earlier)
        except ParseError as e:
            raise ParseError(str(e), lineno) from None
        if p and (not p.is_homogeneous() or p.degree() != gens[k][1] + 1):
            raise ParseError(
                f"d {name} must be homogeneous of degree {gens[k][1] + 1}", lineno
            )
        diffs[name] = p
    for kind, name in decomps.items():
        if name not in seen:
            raise ParseError(f"decomposition names unknown generator {name!r}")
    return AlgebraFile([(n, d) for n, d, _ in gens], diffs, decomps, table)


def parse_algebra_file(path) -> AlgebraFile:
    with open(path, encoding="utf-8") as fh:
        return parse_algebra_text(fh.read())
