"""JSON reports with embedded witnesses, and their independent re-verification.

Rationals are written as strings ``"p/q"``.  A polynomial is a list of
``[coefficient, [[generator, exponent], ...]]`` terms over a named table.
``verify_report`` rebuilds every witness from the document alone and
re-checks the identities with plain polynomial arithmetic.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List

from .algebra import Generator, GeneratorTable, Poly, _substitute_images, basis, format_coeff, kill, mono_degree
from .derivations import Derivation, apply

# -- encoding ------------------------------------------------------------------------------


def rational(c) -> str:
    return format_coeff(Fraction(c))


def table_json(T: GeneratorTable) -> list:
    return [[g.name, g.degree, g.role] for g in T]


def table_from_json(data) -> GeneratorTable:
    return GeneratorTable(tuple(Generator(name, deg, role) for name, deg, role in data))


def mono_json(T: GeneratorTable, m) -> list:
    return [[T[i].name, e] for i, e in m]


def mono_from_json(T: GeneratorTable, data) -> tuple:
    m = tuple((T.index(name), e) for name, e in data)
    if list(m) != sorted(m):
        raise ValueError("monomial is not in canonical order")
    return m


def poly_json(p: Poly) -> list:
    return [[rational(c), mono_json(p.table, m)] for m, c in p.sorted_terms()]


def poly_from_json(T: GeneratorTable, data) -> Poly:
    return Poly(T, {mono_from_json(T, m): Fraction(c) for c, m in data})


def presentation_json(P) -> dict:
    return {
        "generators": table_json(P.table),
        "differential": {P.table[i].name: poly_json(v) for i, v in sorted(P.differential.images.items())},
    }


class Rebuilt:
    """A presentation reconstructed from JSON: table plus differential."""

    def __init__(self, data):
        self.table = table_from_json(data["generators"])
        imgs = {self.table.index(k): poly_from_json(self.table, v) for k, v in data["differential"].items()}
        self.differential = Derivation(self.table, 1, imgs)

    def d(self, p: Poly) -> Poly:
        return apply(self.differential, p)

    def dgen(self, i) -> Poly:
        return self.differential.on(i)

    def basis(self, n):
        return basis(self.table, n)


def cochain_json(f, N: int) -> dict:
    """Values of a cochain on every bar monomial of degree <= N (nonzero ones listed)."""
    T = f.table
    return {
        "degree": f.degree,
        "stage": f.stage,
        "values_to": N,
        "values": [{"bar": mono_json(T, w), "value": poly_json(v)} for w, v in f.table_of_values(N).items()],
    }


class RebuiltCochain:
    def __init__(self, T: GeneratorTable, data, left: set, bars: set):
        self.table = T
        self.degree = data["degree"]
        self.bound = data["values_to"]
        self.left = left
        self.bars = bars
        self.values = {mono_from_json(T, e["bar"]): poly_from_json(T, e["value"]) for e in data["values"]}

    def value(self, w) -> Poly:
        if mono_degree(self.table, w) > self.bound:
            raise ValueError("cochain value requested beyond the embedded range")
        return self.values.get(w) or Poly.zero(self.table)

    def apply(self, p: Poly) -> Poly:
        T = self.table
        out = Poly.zero(T)
        for m, c in p.terms.items():
            a = tuple(t for t in m if t[0] in self.left)
            w = tuple(t for t in m if t[0] not in self.left)
            fw = self.value(w)
            if fw:
                sign = -1 if (self.degree * mono_degree(T, a)) % 2 else 1
                out = out + (Poly.monomial(T, a) * fw).scale(c * sign)
        return out


# -- re-verification ----------------------------------------------------------------------


class _Checks:
    def __init__(self):
        self.failures: List[str] = []
        self.count = 0

    def __call__(self, ok: bool, what: str):
        self.count += 1
        if not ok:
            self.failures.append(what)


def _path_roles(P: Rebuilt):
    T = P.table
    prime = T.indices("prime")
    dprime = T.indices("dprime")
    bars = T.indices("bar")
    return prime, dprime, bars


def _mu(P: Rebuilt, base: Rebuilt, p: Poly) -> Poly:
    prime, dprime, bars = _path_roles(P)
    imgs = {}
    for k, (i, j, b) in enumerate(zip(prime, dprime, bars)):
        imgs[i] = base.table.gen(k)
        imgs[j] = base.table.gen(k)
        imgs[b] = Poly.zero(base.table)
    return _substitute_images(p, imgs, base.table)


def _verify_presentation(P: Rebuilt, check, label):
    for i in range(len(P.table)):
        check(not P.d(P.dgen(i)), f"{label}: d^2 != 0 on {P.table[i].name}")


def _verify_path_model(doc, check):
    base = Rebuilt(doc["algebra"])
    P = Rebuilt(doc["path_model"])
    _verify_presentation(P, check, "path model")
    prime, dprime, bars = _path_roles(P)
    for i in range(len(P.table)):
        g = P.table.gen(i)
        check(_mu(P, base, P.d(g)) == base.d(_mu(P, base, g)), f"m is not a chain map on {P.table[i].name}")
    for name, data in doc.get("xprime", {}).items():
        k = base.table.index(name)
        xp = poly_from_json(P.table, data)
        dv = base.dgen(k)
        e1 = _substitute_images(dv, {j: P.table.gen(prime[j]) for j in range(len(prime))}, P.table)
        e2 = _substitute_images(dv, {j: P.table.gen(dprime[j]) for j in range(len(dprime))}, P.table)
        check(P.d(xp) == e2 - e1, f"d x'({name}) != (dv)'' - (dv)'")
        check(not _mu(P, base, xp), f"m x'({name}) != 0")
        dbar = P.table.gen(dprime[k]) - P.table.gen(prime[k]) - xp
        check(P.dgen(bars[k]) == dbar, f"d of the bar of {name} disagrees with x'")
    return base, P


def _verify_loop(doc, base, P, check):
    L = Rebuilt(doc["loop_model"])
    _verify_presentation(L, check, "loop model")
    n = len(base.table)
    prime, dprime, bars = _path_roles(P)
    imgs = {}
    for k in range(n):
        imgs[prime[k]] = L.table.gen(k)
        imgs[dprime[k]] = L.table.gen(k)
        imgs[bars[k]] = L.table.gen(n + k)
    for i in range(len(P.table)):
        red = _substitute_images(P.table.gen(i), imgs, L.table)
        check(_substitute_images(P.dgen(i), imgs, L.table) == L.d(red),
              f"loop differential is not the reduction of the path differential on {P.table[i].name}")


def _rebuild_cochain(P: Rebuilt, data) -> RebuiltCochain:
    prime, dprime, bars = _path_roles(P)
    return RebuiltCochain(P.table, data, set(prime) | set(dprime), set(bars[:data["stage"]]))


def _bar_basis(f: RebuiltCochain, n: int):
    return basis(f.table, n, f.bars)


def _verify_cocycle(P: Rebuilt, f: RebuiltCochain, N: int, check):
    s = -1 if f.degree % 2 else 1
    for n in range(N + 1):
        for w in _bar_basis(f, n):
            v = P.d(f.value(w)) - f.apply(P.d(Poly.monomial(P.table, w))).scale(s)
            check(not v, f"D(delta) != 0 on {w}")


def _verify_goodness(base, P, f, data, check):
    prime, dprime, bars = _path_roles(P)
    even = [i for i, g in enumerate(base.table) if not g.odd]
    odd = [i for i, g in enumerate(base.table) if g.odd]
    top = f.value(tuple((bars[i], 1) for i in even))
    prod = Poly.one(P.table)
    for j in odd:
        prod = prod * (P.table.gen(dprime[j]) - P.table.gen(prime[j]))
    sign = data["sign"]
    u = top - prod.scale(sign)
    pairs = [(prime[j], dprime[j]) for j in odd]
    ok = all(any(a in {g for g, _ in m} and b in {g for g, _ in m} for a, b in pairs) for m in u.terms)
    check(ok, "goodness (a): remainder outside the pair ideal")
    obars = {bars[j] for j in odd}
    for n in range(data["bound"] + 1):
        for w in _bar_basis(f, n):
            if any(g in obars for g, _ in w):
                check(not f.value(w), f"goodness (b): nonzero on {w}")


def _verify_mu_vanishing(base, P, f, N, check):
    for n in range(N + 1):
        for w in _bar_basis(f, n):
            check(not _mu(P, base, f.value(w)), f"mu∘delta != 0 on {w}")


def _verify_section(doc, base, P, f, N, check):
    S = Rebuilt(doc["section_source"])
    T = Rebuilt(doc["section_target"])
    _verify_presentation(S, check, "section source")
    _verify_presentation(T, check, "section target")
    psi = {S.table.index(k): poly_from_json(T.table, v) for k, v in doc["psi"].items()}
    eps = {T.table.index(k): poly_from_json(S.table, v) for k, v in doc["eps"].items()}
    for i in range(len(S.table)):
        g = S.table.gen(i)
        img = _substitute_images(g, psi, T.table)
        check(_substitute_images(img, eps, S.table) == g, f"(eps⊗id)psi != id on {S.table[i].name}")
        check(_substitute_images(S.d(g), psi, T.table) == T.d(img), f"psi is not a chain map on {S.table[i].name}")
    prime, dprime, bars = _path_roles(P)
    left = set(prime) | set(dprime)
    paths = set(bars)
    lift = {i: T.table.gen(i) for i in range(len(P.table))}
    for n in range(N + 1):
        for m in S.basis(n):
            img = _substitute_images(Poly.monomial(S.table, m), psi, T.table)
            out = Poly.zero(T.table)
            for mm, c in img.terms.items():
                a = tuple(t for t in mm if t[0] in left)
                w = tuple(t for t in mm if t[0] in paths)
                r = tuple(t for t in mm if t[0] not in left and t[0] not in paths)
                fw = f.value(w)
                if fw:
                    sign = -1 if (f.degree * mono_degree(T.table, a)) % 2 else 1
                    out = out + Poly.monomial(T.table, a) * _substitute_images(fw, lift, T.table) \
                        * Poly.monomial(T.table, r).scale(c * sign)
            check(not out, f"(delta⊗id)psi != 0 on {m}")


def _verify_certificate(cert, check):
    kind = cert["kind"]
    if kind == "path-model":
        base, P = _verify_path_model(cert, check)
        if "loop_model" in cert:
            _verify_loop(cert, base, P, check)
        return
    if kind == "triviality" and cert["verdict"] != "certified-trivial":
        return
    base = Rebuilt(cert["algebra"])
    P = Rebuilt(cert["path_model"])
    _verify_presentation(P, check, "path model")
    f = _rebuild_cochain(P, cert["cochain"])
    N = cert["bound"]
    if kind == "shriek-cocycle":
        _verify_cocycle(P, f, N, check)
        if cert.get("goodness"):
            _verify_goodness(base, P, f, cert["goodness"], check)
        nt = cert.get("nontriviality")
        if nt and nt.get("holds"):
            prime, dprime, bars = _path_roles(P)
            even = [i for i, g in enumerate(base.table) if not g.odd]
            top = f.value(tuple((bars[i], 1) for i in even))
            imgs = {}
            for k in range(len(base.table)):
                imgs[prime[k]] = Poly.zero(base.table)
                imgs[dprime[k]] = base.table.gen(k)
                imgs[bars[k]] = Poly.zero(base.table)
            g = kill(_substitute_images(top, imgs, base.table), set(even))
            target = Poly.one(base.table)
            for j, gen in enumerate(base.table):
                if gen.odd:
                    target = target * base.table.gen(j)
            check(g == target.scale(nt["sign"]), "nontriviality evaluation mismatch")
        for entry in cert.get("pq_vanishing", []):
            w = mono_from_json(P.table, entry["bar"])
            check(not _mu(P, base, f.value(w)), f"pq-vanishing fails on {w}")
        return
    if kind == "triviality":
        if cert["verdict"] != "certified-trivial":
            return
        _verify_cocycle(P, f, N, check)
        if cert["operation"] == "Dlcop":
            _verify_mu_vanishing(base, P, f, N, check)
            if cert["route"] == "part1":
                prime, dprime, _ = _path_roles(P)
                sub = {dprime[0]: P.table.gen(prime[0])}
                for st in cert["stages"]:
                    g = _rebuild_cochain(P, st)
                    for n in range(N + 1):
                        for w in _bar_basis(g, n):
                            check(not _substitute_images(g.value(w), sub, P.table),
                                  f"stage {st['stage']} leaves (x'' - x') on {w}")
        else:
            _verify_section(cert, base, P, f, N, check)
        return
    raise ValueError(f"unknown certificate kind {kind!r}")


def verify_report(doc: dict) -> List[str]:
    """Re-check every certificate in ``doc``; return the list of failures."""
    check = _Checks()
    docs = doc["batch"] if "batch" in doc else [doc]
    for d in docs:
        for cert in d.get("certificates", []):
            _verify_certificate(cert, check)
    return check.failures
