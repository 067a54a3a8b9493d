import pytest

from sullivan.models import build_nice_model, cdga
from sullivan.triviality import (
    CERTIFIED,
    NOT_CERTIFIED,
    analyze_dlcop,
    analyze_dlp,
    build_section_psi,
    find_even_top_generator,
    find_odd_cocycle_generator,
    in_diagonal_ideal,
)

from strategies import corpus

C = corpus()
QUADRATIC = cdga([("a", 2), ("y", 3), ("z", 5), ("x", 4)], {"x": "z + a*y"})


@pytest.mark.parametrize("name", ["S3", "Q", "R"])
def test_more_odd_than_even_is_certified_by_part3(name):
    c = analyze_dlcop(C[name], N=8)
    assert c.verdict == CERTIFIED and c.route == "part3"
    assert c.witness["goodness"].good
    assert c.witness["pq_vanishing"].vanishes


def test_even_sphere_is_not_certified_and_surfaces_witness():
    c = analyze_dlcop(C["S2"], N=8)
    assert c.verdict == NOT_CERTIFIED
    assert str(c.witness["mu_delta_nonzero_at"]) == "1"
    assert c.witness["value"] == C["S2"].gen("x").scale(2)
    assert analyze_dlp(C["S2"], N=8).verdict == NOT_CERTIFIED


def test_part1_route_on_odd_cocycle_generator():
    A = cdga([("y", 3), ("z", 5)])
    c = analyze_dlcop(A, route="part1", N=10, generator="y")
    assert c.certified
    assert c.witness["generator"] == "y"
    assert all(ok for _, ok in c.witness["stages"])
    M = c.cocycle.M
    for st in c.witness["stage_cochains"]:
        for w in st.bar_basis(8):
            assert in_diagonal_ideal(M, 0, st.value(w))


def test_part1_refuses_non_cocycle_generator():
    c = analyze_dlcop(C["S2"], route="part1", generator="y", N=6)
    assert not c.certified
    assert "not an odd cocycle" in c.reason


@pytest.mark.parametrize("A", [cdga([("x", 2)]), cdga([("x", 4)]),
                               cdga([("a", 2), ("y", 3), ("x", 2)], {"y": "a^2"})])
def test_dlp_certified_with_even_top_generator(A):
    c = analyze_dlp(A, N=8)
    assert c.verdict == CERTIFIED and c.route == "part2"
    assert c.witness["scanned"] > 0


def test_section_identities_on_generators():
    A = cdga([("a", 2), ("y", 3), ("x", 2)], {"y": "a^2"})
    M, _ = build_nice_model(A, report=False)
    psi = build_section_psi(M)
    X = psi.complexes
    for i in range(len(X.source.table)):
        g = X.source.table.gen(i)
        assert X.eps(psi(g)) == g
        assert psi(X.source.d(g)) == X.target.d(psi(g))


def test_decomposition_finders():
    assert find_odd_cocycle_generator(C["Q"]) == 2
    assert find_odd_cocycle_generator(C["S2"]) is None
    assert find_even_top_generator(C["P"]) == 0
    assert find_even_top_generator(C["S2"]) is None


def test_non_semipure_needs_the_reduction_flag():
    c = analyze_dlcop(QUADRATIC, route="part1", N=8)
    assert not c.certified and "semi-pure" in c.reason
    c = analyze_dlcop(QUADRATIC, route="part1", N=8, reduce_semipure=True)
    assert c.certified
    assert analyze_dlp(QUADRATIC, N=8, reduce_semipure=True).certified


def test_unknown_route():
    with pytest.raises(ValueError):
        analyze_dlcop(C["S3"], route="part9")
