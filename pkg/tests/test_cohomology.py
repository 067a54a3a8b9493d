import pytest

from sullivan.cohomology import cohomology_dims, d_squared_zero, induced_map
from sullivan.models import AlgebraMap, build_loop_model, identity_map

from strategies import corpus

C = corpus()

# hand-computed from the presentations
EXPECTED = {
    "S3": [1, 0, 0, 1, 0, 0, 0, 0, 0],
    "P": [1, 0, 1, 0, 1, 0, 1, 0, 1],
    "S2": [1, 0, 1, 0, 0, 0, 0, 0, 0],
    "Q": [1, 0, 1, 1, 0, 1, 0, 0, 0],
    # y1 y2 = d(y3) dies; y1 y3 and y2 y3 survive
    "R": [1, 0, 0, 2, 0, 0, 0, 0, 2],
}


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_corpus_cohomology(name):
    assert cohomology_dims(C[name], 8).dims_list() == EXPECTED[name]


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_modular_rank_agrees(name):
    assert cohomology_dims(C[name], 8, modulus=1000003).dims_list() == EXPECTED[name]


def test_representatives_are_cocycles():
    rep = cohomology_dims(C["Q"], 6)
    for n, reps in rep.representatives.items():
        for z in reps:
            assert C["Q"].d(z).is_zero()
            assert z.degree() == n or n == 0


def test_odd_sphere_loop_cohomology_by_counting():
    # H(LS^3) = ∧(y:3) ⊗ Q[ȳ:2]: count solutions of 3a + 2b = n with a in {0, 1}
    oracle = [sum(1 for a in (0, 1) for b in range(n + 1) if 3 * a + 2 * b == n) for n in range(13)]
    L = build_loop_model(C["S3"])
    assert cohomology_dims(L, 12).dims_list() == oracle


def test_identity_induces_iso_and_zero_map_does_not():
    A = C["S2"]
    assert all(h.iso for h in induced_map(identity_map(A), 6).values())
    zero = AlgebraMap(A, A, {0: A.gen("x") * 0, 1: A.gen("y") * 0})
    h = induced_map(zero, 4)
    assert h[0].iso and not h[2].iso


def test_negative_bound_rejected():
    with pytest.raises(ValueError):
        cohomology_dims(C["S3"], -1)


def test_d_squared():
    assert d_squared_zero(C["R"], 10)
