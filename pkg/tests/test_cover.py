"""Hypercube covering maps: fibers, ball isomorphisms, lifts, and
sphere-sum decompositions."""

import pytest

from cayleycss import verify
from cayleycss.cayley import BigWord, GeneratorSet, ball, sphere
from cayleycss.cover import (
    BallCollision,
    BallIsomorphismCertificate,
    CoverMap,
    RadiusTooLargeError,
    SupportEscapesBallError,
    certify_ball_isomorphism,
    decompose_as_sphere_sum,
    lift_ball_word,
    sphere_orthogonality_profile,
)
from cayleycss.smallcode import build_parity_check


@pytest.fixture
def repetition_cover():
    # m = 5 with the all-ones extra column: a degree-2 cover of the
    # six-generator Cayley graph by the 6-hypercube
    return CoverMap(build_parity_check(5, (0b11111,)))


def test_projection_is_homomorphism(repetition_cover):
    cm = repetition_cover
    assert cm.project(0) == 0
    for x, y in [(3, 5), (17, 60), (63, 1)]:
        assert cm.project(x ^ y) == cm.project(x) ^ cm.project(y)
    # identity columns first: small vertices project to themselves
    for v in range(32):
        assert cm.project(v) == v
    assert cm.project(0b100000) == 0b11111


def test_fibers_partition(repetition_cover):
    cm = repetition_cover
    seen = set()
    for c in range(32):
        f = cm.fiber(c)
        assert len(f) == 2
        assert all(cm.project(x) == c for x in f)
        assert not (f & seen)
        seen |= f
    assert len(seen) == 64


def test_safe_radius(repetition_cover):
    assert repetition_cover.classical_distance == 6
    assert repetition_cover.safe_radius == 2


def test_ball_isomorphism_within_safe_radius(repetition_cover):
    cm = repetition_cover
    for center in range(64):
        for r in (0, 1, 2):
            cert = certify_ball_isomorphism(cm, center, r)
            assert isinstance(cert, BallIsomorphismCertificate)
    cert = certify_ball_isomorphism(cm, 0, 2)
    assert cert.ball_size == 1 + 6 + 15


def test_collision_beyond_safe_radius(repetition_cover):
    cert = certify_ball_isomorphism(repetition_cover, 0, 3)
    assert isinstance(cert, BallCollision)
    assert cert.first != cert.second
    cm = repetition_cover
    assert cm.project(cert.first) == cm.project(cert.second)


def test_lift_round_trip(repetition_cover):
    cm = repetition_cover
    c = BigWord.from_vertices(5, [1, 3, 6])
    lifted = lift_ball_word(cm, c, 0, 2)
    assert lifted.weight == c.weight
    assert sorted(cm.project(v) for v in lifted.vertices()) == c.vertices()


def test_lift_guards(repetition_cover):
    cm = repetition_cover
    with pytest.raises(RadiusTooLargeError):
        lift_ball_word(cm, BigWord.from_vertices(5, [1]), 0, 3)
    # weight 3 is distance 3 from 0 (also through the all-ones step)
    far = BigWord.from_vertices(5, [0b00111])
    with pytest.raises(SupportEscapesBallError):
        lift_ball_word(cm, far, 0, 2)


def test_non_liftable_word_example():
    """A word orthogonal to every sphere downstairs whose lift meets a
    sphere upstairs an odd number of times."""
    ok, detail = verify.non_lift_example()
    assert ok, detail


def test_sphere_orthogonality_profile():
    m = 5
    cm = CoverMap(build_parity_check(m, (0b11111,)))
    S = cm.target_generators()
    shell2 = BigWord.from_vertices(
        m, [v for v in range(32) if v.bit_count() == 2]
    )
    assert sphere_orthogonality_profile(m, S, shell2) == []
    single = BigWord.from_vertices(m, [0])
    profile = sphere_orthogonality_profile(m, S, single)
    # exactly the neighbors of 0 see it an odd number of times
    assert sorted(profile) == sorted(sphere(m, S, 0).vertices())


def test_decompose_single_sphere():
    m = 4
    S = GeneratorSet.canonical(m)
    c = sphere(m, S, 0)
    centers = decompose_as_sphere_sum(m, c, 0, 2)
    assert centers == {0}


def test_decompose_sum_of_spheres():
    m = 4
    S = GeneratorSet.canonical(m)
    c = sphere(m, S, 1) ^ sphere(m, S, 2)
    centers = decompose_as_sphere_sum(m, c, 0, 2)
    assert centers is not None
    acc = BigWord.empty(m)
    for t in centers:
        acc = acc ^ sphere(m, S, t)
    assert acc == c


def test_decompose_rejects_non_codeword():
    m = 4
    c = BigWord.from_vertices(m, [0])
    assert decompose_as_sphere_sum(m, c, 0, 2) is None


def test_decompose_guards():
    with pytest.raises(ValueError):
        decompose_as_sphere_sum(3, BigWord.empty(3), 0, 1)  # odd m
    far = BigWord.from_vertices(4, [0b1111])
    with pytest.raises(SupportEscapesBallError):
        decompose_as_sphere_sum(4, far, 0, 2)
