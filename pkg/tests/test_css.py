"""CSS code parameters, word classification, and distance reports."""

import pytest

from cayleycss import css, gf2
from cayleycss.cayley import BigWord, GeneratorSet, adjacency_matrix
from cayleycss.css import (
    InapplicableBoundError,
    SelfOrthogonalityError,
    WordClass,
    build_css,
    classify_word,
    css_from_matrix,
    distance_exact,
    distance_lower_bound_theorem,
    distance_witness_upper,
)
from cayleycss.gf2 import BitMatrix, BitVector


def test_build_css_basic_parameters():
    code = build_css(3, GeneratorSet.named("S3'"))
    assert (code.N, code.rank, code.K) == (8, 2, 4)
    assert not code.is_trivial


def test_build_css_rejects_odd_generator_count():
    with pytest.raises(SelfOrthogonalityError):
        build_css(3, GeneratorSet(3, (1, 2, 4)))


def test_css_from_matrix_rejects_non_orthogonal():
    M = BitMatrix.from_dense([[1, 1, 0], [0, 1, 1], [1, 0, 1]])
    with pytest.raises(SelfOrthogonalityError):
        css_from_matrix(M)


def test_hypercube_is_self_dual():
    for n in (2, 4):
        code = build_css(n, GeneratorSet.canonical(n))
        assert code.K == 0
        assert code.is_trivial
        report = distance_exact(code)
        assert report.trivial and report.value is None


def test_distance_exact_small_tower():
    code = build_css(3, GeneratorSet.named("S3'"))
    report = distance_exact(code)
    assert report.value == 2
    assert classify_word(code, report.witness) is WordClass.LOGICAL


def test_distance_exact_budget():
    code = build_css(3, GeneratorSet.named("S3'"))
    with pytest.raises(gf2.DimensionBudgetError):
        distance_exact(code, budget=2)


def test_classify_word_three_ways():
    code = build_css(3, GeneratorSet.named("S3'"))
    assert classify_word(code, code.matrix.row(0)) is WordClass.STABILIZER
    assert (
        classify_word(code, BitVector.from_support(8, [0]))
        is WordClass.NOT_IN_DUAL
    )
    logical = BitVector.from_support(8, [2, 4])
    assert classify_word(code, logical) is WordClass.LOGICAL
    with pytest.raises(ValueError):
        classify_word(code, BitVector.zeros(4))


def test_witness_upper_report():
    code = build_css(3, GeneratorSet.named("S3'"))
    good = distance_witness_upper(code, BitVector.from_support(8, [2, 4]))
    assert good.accepted and good.upper == 2

    stab = distance_witness_upper(code, code.matrix.row(0))
    assert not stab.accepted
    assert "row space" in stab.rejected_reason

    junk = distance_witness_upper(code, BitVector.from_support(8, [0]))
    assert not junk.accepted
    assert "kernel" in junk.rejected_reason


def test_lower_bound_arithmetic():
    assert distance_lower_bound_theorem(10, 9) == 2    # ceil(900/640)
    assert distance_lower_bound_theorem(16, 10) == 4   # ceil(2560/640)
    assert distance_lower_bound_theorem(100, 9) == 141
    with pytest.raises(InapplicableBoundError):
        distance_lower_bound_theorem(100, 8)


def test_ball_weight_check_requires_graph():
    M = adjacency_matrix(3, GeneratorSet.named("S3'"))
    bare = css_from_matrix(M)
    with pytest.raises(ValueError):
        css.ball_weight_check(bare, BigWord.from_vertices(3, [2, 4]), 10)


def test_ball_weight_margins():
    code = build_css(3, GeneratorSet.named("S3'"))
    w = BigWord.from_vertices(3, [2, 4])
    report = css.ball_weight_check(code, w, n_classical=4)
    assert report.threshold == 1  # ceil(16/32) = 1
    # radius-4 balls cover the whole graph, so both ones are inside
    assert all(m == 1 for m in report.margins.values())
    assert report.ok
