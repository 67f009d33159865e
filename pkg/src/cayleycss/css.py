"""CSS codes from self-orthogonal Cayley adjacency matrices.

A single self-orthogonal matrix H (H . H^T = 0) defines a CSS code of
length N = 2^m with K = N - 2 rank(H); the distance is the minimum
weight over ker H minus the row space.  Distance strategies: exact
enumeration within a budget, witness-verified upper bounds, and the
proven arithmetic lower bound ceil(d n^2 / 640).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Optional

from . import gf2
from .cayley import (
    BigWord,
    GeneratorSet,
    SelfOrthogonalityCertificate,
    adjacency_matrix,
    ball,
    check_self_orthogonal_combinatorial,
)
from .gf2 import BitMatrix, BitVector


class SelfOrthogonalityError(ValueError):
    """The generator set does not give a self-orthogonal matrix."""

    def __init__(self, certificate: SelfOrthogonalityCertificate):
        self.certificate = certificate
        detail = certificate.reason
        if certificate.violating_element is not None:
            detail += f" (element {certificate.violating_element})"
        super().__init__(f"matrix is not self-orthogonal: {detail}")


class InapplicableBoundError(ValueError):
    """The theorem hypothesis (classical distance >= 9) is violated."""


class WordClass(enum.Enum):
    NOT_IN_DUAL = "not-in-dual"
    STABILIZER = "stabilizer"
    LOGICAL = "logical"


@dataclass(frozen=True)
class CssCode:
    """A CSS code with cached rank and kernel basis.

    The stabilizer matrix satisfies H . H^T = 0, so its row space sits
    inside its kernel and K = N - 2 rank.
    """

    matrix: BitMatrix
    m: Optional[int] = None
    generators: Optional[GeneratorSet] = None
    _kernel: tuple[BitVector, ...] = field(default=None, repr=False)

    @property
    def N(self) -> int:
        return self.matrix.cols

    @property
    def rank(self) -> int:
        return gf2.rank(self.matrix)

    @property
    def K(self) -> int:
        return self.N - 2 * self.rank

    @property
    def kernel(self) -> tuple[BitVector, ...]:
        if self._kernel is None:
            object.__setattr__(
                self, "_kernel", tuple(gf2.kernel_basis(self.matrix))
            )
        return self._kernel

    @property
    def is_trivial(self) -> bool:
        """Self-dual case: kernel equals row space, no logical words."""
        return self.K == 0


def build_css(m: int, S: GeneratorSet) -> CssCode:
    """CSS code of the Cayley graph of F_2^m with generators S.

    Requires an even number of generators and the pair-count
    self-orthogonality condition; the violating element is reported.
    """
    cert = check_self_orthogonal_combinatorial(m, S)
    if not cert.ok:
        raise SelfOrthogonalityError(cert)
    return CssCode(adjacency_matrix(m, S), m=m, generators=S)


def css_from_matrix(H: BitMatrix) -> CssCode:
    """CSS code from an explicit self-orthogonal square matrix."""
    if not gf2.is_self_orthogonal(H):
        raise SelfOrthogonalityError(
            SelfOrthogonalityCertificate(False, "H . H^T != 0")
        )
    return CssCode(H)


@dataclass(frozen=True)
class DistanceReport:
    """Distance information with its provenance.

    method is one of "exact", "witness-upper" or "theorem-lower"; the
    self-dual case carries trivial=True instead of a number.
    """

    method: str
    value: Optional[int] = None
    upper: Optional[int] = None
    lower: Optional[int] = None
    witness: Optional[BitVector] = None
    trivial: bool = False
    rejected_reason: Optional[str] = None

    @property
    def accepted(self) -> bool:
        return self.rejected_reason is None and not self.trivial


def distance_exact(
    code: CssCode, budget: int = gf2.DEFAULT_ENUMERATION_BUDGET
) -> DistanceReport:
    """Exact distance by Gray-code enumeration of the kernel.

    Reports the trivial outcome when kernel equals row space (the
    self-dual hypercube case); raises DimensionBudgetError when the
    kernel dimension exceeds the budget, so callers can fall back to
    bounds.
    """
    if code.is_trivial:
        return DistanceReport(method="exact", trivial=True)
    dim = code.N - code.rank
    if dim > budget:
        raise gf2.DimensionBudgetError(dim, budget)
    rows = [code.matrix.row(i) for i in range(code.matrix.rows)]
    weight, witness = gf2.min_weight_in_span_minus_subspace(
        list(code.kernel), rows, budget
    )
    return DistanceReport(method="exact", value=weight, witness=witness)


def distance_witness_upper(code: CssCode, w: BigWord | BitVector) -> DistanceReport:
    """Validate an externally supplied logical word as an upper bound."""
    vec = w.bits if isinstance(w, BigWord) else w
    cls = classify_word(code, vec)
    if cls is WordClass.NOT_IN_DUAL:
        return DistanceReport(
            method="witness-upper",
            rejected_reason="witness is not in the kernel",
        )
    if cls is WordClass.STABILIZER:
        return DistanceReport(
            method="witness-upper",
            rejected_reason="witness lies in the row space",
        )
    return DistanceReport(
        method="witness-upper", upper=vec.weight, witness=vec
    )


def distance_lower_bound_theorem(n: int, d: int) -> int:
    """The proven lower bound ceil(d n^2 / 640) for classical distance
    d >= 9 and classical length n."""
    if d < 9:
        raise InapplicableBoundError(
            f"theorem requires classical distance >= 9, got {d}"
        )
    return math.ceil(d * n * n / 640)


def classify_word(code: CssCode, w: BigWord | BitVector) -> WordClass:
    """Three-way classification by the two membership tests."""
    vec = w.bits if isinstance(w, BigWord) else w
    if vec.length != code.N:
        raise ValueError(f"word length {vec.length} != code length {code.N}")
    if not code.matrix.mul_vector(vec).is_zero():
        return WordClass.NOT_IN_DUAL
    if gf2.in_row_space(code.matrix, vec):
        return WordClass.STABILIZER
    return WordClass.LOGICAL


@dataclass(frozen=True)
class BallWeightReport:
    """Per-center margins for the local-weight lower bound.

    The bound |w intersect B(x, 4)| >= ceil(n^2/32) is only asserted by
    the theory for minimum-weight logical words of codes whose
    classical distance is at least 9; otherwise the run is purely
    informational.
    """

    threshold: int
    margins: dict[int, int]

    @property
    def ok(self) -> bool:
        return all(m >= 0 for m in self.margins.values())


def ball_weight_check(
    code: CssCode, w: BigWord, n_classical: int
) -> BallWeightReport:
    """Check |w intersect B(x, 4)| >= ceil(n^2/32) at every x in the
    support of w, using the code's own Cayley graph."""
    if code.m is None or code.generators is None:
        raise ValueError("ball weights need a graph-backed CSS code")
    threshold = math.ceil(n_classical * n_classical / 32)
    margins = {}
    for x in w.vertices():
        b = ball(code.m, code.generators, x, 4)
        inside = sum(1 for v in w.vertices() if v in b)
        margins[x] = inside - threshold
    return BallWeightReport(threshold, margins)
