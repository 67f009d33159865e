"""Classical codes of length m + w with parity check [I_m | P(W)].

The columns of the parity-check matrix are the canonical basis of
F_2^m followed by the extra generators W, in the given order.  These
codes drive the hypercube covering maps, so the column order is fixed
and reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gf2 import (
    BitMatrix,
    BitVector,
    DimensionBudgetError,
    kernel_basis,
)
from .cayley import format_small_word

#: Exhaustive minimum-distance searches refuse dimensions above this.
MAX_ENUMERATION_DIMENSION = 24


class InvalidGeneratorError(ValueError):
    """W contains a duplicate, zero, or canonical-basis element."""


@dataclass(frozen=True)
class ClassicalCode:
    """A code defined by its parity-check matrix.

    When built via build_parity_check the matrix is [I_m | P(W)] and the
    code has length m + len(W) and dimension len(W).
    """

    m: int
    W: tuple[int, ...]
    parity_check: BitMatrix

    @property
    def length(self) -> int:
        return self.parity_check.cols

    def syndrome(self, x: int) -> int:
        """M(W) . x^T for a word x of F_2^(m+w), as a small-word int."""
        v = BitVector.from_int(self.length, x)
        return self.parity_check.mul_vector(v).to_int()

    def codeword_basis(self) -> list[int]:
        """Basis of the codeword space as integers, one per W element."""
        if self.W:
            return [
                w | (1 << (self.m + j)) for j, w in enumerate(self.W)
            ]
        return [v.to_int() for v in kernel_basis(self.parity_check)]

    @property
    def dimension(self) -> int:
        return len(self.codeword_basis())


def build_parity_check(m: int, W: tuple[int, ...] | list[int]) -> ClassicalCode:
    """Assemble the code record for generators W over F_2^m.

    W must be nonempty, nonzero, distinct and disjoint from the
    canonical basis.
    """
    W = tuple(W)
    if not W:
        raise InvalidGeneratorError("W must be nonempty")
    basis = {1 << i for i in range(m)}
    seen = set()
    for w in W:
        if not 0 < w < (1 << m):
            raise InvalidGeneratorError(
                f"generator {w} is zero or outside F_2^{m}"
            )
        if w in basis:
            raise InvalidGeneratorError(
                f"generator {format_small_word(w, m)} is a canonical basis "
                "element"
            )
        if w in seen:
            raise InvalidGeneratorError(
                f"duplicate generator {format_small_word(w, m)}"
            )
        seen.add(w)
    n = m + len(W)
    dense = np.zeros((m, n), dtype=np.uint8)
    for i in range(m):
        dense[i, i] = 1
    for j, w in enumerate(W):
        for i in range(m):
            dense[i, m + j] = w >> i & 1
    return ClassicalCode(m, W, BitMatrix.from_dense(dense))


def enumerate_codewords(code: ClassicalCode) -> list[int]:
    """All 2^dim codewords as integers, in Gray-code order over the
    fixed basis (deterministic)."""
    basis = code.codeword_basis()
    k = len(basis)
    if k > MAX_ENUMERATION_DIMENSION:
        raise DimensionBudgetError(k, MAX_ENUMERATION_DIMENSION)
    out = [0]
    cur = 0
    for i in range(1, 1 << k):
        cur ^= basis[(i & -i).bit_length() - 1]
        out.append(cur)
    return out


def min_distance(code: ClassicalCode) -> int | None:
    """Minimum weight over nonzero codewords, exhaustively.

    Returns None when the code has no nonzero codeword (dimension 0);
    never a sentinel integer.
    """
    basis = code.codeword_basis()
    k = len(basis)
    if k == 0:
        return None
    if k > MAX_ENUMERATION_DIMENSION:
        raise DimensionBudgetError(k, MAX_ENUMERATION_DIMENSION)
    best = code.length + 1
    cur = 0
    for i in range(1, 1 << k):
        cur ^= basis[(i & -i).bit_length() - 1]
        w = cur.bit_count()
        if w < best:
            best = w
    return best
