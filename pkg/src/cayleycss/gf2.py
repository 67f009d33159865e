"""Dense bit-packed GF(2) linear algebra.

Vectors and matrices are packed into 64-bit words, little-endian bit
order within words: bit ``i`` of a vector lives in word ``i // 64`` at
position ``i % 64``.  All serialization uses this layout.

Everything here is immutable after construction; the elimination caches
are write-once and safe to share between threads.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

WORD_BITS = 64

#: Default cap on exhaustive 2^dim enumerations (~67M words).  Chosen so
#: a dimension-20 search finishes in seconds while anything that would
#: run for days fails loudly instead.
DEFAULT_ENUMERATION_BUDGET = 26


class GF2Error(Exception):
    """Base class for GF(2) linear-algebra errors."""


class DimensionBudgetError(GF2Error):
    """An exhaustive enumeration would exceed the dimension budget."""

    def __init__(self, dimension: int, budget: int):
        self.dimension = dimension
        self.budget = budget
        super().__init__(
            f"enumeration dimension {dimension} exceeds budget {budget}"
        )


class EmptyDifferenceError(GF2Error):
    """The two spans coincide, so the set difference is empty."""


def _n_words(length: int) -> int:
    return (length + WORD_BITS - 1) // WORD_BITS


def _pad_mask(length: int) -> np.uint64:
    """Mask selecting the valid bits of the last word."""
    rem = length % WORD_BITS
    if rem == 0:
        return np.uint64(0xFFFFFFFFFFFFFFFF)
    return np.uint64((1 << rem) - 1)


class BitVector:
    """An immutable GF(2) vector packed into 64-bit words."""

    __slots__ = ("length", "words")

    def __init__(self, length: int, words: np.ndarray):
        if words.shape != (_n_words(length),) or words.dtype != np.uint64:
            raise ValueError("payload shape/dtype mismatch")
        words = words.copy()
        if length % WORD_BITS and words.size:
            words[-1] &= _pad_mask(length)
        words.setflags(write=False)
        self.length = length
        self.words = words

    # -- constructors --------------------------------------------------

    @classmethod
    def zeros(cls, length: int) -> "BitVector":
        return cls(length, np.zeros(_n_words(length), dtype=np.uint64))

    @classmethod
    def from_support(cls, length: int, positions: Iterable[int]) -> "BitVector":
        words = np.zeros(_n_words(length), dtype=np.uint64)
        for p in positions:
            if not 0 <= p < length:
                raise ValueError(f"position {p} out of range [0, {length})")
            words[p >> 6] ^= np.uint64(1 << (p & 63))
        return cls(length, words)

    @classmethod
    def from_int(cls, length: int, value: int) -> "BitVector":
        if value < 0 or value >> length:
            raise ValueError("integer value does not fit the stated length")
        buf = value.to_bytes(_n_words(length) * 8, "little")
        return cls(length, np.frombuffer(buf, dtype=np.uint64).copy())

    @classmethod
    def from_bits(cls, bits: Sequence[int]) -> "BitVector":
        return cls.from_support(len(bits), [i for i, b in enumerate(bits) if b])

    @classmethod
    def concat(cls, parts: Sequence["BitVector"]) -> "BitVector":
        value = 0
        offset = 0
        for p in parts:
            value |= p.to_int() << offset
            offset += p.length
        return cls.from_int(offset, value)

    # -- queries -------------------------------------------------------

    def to_int(self) -> int:
        return int.from_bytes(self.words.tobytes(), "little")

    def bit(self, i: int) -> int:
        if not 0 <= i < self.length:
            raise ValueError(f"index {i} out of range [0, {self.length})")
        return int((self.words[i >> 6] >> np.uint64(i & 63)) & np.uint64(1))

    def support(self) -> list[int]:
        return [i for i in range(self.length) if self.bit(i)]

    @property
    def weight(self) -> int:
        return int(np.bitwise_count(self.words).sum())

    def is_zero(self) -> bool:
        return not self.words.any()

    def slice(self, start: int, stop: int) -> "BitVector":
        mask = (1 << (stop - start)) - 1
        return BitVector.from_int(stop - start, (self.to_int() >> start) & mask)

    def reversed(self) -> "BitVector":
        """Bit reversal: position p maps to length-1-p."""
        bits = np.unpackbits(
            self.words.view(np.uint8), bitorder="little", count=self.length
        )
        return BitVector.from_bits(bits[::-1].tolist())

    def packed_bytes(self) -> bytes:
        """The first ceil(length/8) bytes of the little-endian payload."""
        return self.words.tobytes()[: (self.length + 7) // 8]

    # -- algebra -------------------------------------------------------

    def __xor__(self, other: "BitVector") -> "BitVector":
        if self.length != other.length:
            raise ValueError("length mismatch in XOR")
        return BitVector(self.length, self.words ^ other.words)

    def dot(self, other: "BitVector") -> int:
        if self.length != other.length:
            raise ValueError("length mismatch in dot product")
        return int(np.bitwise_count(self.words & other.words).sum()) & 1

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, BitVector)
            and self.length == other.length
            and bool(np.array_equal(self.words, other.words))
        )

    def __hash__(self) -> int:
        return hash((self.length, self.words.tobytes()))

    def __len__(self) -> int:
        return self.length

    def __repr__(self) -> str:
        if self.length <= 64:
            body = "".join(str(self.bit(i)) for i in range(self.length))
        else:
            body = f"weight={self.weight}"
        return f"BitVector({self.length}, {body})"


class BitMatrix:
    """An immutable GF(2) matrix stored as packed rows."""

    __slots__ = ("rows", "cols", "words", "_ech", "_solver")

    def __init__(self, rows: int, cols: int, words: np.ndarray):
        if words.shape != (rows, _n_words(cols)) or words.dtype != np.uint64:
            raise ValueError("payload shape/dtype mismatch")
        words = words.copy()
        if cols % WORD_BITS and words.size:
            words[:, -1] &= _pad_mask(cols)
        words.setflags(write=False)
        self.rows = rows
        self.cols = cols
        self.words = words
        self._ech = None
        self._solver = None

    # -- constructors --------------------------------------------------

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        return cls(rows, cols, np.zeros((rows, _n_words(cols)), dtype=np.uint64))

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        words = np.zeros((n, _n_words(n)), dtype=np.uint64)
        idx = np.arange(n)
        words[idx, idx >> 6] = np.uint64(1) << (idx & 63).astype(np.uint64)
        return cls(n, n, words)

    @classmethod
    def from_rows(cls, rows: Sequence[BitVector]) -> "BitMatrix":
        if not rows:
            raise ValueError("cannot build a matrix from zero rows")
        cols = rows[0].length
        if any(r.length != cols for r in rows):
            raise ValueError("rows have unequal lengths")
        return cls(len(rows), cols, np.vstack([r.words for r in rows]))

    @classmethod
    def from_dense(cls, dense: np.ndarray) -> "BitMatrix":
        dense = np.asarray(dense, dtype=np.uint8) & 1
        rows, cols = dense.shape
        packed = np.packbits(dense, axis=1, bitorder="little")
        pad = _n_words(cols) * 8 - packed.shape[1]
        if pad:
            packed = np.hstack(
                [packed, np.zeros((rows, pad), dtype=np.uint8)]
            )
        return cls(rows, cols, packed.view(np.uint64))

    # -- queries -------------------------------------------------------

    def row(self, i: int) -> BitVector:
        return BitVector(self.cols, self.words[i])

    def to_dense(self) -> np.ndarray:
        return np.unpackbits(
            self.words.view(np.uint8), axis=1, bitorder="little",
            count=self.cols,
        )

    def transpose(self) -> "BitMatrix":
        return BitMatrix.from_dense(self.to_dense().T)

    def mul_vector(self, v: BitVector) -> BitVector:
        """M . v^T, a vector indexed by rows."""
        if v.length != self.cols:
            raise ValueError(
                f"vector length {v.length} != column count {self.cols}"
            )
        parities = (
            np.bitwise_count(self.words & v.words[None, :]).sum(axis=1) & 1
        ).astype(np.uint8)
        return BitVector.from_bits(parities.tolist())

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, BitMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and bool(np.array_equal(self.words, other.words))
        )

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.words.tobytes()))

    def __repr__(self) -> str:
        return f"BitMatrix({self.rows}x{self.cols})"


class RowEchelonCache:
    """Row echelon form of a matrix: reduced rows, pivots and rank.

    The reduced rows have strictly increasing pivot columns and span the
    row space of the original matrix.
    """

    __slots__ = ("pivots", "basis", "rank")

    def __init__(self, pivots: list[int], basis: np.ndarray):
        self.pivots = pivots
        self.basis = basis  # (rank, n_words), pivot-sorted echelon rows
        self.rank = len(pivots)

    def reduce(self, words: np.ndarray) -> np.ndarray:
        """Residual of a packed vector after elimination against the basis."""
        out = words.copy()
        for r, c in enumerate(self.pivots):
            if (out[c >> 6] >> np.uint64(c & 63)) & np.uint64(1):
                out ^= self.basis[r]
        return out


def _echelonize(M: BitMatrix) -> RowEchelonCache:
    work = M.words.copy()
    nrows = M.rows
    pivots: list[int] = []
    r = 0
    for c in range(M.cols):
        wi = c >> 6
        bit = np.uint64(1 << (c & 63))
        hits = np.nonzero(work[r:, wi] & bit)[0]
        if hits.size == 0:
            continue
        p = r + int(hits[0])
        if p != r:
            work[[r, p]] = work[[p, r]]
        below = (work[r + 1:, wi] & bit) != 0
        if below.any():
            work[r + 1:][below] ^= work[r]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return RowEchelonCache(pivots, work[: len(pivots)].copy())


def _echelon(M: BitMatrix) -> RowEchelonCache:
    if M._ech is None:
        M._ech = _echelonize(M)
    return M._ech


def rank(M: BitMatrix) -> int:
    """GF(2) row rank; the echelon form is cached on the matrix."""
    return _echelon(M).rank


def _rref(ech: RowEchelonCache) -> np.ndarray:
    """Fully reduced rows (zeros above every pivot)."""
    basis = ech.basis.copy()
    for r in range(ech.rank - 1, 0, -1):
        c = ech.pivots[r]
        wi = c >> 6
        bit = np.uint64(1 << (c & 63))
        above = (basis[:r, wi] & bit) != 0
        if above.any():
            basis[:r][above] ^= basis[r]
    return basis


def kernel_basis(M: BitMatrix) -> list[BitVector]:
    """Basis of {v : M . v^T = 0}; has cols - rank(M) elements."""
    ech = _echelon(M)
    rref = _rref(ech)
    pivot_set = set(ech.pivots)
    free_cols = [c for c in range(M.cols) if c not in pivot_set]
    basis = []
    for f in free_cols:
        words = np.zeros(_n_words(M.cols), dtype=np.uint64)
        words[f >> 6] |= np.uint64(1 << (f & 63))
        fb = (rref[:, f >> 6] >> np.uint64(f & 63)) & np.uint64(1)
        for r in np.nonzero(fb)[0]:
            c = ech.pivots[int(r)]
            words[c >> 6] |= np.uint64(1 << (c & 63))
        basis.append(BitVector(M.cols, words))
    return basis


def in_row_space(M: BitMatrix, v: BitVector) -> bool:
    """True iff v lies in the GF(2) row span of M."""
    if v.length != M.cols:
        raise ValueError(f"vector length {v.length} != column count {M.cols}")
    return not _echelon(M).reduce(v.words).any()


class _Solver:
    """Fixed linear section of x -> M . x^T, built once per matrix.

    Eliminates the augmented matrix [M | I] so that applying the
    recorded transform to a right-hand side reads off a solution with
    all free variables pinned to zero.  The resulting map b -> x is a
    genuine linear map.
    """

    __slots__ = ("pivots", "transform", "rank")

    def __init__(self, M: BitMatrix):
        nw_m = _n_words(M.cols)
        # Eliminate on the M-columns only; the identity block records ops.
        work = np.hstack([M.words, BitMatrix.identity(M.rows).words])
        pivots: list[int] = []
        r = 0
        for c in range(M.cols):
            wi = c >> 6
            bit = np.uint64(1 << (c & 63))
            hits = np.nonzero(work[r:, wi] & bit)[0]
            if hits.size == 0:
                continue
            p = r + int(hits[0])
            if p != r:
                work[[r, p]] = work[[p, r]]
            others = (work[:, wi] & bit) != 0
            others[r] = False
            if others.any():
                work[others] ^= work[r]
            pivots.append(c)
            r += 1
            if r == M.rows:
                break
        self.pivots = pivots
        self.rank = len(pivots)
        self.transform = work[:, nw_m:].copy()  # (rows, n_words(rows))

    def solve(self, cols: int, b: BitVector) -> BitVector | None:
        tb = (
            np.bitwise_count(self.transform & b.words[None, :]).sum(axis=1) & 1
        )
        if tb[self.rank:].any():
            return None
        words = np.zeros(_n_words(cols), dtype=np.uint64)
        for r in np.nonzero(tb[: self.rank])[0]:
            c = self.pivots[int(r)]
            words[c >> 6] |= np.uint64(1 << (c & 63))
        return BitVector(cols, words)


def solve_preimage(M: BitMatrix, b: BitVector) -> BitVector | None:
    """Some x with M . x^T = b, or None when unsolvable.

    Deterministic for a fixed M: free variables are pinned to zero, so
    b -> x is a fixed linear section of the matrix map.
    """
    if b.length != M.rows:
        raise ValueError(f"vector length {b.length} != row count {M.rows}")
    if M._solver is None:
        M._solver = _Solver(M)
    return M._solver.solve(M.cols, b)


def is_self_orthogonal(M: BitMatrix) -> bool:
    """True iff M . M^T = 0 over GF(2)."""
    for i in range(M.rows):
        parities = (
            np.bitwise_count(M.words & M.words[i][None, :]).sum(axis=1) & 1
        )
        if parities.any():
            return False
    return True


def _int_echelon(vectors: Iterable[int]) -> list[int]:
    """Echelon basis of integers under XOR, sorted by leading bit."""
    basis: list[int] = []
    for v in vectors:
        v = _int_reduce(basis, v)
        if v:
            basis.append(v)
            basis.sort(key=int.bit_length, reverse=True)
    return basis


def _int_reduce(basis: list[int], v: int) -> int:
    # basis is kept sorted by decreasing leading bit, so one pass suffices.
    for b in basis:
        if v.bit_length() == b.bit_length():
            v ^= b
    return v


def min_weight_in_span_minus_subspace(
    span_basis: Sequence[BitVector],
    sub_basis: Sequence[BitVector],
    budget: int = DEFAULT_ENUMERATION_BUDGET,
) -> tuple[int, BitVector]:
    """Minimum Hamming weight over span(K) \\ span(I), with a witness.

    Enumerates coset by coset with a Gray code over the kernel
    coefficients, so each step is a single XOR plus a popcount.  Ties on
    weight break towards the numerically least witness, which makes the
    result deterministic (and associative under parallel merging).
    """
    length = span_basis[0].length if span_basis else 0
    sub_ints = _int_echelon(v.to_int() for v in sub_basis)
    span_ints = _int_echelon(v.to_int() for v in span_basis)
    dim_span = len(span_ints)
    if dim_span > budget:
        raise DimensionBudgetError(dim_span, budget)
    for s in sub_ints:
        if _int_reduce(span_ints, s):
            raise ValueError("subspace basis is not contained in the span")
    # Complement basis: span vectors surviving reduction mod the subspace.
    ech = list(sub_ints)
    comp: list[int] = []
    for v in span_ints:
        residual = _int_reduce(ech, v)
        if residual:
            comp.append(residual)
            ech.append(residual)
            ech.sort(key=int.bit_length, reverse=True)
    if not comp:
        raise EmptyDifferenceError("span and subspace coincide")

    best_w = length + 1
    best_v = 0
    q, s = len(comp), len(sub_ints)
    outer = 0
    for i in range(1, 1 << q):
        outer ^= comp[(i & -i).bit_length() - 1]
        v = outer
        w = v.bit_count()
        if w < best_w or (w == best_w and v < best_v):
            best_w, best_v = w, v
        for j in range(1, 1 << s):
            v ^= sub_ints[(j & -j).bit_length() - 1]
            w = v.bit_count()
            if w < best_w or (w == best_w and v < best_v):
                best_w, best_v = w, v
    return best_w, BitVector.from_int(length, best_v)
