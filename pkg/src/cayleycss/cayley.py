"""Cayley graphs over F_2^m and products of cyclic groups.

Vertices of F_2^m are encoded as unsigned integers with coordinate x_i
at bit position i-1 (so e_i corresponds to 2^(i-1)).  A subset of the
vertex set ("big word") is a BitVector of length 2^m whose position p
stands for the vertex with integer value p.  Under this indexing the
coordinate added when passing from F_2^n to F_2^(n+1) is the most
significant bit, which makes the block recursion of the repetition
family hold literally.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, Sequence

import numpy as np

from .gf2 import BitMatrix, BitVector

#: Largest group dimension for which we materialize 2^m x 2^m matrices
#: (m = 16 means a 512 MB bit matrix).
MAX_MATERIALIZED_DIMENSION = 16


class SizeGuardError(ValueError):
    """The requested object would exceed the memory guard."""


def parse_small_word(text: str) -> int:
    """Parse a bitstring "x1 x2 ... xm" read left to right."""
    if not text or any(ch not in "01" for ch in text):
        raise ValueError(f"invalid bitstring {text!r}")
    return sum(1 << i for i, ch in enumerate(text) if ch == "1")


def format_small_word(value: int, m: int) -> str:
    return "".join("1" if value >> i & 1 else "0" for i in range(m))


@dataclass(frozen=True)
class GeneratorSet:
    """An ordered family of distinct nonzero elements of F_2^m."""

    m: int
    elements: tuple[int, ...]

    def __post_init__(self):
        if self.m <= 0:
            raise ValueError("group dimension must be positive")
        seen = set()
        for s in self.elements:
            if not 0 < s < (1 << self.m):
                raise ValueError(
                    f"generator {s} is zero or outside F_2^{self.m}"
                )
            if s in seen:
                raise ValueError(f"duplicate generator {s}")
            seen.add(s)

    @classmethod
    def from_strings(cls, m: int, texts: Iterable[str]) -> "GeneratorSet":
        return cls(m, tuple(parse_small_word(t) for t in texts))

    @classmethod
    def canonical(cls, n: int) -> "GeneratorSet":
        """The canonical basis e_1, ..., e_n (hypercube generators)."""
        return cls(n, tuple(1 << i for i in range(n)))

    @classmethod
    def canonical_with_all_ones(cls, n: int) -> "GeneratorSet":
        """The basis plus the all-ones word (repetition-code family)."""
        return cls(n, tuple(1 << i for i in range(n)) + ((1 << n) - 1,))

    @classmethod
    def named(cls, name: str) -> "GeneratorSet":
        """Resolve "Sn" / "Sn'" shorthand, e.g. "S3'" or "S4"."""
        base = name.rstrip("'")
        if not base.startswith("S") or not base[1:].isdigit():
            raise ValueError(f"unrecognized generator-set name {name!r}")
        n = int(base[1:])
        if name.endswith("'"):
            return cls.canonical_with_all_ones(n)
        return cls.canonical(n)

    def spans(self) -> bool:
        """Whether the generators span F_2^m (graph connectivity)."""
        basis: list[int] = []
        for s in self.elements:
            for b in basis:
                s = min(s, s ^ b)
            if s:
                basis.append(s)
                basis.sort(reverse=True)
        return len(basis) == self.m

    def as_strings(self) -> list[str]:
        return [format_small_word(s, self.m) for s in self.elements]


@dataclass(frozen=True)
class BigWord:
    """A subset of the vertex set of F_2^m, one bit per vertex."""

    m: int
    bits: BitVector

    def __post_init__(self):
        if self.bits.length != 1 << self.m:
            raise ValueError(
                f"big word over F_2^{self.m} must have length {1 << self.m}"
            )

    @classmethod
    def from_vertices(cls, m: int, vertices: Iterable[int]) -> "BigWord":
        return cls(m, BitVector.from_support(1 << m, vertices))

    @classmethod
    def empty(cls, m: int) -> "BigWord":
        return cls(m, BitVector.zeros(1 << m))

    def vertices(self) -> list[int]:
        return self.bits.support()

    @property
    def weight(self) -> int:
        return self.bits.weight

    def __contains__(self, vertex: int) -> bool:
        return bool(self.bits.bit(vertex))

    def __xor__(self, other: "BigWord") -> "BigWord":
        if self.m != other.m:
            raise ValueError("big words over different groups")
        return BigWord(self.m, self.bits ^ other.bits)


def sphere(m: int, S: GeneratorSet, x: int, radius: int = 1) -> BigWord:
    """The radius-1 sphere around x: the set {x + s : s in S}."""
    if S.m != m:
        raise ValueError("generator set does not live in F_2^m")
    if radius != 1:
        raise ValueError("only radius-1 spheres are rows of the adjacency")
    if not 0 <= x < (1 << m):
        raise ValueError(f"vertex {x} outside F_2^{m}")
    return BigWord.from_vertices(m, (x ^ s for s in S.elements))


def ball(m: int, S: GeneratorSet, x: int, r: int) -> BigWord:
    """BFS closure of {x} to graph distance <= r."""
    if not 0 <= x < (1 << m):
        raise ValueError(f"vertex {x} outside F_2^{m}")
    seen = {x}
    frontier = [x]
    for _ in range(r):
        nxt = []
        for v in frontier:
            for s in S.elements:
                u = v ^ s
                if u not in seen:
                    seen.add(u)
                    nxt.append(u)
        frontier = nxt
        if not frontier:
            break
    return BigWord.from_vertices(m, seen)


def graph_distance(m: int, S: GeneratorSet, x: int, y: int) -> Optional[int]:
    """BFS distance between two vertices, None if disconnected."""
    if x == y:
        return 0
    seen = {x}
    frontier = deque([(x, 0)])
    while frontier:
        v, d = frontier.popleft()
        for s in S.elements:
            u = v ^ s
            if u == y:
                return d + 1
            if u not in seen:
                seen.add(u)
                frontier.append((u, d + 1))
    return None


def adjacency_matrix(
    m: int, S: GeneratorSet, max_dimension: int = MAX_MATERIALIZED_DIMENSION
) -> BitMatrix:
    """The 2^m x 2^m adjacency matrix; row p is sphere(p, 1)."""
    if S.m != m:
        raise ValueError("generator set does not live in F_2^m")
    if m > max_dimension:
        raise SizeGuardError(
            f"2^{m} x 2^{m} matrix exceeds the m <= {max_dimension} guard"
        )
    n = 1 << m
    words = np.zeros((n, max(1, n >> 6)), dtype=np.uint64)
    idx = np.arange(n)
    for s in S.elements:
        cols = idx ^ s
        words[idx, cols >> 6] |= np.uint64(1) << (cols & 63).astype(np.uint64)
    return BitMatrix(n, n, words)


@dataclass(frozen=True)
class SelfOrthogonalityCertificate:
    """Outcome of the combinatorial pair-count self-orthogonality test."""

    ok: bool
    reason: str = ""
    violating_element: Optional[int] = None


def check_self_orthogonal_combinatorial(
    m: int, S: GeneratorSet
) -> SelfOrthogonalityCertificate:
    """Pair-count test: every g must have an even number of ordered
    representations g = s + t with (s, t) in S x S, and |S| must be even.
    Equivalent to the adjacency matrix being self-orthogonal."""
    if len(S.elements) % 2:
        return SelfOrthogonalityCertificate(False, "odd size")
    counts: dict[int, int] = {}
    for s in S.elements:
        for t in S.elements:
            g = s ^ t
            counts[g] = counts.get(g, 0) + 1
    for g, c in counts.items():
        if c % 2:
            return SelfOrthogonalityCertificate(
                False, "odd representation count", g
            )
    return SelfOrthogonalityCertificate(True)


# -- group algebra over products of cyclic groups ----------------------

MAX_GROUP_ORDER = 1 << 16


@dataclass(frozen=True)
class CyclicProductGroup:
    """Z/n1 x ... x Z/nk with elements indexed in mixed radix.

    The first modulus is least significant, so (2,)*m reproduces the
    small-word indexing of F_2^m.
    """

    moduli: tuple[int, ...]

    def __post_init__(self):
        if not self.moduli or any(n <= 0 for n in self.moduli):
            raise ValueError("moduli must be positive")

    @property
    def order(self) -> int:
        o = 1
        for n in self.moduli:
            o *= n
        return o

    @classmethod
    def binary(cls, m: int) -> "CyclicProductGroup":
        return cls((2,) * m)

    def index(self, element: Sequence[int]) -> int:
        idx = 0
        stride = 1
        for x, n in zip(element, self.moduli):
            idx += (x % n) * stride
            stride *= n
        return idx

    def element(self, idx: int) -> tuple[int, ...]:
        out = []
        for n in self.moduli:
            out.append(idx % n)
            idx //= n
        return tuple(out)

    @cached_property
    def _is_binary(self) -> bool:
        return all(n == 2 for n in self.moduli)

    def add(self, a: int, b: int) -> int:
        if self._is_binary:
            # Mixed-radix with all moduli 2 is plain XOR; the fast path
            # keeps exhaustive generator-set sweeps cheap.
            return a ^ b
        return self.index(
            tuple(x + y for x, y in zip(self.element(a), self.element(b)))
        )

    def neg(self, a: int) -> int:
        return self.index(tuple(-x for x in self.element(a)))

    @property
    def identity(self) -> int:
        return 0


@dataclass(frozen=True)
class GroupAlgebraElement:
    """An element of F_2[G]: a set of group indices with XOR addition."""

    group: CyclicProductGroup
    support: frozenset[int]

    @classmethod
    def from_terms(
        cls, group: CyclicProductGroup, terms: Iterable[int]
    ) -> "GroupAlgebraElement":
        sup: set[int] = set()
        for t in terms:
            sup.symmetric_difference_update({t})
        return cls(group, frozenset(sup))

    def __add__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        return GroupAlgebraElement(
            self.group, self.support ^ other.support
        )

    def __mul__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        """Convolution over the group law, coefficients in F_2."""
        counts: dict[int, int] = {}
        for a in self.support:
            for b in other.support:
                g = self.group.add(a, b)
                counts[g] = counts.get(g, 0) ^ 1
        return GroupAlgebraElement(
            self.group, frozenset(g for g, c in counts.items() if c)
        )

    def is_zero(self) -> bool:
        return not self.support


def generator_sum(
    group: CyclicProductGroup, generators: Iterable[Sequence[int] | int]
) -> GroupAlgebraElement:
    """pi_S: the formal F_2 sum of the generators."""
    idxs = [
        g if isinstance(g, int) else group.index(g) for g in generators
    ]
    return GroupAlgebraElement.from_terms(group, idxs)


def inverse_generator_sum(
    group: CyclicProductGroup, generators: Iterable[Sequence[int] | int]
) -> GroupAlgebraElement:
    """pi_S-hat: the formal F_2 sum of the inverted generators."""
    idxs = [
        group.neg(g if isinstance(g, int) else group.index(g))
        for g in generators
    ]
    return GroupAlgebraElement.from_terms(group, idxs)


def algebra_nilpotency_check(
    group: CyclicProductGroup, generators: Sequence[Sequence[int] | int]
) -> bool:
    """Self-orthogonality via the group algebra: pi_S . pi_S-hat = 0.

    Agrees with the adjacency matrix condition M . M^T = 0 whenever the
    matrix is materializable.
    """
    if group.order > MAX_GROUP_ORDER:
        raise SizeGuardError(
            f"group order {group.order} exceeds {MAX_GROUP_ORDER}"
        )
    pi = generator_sum(group, generators)
    pi_hat = inverse_generator_sum(group, generators)
    return (pi * pi_hat).is_zero()


def algebra_nilpotency_check_f2(m: int, S: GeneratorSet) -> bool:
    """The group-algebra test specialized to F_2^m generator sets."""
    return algebra_nilpotency_check(
        CyclicProductGroup.binary(m), list(S.elements)
    )


# -- bipartite structure ----------------------------------------------


def bipartite_split(
    m: int, S: GeneratorSet
) -> Optional[tuple[BigWord, BigWord]]:
    """Even/odd-weight vertex classes, when every generator has odd
    weight (each edge then changes weight parity); None otherwise."""
    if any(s.bit_count() % 2 == 0 for s in S.elements):
        return None
    evens = [v for v in range(1 << m) if v.bit_count() % 2 == 0]
    odds = [v for v in range(1 << m) if v.bit_count() % 2 == 1]
    return (
        BigWord.from_vertices(m, evens),
        BigWord.from_vertices(m, odds),
    )


def halved_matrix(m: int, S: GeneratorSet) -> BitMatrix:
    """The biadjacency block U of a bipartite Cayley graph.

    Rows are indexed by even-weight vertices, columns by odd-weight
    vertices, both in increasing integer order.
    """
    split = bipartite_split(m, S)
    if split is None:
        raise ValueError("graph is not bipartite by weight parity")
    evens = split[0].vertices()
    odds = split[1].vertices()
    odd_index = {v: j for j, v in enumerate(odds)}
    half = 1 << (m - 1)
    dense = np.zeros((half, half), dtype=np.uint8)
    for i, v in enumerate(evens):
        for s in S.elements:
            dense[i, odd_index[v ^ s]] = 1
    return BitMatrix.from_dense(dense)


# -- Hamming isometries -----------------------------------------------


@dataclass(frozen=True)
class IsometryResult:
    """A relabelled big word plus the generator-stabilization verdict."""

    word: BigWord
    stabilizes_generators: Optional[bool] = None


def permute_coordinates(x: int, perm: Sequence[int]) -> int:
    """Send coordinate i of x to coordinate perm[i] (0-based)."""
    out = 0
    for i, p in enumerate(perm):
        if x >> i & 1:
            out |= 1 << p
    return out


def apply_isometry(
    w: BigWord,
    translation: int,
    perm: Sequence[int],
    S: Optional[GeneratorSet] = None,
) -> IsometryResult:
    """Relabel a big word by the isometry x -> sigma(x) + translation.

    Weight is preserved.  When S is given, reports whether sigma
    stabilizes S as a set; only then is the map a code automorphism.
    """
    m = w.m
    if sorted(perm) != list(range(m)):
        raise ValueError("perm is not a permutation of the coordinates")
    if not 0 <= translation < (1 << m):
        raise ValueError("translation outside the group")
    mapped = [
        permute_coordinates(x, perm) ^ translation for x in w.vertices()
    ]
    stabilizes = None
    if S is not None:
        stabilizes = set(
            permute_coordinates(s, perm) for s in S.elements
        ) == set(S.elements)
    return IsometryResult(BigWord.from_vertices(m, mapped), stabilizes)
