"""Hypercube covering maps of Cayley graphs over F_2^m.

The projection sends a hypercube vertex x in F_2^(m+w) to the XOR of
the parity-check columns selected by x, so e_i maps to e_i for i <= m
and e_(m+j) maps to W_j.  Fibers are cosets of the classical code and
the map restricts to a graph isomorphism on balls of radius up to
floor((d-1)/2), which we certify computationally rather than assume.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .cayley import BigWord, GeneratorSet, ball, sphere
from .gf2 import BitVector
from .smallcode import ClassicalCode, enumerate_codewords, min_distance


class SupportEscapesBallError(ValueError):
    """The word's support is not contained in the stated ball."""


class RadiusTooLargeError(ValueError):
    """The requested radius exceeds the certified isomorphism range."""


@dataclass(frozen=True)
class BallIsomorphismCertificate:
    """Witness that the projection is a graph isomorphism on a ball."""

    center: int
    radius: int
    ball_size: int
    edge_count: int


@dataclass(frozen=True)
class BallCollision:
    """Two distinct ball vertices with the same projection."""

    center: int
    radius: int
    first: int
    second: int


class CoverMap:
    """The covering map from the (m+w)-hypercube onto the Cayley graph
    of F_2^m with generators S_m + W."""

    def __init__(self, code: ClassicalCode):
        self.code = code
        self.m = code.m
        self.n = code.length
        self.columns = tuple(1 << i for i in range(code.m)) + code.W
        self._codewords: Optional[tuple[int, ...]] = None
        self._min_distance: Optional[int] = None

    @property
    def codewords(self) -> tuple[int, ...]:
        if self._codewords is None:
            self._codewords = tuple(enumerate_codewords(self.code))
        return self._codewords

    @property
    def classical_distance(self) -> int:
        if self._min_distance is None:
            d = min_distance(self.code)
            if d is None:
                raise ValueError("cover of a dimension-0 code is trivial")
            self._min_distance = d
        return self._min_distance

    @property
    def safe_radius(self) -> int:
        """floor((d-1)/2): the proven ball-isomorphism radius."""
        return (self.classical_distance - 1) // 2

    def domain_generators(self) -> GeneratorSet:
        return GeneratorSet.canonical(self.n)

    def target_generators(self) -> GeneratorSet:
        return GeneratorSet(self.m, self.columns)

    def project(self, x: int) -> int:
        """Group homomorphism F_2^(m+w) -> F_2^m via the columns."""
        if not 0 <= x < (1 << self.n):
            raise ValueError(f"vertex {x} outside F_2^{self.n}")
        out = 0
        i = 0
        while x:
            if x & 1:
                out ^= self.columns[i]
            x >>= 1
            i += 1
        return out

    def fiber(self, c: int) -> set[int]:
        """Preimage of a target vertex: the coset c + C(W), size 2^w."""
        if not 0 <= c < (1 << self.m):
            raise ValueError(f"vertex {c} outside F_2^{self.m}")
        # The first m columns form the identity, so c itself projects to c.
        return {c ^ cw for cw in self.codewords}


def certify_ball_isomorphism(
    cm: CoverMap, center: int, r: int
) -> BallIsomorphismCertificate | BallCollision:
    """Check that the projection restricted to the hypercube ball at
    center is a graph isomorphism onto the target ball.

    Returns the lexicographically first collision pair on failure.
    """
    dom = cm.domain_generators()
    domain_ball = sorted(ball(cm.n, dom, center, r).vertices())
    images: dict[int, int] = {}
    for v in domain_ball:
        img = cm.project(v)
        if img in images:
            return BallCollision(center, r, images[img], v)
        images[img] = v
    target_ball = set(
        ball(cm.m, cm.target_generators(), cm.project(center), r).vertices()
    )
    if set(images) != target_ball:
        # Surjectivity cannot fail for a covering map with injective
        # restriction, but check it rather than trust it.
        missing = min(target_ball - set(images))
        raise AssertionError(
            f"projection of the ball misses target vertex {missing}"
        )
    # Edge bijectivity: adjacency inside the target ball must be
    # mirrored by adjacency of the lifted endpoints.
    edges = 0
    for u in sorted(target_ball):
        for s in cm.columns:
            v = u ^ s
            if v > u and v in target_ball:
                lifted_diff = images[u] ^ images[v]
                if lifted_diff.bit_count() != 1:
                    return BallCollision(center, r, images[u], images[v])
                edges += 1
    return BallIsomorphismCertificate(center, r, len(domain_ball), edges)


def lift_ball_word(
    cm: CoverMap, c: BigWord, center: int, r: int
) -> BigWord:
    """The unique preimage of a ball-supported word under the ball
    isomorphism; projecting it back gives c pointwise."""
    if c.m != cm.m:
        raise ValueError("word does not live in the cover target")
    if r > cm.safe_radius:
        raise RadiusTooLargeError(
            f"radius {r} exceeds floor((d-1)/2) = {cm.safe_radius}"
        )
    # center is a target vertex; it is its own canonical fiber point
    # because the identity columns come first.
    target_ball = set(
        ball(cm.m, cm.target_generators(), center, r).vertices()
    )
    outside = [v for v in c.vertices() if v not in target_ball]
    if outside:
        raise SupportEscapesBallError(
            f"support vertex {outside[0]} escapes the radius-{r} ball"
        )
    cert = certify_ball_isomorphism(cm, center, r)
    if isinstance(cert, BallCollision):
        raise RadiusTooLargeError(
            f"ball at {center} is not isomorphic at radius {r}"
        )
    dom = cm.domain_generators()
    inverse = {
        cm.project(v): v for v in ball(cm.n, dom, center, r).vertices()
    }
    return BigWord.from_vertices(cm.n, (inverse[v] for v in c.vertices()))


def sphere_orthogonality_profile(
    m: int, S: GeneratorSet, c: BigWord
) -> list[int]:
    """All centers x whose radius-1 sphere meets c an odd number of
    times; empty iff c is orthogonal to every adjacency row."""
    violations = []
    for x in range(1 << m):
        if c.bits.dot(sphere(m, S, x).bits):
            violations.append(x)
    return violations


def decompose_as_sphere_sum(
    m: int, c: BigWord, center: int, r: int
) -> Optional[set[int]]:
    """Decompose a hypercube codeword supported in a ball as a XOR of
    radius-1 spheres contained in that ball.

    Candidate sphere centers are restricted to the radius r-1 ball so
    every sphere stays inside; returns None when the restricted system
    is inconsistent (in particular when c is not a codeword).
    """
    if m % 2:
        raise ValueError("the hypercube construction needs even dimension")
    if not r < m:
        raise ValueError("radius must be smaller than the dimension")
    S = GeneratorSet.canonical(m)
    outer = set(ball(m, S, center, r).vertices())
    outside = [v for v in c.vertices() if v not in outer]
    if outside:
        raise SupportEscapesBallError(
            f"support vertex {outside[0]} escapes the radius-{r} ball"
        )
    candidates = sorted(ball(m, S, center, max(r - 1, 0)).vertices())
    # Eliminate with coefficient tracking: each echelon entry carries
    # the set of candidate centers that produced it.
    echelon: list[tuple[int, set[int]]] = []
    for t in candidates:
        vec = sphere(m, S, t).bits.to_int()
        combo = {t}
        for b, bc in echelon:
            if vec.bit_length() == b.bit_length():
                vec ^= b
                combo ^= bc
        if vec:
            echelon.append((vec, combo))
            echelon.sort(key=lambda e: e[0].bit_length(), reverse=True)
    residual = c.bits.to_int()
    chosen: set[int] = set()
    for b, bc in echelon:
        if residual.bit_length() == b.bit_length():
            residual ^= b
            chosen ^= bc
    if residual:
        return None
    return chosen
