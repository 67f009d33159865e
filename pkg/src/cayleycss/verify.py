"""Named verification suites: each structural fact of the construction
is re-checked mechanically over a range of sizes.

Every suite returns a list of CheckItem records; the CLI renders them
as a JSON scoreboard and the test suite asserts them directly.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from typing import Callable, Iterable, Optional

import numpy as np

from . import cayley, cover, css, gf2, repetition
from .cayley import (
    BigWord,
    CyclicProductGroup,
    GeneratorSet,
    adjacency_matrix,
    algebra_nilpotency_check,
    check_self_orthogonal_combinatorial,
)
from .gf2 import BitVector
from .smallcode import build_parity_check

SUITE_NAMES = (
    "recursion",
    "dimension",
    "distance",
    "cover",
    "local-sum",
    "conjugation",
    "bipartite",
    "algebra",
)


@dataclass
class CheckItem:
    name: str
    ok: bool
    elapsed_s: float
    detail: str = ""

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "status": "pass" if self.ok else "fail",
            "elapsed_s": round(self.elapsed_s, 6),
            "detail": self.detail,
        }


def _run(name: str, fn: Callable[[], tuple[bool, str]]) -> CheckItem:
    start = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:  # a crash is a failed check, not a crash run
        return CheckItem(name, False, time.perf_counter() - start, repr(exc))
    return CheckItem(name, ok, time.perf_counter() - start, detail)


def _odd(ns: Iterable[int]) -> list[int]:
    return [n for n in ns if n % 2 == 1]


# -- recursion ---------------------------------------------------------


def suite_recursion(ns: Iterable[int], **_) -> list[CheckItem]:
    items = []
    for n in ns:
        if 4 <= n <= repetition.MAX_RECURSIVE_DIMENSION:
            items.append(_run(
                f"recursion/block-assembly-n{n}",
                lambda n=n: (
                    repetition.build_recursive(n) == repetition.matrix(n),
                    "block assembly equals direct construction",
                ),
            ))
    for s in (2, 8, 64, 1 << 10):
        def involution(s=s):
            J = repetition.reversal_matrix(s).to_dense()
            ok = bool(np.array_equal(J @ J % 2, np.eye(s, dtype=np.uint8)))
            return ok, "J^2 = I" if ok else "J^2 != I"
        items.append(_run(f"recursion/reversal-involution-{s}", involution))
    return items


# -- dimension ---------------------------------------------------------


def kernel_dimension_formula(n: int) -> int:
    return (1 << (n - 1)) + (1 << ((n - 1) // 2))


def suite_dimension(ns: Iterable[int], **_) -> list[CheckItem]:
    items = []
    for n in _odd(ns):
        def check(n=n):
            M = repetition.matrix(n)
            dim = M.cols - gf2.rank(M)
            want = kernel_dimension_formula(n)
            return dim == want, f"dim ker = {dim}, expected {want}"
        items.append(_run(f"dimension/kernel-n{n}", check))
    for n in _odd(ns):
        if 5 <= n <= 9:
            def check(n=n):
                basis = repetition.kernel_basis_recursive(n - 2)
                want = kernel_dimension_formula(n)
                return (
                    len(basis) == want,
                    f"recursive basis size {len(basis)}, expected {want}",
                )
            items.append(_run(f"dimension/recursive-basis-n{n}", check))
    return items


# -- distance ----------------------------------------------------------


def suite_distance(ns: Iterable[int], budget: int = 26, **_) -> list[CheckItem]:
    items = []
    for n in _odd(ns):
        claimed = 1 << ((n - 1) // 2)
        if n <= 5:
            def check(n=n, claimed=claimed):
                report = css.distance_exact(repetition.build_code(n), budget)
                return (
                    report.value == claimed,
                    f"exact D = {report.value}, expected {claimed}",
                )
            items.append(_run(f"distance/exact-n{n}", check))
        elif n <= repetition.MAX_VERIFIED_DIMENSION:
            def check(n=n, claimed=claimed):
                w = repetition.min_weight_witness(n)
                code = repetition.build_code(n)
                report = css.distance_witness_upper(
                    code, BigWord(n, w)
                )
                return (
                    report.upper == claimed,
                    f"witness upper bound {report.upper}, claimed {claimed}",
                )
            items.append(_run(f"distance/witness-n{n}", check))
    return items


# -- conjugation -------------------------------------------------------


def suite_conjugation(ns: Iterable[int], **_) -> list[CheckItem]:
    items = []
    for n in _odd(ns):
        if n <= 9:
            items.append(_run(
                f"conjugation/n{n}",
                lambda n=n: (
                    repetition.conjugation_check(n),
                    "J M J = M with kernel and row space stable",
                ),
            ))
    return items


# -- bipartite ---------------------------------------------------------


def suite_bipartite(ns: Iterable[int], **_) -> list[CheckItem]:
    items = []
    for n in _odd(ns):
        if n > 9:
            continue

        def check(n=n):
            U = cayley.halved_matrix(n, repetition.generators(n))
            if not gf2.is_self_orthogonal(U):
                return False, "U . U^T != 0"
            return True, "bipartite split exists and U is self-orthogonal"
        items.append(_run(f"bipartite/halved-block-n{n}", check))
    for n in _odd(ns):
        if n in (3, 5):
            def check(n=n):
                code = repetition.halved_repetition_code(n)
                want = (
                    1 << (n - 1),
                    1 << ((n - 1) // 2),
                    1 << ((n - 1) // 2),
                )
                report = css.distance_exact(code)
                got = (code.N, code.K, report.value)
                return got == want, f"halved parameters {got}, expected {want}"
            items.append(_run(f"bipartite/halved-params-n{n}", check))
    return items


# -- algebra (three-way self-orthogonality agreement) ------------------


def _int_rows_self_orthogonal(m: int, S: GeneratorSet) -> bool:
    """Independent matrix oracle: all row pairs of the adjacency matrix
    share an even number of ones (integer bitset arithmetic)."""
    rows = []
    for p in range(1 << m):
        r = 0
        for s in S.elements:
            r ^= 1 << (p ^ s)
        rows.append(r)
    return all(
        (rows[i] & rows[j]).bit_count() % 2 == 0
        for i in range(len(rows))
        for j in range(i, len(rows))
    )


def three_way_agreement(m: int, S: GeneratorSet) -> bool:
    combinatorial = check_self_orthogonal_combinatorial(m, S).ok
    matrix_oracle = _int_rows_self_orthogonal(m, S)
    algebra = cayley.algebra_nilpotency_check_f2(m, S)
    return combinatorial == matrix_oracle == algebra


def torus_example_generators(n: int) -> tuple[CyclicProductGroup, list]:
    """The two-cyclic-torus generator family with eight terms: the unit
    steps, their inverses, and the four near-half-turn steps."""
    group = CyclicProductGroup((2 * n, 2 * n))
    terms = [
        (1, 0), (0, 1), (-1, 0), (0, -1),
        (n + 1, 0), (n - 1, 0), (0, n + 1), (0, n - 1),
    ]
    return group, terms


def suite_algebra(
    ns: Iterable[int] = (), seed: int = 20240901, samples: int = 100, **_
) -> list[CheckItem]:
    items = []

    def exhaustive(m):
        nonzero = list(range(1, 1 << m))
        bad = 0
        for size in range(2, len(nonzero) + 1, 2):
            for combo in itertools.combinations(nonzero, size):
                if not three_way_agreement(m, GeneratorSet(m, combo)):
                    bad += 1
        return bad == 0, f"{bad} disagreements"

    for m in (2, 3, 4):
        items.append(_run(f"algebra/exhaustive-m{m}", lambda m=m: exhaustive(m)))

    def sampled(m, rng):
        for _ in range(samples):
            size = 2 * rng.randint(1, min(8, (1 << m) // 2))
            combo = tuple(rng.sample(range(1, 1 << m), size))
            if not three_way_agreement(m, GeneratorSet(m, combo)):
                return False, f"disagreement at S = {combo}"
        return True, f"{samples} random generator sets agree"

    rng = random.Random(seed)
    for m in (5, 6):
        items.append(_run(f"algebra/random-m{m}", lambda m=m: sampled(m, rng)))

    def torus(n):
        group, terms = torus_example_generators(n)
        if not algebra_nilpotency_check(group, terms):
            return False, "generator sum square is nonzero"
        # Cross-check against the materialized adjacency matrix.
        idxs = {group.index(t) for t in terms} - {0}
        rows = []
        for p in range(group.order):
            r = 0
            for s in idxs:
                r ^= 1 << group.add(p, s)
            rows.append(r)
        ortho = all(
            (rows[i] & rows[j]).bit_count() % 2 == 0
            for i in range(len(rows))
            for j in range(i, len(rows))
        )
        return ortho, "group algebra and adjacency matrix agree"

    for n in (2, 3, 4):
        items.append(_run(f"algebra/torus-n{n}", lambda n=n: torus(n)))
    return items


# -- cover -------------------------------------------------------------


def suite_cover(
    m: int = 5, W: tuple[int, ...] = ((1 << 5) - 1,), **_
) -> list[CheckItem]:
    items = []
    code = build_parity_check(m, W)
    cm = cover.CoverMap(code)

    def fibers():
        want = 1 << len(W)
        seen = set()
        for c in range(1 << m):
            f = cm.fiber(c)
            if len(f) != want:
                return False, f"fiber of {c} has size {len(f)}"
            if any(cm.project(x) != c for x in f):
                return False, f"fiber of {c} does not project back"
            if f & seen:
                return False, "fibers are not disjoint"
            seen |= f
        return (
            len(seen) == 1 << cm.n,
            f"degree {want}, fibers partition the hypercube",
        )
    items.append(_run("cover/fibers", fibers))

    def ball_iso():
        for r in range(cm.safe_radius + 1):
            for center in range(1 << cm.n):
                cert = cover.certify_ball_isomorphism(cm, center, r)
                if isinstance(cert, cover.BallCollision):
                    return False, f"collision at center {center}, r={r}"
        return True, f"all centers isomorphic up to r = {cm.safe_radius}"
    items.append(_run("cover/ball-isomorphism", ball_iso))

    def collision():
        cert = cover.certify_ball_isomorphism(cm, 0, cm.safe_radius + 1)
        if isinstance(cert, cover.BallCollision):
            return True, f"collision pair ({cert.first}, {cert.second})"
        return False, "no collision found beyond the safe radius"
    items.append(_run("cover/collision-beyond-radius", collision))

    if m == 5 and tuple(W) == ((1 << 5) - 1,):
        items.append(_run("cover/non-liftable-word", non_lift_example))
    return items


def non_lift_example() -> tuple[bool, str]:
    """The weight-2-shell word: orthogonal to every sphere downstairs,
    yet its radius-2 lift meets a sphere three times upstairs."""
    m = 5
    code = build_parity_check(m, ((1 << m) - 1,))
    cm = cover.CoverMap(code)
    target_gens = cm.target_generators()
    c = BigWord.from_vertices(
        m, [v for v in range(1 << m) if v.bit_count() == 2]
    )
    if cover.sphere_orthogonality_profile(m, target_gens, c):
        return False, "weight-2 shell is not in the dual code"
    lifted = cover.lift_ball_word(cm, c, 0, 2)
    probe = cayley.sphere(cm.n, cm.domain_generators(), 0b000111)
    overlap = sum(1 for v in lifted.vertices() if v in probe)
    return (
        overlap == 3,
        f"lift meets the weight-3-centred sphere {overlap} times",
    )


# -- local-sum ---------------------------------------------------------


def suite_local_sum(**_) -> list[CheckItem]:
    return [_run("local-sum/exhaustive-n4-r2", local_sum_exhaustive)]


def local_sum_exhaustive() -> tuple[bool, str]:
    """n = 4 hypercube, ball B(0, 2): a ball-supported word decomposes
    as an in-ball sphere sum exactly when it is a codeword."""
    m = 4
    S = GeneratorSet.canonical(m)
    M = adjacency_matrix(m, S)
    ball_vertices = sorted(cayley.ball(m, S, 0, 2).vertices())
    in_ball = set(ball_vertices)

    codewords_checked = 0
    rows = [M.row(i).to_int() for i in range(M.rows)]
    basis = []
    for r in rows:
        for b in basis:
            if r.bit_length() == b.bit_length():
                r ^= b
        if r:
            basis.append(r)
            basis.sort(reverse=True)
    span = [0]
    for b in basis:
        span += [v ^ b for v in span]
    assert len(span) == 256

    for value in span:
        word = BigWord(m, BitVector.from_int(1 << m, value))
        if any(v not in in_ball for v in word.vertices()):
            continue
        codewords_checked += 1
        t = cover.decompose_as_sphere_sum(m, word, 0, 2)
        if t is None:
            return False, f"codeword {value:#x} failed to decompose"
        acc = BigWord.empty(m)
        for center in t:
            acc = acc ^ cayley.sphere(m, S, center)
        if acc != word:
            return False, f"decomposition of {value:#x} does not XOR back"

    span_set = set(span)
    non_codewords_rejected = 0
    for bits in range(1 << len(ball_vertices)):
        value = 0
        b = bits
        while b:
            i = (b & -b).bit_length() - 1
            value |= 1 << ball_vertices[i]
            b &= b - 1
        word = BigWord(m, BitVector.from_int(1 << m, value))
        t = cover.decompose_as_sphere_sum(m, word, 0, 2)
        if (t is not None) != (value in span_set):
            return False, f"decomposability mismatch at {value:#x}"
        if value not in span_set:
            non_codewords_rejected += 1
    return True, (
        f"{codewords_checked} in-ball codewords decomposed, "
        f"{non_codewords_rejected} non-codewords rejected"
    )


# -- kernel characterization (part of the dimension story) -------------


def kernel_characterize_agreement(
    n_total: int, trials: int, seed: int
) -> tuple[bool, str]:
    """Random words of both classes: the four block conditions hold
    exactly when direct membership in the kernel does."""
    rng = random.Random(seed)
    n = n_total - 2
    M = repetition.matrix(n_total)
    kernel = gf2.kernel_basis(M)
    length = 1 << n_total
    agree = 0
    for _ in range(trials):
        if rng.random() < 0.5:
            value = 0
            for v in kernel:
                if rng.random() < 0.5:
                    value ^= v.to_int()
        else:
            value = rng.getrandbits(length)
        vec = BitVector.from_int(length, value)
        direct = M.mul_vector(vec).is_zero()
        check = repetition.kernel_characterize(
            n, repetition.QuadSplit.split(vec)
        )
        if check.in_kernel != direct:
            return False, f"disagreement on a word of weight {vec.weight}"
        agree += 1
    return True, f"{agree} random words agree"


def suite_all(ns: Iterable[int], seed: int = 20240901, **kw) -> list[CheckItem]:
    items: list[CheckItem] = []
    items += suite_recursion(ns)
    items += suite_dimension(ns)
    for t in (5, 7):
        if t in ns:
            items.append(_run(
                f"dimension/characterize-n{t}",
                lambda t=t: kernel_characterize_agreement(t, 200, seed),
            ))
    items += suite_distance(ns, **kw)
    items += suite_conjugation(ns)
    items += suite_bipartite(ns)
    items += suite_algebra(ns, seed=seed)
    items += suite_cover()
    items += suite_local_sum()
    return items


def run_suite(
    name: str,
    ns: Iterable[int],
    seed: int = 20240901,
    m: Optional[int] = None,
    W: Optional[tuple[int, ...]] = None,
    budget: int = gf2.DEFAULT_ENUMERATION_BUDGET,
) -> list[CheckItem]:
    ns = list(ns)
    if name == "recursion":
        return suite_recursion(ns)
    if name == "dimension":
        items = suite_dimension(ns)
        for t in (5, 7):
            if t in ns:
                items.append(_run(
                    f"dimension/characterize-n{t}",
                    lambda t=t: kernel_characterize_agreement(t, 200, seed),
                ))
        return items
    if name == "distance":
        return suite_distance(ns, budget=budget)
    if name == "conjugation":
        return suite_conjugation(ns)
    if name == "bipartite":
        return suite_bipartite(ns)
    if name == "algebra":
        return suite_algebra(ns, seed=seed)
    if name == "cover":
        kwargs = {}
        if m is not None:
            kwargs["m"] = m
        if W:
            kwargs["W"] = tuple(W)
        return suite_cover(**kwargs)
    if name == "local-sum":
        return suite_local_sum()
    if name == "all":
        return suite_all(ns, seed=seed, budget=budget)
    raise ValueError(f"unknown suite {name!r}")
