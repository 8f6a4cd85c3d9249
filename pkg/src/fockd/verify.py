"""Acceptance checks A1-A12, each a function returning a :class:`CriterionResult`.

Tolerances and grids are pinned here so the CLI and the test-suite run the
same thing.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass

import numpy as np

from .coxeter import enumerate_group, poincare_polynomial, product_formula
from .fock import (
    FockTruncation,
    HilbertSpaceSpec,
    build_symmetrizer_direct,
    check_commutation,
    creation,
    creation_norm_bounds,
    exact_product_gram,
    power_iteration_norm,
    random_vectors,
)
from .numerics import IntPolynomial, hermitian_eigenvalues
from .partitions import (
    EpsilonPattern,
    brute_force_type_d,
    characterized_pair_partitions,
    enumerate_partitions_12,
    enumerate_type_d,
    recursive_type_d,
)
from .spectral import catalan, gamma_product, moments_from_jacobi
from .wick import (
    WickQuery,
    gaussian_moment_exact,
    q_one_pair_sum,
    traciality_defect,
    wick_identity_involution,
    wick_oracle,
    wick_vector,
)

INVOLUTIONS_D2 = ("identity", "diag:+,-", "swap")


@dataclass
class CriterionResult:
    cid: str
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        return f"{self.cid} {'PASS' if self.passed else 'FAIL'} {self.name}: {self.detail} ({self.seconds:.2f}s)"

    def to_json(self) -> dict:
        return {"id": self.cid, "name": self.name, "passed": self.passed, "detail": self.detail,
                "seconds": round(self.seconds, 3)}


def a1_poincare() -> tuple:
    bad = [n for n in range(2, 7) if poincare_polynomial(enumerate_group("D", n)) != product_formula(n)]
    return not bad, "exact equality n=2..6" if not bad else f"mismatch at n={bad}"


def a2_symmetrizer(tol: float = 1e-10) -> tuple:
    worst = 0.0
    for inv in INVOLUTIONS_D2:
        space = HilbertSpaceSpec(2, inv)
        for q in (-0.7, 0.0, 0.3, 0.9):
            trunc = FockTruncation(space, 5, q)
            for n in range(0, 6):
                diff = np.max(np.abs(build_symmetrizer_direct(trunc, n) - trunc.symmetrizer(n)))
                worst = max(worst, float(diff))
    return worst <= tol, f"max entrywise difference {worst:.2e} (tol {tol:g})"


def a3_positivity() -> tuple:
    lowest = np.inf
    spaces = [HilbertSpaceSpec(1, "identity"), HilbertSpaceSpec(1, "diag:-")]
    spaces += [HilbertSpaceSpec(2, inv) for inv in INVOLUTIONS_D2]
    for space in spaces:
        for q in (-0.9, -0.5, 0.0, 0.5, 0.9):
            trunc = FockTruncation(space, 5, q)
            for n in range(1, 6):
                lowest = min(lowest, hermitian_eigenvalues(build_symmetrizer_direct(trunc, n))[0])
    return lowest > 0, f"smallest eigenvalue {lowest:.3e}"


def a4_commutation(tol: float = 1e-10, seed: int = 7) -> tuple:
    worst = 0.0
    for dim, invs in ((1, ("identity", "diag:-")), (2, INVOLUTIONS_D2)):
        for inv in invs:
            space = HilbertSpaceSpec(dim, inv)
            for q in (-0.7, -0.3, 0.0, 0.3, 0.9):
                trunc = FockTruncation(space, 5, q)
                x, y = random_vectors(2, dim, seed)
                worst = max(worst, max(check_commutation(trunc, x, y, tol).residuals.values()))
    return worst <= tol, f"max residual {worst:.2e} (tol {tol:g})"


def a5_wick_oracle(tol: float = 1e-9, seed: int = 11) -> tuple:
    worst, checked = 0.0, 0
    for inv in ("identity", "diag:+,-"):
        space = HilbertSpaceSpec(2, inv)
        for q in (-0.6, 0.0, 0.4, 0.8):
            trunc = FockTruncation(space, 6, q)
            for n in range(0, 7):
                vecs = random_vectors(n, 2, seed + n)
                for eps in itertools.product("1*", repeat=n):
                    query = WickQuery(q, vecs, EpsilonPattern(eps), space)
                    comb = wick_vector(query).to_state(query, trunc)
                    worst = max(worst, (wick_oracle(query, trunc) - comb).max_abs())
                    checked += 1
    return worst <= tol, f"{checked} words, max difference {worst:.2e} (tol {tol:g})"


def a6_partition_counts() -> tuple:
    a = len(enumerate_type_d(4, pairs_only=True))
    b = len(enumerate_type_d(4, eps=EpsilonPattern.parse("11**"), pairs_only=True))
    return (a, b) == (5, 4), f"|PD2(4)| = {a}, |PD2;11**(4)| = {b}"


def a7_moments() -> tuple:
    table = moments_from_jacobi(12)
    bad = [2 * k for k in range(7) if gaussian_moment_exact(2 * k) != table.moments[2 * k]]
    cat = [gaussian_moment_exact(2 * k)(0) for k in range(1, 7)]
    m4 = gaussian_moment_exact(4)
    ok = not bad and cat == [catalan(k) for k in range(1, 7)]
    ok = ok and m4 == IntPolynomial([2, 2, 1]) and m4(1) == 5 == q_one_pair_sum(4)
    if bad:
        return False, f"moment mismatch at orders {bad}"
    return ok, f"m_2k equal for k<=6; q=0 values {cat}; m4={m4}, m4(1)={m4(1)}"


def a8_partition_routes(max_n: int = 8) -> tuple:
    counts = []
    for n in range(0, max_n + 1):
        rule = enumerate_type_d(n)
        rule_set = set(rule)
        rec = recursive_type_d(n)
        if len(rec) != len(set(rec)) or set(rec) != rule_set or len(rule) != len(rule_set):
            return False, f"recursive construction disagrees at n={n}"
        if set(brute_force_type_d(n)) != rule_set:
            return False, f"exhaustive rule filter disagrees at n={n}"
        pairs = {p for p in rule if p.base.is_pair_partition()}
        if set(characterized_pair_partitions(n)) != pairs:
            return False, f"pair characterization disagrees at n={n}"
        counts.append(len(rule))
    return True, f"three routes agree for n=0..{max_n}; |PD12(n)| = {counts}"


def a9_norm(levels: int = 12, slack: float = 1e-6) -> tuple:
    space = HilbertSpaceSpec(1)
    parts = []
    ok = True
    for q in (-0.6, -0.3, 0.0, 0.3, 0.6):
        trunc = FockTruncation(space, levels, q)
        est = power_iteration_norm(trunc, creation(trunc, [1.0]))
        lo, hi = creation_norm_bounds(q, 1.0)
        ok &= lo - slack <= est <= hi + slack
        parts.append(f"q={q}: {lo:.4f}<={est:.4f}<={hi:.4f}")
    return ok, "; ".join(parts)


def a10_trace() -> tuple:
    space = HilbertSpaceSpec(2, "identity")
    e = np.eye(2)
    vecs = [e[0], e[0], e[1], e[1]]
    defect = traciality_defect(vecs, space, 0.0, exact=True)
    target = IntPolynomial([0, 0, -1])
    return defect == target and defect(0) == 0, f"defect = {defect}, at q=0: {defect(0)}"


def a11_identity_involution(tol: float = 1e-9, seed: int = 5) -> tuple:
    space = HilbertSpaceSpec(2, "identity")
    worst = 0.0
    for q in (-1.0, -0.6, 0.0, 0.4, 0.8, 1.0):
        for n in range(0, 7):
            real = np.random.default_rng(seed + n).standard_normal((n, 2))
            for vecs in (real, random_vectors(n, 2, seed + 100 + n)):
                for eps in itertools.product("1*", repeat=n):
                    query = WickQuery(q, vecs, EpsilonPattern(eps), space)
                    a = wick_vector(query).to_vector(query)
                    b = wick_identity_involution(query).to_vector(query)
                    worst = max(worst, float(np.max(np.abs(a - b))) if a.size else 0.0)
    return worst <= tol, f"max difference {worst:.2e} (tol {tol:g})"


def a12_gram() -> tuple:
    space = HilbertSpaceSpec(2, "diag:+,-")
    bad = []
    for n in range(1, 7):
        p = poincare_polynomial(enumerate_group("D", n))
        for x in (np.array([1.0, 0.0]), np.array([0.0, 1.0])):
            if not (exact_product_gram(space, [x] * n, [x] * n) == gamma_product(n) == p):
                bad.append(n)
    return not bad, "exact equality n=1..6" if not bad else f"mismatch at n={sorted(set(bad))}"


CRITERIA = {
    "A1": ("poincare", "Poincare polynomial equals q-number product", a1_poincare),
    "A2": ("symmetrizer", "direct and recursive symmetrizers agree", a2_symmetrizer),
    "A3": ("positivity", "symmetrizer strictly positive", a3_positivity),
    "A4": ("commutation", "commutation relations", a4_commutation),
    "A5": ("wick-oracle", "vector Wick formula equals operator word", a5_wick_oracle),
    "A6": ("partition-counts", "pair-partition counts for n=4", a6_partition_counts),
    "A7": ("moments", "Gaussian moments equal Jacobi moments", a7_moments),
    "A8": ("partitions", "three partition constructions agree", a8_partition_routes),
    "A9": ("norm", "creation norm within bounds", a9_norm),
    "A10": ("trace", "non-traciality witness", a10_trace),
    "A11": ("identity-involution", "uncolored reformulation", a11_identity_involution),
    "A12": ("gram", "Gram of x^n equals Poincare polynomial", a12_gram),
}

SUITES = {suite: [cid] for cid, (suite, _, _) in CRITERIA.items()}
SUITES["all"] = list(CRITERIA)


def run_criterion(cid: str) -> CriterionResult:
    _, name, fn = CRITERIA[cid]
    t0 = time.perf_counter()
    try:
        passed, detail = fn()
    except Exception as exc:  # a crash is a failure of that criterion only
        passed, detail = False, f"error: {type(exc).__name__}: {exc}"
    return CriterionResult(cid, name, bool(passed), detail, time.perf_counter() - t0)


def run_suite(suite: str) -> list:
    if suite not in SUITES:
        raise KeyError(f"unknown suite {suite!r}; choose from {sorted(SUITES)}")
    return [run_criterion(cid) for cid in SUITES[suite]]
