"""Counterexamples at k = m: orthogonally additive sums of m powers of
non-homomorphisms on Q^2, built for every degree m >= 2 and checked exactly.

Even degree m = 2n: find A_1..A_n with

    sum_r A_r ((r x1 + x2)^2n + (r x1 - x2)^2n) = x1^2n + B2 x2^2n.

Expanding, the coefficient of x1^2(n-j) x2^2j is 2 C(2n, 2j) sum_r A_r r^2(n-j),
so the mixed ones vanish when sum_r A_r r^2i = 0 for i = 1..n-1.  The leading
row is normalized to sum_r A_r r^2n = 1/2, making the x1^2n coefficient exactly
1.  The matrix (r^2i) is a Vandermonde matrix in r^2 up to column scaling, so
the system is always solvable.

Odd degree m = 2n - 1: differentiate the even identity 2n - 1 times at (1, 1)
and cancel the common (2n)!.  The (1, -1) term drops out because it vanishes
at (1, 1), leaving exactly 2n - 1 functionals.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal

from .core import (
    Functional,
    MonomialPoly,
    MultiIndex,
    PowersForm,
    Vector,
    expand,
    pairwise_independent,
)
from .lattice import classify_homomorphism, is_orthogonally_additive
from .linalg import ExactMatrix, solve_exact


def build_system(n: int) -> tuple[ExactMatrix, Vector]:
    """Row j holds ``r**(2(n-j))`` for r = 1..n; rhs is ``(1/2, 0, ..., 0)``."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    rows = [[Fraction(r ** (2 * (n - j))) for r in range(1, n + 1)] for j in range(n)]
    rhs = (Fraction(1, 2),) + (Fraction(0),) * (n - 1)
    return ExactMatrix.from_rows(rows), rhs


@dataclass(frozen=True)
class SharpnessInstance:
    n: int
    m: int
    A: tuple[Fraction, ...]
    B2: Fraction
    form: PowersForm
    expanded: MonomialPoly
    parity: Literal["even", "odd"]


def _pure(m: int, b2: Fraction) -> MonomialPoly:
    return MonomialPoly(m, 2, {(m, 0): Fraction(1), (0, m): b2})


def solve_coefficients(n: int) -> tuple[Fraction, ...]:
    return solve_exact(*build_system(n))


def _b2(expanded: MonomialPoly, A: tuple[Fraction, ...]) -> Fraction:
    m = expanded.degree
    b2 = expanded[(0, m)]
    if b2 != 2 * sum(A):
        raise ArithmeticError(f"x2^{m} coefficient {b2} disagrees with 2*sum(A) = {2 * sum(A)}")
    return b2


def gen_even(n: int) -> SharpnessInstance:
    if n < 1:
        raise ValueError(f"gen_even needs n >= 1, got {n}")
    A = solve_coefficients(n)
    terms = []
    for r, a in enumerate(A, start=1):
        terms.append((a, Functional((r, 1))))
        terms.append((a, Functional((r, -1))))
    form = PowersForm(2 * n, 2, tuple(terms))
    expanded = expand(form)
    return SharpnessInstance(n, 2 * n, A, _b2(expanded, A), form, expanded, "even")


def gen_odd(n: int) -> SharpnessInstance:
    if n < 2:
        raise ValueError(f"gen_odd needs n >= 2 (n = 1 would give degree 1), got {n}")
    A = solve_coefficients(n)
    terms = [(2 * A[0], Functional((1, 1)))]
    for r, a in enumerate(A[1:], start=2):
        terms.append((a * (r + 1), Functional((r, 1))))
        terms.append((a * (r - 1), Functional((r, -1))))
    form = PowersForm(2 * n - 1, 2, tuple(terms))
    expanded = expand(form)
    return SharpnessInstance(n, 2 * n - 1, A, _b2(expanded, A), form, expanded, "odd")


def generate(m: int) -> SharpnessInstance:
    """The instance of degree ``m``: even path for m = 2n, odd path for m = 2n - 1."""
    if m < 2:
        raise ValueError(f"degree must be >= 2, got {m}")
    return gen_even(m // 2) if m % 2 == 0 else gen_odd((m + 1) // 2)


@dataclass(frozen=True)
class ClauseResult:
    name: str
    passed: bool
    witness: object = None


@dataclass(frozen=True)
class VerificationReport:
    clauses: tuple[ClauseResult, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.clauses)

    def failed(self) -> list[ClauseResult]:
        return [c for c in self.clauses if not c.passed]


def _first_difference(a: MonomialPoly, b: MonomialPoly) -> tuple[MultiIndex, Fraction, Fraction] | None:
    for alpha in sorted(set(a.monomials) | set(b.monomials)):
        if a[alpha] != b[alpha]:
            return alpha, a[alpha], b[alpha]
    return None


def verify_instance(inst: SharpnessInstance) -> VerificationReport:
    form = inst.form
    clauses = []

    diff = _first_difference(expand(form), inst.expanded)
    clauses.append(ClauseResult("expansion", diff is None, diff))

    verdict = is_orthogonally_additive(inst.expanded)
    clauses.append(ClauseResult("orthogonally_additive", verdict.is_oa, verdict))

    bad = next(
        ((j, phi, v) for j, phi in enumerate(form.functionals) if not (v := classify_homomorphism(phi)).neither),
        None,
    )
    clauses.append(ClauseResult("no_homomorphisms", bad is None, bad))

    pair = pairwise_independent(form.functionals)
    clauses.append(ClauseResult("pairwise_independent", pair is None, pair))

    clauses.append(ClauseResult("term_count", len(form) == inst.m, (len(form), inst.m)))
    return VerificationReport(tuple(clauses))
