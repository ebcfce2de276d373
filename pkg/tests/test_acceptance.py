"""Exit criteria.  Every check is exact; the only tolerances are wall-clock budgets.

Each test logs one PASS/FAIL line, collected in the "acceptance criteria"
section of the pytest summary.
"""

import random
import time
from fractions import Fraction as F
from math import factorial
from statistics import median

import pytest

from oapoly.core import Functional, MonomialPoly, PowersForm, derivative_form, expand
from oapoly.harness import TrialConfig, run_agreement_trials, run_deriv_trials, run_theorem_trials
from oapoly.lattice import (
    classify_homomorphism,
    is_orthogonally_additive,
    lattice_abs,
    preserves_modulus,
    random_rational,
    random_vector,
    separates_parts,
)
from oapoly.linalg import determinant, residual, solve_exact
from oapoly.sharpness import build_system, gen_even, gen_odd, verify_instance
from oracles import cramer_solve, expand_terms


@pytest.fixture
def record(acceptance_log):
    def _record(number: int, title: str, ok: bool, detail: str = "") -> None:
        acceptance_log.append(f"[{'PASS' if ok else 'FAIL'}] {number}. {title}" + (f" ({detail})" if detail else ""))
        print(acceptance_log[-1])
        assert ok, detail

    return _record


def test_1_k2_example(record):
    form = PowersForm(2, 2, ((1, (1, 1)), (1, (1, -1))))

    def run():
        poly = expand(form)
        return poly, is_orthogonally_additive(poly), [classify_homomorphism(phi) for phi in form.functionals]

    poly, verdict, homs = run()
    ok = poly == MonomialPoly(2, 2, {(2, 0): 2, (0, 2): 2}) and verdict.is_oa
    for phi, v in zip(form.functionals, homs):
        ok &= v.neither and v.witness is not None
        for psi in (phi, -phi):
            ok &= abs(psi(v.witness)) != psi(lattice_abs(v.witness))
    timings = []
    for _ in range(50):
        t0 = time.perf_counter()
        run()
        timings.append(time.perf_counter() - t0)
    runtime = median(timings)
    record(1, "k=m=2 example reproduced", ok and runtime < 1e-3, f"median {runtime * 1e3:.3f} ms < 1 ms")


def test_2_even_sharpness(record):
    t0 = time.perf_counter()
    ok, bad = True, []
    for n in range(1, 9):
        inst = gen_even(n)
        report = verify_instance(inst)
        b2_expansion = inst.expanded[(0, 2 * n)]
        good = report.passed and b2_expansion == 2 * sum(inst.A) == inst.B2
        good &= inst.expanded == MonomialPoly(2 * n, 2, {(2 * n, 0): 1, (0, 2 * n): inst.B2})
        if not good:
            bad.append(n)
        ok &= good
    elapsed = time.perf_counter() - t0
    record(2, "even-degree sharpness n=1..8", ok and elapsed < 5, f"failing n={bad}, {elapsed:.2f} s < 5 s")


def test_3_odd_sharpness(record):
    ok, bad = True, []
    for n in range(2, 7):
        inst = gen_odd(n)
        cross = expand(derivative_form(gen_even(n).form, (1, 1), 2 * n - 1)) == expand(inst.form).scaled(factorial(2 * n))
        good = verify_instance(inst).passed and cross
        if not good:
            bad.append(n)
        ok &= good
    n2 = gen_odd(2)
    lambdas = tuple(lam for lam, _ in n2.form.terms)
    ok &= lambdas == (F(-1, 3), F(1, 8), F(1, 24)) and n2.B2 == F(-1, 4)
    ok &= expand_terms([(lam, phi.coefficients) for lam, phi in n2.form.terms], 3, 2) == {(3, 0): 1, (0, 3): F(-1, 4)}
    record(3, "odd-degree sharpness n=2..6 and derivative cross-identity", ok, f"failing n={bad}, n=2 lambdas={lambdas}")


def test_4_theorem_at_desk_scale(record):
    t0 = time.perf_counter()
    report = run_theorem_trials(TrialConfig(seed=20240601, trials=1000, d_max=5, m_max=6, k_policy="below_m"))
    elapsed = time.perf_counter() - t0
    mixed = report.summary["predicate_true"] > 0 and report.summary["predicate_false"] > 0
    ok = report.passed and report.trials_run == 1000 and mixed and elapsed < 30
    record(
        4,
        "theorem equivalence, 1000 trials, k<m",
        ok,
        f"{len(report.failures)} failures, predicate true/false = "
        f"{report.summary['predicate_true']}/{report.summary['predicate_false']}, {elapsed:.2f} s < 30 s",
    )


def test_5_derivative_at_desk_scale(record):
    report = run_deriv_trials(TrialConfig(seed=20240602, trials=500, d_max=5, m_max=6))
    ok = report.passed and report.trials_run == 500 and report.summary["source_sharpness"] > 0
    record(
        5,
        "derivatives of OA forms stay OA, 500 trials",
        ok,
        f"{len(report.failures)} failures, {report.summary['source_sharpness']} from sharpness instances",
    )


def test_6_decision_triangle(record):
    report = run_agreement_trials(TrialConfig(seed=20240603, trials=500, d_max=4, m_max=6, samples=200))
    ok = report.passed and report.trials_run == 500 and report.summary["oa_true"] and report.summary["oa_false"]
    record(
        6,
        "monomial / disjoint-pair / polarization agreement, 500 polys",
        bool(ok),
        f"{len(report.failures)} disagreements, OA true/false = {report.summary['oa_true']}/{report.summary['oa_false']}",
    )


def _random_functional(rng: random.Random) -> Functional:
    d = rng.randint(1, 6)
    coeffs = [F(0)] * d
    size = min(d, rng.choice([0, 1, 1, 1, 2, rng.randint(1, d)]))
    support = rng.sample(range(d), size)
    for i in support:
        coeffs[i] = random_rational(rng, nonzero=True)
    return Functional(coeffs)


def test_7_homomorphism_characterization(record):
    rng = random.Random(20240604)
    disagreements = 0
    homs = 0
    for _ in range(1000):
        phi = _random_functional(rng)
        xs = [random_vector(phi.dimension, rng) for _ in range(500)]
        verdict = classify_homomorphism(phi)
        homs += verdict.is_homomorphism or verdict.negation_is
        for psi, claimed in ((phi, verdict.is_homomorphism), (-phi, verdict.negation_is)):
            by_b = all(preserves_modulus(psi, x) for x in xs)
            by_c = all(separates_parts(psi, x) for x in xs)
            disagreements += not (claimed == by_b == by_c)
    record(
        7,
        "homomorphism classifier vs sampled conditions (b), (c)",
        disagreements == 0 and 0 < homs < 1000,
        f"{disagreements} disagreements over 1000 functionals, {homs} with phi or -phi a homomorphism",
    )


def test_8_exact_solver(record):
    ok = True
    for n in range(1, 9):
        M, rhs = build_system(n)
        x = solve_exact(M, rhs)
        ok &= residual(M, x, rhs) == (0,) * n and determinant(M) != 0
        if n <= 4:
            ok &= list(x) == cramer_solve(M.to_rows(), list(rhs))
    record(8, "Bareiss solve: zero residual n<=8, Cramer match n<=4", ok)
