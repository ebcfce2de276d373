"""Seeded randomized campaigns over the decision procedures.

Each trial draws from its own ``random.Random`` keyed on (campaign, seed,
trial index), so a report depends only on the config and trials could be run
in any order.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import asdict, dataclass, field
from typing import Literal

from .core import (
    Functional,
    MonomialPoly,
    PowersForm,
    amalgamate,
    compositions,
    derivative_form,
    derivative_monomial,
    expand,
)
from .lattice import (
    disjoint_pair_check,
    is_orthogonally_additive,
    orthosymmetry_check,
    random_rational,
    random_vector,
    theorem_predicate,
)
from .serialize import monomial_poly_to_json, powers_form_to_json
from .sharpness import gen_even, gen_odd, generate

KPolicy = Literal["below_m", "equal_m", "any"]
K_POLICIES = ("below_m", "equal_m", "any")


@dataclass(frozen=True)
class TrialConfig:
    seed: int = 0
    trials: int = 100
    d_max: int = 5
    m_max: int = 6
    k_policy: KPolicy = "below_m"
    samples: int = 200

    def __post_init__(self) -> None:
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if self.d_max < 1:
            raise ValueError(f"d_max must be >= 1, got {self.d_max}")
        if self.m_max < 2:
            raise ValueError(f"m_max must be >= 2, got {self.m_max}")
        if self.k_policy not in K_POLICIES:
            raise ValueError(f"k_policy must be one of {K_POLICIES}, got {self.k_policy!r}")
        if self.samples < 1:
            raise ValueError(f"samples must be >= 1, got {self.samples}")


@dataclass
class TrialReport:
    campaign: str
    trials_run: int = 0
    failures: list[dict] = field(default_factory=list)
    summary: Counter = field(default_factory=Counter)
    sharpness_confirmations: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, trial: int, clause: str, instance: dict) -> None:
        self.failures.append({"trial": trial, "clause": clause, "instance": instance})
        self.summary[f"{clause}:fail"] += 1

    def ok(self, clause: str) -> None:
        self.summary[f"{clause}:pass"] += 1

    def to_dict(self) -> dict:
        return {
            "campaign": self.campaign,
            "trials_run": self.trials_run,
            "passed": self.passed,
            "summary": dict(sorted(self.summary.items())),
            "failures": sorted(self.failures, key=lambda f: f["trial"]),
            "sharpness_confirmations": self.sharpness_confirmations,
        }


def trial_rng(campaign: str, seed: int, index: int) -> random.Random:
    return random.Random(f"{campaign}/{seed}/{index}")


def gen_functional(d: int, hom: bool, rng: random.Random) -> Functional:
    """``+-c e_i`` when ``hom``; otherwise a vector with at least two nonzero entries."""
    if d < 1:
        raise ValueError("d must be >= 1")
    coeffs = [0] * d
    if hom:
        c = abs(random_rational(rng, nonzero=True))
        coeffs[rng.randrange(d)] = c if rng.random() < 0.5 else -c
        return Functional(coeffs)
    if d < 2:
        raise ValueError("every nonzero functional on Q^1 is +- a homomorphism")
    for i in rng.sample(range(d), rng.randint(2, d)):
        coeffs[i] = random_rational(rng, nonzero=True)
    return Functional(coeffs)


def _term_count(m: int, policy: KPolicy, rng: random.Random) -> int:
    if policy == "below_m":
        return rng.randint(1, m - 1)
    if policy == "equal_m":
        return m
    return rng.randint(1, m + 1)


def random_form(d: int, m: int, k: int, rng: random.Random, hom_only: bool = False) -> PowersForm:
    # about half the forms are all-homomorphism so both verdicts stay common
    all_hom = hom_only or d < 2 or rng.random() < 0.5
    terms = []
    for _ in range(k):
        hom = all_hom or rng.random() < 0.5
        terms.append((random_rational(rng, nonzero=True), gen_functional(d, hom, rng)))
    return PowersForm(m, d, tuple(terms))


def run_theorem_trials(config: TrialConfig) -> TrialReport:
    """Check OA(expand(F)) == theorem_predicate(F) on random amalgamated forms.

    A predicate-false / OA-true form with as many terms as the degree is a
    sharpness confirmation, not a failure.  Under ``equal_m`` and ``any`` the
    generated sharpness instances for every degree up to ``m_max`` are added.
    """
    report = TrialReport("theorem")
    for t in range(config.trials):
        rng = trial_rng("theorem", config.seed, t)
        d = rng.randint(1, config.d_max)
        m = rng.randint(2, config.m_max)
        k = _term_count(m, config.k_policy, rng)
        form = amalgamate(random_form(d, m, k, rng))
        _theorem_case(report, t, form)
    if config.k_policy != "below_m":
        for m in range(2, config.m_max + 1):
            _theorem_case(report, config.trials + m - 2, amalgamate(generate(m).form))
    return report


def _theorem_case(report: TrialReport, t: int, form: PowersForm) -> None:
    report.trials_run += 1
    oa = is_orthogonally_additive(expand(form)).is_oa
    predicate = theorem_predicate(form)
    report.summary[f"predicate_{str(predicate).lower()}"] += 1
    if oa == predicate:
        report.ok("theorem_equivalence")
    elif oa and len(form) >= form.degree:
        report.sharpness_confirmations.append({"trial": t, "m": form.degree, "k": len(form), "form": powers_form_to_json(form)})
        report.ok("theorem_equivalence")
    else:
        report.fail(t, "theorem_equivalence", {"form": powers_form_to_json(form), "oa": oa, "predicate": predicate})


def _sharpness_forms(m_max: int) -> list[PowersForm]:
    forms = [gen_even(n).form for n in range(1, m_max // 2 + 1)]
    forms += [gen_odd(n).form for n in range(2, (m_max + 1) // 2 + 1)]
    return forms


def run_deriv_trials(config: TrialConfig) -> TrialReport:
    """Differentials of orthogonally additive forms must stay orthogonally additive."""
    report = TrialReport("deriv")
    sharp = _sharpness_forms(config.m_max)
    for t in range(config.trials):
        rng = trial_rng("deriv", config.seed, t)
        if sharp and rng.random() < 0.25:
            form = rng.choice(sharp)
            report.summary["source_sharpness"] += 1
        else:
            report.summary["source_random"] += 1
            d = rng.randint(1, config.d_max)
            m = rng.randint(2, config.m_max)
            form = random_form(d, m, rng.randint(1, 4), rng, hom_only=True)
        x = random_vector(form.dimension, rng)
        k = rng.randint(1, form.degree - 1)
        report.trials_run += 1
        deriv = derivative_form(form, x, k)
        doc = {"form": powers_form_to_json(form), "point": [str(v) for v in x], "k": k}
        expanded = expand(deriv)
        if is_orthogonally_additive(expanded).is_oa:
            report.ok("derivative_oa")
        else:
            report.fail(t, "derivative_oa", doc)
        if expanded == derivative_monomial(expand(form), x, k):
            report.ok("derivative_consistency")
        else:
            report.fail(t, "derivative_consistency", doc)
    return report


def random_monomial_poly(d: int, m: int, rng: random.Random, max_terms: int = 10) -> MonomialPoly:
    if rng.random() < 0.5:
        keys = [tuple(m if j == i else 0 for j in range(d)) for i in range(d)]
    else:
        keys = list(compositions(m, d))
    count = rng.randint(0, min(max_terms, len(keys)))
    chosen = rng.sample(keys, count)
    return MonomialPoly(m, d, {alpha: random_rational(rng, nonzero=True) for alpha in chosen})


def run_agreement_trials(config: TrialConfig) -> TrialReport:
    """Monomial criterion vs disjoint-pair sampling vs orthosymmetry sampling."""
    report = TrialReport("agreement")
    for t in range(config.trials):
        rng = trial_rng("agreement", config.seed, t)
        d = rng.randint(1, config.d_max)
        m = rng.randint(2, config.m_max)
        poly = random_monomial_poly(d, m, rng)
        sub = rng.getrandbits(32)
        report.trials_run += 1
        by_monomials = is_orthogonally_additive(poly).is_oa
        by_pairs = disjoint_pair_check(poly, config.samples, sub) is None
        by_polarization, _ = orthosymmetry_check(poly, config.samples, sub)
        report.summary[f"oa_{str(by_monomials).lower()}"] += 1
        if by_monomials == by_pairs == by_polarization:
            report.ok("three_way_agreement")
        else:
            report.fail(
                t,
                "three_way_agreement",
                {"poly": monomial_poly_to_json(poly), "monomial": by_monomials, "pairs": by_pairs, "polarization": by_polarization},
            )
    return report


def run_all(config: TrialConfig) -> dict:
    reports = [run_theorem_trials(config), run_deriv_trials(config), run_agreement_trials(config)]
    return {
        "config": asdict(config),
        "passed": all(r.passed for r in reports),
        "reports": [r.to_dict() for r in reports],
    }
