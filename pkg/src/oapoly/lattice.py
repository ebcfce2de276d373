"""Lattice structure of Q^d with the componentwise order.

Homomorphism classification for functionals, the orthogonal-additivity
decision for monomial polynomials, and the polarization route to the
associated symmetric multilinear form.  Negative answers always come with a
witness that can be re-checked by hand.
"""

from __future__ import annotations

import random
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import factorial, lcm

from .core import (
    Functional,
    MonomialPoly,
    MultiIndex,
    PowersForm,
    Vector,
    _check_dim,
    amalgamate,
    evaluate,
    unit_vector,
    vector,
)


def lattice_meet(x: Sequence, y: Sequence) -> Vector:
    x, y = vector(x), vector(y)
    _check_dim(len(x), len(y), "meet")
    return tuple(min(a, b) for a, b in zip(x, y))


def lattice_join(x: Sequence, y: Sequence) -> Vector:
    x, y = vector(x), vector(y)
    _check_dim(len(x), len(y), "join")
    return tuple(max(a, b) for a, b in zip(x, y))


def lattice_abs(x: Sequence) -> Vector:
    return tuple(abs(a) for a in vector(x))


def positive_part(x: Sequence) -> Vector:
    return tuple(max(a, Fraction(0)) for a in vector(x))


def negative_part(x: Sequence) -> Vector:
    return tuple(max(-a, Fraction(0)) for a in vector(x))


def are_disjoint(x: Sequence, y: Sequence) -> bool:
    """``|x| meet |y| == 0``."""
    return not any(lattice_meet(lattice_abs(x), lattice_abs(y)))


# --- homomorphisms -------------------------------------------------------


def preserves_modulus(phi: Functional, x: Sequence) -> bool:
    """``|phi(x)| == phi(|x|)``."""
    return abs(phi(x)) == phi(lattice_abs(x))


def separates_parts(phi: Functional, x: Sequence) -> bool:
    """``phi(x+) meet phi(x-) == 0`` in R."""
    return min(phi(positive_part(x)), phi(negative_part(x))) == 0


@dataclass(frozen=True)
class HomVerdict:
    is_homomorphism: bool
    negation_is: bool
    witness: Vector | None = None

    @property
    def neither(self) -> bool:
        return not (self.is_homomorphism or self.negation_is)


def classify_homomorphism(phi: Functional) -> HomVerdict:
    """Decide whether ``phi`` or ``-phi`` is a lattice homomorphism of Q^d -> Q.

    On Q^d these are exactly the nonnegative multiples of a coordinate
    functional.  With two nonzero coefficients at ``i < j`` the vector
    ``e_i - e_j`` gives ``|phi(x)| = |a_i - a_j| != |a_i + a_j| = |phi(|x|)|``.
    """
    support = phi.support()
    if not support:
        return HomVerdict(True, True)
    if len(support) == 1:
        positive = phi.coefficients[support[0]] > 0
        return HomVerdict(positive, not positive)
    i, j = support[:2]
    d = phi.dimension
    witness = tuple(a - b for a, b in zip(unit_vector(d, i), unit_vector(d, j)))
    return HomVerdict(False, False, witness)


# --- orthogonal additivity ----------------------------------------------


@dataclass(frozen=True)
class OAVerdict:
    is_oa: bool
    witness: tuple[MultiIndex, Fraction] | None = None
    disjoint_witness: tuple[Vector, Vector] | None = None


def is_mixed(alpha: MultiIndex) -> bool:
    return sum(1 for a in alpha if a) >= 2


def additivity_defect(poly: MonomialPoly, x: Sequence, y: Sequence) -> Fraction:
    """``P(x+y) - P(x) - P(y)``."""
    s = tuple(a + b for a, b in zip(vector(x), vector(y)))
    return evaluate(poly, s) - evaluate(poly, x) - evaluate(poly, y)


def _split_pair(poly: MonomialPoly, alpha: MultiIndex) -> tuple[Vector, Vector]:
    # {first support coordinate} vs {rest}, all-ones entries first.  Other
    # mixed monomials on the same support can cancel at the all-ones point;
    # the defect is a nonzero polynomial of degree m, so it cannot vanish on
    # all of {1..m+1}^support.
    support = [i for i, a in enumerate(alpha) if a]
    d, m = poly.dimension, poly.degree
    for values in product(range(1, m + 2), repeat=len(support)):
        x = [Fraction(0)] * d
        y = [Fraction(0)] * d
        x[support[0]] = Fraction(values[0])
        for i, v in zip(support[1:], values[1:]):
            y[i] = Fraction(v)
        if additivity_defect(poly, x, y):
            return tuple(x), tuple(y)
    raise AssertionError(f"no disjoint witness for mixed monomial {alpha}")


def is_orthogonally_additive(poly: MonomialPoly) -> OAVerdict:
    """Orthogonal additivity on Q^d: no monomial may involve two coordinates."""
    for alpha, c in sorted(poly.monomials.items()):
        if is_mixed(alpha):
            return OAVerdict(False, (alpha, c), _split_pair(poly, alpha))
    return OAVerdict(True)


def _integer_poly(poly: MonomialPoly) -> tuple[int, list[tuple[MultiIndex, int]]]:
    den = lcm(1, *(c.denominator for c in poly.monomials.values()))
    return den, [(alpha, int(c * den)) for alpha, c in poly.monomials.items()]


def _int_eval(terms: list[tuple[MultiIndex, int]], x: Sequence[int]) -> int:
    total = 0
    for alpha, c in terms:
        for xi, a in zip(x, alpha):
            if a:
                c *= xi**a
        total += c
    return total


def symmetric_form_eval(poly: MonomialPoly, args: Sequence[Sequence]) -> Fraction:
    """The symmetric m-linear form of ``poly`` at ``args``, by polarization.

    ``A(x_1..x_m) = 1/(2^m m!) * sum_eps eps_1...eps_m * P(sum eps_i x_i)``.
    Arguments are cleared of denominators first so the signed sum runs in
    integers; multilinearity undoes the scaling.
    """
    m = poly.degree
    if len(args) != m:
        raise ValueError(f"expected {m} arguments, got {len(args)}")
    if m == 0:
        return evaluate(poly, (0,) * poly.dimension)
    scaled, denom = [], 1
    for x in args:
        x = vector(x)
        _check_dim(poly.dimension, len(x), "multilinear argument")
        q = lcm(*(xi.denominator for xi in x))
        scaled.append([int(xi * q) for xi in x])
        denom *= q
    pden, terms = _integer_poly(poly)
    d = poly.dimension
    total = 0
    # eps_1 = +1 only; flipping every sign maps each term to itself.
    for signs in product((1, -1), repeat=m - 1):
        eps = (1,) + signs
        point = [sum(e * x[i] for e, x in zip(eps, scaled)) for i in range(d)]
        sign = 1
        for e in signs:
            sign *= e
        total += sign * _int_eval(terms, point)
    return Fraction(total, 2 ** (m - 1) * factorial(m) * denom * pden)


@dataclass(frozen=True)
class DisjointTuple:
    vectors: tuple[Vector, ...]
    disjoint_pair: tuple[int, int]

    def __post_init__(self) -> None:
        i, j = self.disjoint_pair
        if i == j or not are_disjoint(self.vectors[i], self.vectors[j]):
            raise ValueError("vectors at disjoint_pair are not disjoint")


def random_rational(rng: random.Random, nonzero: bool = False) -> Fraction:
    """``p/q`` with ``|p| <= 20`` and ``1 <= q <= 10``."""
    while True:
        p = rng.randint(-20, 20)
        if p or not nonzero:
            return Fraction(p, rng.randint(1, 10))


def random_vector(d: int, rng: random.Random) -> Vector:
    return tuple(random_rational(rng) for _ in range(d))


def random_disjoint_pair(d: int, rng: random.Random) -> tuple[Vector, Vector]:
    """Random vectors with complementary supports (a random coordinate split)."""
    side = [rng.random() < 0.5 for _ in range(d)]
    if d >= 2 and (all(side) or not any(side)):
        k = rng.randrange(d)
        side[k] = not side[k]
    x = tuple(random_rational(rng) if s else Fraction(0) for s in side)
    y = tuple(Fraction(0) if s else random_rational(rng) for s in side)
    return x, y


def random_disjoint_tuple(m: int, d: int, rng: random.Random) -> DisjointTuple:
    i, j = rng.sample(range(m), 2)
    x, y = random_disjoint_pair(d, rng)
    vectors = [random_vector(d, rng) for _ in range(m)]
    vectors[i], vectors[j] = x, y
    return DisjointTuple(tuple(vectors), (i, j))


def disjoint_pair_check(poly: MonomialPoly, trials: int, seed: int) -> tuple[Vector, Vector] | None:
    """Sample disjoint pairs; return the first one on which additivity fails."""
    rng = random.Random(seed)
    for _ in range(trials):
        x, y = random_disjoint_pair(poly.dimension, rng)
        if additivity_defect(poly, x, y):
            return x, y
    return None


def orthosymmetry_check(
    poly: MonomialPoly, trials: int, seed: int
) -> tuple[bool, DisjointTuple | None]:
    """Sample random disjoint tuples and look for a nonzero value of the symmetric form."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if poly.degree < 2:
        return True, None
    rng = random.Random(seed)
    for _ in range(trials):
        tup = random_disjoint_tuple(poly.degree, poly.dimension, rng)
        if symmetric_form_eval(poly, tup.vectors):
            return False, tup
    return True, None


def theorem_predicate(form: PowersForm) -> bool:
    """After amalgamation, is every ``phi_j`` or ``-phi_j`` a lattice homomorphism?"""
    return all(not classify_homomorphism(phi).neither for phi in amalgamate(form).functionals)
