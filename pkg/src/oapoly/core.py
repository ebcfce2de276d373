"""Exact homogeneous polynomials on Q^d.

Two representations are kept side by side:

* :class:`PowersForm` -- ``sum_j lam_j * phi_j(x)**m``, scaled powers of
  linear functionals.
* :class:`MonomialPoly` -- a sparse map from exponent tuples to coefficients.

Every scalar is a :class:`fractions.Fraction`; nothing in here ever touches a
float.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import lcm

Vector = tuple[Fraction, ...]
MultiIndex = tuple[int, ...]


class DimensionError(ValueError):
    """Raised when vectors, functionals or polynomials disagree in dimension."""


def to_rational(value) -> Fraction:
    if type(value) is Fraction:
        return value
    if isinstance(value, float):
        raise TypeError(f"refusing float {value!r}; pass an int, Fraction or 'p/q' string")
    return Fraction(value)


def vector(values: Iterable) -> Vector:
    out = tuple(to_rational(v) for v in values)
    if not out:
        raise DimensionError("vectors must have dimension >= 1")
    return out


def unit_vector(d: int, i: int) -> Vector:
    return tuple(Fraction(1) if j == i else Fraction(0) for j in range(d))


def scale(t, x: Sequence[Fraction]) -> Vector:
    t = to_rational(t)
    return tuple(t * xi for xi in x)


def _check_dim(expected: int, got: int, what: str) -> None:
    if expected != got:
        raise DimensionError(f"{what}: expected dimension {expected}, got {got}")


# --- exact combinatorics -------------------------------------------------


@lru_cache(maxsize=None)
def pascal_row(n: int) -> tuple[int, ...]:
    """Row ``n`` of Pascal's triangle, built by the additive recurrence."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    row = (1,)
    for _ in range(n):
        row = (1,) + tuple(a + b for a, b in zip(row, row[1:])) + (1,)
    return row


def binomial(n: int, k: int) -> int:
    if k < 0 or k > n:
        return 0
    return pascal_row(n)[k]


def multinomial(exponents: Sequence[int]) -> int:
    """``(sum a)! / prod(a_i!)`` as a product of binomials of partial sums."""
    total, coeff = 0, 1
    for a in exponents:
        total += a
        coeff *= binomial(total, a)
    return coeff


def compositions(total: int, parts: int) -> Iterator[MultiIndex]:
    """All ``parts``-tuples of nonnegative ints summing to ``total``.

    Yielded in descending lexicographic order, so ``(total, 0, ..., 0)`` first.
    """
    if parts < 1:
        return
    stack: list[tuple[MultiIndex, int]] = [((), total)]
    while stack:
        prefix, left = stack.pop()
        if len(prefix) == parts - 1:
            yield prefix + (left,)
            continue
        # pushed low-to-high so the largest first entry pops first
        for a in range(left + 1):
            stack.append((prefix + (a,), left - a))


# --- functionals and forms ----------------------------------------------


@dataclass(frozen=True)
class Functional:
    """Linear functional ``x -> sum_i a_i x_i``."""

    coefficients: Vector

    def __post_init__(self) -> None:
        object.__setattr__(self, "coefficients", vector(self.coefficients))

    @property
    def dimension(self) -> int:
        return len(self.coefficients)

    def __call__(self, x: Sequence[Fraction]) -> Fraction:
        _check_dim(self.dimension, len(x), "functional argument")
        return sum((a * xi for a, xi in zip(self.coefficients, x) if a), Fraction(0))

    def is_zero(self) -> bool:
        return not any(self.coefficients)

    def support(self) -> tuple[int, ...]:
        return tuple(i for i, a in enumerate(self.coefficients) if a)

    def __neg__(self) -> Functional:
        return Functional(tuple(-a for a in self.coefficients))

    def canonical(self) -> tuple[Fraction, Functional]:
        """Return ``(t, psi)`` with ``self == t * psi`` and psi's first nonzero entry 1."""
        support = self.support()
        if not support:
            raise ValueError("the zero functional has no direction")
        t = self.coefficients[support[0]]
        return t, Functional(tuple(a / t for a in self.coefficients))

    def ratio_to(self, other: Functional) -> Fraction | None:
        """The ``t`` with ``self == t * other``, or None if not proportional."""
        _check_dim(other.dimension, self.dimension, "functional comparison")
        t = None
        for a, b in zip(self.coefficients, other.coefficients):
            if b == 0:
                if a != 0:
                    return None
                continue
            q = a / b
            if t is None:
                t = q
            elif q != t:
                return None
        return t if t else None


Term = tuple[Fraction, Functional]


@dataclass(frozen=True)
class PowersForm:
    """``sum_j lam_j * phi_j ** degree``; zero scalars and zero functionals are dropped."""

    degree: int
    dimension: int
    terms: tuple[Term, ...] = ()

    def __post_init__(self) -> None:
        if self.degree < 1:
            raise ValueError(f"degree must be >= 1, got {self.degree}")
        if self.dimension < 1:
            raise DimensionError(f"dimension must be >= 1, got {self.dimension}")
        kept = []
        for lam, phi in self.terms:
            lam = to_rational(lam)
            if not isinstance(phi, Functional):
                phi = Functional(phi)
            _check_dim(self.dimension, phi.dimension, "term functional")
            if lam != 0 and not phi.is_zero():
                kept.append((lam, phi))
        object.__setattr__(self, "terms", tuple(kept))

    def __len__(self) -> int:
        return len(self.terms)

    @property
    def functionals(self) -> tuple[Functional, ...]:
        return tuple(phi for _, phi in self.terms)


@dataclass(frozen=True)
class MonomialPoly:
    """Degree-``degree`` homogeneous polynomial as ``{exponents: coefficient}``."""

    degree: int
    dimension: int
    monomials: dict[MultiIndex, Fraction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.degree < 0:
            raise ValueError(f"degree must be >= 0, got {self.degree}")
        if self.dimension < 1:
            raise DimensionError(f"dimension must be >= 1, got {self.dimension}")
        clean = {}
        for alpha, c in self.monomials.items():
            alpha = tuple(int(a) for a in alpha)
            _check_dim(self.dimension, len(alpha), "monomial exponents")
            if any(a < 0 for a in alpha):
                raise ValueError(f"negative exponent in {alpha}")
            if sum(alpha) != self.degree:
                raise ValueError(f"monomial {alpha} does not have degree {self.degree}")
            c = to_rational(c)
            if c:
                clean[alpha] = c
        object.__setattr__(self, "monomials", clean)

    def __len__(self) -> int:
        return len(self.monomials)

    def __getitem__(self, alpha: MultiIndex) -> Fraction:
        return self.monomials.get(tuple(alpha), Fraction(0))

    def sorted_items(self) -> list[tuple[MultiIndex, Fraction]]:
        """Monomials in descending lexicographic order (``x1`` powers first)."""
        return sorted(self.monomials.items(), reverse=True)

    def scaled(self, t) -> MonomialPoly:
        t = to_rational(t)
        return MonomialPoly(self.degree, self.dimension, {a: t * c for a, c in self.monomials.items()})

    def __sub__(self, other: MonomialPoly) -> MonomialPoly:
        if (self.degree, self.dimension) != (other.degree, other.dimension):
            raise DimensionError("cannot subtract polynomials of different shape")
        out = dict(self.monomials)
        for a, c in other.monomials.items():
            out[a] = out.get(a, Fraction(0)) - c
        return MonomialPoly(self.degree, self.dimension, out)


# --- operations ----------------------------------------------------------


def _integer_direction(phi: Functional) -> tuple[Fraction, tuple[int, ...]]:
    """Split ``phi = c * v`` with ``v`` an integer vector."""
    den = lcm(*(a.denominator for a in phi.coefficients))
    return Fraction(1, den), tuple(int(a * den) for a in phi.coefficients)


def _expand_power(coeffs: Sequence[int], m: int) -> dict[MultiIndex, int]:
    """Multinomial expansion of ``(sum_i c_i x_i)**m`` for an integer vector."""
    d = len(coeffs)
    support = [i for i, c in enumerate(coeffs) if c]
    powers = {i: [1] for i in support}
    for i in support:
        for _ in range(m):
            powers[i].append(powers[i][-1] * coeffs[i])
    out = {}
    for beta in compositions(m, len(support)):
        value = multinomial(beta)
        alpha = [0] * d
        for i, b in zip(support, beta):
            value *= powers[i][b]
            alpha[i] = b
        out[tuple(alpha)] = value
    return out


def expand(form: PowersForm) -> MonomialPoly:
    """Exact monomial expansion of a powers form."""
    acc: dict[MultiIndex, Fraction] = {}
    for lam, phi in form.terms:
        c, ints = _integer_direction(phi)
        weight = lam * c**form.degree
        for alpha, n in _expand_power(ints, form.degree).items():
            acc[alpha] = acc.get(alpha, Fraction(0)) + weight * n
    return MonomialPoly(form.degree, form.dimension, acc)


def evaluate(poly: MonomialPoly, x: Sequence) -> Fraction:
    """``sum_alpha c_alpha * x**alpha``."""
    x = vector(x)
    _check_dim(poly.dimension, len(x), "evaluation point")
    total = Fraction(0)
    for alpha, c in poly.monomials.items():
        term = c
        for xi, a in zip(x, alpha):
            if a:
                term *= xi**a
        total += term
    return total


def evaluate_form(form: PowersForm, x: Sequence) -> Fraction:
    """``sum_j lam_j * phi_j(x)**m`` without expanding."""
    x = vector(x)
    _check_dim(form.dimension, len(x), "evaluation point")
    return sum((lam * phi(x) ** form.degree for lam, phi in form.terms), Fraction(0))


def amalgamate(form: PowersForm) -> PowersForm:
    """Merge proportional functionals so the remaining ones are pairwise independent.

    Each group keeps its first-seen functional as representative; a later
    ``phi_i = t * phi_j`` folds ``lam_i * t**m`` into ``lam_j``.  Groups whose
    merged scalar vanishes are dropped.
    """
    m = form.degree
    groups: dict[Functional, list] = {}
    for lam, phi in form.terms:
        s, direction = phi.canonical()
        if direction in groups:
            entry = groups[direction]
            entry[0] += lam * (s / entry[2]) ** m
        else:
            groups[direction] = [lam, phi, s]
    return PowersForm(m, form.dimension, tuple((lam, phi) for lam, phi, _ in groups.values()))


def pairwise_independent(functionals: Sequence[Functional]) -> tuple[int, int] | None:
    """First pair ``(i, j)`` of proportional functionals, or None if there is none."""
    for i in range(len(functionals)):
        for j in range(i + 1, len(functionals)):
            if functionals[i].ratio_to(functionals[j]) is not None:
                return i, j
    return None


def falling_factorial(m: int, k: int) -> int:
    out = 1
    for i in range(m - k + 1, m + 1):
        out *= i
    return out


def _check_order(k: int, m: int) -> None:
    if not 1 <= k < m:
        raise ValueError(f"derivative order must satisfy 1 <= k < m; got k={k}, m={m}")


def derivative_form(form: PowersForm, point: Sequence, k: int) -> PowersForm:
    """k-th differential of ``form`` at ``point`` as a degree-k powers form.

    Uses ``d^k(phi^m)(x) = m!/(m-k)! * phi(x)**(m-k) * phi**k``; the factorial
    factor is kept.
    """
    m = form.degree
    _check_order(k, m)
    point = vector(point)
    _check_dim(form.dimension, len(point), "derivative point")
    factor = falling_factorial(m, k)
    terms = tuple((factor * lam * phi(point) ** (m - k), phi) for lam, phi in form.terms)
    return PowersForm(k, form.dimension, terms)


def derivative_monomial(poly: MonomialPoly, point: Sequence, k: int) -> MonomialPoly:
    """k-th differential of ``poly`` at ``point``, worked monomial by monomial.

    ``k!`` times the coefficient of ``t**k`` in ``poly(point + t*h)``, read as a
    polynomial in ``h``.
    """
    m = poly.degree
    _check_order(k, m)
    point = vector(point)
    _check_dim(poly.dimension, len(point), "derivative point")
    kfact = falling_factorial(k, k)
    acc: dict[MultiIndex, Fraction] = {}
    for alpha, c in poly.monomials.items():
        for beta in compositions(k, poly.dimension):
            if any(b > a for a, b in zip(alpha, beta)):
                continue
            term = c * kfact
            for xi, a, b in zip(point, alpha, beta):
                term *= binomial(a, b) * xi ** (a - b)
            if term:
                acc[beta] = acc.get(beta, Fraction(0)) + term
    return MonomialPoly(k, poly.dimension, acc)
