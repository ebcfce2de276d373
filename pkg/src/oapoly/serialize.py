"""JSON interchange and text/LaTeX rendering.

Rationals travel as strings ("p/q" or "p") so no consumer can coerce them to
floats.  Documents::

    {"kind": "powers_form", "m": 2, "d": 2,
     "terms": [{"lambda": "1", "phi": ["1", "1"]}, ...]}

    {"kind": "monomial_poly", "m": 2, "d": 2,
     "monomials": [{"exponents": [2, 0], "coeff": "2"}, ...]}

A standalone functional is ``{"coefficients": ["1", "-1"]}``; ``phi`` inside
a term may be either that object or the bare list.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction

from .core import Functional, MonomialPoly, PowersForm
from .lattice import HomVerdict, OAVerdict

_RATIONAL = re.compile(r"^\s*-?\d+\s*(/\s*\d+\s*)?$")


class DocumentError(ValueError):
    """Malformed JSON document; the message names the offending field."""

    def __init__(self, path: str, problem: str):
        super().__init__(f"{path}: {problem}")
        self.path = path


def rational_to_json(q: Fraction) -> str:
    return str(Fraction(q))


def parse_rational(value, path: str = "value") -> Fraction:
    if isinstance(value, bool):
        raise DocumentError(path, "expected a rational string, got a boolean")
    if isinstance(value, int):
        return Fraction(value)
    if not isinstance(value, str) or not _RATIONAL.match(value):
        raise DocumentError(path, f"expected a rational string like '3' or '-1/4', got {value!r}")
    try:
        return Fraction(value.replace(" ", ""))
    except ZeroDivisionError:
        raise DocumentError(path, "zero denominator") from None


def vector_to_json(x) -> list[str]:
    return [rational_to_json(v) for v in x]


def functional_to_json(phi: Functional) -> dict:
    return {"coefficients": vector_to_json(phi.coefficients)}


def powers_form_to_json(form: PowersForm) -> dict:
    return {
        "kind": "powers_form",
        "m": form.degree,
        "d": form.dimension,
        "terms": [{"lambda": rational_to_json(lam), "phi": vector_to_json(phi.coefficients)} for lam, phi in form.terms],
    }


def monomial_poly_to_json(poly: MonomialPoly) -> dict:
    return {
        "kind": "monomial_poly",
        "m": poly.degree,
        "d": poly.dimension,
        "monomials": [{"exponents": list(alpha), "coeff": rational_to_json(c)} for alpha, c in poly.sorted_items()],
    }


def _field(doc: dict, key: str, path: str):
    if not isinstance(doc, dict):
        raise DocumentError(path, "expected an object")
    if key not in doc:
        raise DocumentError(f"{path}.{key}", "missing field")
    return doc[key]


def _int_field(doc: dict, key: str, path: str, minimum: int) -> int:
    value = _field(doc, key, path)
    if isinstance(value, bool) or not isinstance(value, int):
        raise DocumentError(f"{path}.{key}", f"expected an integer, got {value!r}")
    if value < minimum:
        raise DocumentError(f"{path}.{key}", f"must be >= {minimum}, got {value}")
    return value


def _list_field(doc: dict, key: str, path: str) -> list:
    value = _field(doc, key, path)
    if not isinstance(value, list):
        raise DocumentError(f"{path}.{key}", "expected a list")
    return value


def parse_vector(values, path: str, d: int | None = None) -> tuple[Fraction, ...]:
    if not isinstance(values, list):
        raise DocumentError(path, "expected a list of rationals")
    if d is not None and len(values) != d:
        raise DocumentError(path, f"expected {d} entries, got {len(values)}")
    if not values:
        raise DocumentError(path, "empty vector")
    return tuple(parse_rational(v, f"{path}[{i}]") for i, v in enumerate(values))


def parse_functional(doc, path: str = "phi", d: int | None = None) -> Functional:
    if isinstance(doc, dict):
        return Functional(parse_vector(_field(doc, "coefficients", path), f"{path}.coefficients", d))
    return Functional(parse_vector(doc, path, d))


def _check_kind(doc, expected: str) -> None:
    kind = _field(doc, "kind", "$")
    if kind != expected:
        raise DocumentError("$.kind", f"expected {expected!r}, got {kind!r}")


def parse_powers_form(doc) -> PowersForm:
    _check_kind(doc, "powers_form")
    m = _int_field(doc, "m", "$", 1)
    d = _int_field(doc, "d", "$", 1)
    terms = []
    for i, term in enumerate(_list_field(doc, "terms", "$")):
        path = f"$.terms[{i}]"
        lam = parse_rational(_field(term, "lambda", path), f"{path}.lambda")
        terms.append((lam, parse_functional(_field(term, "phi", path), f"{path}.phi", d)))
    return PowersForm(m, d, tuple(terms))


def parse_monomial_poly(doc) -> MonomialPoly:
    _check_kind(doc, "monomial_poly")
    m = _int_field(doc, "m", "$", 0)
    d = _int_field(doc, "d", "$", 1)
    monomials: dict[tuple[int, ...], Fraction] = {}
    for i, mono in enumerate(_list_field(doc, "monomials", "$")):
        path = f"$.monomials[{i}]"
        exps = _field(mono, "exponents", path)
        if (
            not isinstance(exps, list)
            or len(exps) != d
            or any(isinstance(e, bool) or not isinstance(e, int) or e < 0 for e in exps)
        ):
            raise DocumentError(f"{path}.exponents", f"expected {d} nonnegative integers, got {exps!r}")
        if sum(exps) != m:
            raise DocumentError(f"{path}.exponents", f"exponents sum to {sum(exps)}, not m={m}")
        alpha = tuple(exps)
        if alpha in monomials:
            raise DocumentError(f"{path}.exponents", f"duplicate monomial {exps}")
        monomials[alpha] = parse_rational(_field(mono, "coeff", path), f"{path}.coeff")
    return MonomialPoly(m, d, monomials)


def parse_document(doc) -> PowersForm | MonomialPoly:
    kind = _field(doc, "kind", "$")
    if kind == "powers_form":
        return parse_powers_form(doc)
    if kind == "monomial_poly":
        return parse_monomial_poly(doc)
    raise DocumentError("$.kind", f"expected 'powers_form' or 'monomial_poly', got {kind!r}")


def loads(text: str) -> PowersForm | MonomialPoly:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError("$", f"invalid JSON ({exc.msg} at line {exc.lineno})") from None
    return parse_document(doc)


def dumps(doc) -> str:
    return json.dumps(doc, indent=2) + "\n"


def hom_verdict_to_json(v: HomVerdict) -> dict:
    return {
        "homomorphism": v.is_homomorphism,
        "negation": v.negation_is,
        "witness": None if v.witness is None else ",".join(rational_to_json(a) for a in v.witness),
    }


def oa_verdict_to_json(v: OAVerdict) -> dict:
    out = {"orthogonally_additive": v.is_oa, "witness": None, "disjoint_witness": None}
    if v.witness is not None:
        alpha, c = v.witness
        out["witness"] = {"exponents": list(alpha), "coeff": rational_to_json(c)}
    if v.disjoint_witness is not None:
        x, y = v.disjoint_witness
        out["disjoint_witness"] = {"x": vector_to_json(x), "y": vector_to_json(y)}
    return out


# --- rendering -----------------------------------------------------------


def _latex_coeff(c: Fraction) -> tuple[str, str]:
    sign = "-" if c < 0 else "+"
    c = abs(c)
    if c == 1:
        return sign, ""
    if c.denominator == 1:
        return sign, str(c.numerator)
    return sign, rf"\frac{{{c.numerator}}}{{{c.denominator}}}"


def _latex_var(i: int, a: int) -> str:
    index = str(i + 1) if i < 9 else f"{{{i + 1}}}"
    return f"x_{index}" if a == 1 else f"x_{index}^{{{a}}}"


def to_latex(poly: MonomialPoly) -> str:
    """E.g. ``2x_1^{2}+2x_2^{2}``; the zero polynomial renders as ``0``."""
    parts = []
    for alpha, c in poly.sorted_items():
        sign, coeff = _latex_coeff(c)
        body = "".join(_latex_var(i, a) for i, a in enumerate(alpha) if a)
        if not body and not coeff:
            coeff = "1"
        parts.append((sign, coeff + body))
    if not parts:
        return "0"
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    return out + "".join(s + t for s, t in parts[1:])


def to_text(poly: MonomialPoly) -> str:
    """E.g. ``2*x1^2 + 2*x2^2``."""
    parts = []
    for alpha, c in poly.sorted_items():
        factors = [f"x{i + 1}" if a == 1 else f"x{i + 1}^{a}" for i, a in enumerate(alpha) if a]
        mag = abs(c)
        if mag != 1 or not factors:
            factors.insert(0, str(mag))
        parts.append(("-" if c < 0 else "+", "*".join(factors)))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    return out + "".join(f" {s} {t}" for s, t in parts[1:])
