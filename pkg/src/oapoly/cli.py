"""Command-line interface.

Exit codes: 0 verified, 1 falsified (a witness is printed), 2 input error.
Results go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import sys

from .core import Functional, MonomialPoly, PowersForm, expand
from .harness import K_POLICIES, TrialConfig, run_all
from .lattice import classify_homomorphism, is_orthogonally_additive
from .serialize import (
    DocumentError,
    dumps,
    hom_verdict_to_json,
    loads,
    monomial_poly_to_json,
    oa_verdict_to_json,
    parse_rational,
    powers_form_to_json,
    rational_to_json,
    to_latex,
    to_text,
)
from .sharpness import SharpnessInstance, VerificationReport, generate, verify_instance

EXIT_OK, EXIT_FALSIFIED, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _load(path: str) -> PowersForm | MonomialPoly:
    try:
        return loads(_read(path))
    except (DocumentError, ValueError) as exc:
        raise InputError(str(exc)) from None


def _witness_to_json(w):
    if w is None:
        return None
    if isinstance(w, tuple):
        return [_witness_to_json(v) for v in w]
    if hasattr(w, "is_oa"):
        return oa_verdict_to_json(w)
    if hasattr(w, "is_homomorphism"):
        return hom_verdict_to_json(w)
    if hasattr(w, "coefficients"):
        return [rational_to_json(a) for a in w.coefficients]
    if isinstance(w, int):
        return w
    return str(w)


def instance_to_json(inst: SharpnessInstance) -> dict:
    return {
        "n": inst.n,
        "m": inst.m,
        "parity": inst.parity,
        "A": [rational_to_json(a) for a in inst.A],
        "B2": rational_to_json(inst.B2),
        "form": powers_form_to_json(inst.form),
        "expanded": monomial_poly_to_json(inst.expanded),
    }


def verification_to_json(report: VerificationReport) -> dict:
    return {
        "passed": report.passed,
        "clauses": [
            {"name": c.name, "passed": c.passed, "witness": None if c.passed else _witness_to_json(c.witness)}
            for c in report.clauses
        ],
    }


def cmd_expand(args) -> int:
    form = _load(args.input)
    if not isinstance(form, PowersForm):
        raise InputError("$.kind: expand needs a 'powers_form' document")
    poly = expand(form)
    if args.format == "latex":
        sys.stdout.write(to_latex(poly) + "\n")
    elif args.format == "text":
        sys.stdout.write(to_text(poly) + "\n")
    else:
        sys.stdout.write(dumps(monomial_poly_to_json(poly)))
    return EXIT_OK


def cmd_check_oa(args) -> int:
    doc = _load(args.input)
    poly = expand(doc) if isinstance(doc, PowersForm) else doc
    verdict = is_orthogonally_additive(poly)
    sys.stdout.write(dumps(oa_verdict_to_json(verdict)))
    return EXIT_OK if verdict.is_oa else EXIT_FALSIFIED


def cmd_classify(args) -> int:
    parts = [p.strip() for p in args.functional.split(",")]
    if not parts or any(not p for p in parts):
        raise InputError("--functional: expected comma-separated rationals like '1,-1/2'")
    try:
        phi = Functional(tuple(parse_rational(p, f"--functional[{i}]") for i, p in enumerate(parts)))
    except DocumentError as exc:
        raise InputError(str(exc)) from None
    verdict = classify_homomorphism(phi)
    sys.stdout.write(dumps(hom_verdict_to_json(verdict)))
    return EXIT_FALSIFIED if verdict.neither else EXIT_OK


def cmd_gen_sharp(args) -> int:
    if args.degree < 2:
        raise InputError(f"--degree: must be >= 2, got {args.degree}")
    inst = generate(args.degree)
    out = instance_to_json(inst)
    code = EXIT_OK
    if args.verify:
        report = verify_instance(inst)
        out["verification"] = verification_to_json(report)
        code = EXIT_OK if report.passed else EXIT_FALSIFIED
    sys.stdout.write(dumps(out))
    return code


def cmd_verify_theorem(args) -> int:
    try:
        config = TrialConfig(
            seed=args.seed,
            trials=args.trials,
            d_max=args.dmax,
            m_max=args.mmax,
            k_policy=args.k_policy,
            samples=args.samples,
        )
    except ValueError as exc:
        raise InputError(str(exc)) from None
    result = run_all(config)
    sys.stdout.write(dumps(result))
    return EXIT_OK if result["passed"] else EXIT_FALSIFIED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="oapoly",
        description="Orthogonally additive sums of powers of linear functionals on Q^d.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", help="expand a powers_form document into monomials")
    p.add_argument("--in", dest="input", required=True, help="input file, or - for stdin")
    p.add_argument("--format", choices=("json", "latex", "text"), default="json")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("check-oa", help="decide orthogonal additivity (exit 1 with a witness if not)")
    p.add_argument("--in", dest="input", required=True, help="powers_form or monomial_poly file, or -")
    p.set_defaults(func=cmd_check_oa)

    p = sub.add_parser("classify", help="is phi or -phi a lattice homomorphism?")
    p.add_argument("--functional", required=True, help='coefficients, e.g. "1,-1/2" (use --functional=-2,0 when the first entry is negative)')
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("gen-sharp", help="build the k = m counterexample of a given degree")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--verify", action="store_true", help="check every claimed identity; exit 1 on failure")
    p.set_defaults(func=cmd_gen_sharp)

    p = sub.add_parser("verify-theorem", help="seeded randomized campaigns")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dmax", type=int, default=5)
    p.add_argument("--mmax", type=int, default=6)
    p.add_argument("--k-policy", choices=K_POLICIES, default="below_m")
    p.add_argument("--samples", type=int, default=200, help="sampled pairs/tuples per agreement trial")
    p.set_defaults(func=cmd_verify_theorem)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"oapoly {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
