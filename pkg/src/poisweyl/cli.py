"""Command-line front end.

Every engine capability has one subcommand with deterministic text and JSON
output, so golden-file tests and CI can consume results directly.  Exit
codes: 0 when all checks pass, 1 when a check fails, 2 on usage or engine
errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from random import Random

from .lie import (
    FinLieAlgebra,
    LieFixtureError,
    canonical_witness_verify,
    close_under_bracket,
    is_jordan_holder_ordered,
    iso_invariants,
    nildegree,
    series,
    triangular_form_check,
)
from .parser import (
    ExprSyntaxError,
    bindings_for_signature,
    bindings_for_space,
    parse_expression,
    parse_scalar,
)
from .phasepoly import (
    AbstractModeError,
    ClassicalPoly,
    SpaceMismatchError,
    VariableSpace,
    poisson_bracket,
)
from .quantize import (
    AffineGroupElement,
    PhaseScalingState,
    QuantizationMap,
    RuleCoverageError,
    affine_quantization,
    affine_rep_compose,
    basic_quantization_audit,
    enumerate_q1_pairs,
    groenewold_witness,
    q1_check,
    q1_scan_pairs,
    remark3_quantization,
    weyl_quantization_map,
)
from .scalar import HbarDivisionError
from .weyl import (
    SignatureMismatchError,
    WeylElement,
    WeylSignature,
    WeylWord,
    symmetrize,
    weyl_commutator,
)

_ENGINE_ERRORS = (
    ExprSyntaxError,
    LieFixtureError,
    SpaceMismatchError,
    AbstractModeError,
    SignatureMismatchError,
    RuleCoverageError,
    HbarDivisionError,
    ValueError,
    KeyError,
    OSError,
)


class UsageError(Exception):
    pass


class CliParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class Report:
    command: str
    parameters: dict = field(default_factory=dict)
    results: list = field(default_factory=list)
    ok: bool = True
    summary: str = ""

    def to_json(self) -> str:
        payload = {
            "command": self.command,
            "parameters": self.parameters,
            "results": self.results,
            "pass": self.ok,
            "summary": self.summary,
        }
        return json.dumps(payload, indent=2)

    def to_text(self) -> str:
        lines = [f"command: {self.command}"]
        for key, value in self.parameters.items():
            lines.append(f"{key}: {value}")
        for entry in self.results:
            parts = []
            for key, value in entry.items():
                if isinstance(value, bool):
                    value = "true" if value else "false"
                parts.append(f"{key}={value}")
            lines.append("  " + " ".join(parts))
        if self.summary:
            lines.append(f"summary: {self.summary}")
        lines.append(f"result: {'PASS' if self.ok else 'FAIL'}")
        return "\n".join(lines)


def emit(report: Report, fmt: str) -> str:
    return report.to_json() if fmt == "json" else report.to_text()


# -- flag resolution -----------------------------------------------------------


def resolve_space(args) -> VariableSpace:
    space_arg = getattr(args, "space", None)
    abstract_arg = getattr(args, "abstract", None)
    if space_arg and abstract_arg:
        raise ValueError("use either --space or --abstract, not both")
    if abstract_arg:
        names = tuple(s.strip() for s in abstract_arg.split(",") if s.strip())
        plain = VariableSpace.abstract(names, {})
        table = {}
        for text in getattr(args, "bracket", None) or []:
            lhs, sep, rhs = text.partition("=")
            if not sep:
                raise ValueError(f"bad bracket declaration {text!r}")
            pair = tuple(s.strip() for s in lhs.split(","))
            if len(pair) != 2:
                raise ValueError(f"bad bracket pair in {text!r}")
            value = parse_expression(rhs, bindings_for_space(plain))
            if not isinstance(value, ClassicalPoly):
                value = plain.constant(value)
            table[pair] = dict(value.terms)
        return VariableSpace.abstract(names, table)
    if space_arg:
        names = tuple(s.strip() for s in space_arg.split(",") if s.strip())
        if len(names) % 2 != 0 or not names:
            raise ValueError("--space must list q1..qn,p1..pn")
        candidate = VariableSpace.canonical(len(names) // 2)
        if names != candidate.names:
            raise ValueError(
                "--space must list the canonical names q1..qn,p1..pn in order"
            )
        return candidate
    return VariableSpace.canonical(1)


def resolve_signature(args) -> WeylSignature:
    pairs = getattr(args, "pairs", None) or 1
    if pairs < 1:
        raise ValueError("--pairs must be at least 1")
    flavor_diff = getattr(args, "diff", False)
    base = (
        WeylSignature.differential(pairs)
        if flavor_diff
        else WeylSignature.quantum(pairs)
    )
    kappa_arg = getattr(args, "kappa", None)
    if kappa_arg:
        kappas = [parse_scalar(part) for part in kappa_arg.split(",")]
        if len(kappas) != pairs:
            raise ValueError("--kappa must list one constant per pair")
        base = WeylSignature.custom(kappas, base.flavor)
    return base


def stock_map(name: str, pairs: int = 1) -> QuantizationMap:
    if name == "weyl":
        return weyl_quantization_map(pairs)
    if name == "affine-plus":
        return affine_quantization(1)
    if name == "affine-minus":
        return affine_quantization(-1)
    if name == "remark3":
        return remark3_quantization()
    raise ValueError(f"unknown map {name!r}")


def parse_poly(text: str, space: VariableSpace) -> ClassicalPoly:
    value = parse_expression(text, bindings_for_space(space))
    if not isinstance(value, ClassicalPoly):
        value = space.constant(value)
    return value


def parse_weyl(text: str, signature: WeylSignature) -> WeylElement:
    value = parse_expression(text, bindings_for_signature(signature))
    if not isinstance(value, WeylElement):
        value = WeylElement.identity(signature) * value
    return value


def parse_word(text: str, signature: WeylSignature) -> WeylWord:
    names = signature.generator_names()
    index = {name: k for k, name in enumerate(names)}
    symbols = []
    for chunk in text.split("*"):
        chunk = chunk.strip()
        if not chunk:
            raise ValueError(f"empty factor in word {text!r}")
        name, sep, power = chunk.partition("^")
        count = 1
        if sep:
            if not power.isdigit():
                raise ValueError(f"bad exponent in word factor {chunk!r}")
            count = int(power)
        if name not in index:
            raise ValueError(f"unknown generator {name!r} in word")
        symbols.extend([index[name]] * count)
    return WeylWord(signature, tuple(symbols))


def read_fixture(path: str) -> list[str]:
    lines = []
    with open(path, "r", encoding="utf-8") as handle:
        for raw in handle:
            line = raw.split("#", 1)[0].strip()
            if line:
                lines.append(line)
    return lines


def load_algebra(args) -> FinLieAlgebra | None:
    space = resolve_space(args)
    generators = [parse_poly(line, space) for line in read_fixture(args.fixture)]
    return close_under_bracket(generators, dim_cap=getattr(args, "cap", 64))


# -- command handlers ----------------------------------------------------------


def cmd_bracket(args) -> Report:
    space = resolve_space(args)
    f = parse_poly(args.f, space)
    g = parse_poly(args.g, space)
    value = poisson_bracket(f, g)
    return Report(
        "bracket",
        {"f": str(f), "g": str(g)},
        [{"value": str(value)}],
        True,
        "",
    )


def cmd_wprod(args) -> Report:
    signature = resolve_signature(args)
    a = parse_weyl(args.a, signature)
    b = parse_weyl(args.b, signature)
    return Report(
        "wprod",
        {"a": str(a), "b": str(b)},
        [{"value": str(a * b)}],
    )


def cmd_wcomm(args) -> Report:
    signature = resolve_signature(args)
    a = parse_weyl(args.a, signature)
    b = parse_weyl(args.b, signature)
    return Report(
        "wcomm",
        {"a": str(a), "b": str(b)},
        [{"value": str(weyl_commutator(a, b))}],
    )


def cmd_symmetrize(args) -> Report:
    signature = resolve_signature(args)
    word = parse_word(args.word, signature)
    return Report(
        "symmetrize",
        {"word": args.word},
        [{"value": str(symmetrize(word))}],
    )


def cmd_quantize_weyl(args) -> Report:
    space = resolve_space(args)
    f = parse_poly(args.f, space)
    qmap = weyl_quantization_map(space.pairs)
    return Report(
        "quantize-weyl",
        {"f": str(f)},
        [{"value": str(qmap.apply(f))}],
    )


def _map_for_args(args) -> QuantizationMap:
    pairs = 1
    space_arg = getattr(args, "space", None)
    if space_arg:
        pairs = resolve_space(args).pairs
    return stock_map(args.map, pairs)


def cmd_check_q1(args) -> Report:
    qmap = _map_for_args(args)
    f = parse_poly(args.f, qmap.source)
    g = parse_poly(args.g, qmap.source)
    discrepancy = q1_check(qmap, f, g)
    ok = discrepancy.is_zero()
    return Report(
        "check-q1",
        {"map": qmap.name, "f": str(f), "g": str(g)},
        [{"discrepancy": str(discrepancy), "pass": ok}],
        ok,
        "Dirac condition holds" if ok else "Dirac condition fails",
    )


def _run_scan(qmap: QuantizationMap, degree: int, jobs: int):
    pair_list = enumerate_q1_pairs(len(qmap.source.names), degree)
    if jobs <= 1 or len(pair_list) < 2 * jobs:
        return q1_scan_pairs(qmap, pair_list), len(pair_list)
    try:
        import multiprocessing

        context = multiprocessing.get_context("fork")
        from concurrent.futures import ProcessPoolExecutor

        chunk = (len(pair_list) + jobs - 1) // jobs
        payloads = [
            (qmap.name, qmap.source.pairs or 1, degree, start, start + chunk)
            for start in range(0, len(pair_list), chunk)
        ]
        failures = []
        checked = 0
        with ProcessPoolExecutor(max_workers=jobs, mp_context=context) as pool:
            for part_checked, part_failures in pool.map(_scan_chunk, payloads):
                checked += part_checked
                failures.extend(part_failures)
        from .quantize import Q1Failure, Q1ScanReport

        mapped = tuple(
            Q1Failure(fe, ge, q1_check(
                qmap, qmap.source.monomial(fe), qmap.source.monomial(ge)
            ))
            for fe, ge, _ in failures
        )
        return Q1ScanReport(degree, checked, mapped), len(pair_list)
    except (ImportError, OSError):
        return q1_scan_pairs(qmap, pair_list), len(pair_list)


def _scan_chunk(payload):
    map_name, pairs, degree, start, end = payload
    qmap = stock_map(map_name, pairs)
    pair_list = enumerate_q1_pairs(len(qmap.source.names), degree)[start:end]
    report = q1_scan_pairs(qmap, pair_list)
    return report.checked, [
        (f.f_exps, f.g_exps, str(f.discrepancy)) for f in report.failures
    ]


def cmd_scan_q1(args) -> Report:
    qmap = _map_for_args(args)
    report, total = _run_scan(qmap, args.degree, args.jobs)
    entries = []
    for failure in report.failures:
        entries.append(
            {
                "f": str(qmap.source.monomial(failure.f_exps)),
                "g": str(qmap.source.monomial(failure.g_exps)),
                "discrepancy": str(failure.discrepancy),
                "pass": False,
            }
        )
    ok = not report.failures
    return Report(
        "scan-q1",
        {
            "map": qmap.name,
            "degree": args.degree,
            "pairs-checked": total,
            "failures": len(report.failures),
        },
        entries,
        ok,
        "all pairs satisfy the Dirac condition"
        if ok
        else f"{len(report.failures)} pairs fail the Dirac condition",
    )


def cmd_groenewold(args) -> Report:
    witness = groenewold_witness()
    coefficient = witness.hbar_square_coefficient()
    results = [
        {
            "case": "classical-identity {q^3,p^3} = 3*{q^2*p,q*p^2}",
            "pass": witness.classical_identity_ok,
        },
        {
            "case": "obstruction discrepancy",
            "discrepancy": str(witness.discrepancy),
            "hbar2-coefficient": str(coefficient) if coefficient else "none",
            "pass": coefficient is not None and not coefficient.is_zero(),
        },
    ]
    return Report(
        "groenewold",
        {},
        results,
        witness.ok,
        "obstruction witnessed: the two bracket routes disagree by an exact "
        "multiple of h^2",
    )


def cmd_lie_close(args) -> Report:
    algebra = load_algebra(args)
    if algebra is None:
        return Report(
            "lie close",
            {"fixture": args.fixture, "cap": args.cap},
            [{"cap-exceeded": True}],
            False,
            "closure exceeded the dimension cap",
        )
    return Report(
        "lie close",
        {"fixture": args.fixture, "dimension": algebra.dimension},
        [{"basis": ", ".join(str(b) for b in algebra.basis)}],
        True,
        f"closed with dimension {algebra.dimension}",
    )


def cmd_lie_analyze(args) -> Report:
    algebra = load_algebra(args)
    if algebra is None:
        return Report(
            "lie analyze", {"fixture": args.fixture}, [], False, "cap exceeded"
        )
    invariants = iso_invariants(algebra)
    parameters = {
        "fixture": args.fixture,
        "dimension": invariants.dimension,
        "nilpotent": str(invariants.nilpotent).lower(),
        "class": invariants.nilpotency_class
        if invariants.nilpotency_class is not None
        else "none",
        "solvable": str(invariants.solvable).lower(),
        "ascending-dims": ",".join(str(d) for d in invariants.ascending_dims),
        "derived-dims": ",".join(str(d) for d in invariants.derived_dims),
        "derived-dim": invariants.derived_subalgebra_dim,
        "jordan-holder-ordered": str(is_jordan_holder_ordered(algebra)).lower(),
    }
    return Report("lie analyze", parameters, [], True, "analysis complete")


def cmd_lie_nildeg(args) -> Report:
    algebra = load_algebra(args)
    if algebra is None:
        raise ValueError("closure exceeded the dimension cap")
    poly = parse_poly(args.expr, algebra.space)
    value = nildegree(algebra, poly)
    return Report(
        "lie nildeg",
        {"fixture": args.fixture, "expr": str(poly)},
        [{"value": value}],
    )


def cmd_lie_invariants(args) -> Report:
    algebra = load_algebra(args)
    if algebra is None:
        raise ValueError("closure exceeded the dimension cap")
    invariants = iso_invariants(algebra)
    return Report(
        "lie invariants",
        {"fixture": args.fixture},
        [
            {
                "dimension": invariants.dimension,
                "derived-dims": ",".join(str(d) for d in invariants.derived_dims),
                "ascending-dims": ",".join(
                    str(d) for d in invariants.ascending_dims
                ),
                "derived-subalgebra-dim": invariants.derived_subalgebra_dim,
                "nilpotency-class": invariants.nilpotency_class
                if invariants.nilpotency_class is not None
                else "none",
            }
        ],
    )


def cmd_lie_form_check(args) -> Report:
    space = resolve_space(args)
    texts = list(args.exprs)
    if args.fixture:
        texts.extend(read_fixture(args.fixture))
    if not texts:
        raise ValueError("nothing to check: give expressions or --fixture")
    results = []
    ok = True
    for text in texts:
        poly = parse_poly(text, space)
        verdict = triangular_form_check(poly)
        ok = ok and verdict
        results.append({"expr": str(poly), "pass": verdict})
    return Report(
        "lie form-check",
        {"checked": len(texts)},
        results,
        ok,
        "all expressions are in triangular form"
        if ok
        else "some expressions are not in triangular form",
    )


def cmd_lie_witness(args) -> Report:
    algebra = load_algebra(args)
    if algebra is None:
        raise ValueError("closure exceeded the dimension cap")
    aux = VariableSpace.abstract(
        tuple(f"b{k + 1}" for k in range(algebra.dimension)), {}
    )
    bindings = bindings_for_space(aux)
    witnesses = []
    for line in read_fixture(args.witness):
        target, sep, rhs = line.partition("=")
        if not sep:
            raise ValueError(f"bad witness line {line!r}")
        value = parse_expression(rhs, bindings)
        if not isinstance(value, ClassicalPoly):
            value = aux.constant(value)
        witnesses.append((target.strip(), dict(value.terms)))
    verdict = canonical_witness_verify(algebra, witnesses)
    return Report(
        "lie witness",
        {"fixture": args.fixture, "witness": args.witness},
        [{"case": target, "pass": verdict} for target, _ in witnesses],
        verdict,
        "witnesses verified" if verdict else "witness verification failed",
    )


_VARIANTS = {
    "plus": lambda: affine_quantization(1),
    "minus": lambda: affine_quantization(-1),
    "remark3": remark3_quantization,
}


def cmd_affine_quantize(args) -> Report:
    qmap = _VARIANTS[args.variant]()
    f = parse_poly(args.expr, qmap.source)
    return Report(
        "affine quantize",
        {"variant": args.variant, "f": str(f)},
        [{"value": str(qmap.apply(f))}],
    )


def cmd_affine_audit(args) -> Report:
    qmap = _VARIANTS[args.variant]()
    space = qmap.source
    algebra = FinLieAlgebra([space.var("x"), space.var("y")])
    audit = basic_quantization_audit(qmap, algebra, args.degree)
    results = [
        {"case": "Q(1) = identity", "pass": audit.normalized},
        {
            "case": "Dirac condition on basis pairs",
            "failures": len(audit.basis_pair_failures),
            "pass": not audit.basis_pair_failures,
        },
        {
            "case": "faithful on the algebra",
            "rank": audit.image_rank,
            "expected": audit.expected_rank,
            "pass": audit.faithful,
        },
        {
            "case": f"Dirac condition scan to degree {args.degree}",
            "failures": len(audit.scan.failures),
            "pass": audit.scan.ok,
        },
    ]
    return Report(
        "affine audit",
        {"variant": args.variant, "degree": args.degree},
        results,
        audit.ok,
        "audit passed" if audit.ok else "audit failed",
    )


def _parse_group_element(text: str) -> AffineGroupElement:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 2:
        raise ValueError(f"group element must be nu,lam; got {text!r}")
    return AffineGroupElement.of(Fraction(parts[0]), Fraction(parts[1]))


def _format_group(g: AffineGroupElement) -> str:
    return f"({g.nu},{g.lam})"


def cmd_affine_group(args) -> Report:
    g1 = _parse_group_element(args.g1)
    g2 = _parse_group_element(args.g2)
    identity = AffineGroupElement.identity()
    product = g1 * g2
    id_ok = g1 * identity == g1 and identity * g1 == g1
    inv_ok = g1 * g1.inverse() == identity and g1.inverse() * g1 == identity
    results = [
        {"case": "product", "value": _format_group(product)},
        {"case": "identity law", "pass": id_ok},
        {"case": "inverse law", "pass": inv_ok},
    ]
    ok = id_ok and inv_ok
    return Report(
        "affine group",
        {"g1": _format_group(g1), "g2": _format_group(g2)},
        results,
        ok,
        "group laws hold" if ok else "group law failure",
    )


def _random_group_element(rng: Random) -> AffineGroupElement:
    nu = Fraction(rng.randint(-60, 60), rng.randint(1, 12))
    lam = Fraction(rng.randint(1, 60), rng.randint(1, 12))
    return AffineGroupElement.of(nu, lam)


def cmd_affine_rep_check(args) -> Report:
    signs = {"plus": (1,), "minus": (-1,), "both": (1, -1)}[args.sign]
    rng = Random(args.seed)
    failures = 0
    checked = 0
    for sign in signs:
        state = PhaseScalingState.identity(sign)
        for _ in range(args.cases):
            g1 = _random_group_element(rng)
            g2 = _random_group_element(rng)
            left = affine_rep_compose(sign, g1, affine_rep_compose(sign, g2, state))
            right = affine_rep_compose(sign, g1 * g2, state)
            checked += 1
            if left != right:
                failures += 1
    ok = failures == 0
    return Report(
        "affine rep-check",
        {
            "sign": args.sign,
            "cases": args.cases,
            "seed": args.seed,
            "checked": checked,
            "failures": failures,
        },
        [],
        ok,
        "representation composes like the group" if ok else "homomorphism failure",
    )


# -- parser construction ---------------------------------------------------------


def _add_format(parser):
    parser.add_argument(
        "--format", choices=("text", "json"), default="text",
        help="output format",
    )


def _add_space_flags(parser):
    parser.add_argument("--space", help="canonical variables, e.g. q1,p1")
    parser.add_argument("--abstract", help="abstract generators, e.g. x,y")
    parser.add_argument(
        "--bracket",
        action="append",
        help="generator bracket, e.g. x,y=2*y (repeatable)",
    )


def _add_signature_flags(parser):
    parser.add_argument("--pairs", type=int, default=1, help="generator pairs")
    parser.add_argument(
        "--diff", action="store_true", help="differential-operator flavor (u, d)"
    )
    parser.add_argument("--kappa", help="override commutation constants")


def build_parser() -> CliParser:
    parser = CliParser(prog="poisweyl", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bracket", help="Poisson bracket of two polynomials")
    _add_space_flags(p)
    _add_format(p)
    p.add_argument("f")
    p.add_argument("g")
    p.set_defaults(handler=cmd_bracket)

    p = sub.add_parser("wprod", help="normal-ordered product")
    _add_signature_flags(p)
    _add_format(p)
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(handler=cmd_wprod)

    p = sub.add_parser("wcomm", help="commutator of two elements")
    _add_signature_flags(p)
    _add_format(p)
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(handler=cmd_wcomm)

    p = sub.add_parser("symmetrize", help="symmetrize a generator word")
    _add_signature_flags(p)
    _add_format(p)
    p.add_argument("word")
    p.set_defaults(handler=cmd_symmetrize)

    p = sub.add_parser(
        "quantize-weyl", help="symmetrization quantization of a polynomial"
    )
    _add_space_flags(p)
    _add_format(p)
    p.add_argument("f")
    p.set_defaults(handler=cmd_quantize_weyl)

    p = sub.add_parser("check-q1", help="Dirac-condition check on one pair")
    p.add_argument(
        "--map",
        required=True,
        choices=("weyl", "affine-plus", "affine-minus", "remark3"),
    )
    _add_space_flags(p)
    _add_format(p)
    p.add_argument("f")
    p.add_argument("g")
    p.set_defaults(handler=cmd_check_q1)

    p = sub.add_parser("scan-q1", help="Dirac-condition scan over monomials")
    p.add_argument(
        "--map",
        required=True,
        choices=("weyl", "affine-plus", "affine-minus", "remark3"),
    )
    _add_space_flags(p)
    _add_format(p)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(handler=cmd_scan_q1)

    p = sub.add_parser("groenewold", help="obstruction witness")
    _add_format(p)
    p.set_defaults(handler=cmd_groenewold)

    lie = sub.add_parser("lie", help="Lie algebra analysis")
    lie_sub = lie.add_subparsers(dest="lie_command", required=True)

    p = lie_sub.add_parser("close", help="close generators under the bracket")
    _add_space_flags(p)
    _add_format(p)
    p.add_argument("--fixture", required=True)
    p.add_argument("--cap", type=int, default=64)
    p.set_defaults(handler=cmd_lie_close)

    p = lie_sub.add_parser("analyze", help="series, nilpotency, solvability")
    _add_space_flags(p)
    _add_format(p)
    p.add_argument("--fixture", required=True)
    p.add_argument("--cap", type=int, default=64)
    p.set_defaults(handler=cmd_lie_analyze)

    p = lie_sub.add_parser("nildeg", help="nildegree of a polynomial")
    _add_space_flags(p)
    _add_format(p)
    p.add_argument("--fixture", required=True)
    p.add_argument("--cap", type=int, default=64)
    p.add_argument("expr")
    p.set_defaults(handler=cmd_lie_nildeg)

    p = lie_sub.add_parser("invariants", help="isomorphism invariants")
    _add_space_flags(p)
    _add_format(p)
    p.add_argument("--fixture", required=True)
    p.add_argument("--cap", type=int, default=64)
    p.set_defaults(handler=cmd_lie_invariants)

    p = lie_sub.add_parser("form-check", help="triangular form predicate")
    _add_space_flags(p)
    _add_format(p)
    p.add_argument("--fixture")
    p.add_argument("exprs", nargs="*")
    p.set_defaults(handler=cmd_lie_form_check)

    p = lie_sub.add_parser("witness", help="verify coordinate witnesses")
    _add_space_flags(p)
    _add_format(p)
    p.add_argument("--fixture", required=True)
    p.add_argument("--cap", type=int, default=64)
    p.add_argument("--witness", required=True)
    p.set_defaults(handler=cmd_lie_witness)

    affine = sub.add_parser("affine", help="the solvable-pair quantizations")
    affine_sub = affine.add_subparsers(dest="affine_command", required=True)

    p = affine_sub.add_parser("quantize", help="apply a stock map")
    p.add_argument(
        "--variant", choices=("plus", "minus", "remark3"), default="plus"
    )
    _add_format(p)
    p.add_argument("expr")
    p.set_defaults(handler=cmd_affine_quantize)

    p = affine_sub.add_parser("audit", help="full quantization audit")
    p.add_argument(
        "--variant", choices=("plus", "minus", "remark3"), default="plus"
    )
    p.add_argument("--degree", type=int, default=6)
    _add_format(p)
    p.set_defaults(handler=cmd_affine_audit)

    p = affine_sub.add_parser("group", help="compose group elements")
    _add_format(p)
    p.add_argument("g1")
    p.add_argument("g2")
    p.set_defaults(handler=cmd_affine_group)

    p = affine_sub.add_parser("rep-check", help="representation homomorphism")
    p.add_argument("--sign", choices=("plus", "minus", "both"), default="both")
    p.add_argument("--cases", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    _add_format(p)
    p.set_defaults(handler=cmd_affine_rep_check)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    try:
        report = args.handler(args)
    except _ENGINE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(emit(report, args.format))
    return 0 if report.ok else 1


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
