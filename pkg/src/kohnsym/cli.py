"""Command-line surface of the engine.

Results go to stdout, diagnostics to stderr.  Exit codes: 0 for success and
true verdicts, 1 for false verdicts (verify, spot-check), 2 for usage or
parse errors.  All output is deterministic for a fixed argument vector and
seed; `--json` switches to a single machine-readable document with fixed
field order.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import __version__
from . import generators as named_gens
from .algebra import AlgebraBasis, bracket, bracket_in_basis, structure_constants
from .determining import (check_dependencies, derive_determining,
                          normalization_table, reduced_system)
from .parser import ParseError, parse_fspec, parse_generator
from .prolongation import VField
from .solver import ClassifyResult, beta_kernel, classify, stability_scan
from .verifier import FCase, numeric_spot_check, verify_generator


def _gen_record(S: VField, name: str | None, verified) -> dict:
    return {
        "name": name if name is not None else (S.name or None),
        "xi": str(S.xi), "phi": str(S.phi), "tau": str(S.tau),
        "alpha": str(S.alpha), "beta": str(S.beta),
        "verified": verified,
    }


def _defect_records(entries) -> list:
    from .poly import mono_str
    return [{"tag": tag.render(), "monomial": mono_str(mono), "coeff": str(coeff)}
            for tag, mono, coeff in entries]


def _base_doc(command: str, f: str | None, degree=None, dimension=None) -> dict:
    return {
        "command": command,
        "f": f,
        "degree": degree,
        "dimension": dimension,
        "generators": [],
        "structure_constants": [],
        "defect": [],
    }


def emit_json(doc: dict, out) -> None:
    json.dump(doc, out, indent=2)
    out.write("\n")


def _display_names(result: ClassifyResult) -> list:
    basis = result.display_basis()
    if result.named_basis is not None:
        return [S.name for S in basis]
    return [f"g{i}" for i in range(len(basis))]


def _combo_str(coeffs, names) -> str:
    parts = []
    for coeff, name in zip(coeffs, names):
        if not coeff:
            continue
        if coeff == 1:
            body = name
        elif coeff == -1:
            body = f"-{name}"
        else:
            body = f"{coeff}*{name}"
        if not parts:
            parts.append(body)
        elif body.startswith("-"):
            parts.append(f" - {body[1:]}")
        else:
            parts.append(f" + {body}")
    return "".join(parts) if parts else "0"


# -- subcommand implementations ---------------------------------------------


def _cmd_determine(args, out, err) -> int:
    nine = derive_determining()
    report = check_dependencies(nine)
    system = reduced_system() if args.reduced else nine
    if args.json:
        doc = _base_doc("determine", None)
        doc["equations"] = [{"label": label, "text": f"{eq.render()} = 0"}
                            for label, eq in system.items()]
        doc["normalization"] = {label: {"collected": jet, "divisor": str(div)}
                                for label, (jet, div) in normalization_table().items()}
        doc["dependencies"] = {
            "literal_eq26_combination": "y*eq24 + x*eq25 - x*eq18 - y*eq19",
            "literal_eq26_holds": report.literal_holds,
            "literal_eq26_residual": report.literal_residual.render(),
            "eq26_certificate": [{"label": lab, "op": op, "multiplier": str(m)}
                                 for lab, op, m in (report.eq26_certificate or [])],
            "eq22_generators": list(report.eq22_generators),
            "eq22_certificate": [{"label": lab, "op": op, "multiplier": str(m)}
                                 for lab, op, m in (report.eq22_certificate or [])],
        }
        emit_json(doc, out)
        return 0
    title = "reduced determining system (seven equations)" if args.reduced \
        else "determining equations (nine)"
    out.write(title + "\n")
    for label, eq in system.items():
        out.write(f"  {label}: {eq.render()} = 0\n")
    if not args.reduced:
        out.write("normalization of collected coefficients:\n")
        for label, (jet, div) in normalization_table().items():
            out.write(f"  {label} <- coeff({jet}) / {div}\n")
    out.write("dependency checks:\n")
    status = "holds" if report.literal_holds else "FAILS"
    out.write(f"  eq26 = y*eq24 + x*eq25 - x*eq18 - y*eq19: {status}\n")
    if not report.literal_holds:
        out.write(f"    residual: {report.literal_residual.render()}\n")
    if report.eq26_certificate is not None:
        cert = " + ".join(f"({m})*{lab}" for lab, _, m in report.eq26_certificate)
        out.write(f"  eq26 exact certificate: {cert}\n")
    if report.eq22_certificate is not None:
        gens = ", ".join(report.eq22_generators)
        out.write(f"  eq22 derivable from {{{gens}}} with derivative multipliers:\n")
        for lab, op, m in report.eq22_certificate:
            op_str = f" {op}" if op else ""
            out.write(f"    ({m})*{lab}{op_str}\n")
    return 0


def _cmd_verify(args, out, err) -> int:
    fc = parse_fspec(args.f)
    gen = parse_generator(args.gen)
    result = verify_generator(gen, fc)
    if args.json:
        doc = _base_doc("verify", args.f)
        doc["generators"] = [_gen_record(gen, gen.name or args.gen, result.is_symmetry)]
        doc["defect"] = _defect_records(result.certificate)
        doc["verdict"] = result.is_symmetry
        emit_json(doc, out)
    else:
        verdict = "symmetry" if result.is_symmetry else "not a symmetry"
        out.write(f"{args.gen} under {fc.describe()}: {verdict}\n")
        if not result.is_symmetry:
            out.write(f"defect: {result.defect}\n")
            for tag, mono, coeff in result.certificate:
                from .poly import mono_str
                out.write(f"  [{tag.render()}] {mono_str(mono)}: {coeff}\n")
    return 0 if result.is_symmetry else 1


def _cmd_classify(args, out, err) -> int:
    fc = parse_fspec(args.f)
    result = classify(fc, args.degree)
    names = _display_names(result)
    basis = result.display_basis()
    verified = [verify_generator(S, fc).is_symmetry for S in basis]
    scan = None
    if args.scan is not None:
        if args.scan < args.degree:
            err.write("scan degree must be >= the base degree\n")
            return 2
        scan = stability_scan(fc, args.degree, args.scan)
    if args.json:
        doc = _base_doc("classify", args.f, degree=args.degree, dimension=result.dimension)
        doc["generators"] = [_gen_record(S, name, ok)
                             for S, name, ok in zip(basis, names, verified)]
        alg = structure_constants(basis) if basis else AlgebraBasis((), {})
        doc["structure_constants"] = [[i, j, k, str(val)]
                                      for i, j, k, val in alg.nonzero_constants()]
        if scan is not None:
            doc["scan"] = {str(d): dim for d, dim in sorted(scan.dimensions.items())}
        doc["notes"] = list(result.notes)
        emit_json(doc, out)
    else:
        out.write(f"case: {fc.describe()}\n")
        out.write(f"ansatz degree: {args.degree}\n")
        out.write(f"dimension: {result.dimension}\n")
        out.write("generators:\n")
        for S, name, ok in zip(basis, names, verified):
            mark = "verified" if ok else "DEFECT"
            out.write(f"  {name}: {S}  [{mark}]\n")
        for note in result.notes:
            out.write(f"note: {note}\n")
        if scan is not None:
            dims = ", ".join(f"d={d}: {dim}" for d, dim in sorted(scan.dimensions.items()))
            out.write(f"stability scan: {dims}\n")
    return 0


def _cmd_beta_kernel(args, out, err) -> int:
    fc = parse_fspec(args.f)
    if fc.kind not in ("zero", "linear"):
        err.write("beta-kernel requires --f zero or --f linear:<k>\n")
        return 2
    kernel = beta_kernel(fc, args.degree)
    if args.json:
        doc = _base_doc("beta-kernel", args.f, degree=args.degree, dimension=len(kernel))
        doc["kernel"] = [str(b) for b in kernel]
        emit_json(doc, out)
    else:
        out.write(f"case: {fc.describe()}\n")
        out.write(f"kernel dimension at degree {args.degree}: {len(kernel)}\n")
        for b in kernel:
            out.write(f"  {b}\n")
    return 0


def _cmd_bracket(args, out, err) -> int:
    g1 = parse_generator(args.gen1)
    g2 = parse_generator(args.gen2)
    br = bracket(g1, g2)
    if args.json:
        doc = _base_doc("bracket", None)
        doc["generators"] = [_gen_record(br, None, None)]
        emit_json(doc, out)
    else:
        out.write(f"[{args.gen1}, {args.gen2}] = {br}\n")
    return 0


def _cmd_table(args, out, err) -> int:
    fc = parse_fspec(args.f)
    result = classify(fc, args.degree)
    basis = result.display_basis()
    names = _display_names(result)
    alg = structure_constants(basis)
    if args.json:
        doc = _base_doc("table", args.f, degree=args.degree, dimension=result.dimension)
        doc["generators"] = [_gen_record(S, name, None) for S, name in zip(basis, names)]
        doc["structure_constants"] = [[i, j, k, str(val)]
                                      for i, j, k, val in alg.nonzero_constants()]
        doc["closed"] = alg.closed
        emit_json(doc, out)
        return 0
    out.write(f"commutator table, {fc.describe()}, dimension {result.dimension}\n")
    cells = []
    for i in range(len(basis)):
        row = []
        for j in range(len(basis)):
            coeffs = bracket_in_basis(alg, i, j)
            row.append(_combo_str(coeffs, names) if coeffs is not None else "outside span")
        cells.append(row)
    width = max([len(n) for n in names]
                + [len(c) for row in cells for c in row] + [1])
    header = " " * width + "  " + "  ".join(n.rjust(width) for n in names)
    out.write(header + "\n")
    for name, row in zip(names, cells):
        out.write(name.rjust(width) + "  " + "  ".join(c.rjust(width) for c in row) + "\n")
    if not alg.closed:
        out.write("warning: basis is not closed under the bracket\n")
    return 0


def _cmd_spot_check(args, out, err) -> int:
    fc = parse_fspec(args.f)
    gen = parse_generator(args.gen)
    seed = args.seed if args.seed is not None else int(os.environ.get("KS_SEED", "0"))
    verdict = numeric_spot_check(gen, fc, args.trials, seed=seed)
    if args.json:
        doc = _base_doc("spot-check", args.f)
        doc["generators"] = [_gen_record(gen, gen.name or args.gen, verdict)]
        doc["verdict"] = verdict
        doc["trials"] = args.trials
        doc["seed"] = seed
        emit_json(doc, out)
    else:
        word = "passed" if verdict else "FAILED"
        out.write(f"numeric spot check {word}: {args.trials} trials, seed {seed}\n")
    return 0 if verdict else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kohnsym",
        description="Exact Lie point symmetry engine for the semilinear "
                    "Heisenberg sub-Laplacian equation.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("determine", help="emit the determining equations")
    p.add_argument("--reduced", action="store_true", help="emit the seven-equation reduced system")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_determine)

    p = sub.add_parser("verify", help="verify a generator against a nonlinearity class")
    p.add_argument("--f", required=True, help="arbitrary | zero | const:<c> | linear:<k> | power:<k>:<p> | exp:<k>")
    p.add_argument("--gen", required=True, help="named generator or 'xi;phi;tau;alpha;beta'")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("classify", help="compute the symmetry algebra for a case")
    p.add_argument("--f", required=True)
    p.add_argument("--degree", type=int, default=4)
    p.add_argument("--scan", type=int, default=None, help="also scan dimensions up to this degree")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("beta-kernel", help="polynomial kernel of lap(beta) + k*beta")
    p.add_argument("--f", required=True, help="zero | linear:<k>")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_beta_kernel)

    p = sub.add_parser("bracket", help="commutator of two generators")
    p.add_argument("--gen1", required=True)
    p.add_argument("--gen2", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_bracket)

    p = sub.add_parser("table", help="commutator table of a classified algebra")
    p.add_argument("--f", required=True)
    p.add_argument("--degree", type=int, default=4)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_table)

    p = sub.add_parser("spot-check", help="numeric oracle for a generator")
    p.add_argument("--f", required=True)
    p.add_argument("--gen", required=True)
    p.add_argument("--trials", type=int, default=25)
    p.add_argument("--seed", type=int, default=None, help="default 0, or KS_SEED")
    p.set_defaults(func=_cmd_spot_check)
    p.add_argument("--json", action="store_true")

    return parser


def run_command(argv, out=None, err=None) -> int:
    """Run one CLI invocation; returns the exit code."""
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else 2
        return code
    try:
        return args.func(args, out, err)
    except (ParseError, ValueError) as exc:
        err.write(f"error: {exc}\n")
        return 2


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
