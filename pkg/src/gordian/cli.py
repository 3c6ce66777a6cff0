"""Command-line front end: problem files in, verdicts and certificates out.

Problem file format (``#`` starts a comment):

    logic A            # optional, overridden by --logic
    assume p -> q
    assume q -> r
    prove p -> r       # exactly one prove line

Exit codes: 0 proved (or kernel branch for ``gordan``), 1 refuted (or
strict-dual branch), 2 unknown, 3 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .density import density_goal, density_precondition, density_transform
from .engine import (
    EngineBudget,
    ProofResult,
    prove_consequence,
    prove_disjunction,
)
from .errors import GordianError
from .interpolate import lift_interpolant
from .linalg import IntMatrix, Kernel, gordan
from .logics import check_toa_condition, lookup_logic
from .oracles import (
    ChainExhaustiveWitness,
    Countermodel,
    DerivationWitness,
    HilbertBudget,
    LinearWitness,
)
from .syntax import Formula, parse, render

EXIT_PROVED = 0
EXIT_REFUTED = 1
EXIT_UNKNOWN = 2
EXIT_USAGE = 3

_STATUS_EXIT = {"proved": EXIT_PROVED, "refuted": EXIT_REFUTED, "unknown": EXIT_UNKNOWN}


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as handle:
        return handle.read()


def _parse_problem(text: str) -> tuple[str | None, list[Formula], Formula | None]:
    logic_name = None
    assumptions: list[Formula] = []
    conclusion: Formula | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        keyword, _, rest = line.partition(" ")
        rest = rest.strip()
        if keyword == "logic":
            logic_name = rest
        elif keyword == "assume":
            assumptions.append(parse(rest))
        elif keyword == "prove":
            if conclusion is not None:
                raise GordianError(f"line {lineno}: only one prove line allowed")
            conclusion = parse(rest)
        else:
            raise GordianError(f"line {lineno}: unknown directive {keyword!r}")
    return logic_name, assumptions, conclusion


def _witness_json(witness) -> dict | None:
    if witness is None:
        return None
    if isinstance(witness, LinearWitness):
        return {"kind": "linear", "mu": list(witness.mu), "scale": witness.scale}
    if isinstance(witness, ChainExhaustiveWitness):
        return {"kind": "chain_exhaustive", "chains": list(witness.chains)}
    if isinstance(witness, DerivationWitness):
        return {
            "kind": "derivation",
            "lines": [
                {"index": l.index, "formula": render(l.formula), "justification": l.justification}
                for l in witness.lines
            ],
        }
    raise TypeError(f"unknown witness {witness!r}")


def _countermodel_json(cm: Countermodel | None) -> dict | None:
    if cm is None:
        return None
    return {"chain": cm.chain, "valuation": {v: value for v, value in cm.valuation}}


def _goal_json(result: ProofResult) -> dict:
    cert = result.certificate
    return {
        "hypotheses": [render(h) for h in result.goal.hypotheses],
        "disjuncts": [render(d) for d in result.goal.clause.disjuncts],
        "status": result.status,
        "lambdas": list(cert.lambdas) if cert else None,
        "witness": _witness_json(cert.witness if cert else None),
        "countermodel": _countermodel_json(result.countermodel),
        "reason": result.reason,
    }


def _print_witness(witness, out) -> None:
    if isinstance(witness, LinearWitness):
        mu = " ".join(map(str, witness.mu)) or "-"
        out.write(f"  witness: linear mu=({mu}) scale={witness.scale}\n")
    elif isinstance(witness, ChainExhaustiveWitness):
        out.write(f"  witness: exhaustive over {', '.join(witness.chains)}\n")
    elif isinstance(witness, DerivationWitness):
        out.write("  witness: derivation\n")
        for line in witness.lines:
            out.write(f"    {line.index} | {render(line.formula)} | {line.justification}\n")


def _print_countermodel(cm: Countermodel, out) -> None:
    assignment = ", ".join(f"{v}={value}" for v, value in cm.valuation) or "(empty)"
    out.write(f"  countermodel: chain {cm.chain}, valuation {assignment}\n")


def _budget(args) -> EngineBudget:
    return EngineBudget(
        lambda_cap=args.budget,
        widen=args.chain_bound,
        hilbert=HilbertBudget(max_lines=max(400, 250 * args.budget)),
    )


def _cmd_prove(args) -> int:
    logic_name, assumptions, conclusion = _parse_problem(_read_text(args.problem))
    if args.logic:
        logic_name = args.logic
    if logic_name is None or conclusion is None:
        raise GordianError("problem needs a logic (flag or directive) and a prove line")
    logic = lookup_logic(logic_name)
    result = prove_consequence(logic, assumptions, conclusion, _budget(args))
    if args.format == "json":
        payload = {
            "status": result.status,
            "logic": logic.name,
            "goals": [_goal_json(r) for r in result.results],
            "countermodel": _countermodel_json(result.countermodel),
            "reason": result.reason,
        }
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(f"{result.status} ({logic.name})")
        for r in result.results:
            print(f"goal: {r.goal.render()}")
            print(f"  status: {r.status}")
            if r.certificate:
                lambdas = " ".join(map(str, r.certificate.lambdas))
                print(f"  lambdas: {lambdas}")
                _print_witness(r.certificate.witness, sys.stdout)
            if r.countermodel:
                _print_countermodel(r.countermodel, sys.stdout)
            if r.reason:
                print(f"  reason: {r.reason}")
    return _STATUS_EXIT[result.status]


def _cmd_gordan(args) -> int:
    rows = []
    for line in _read_text(args.matrix).splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            rows.append([int(tok) for tok in line.split()])
    matrix = IntMatrix.of(rows)
    result = gordan(matrix)
    if isinstance(result, Kernel):
        branch, vector = "kernel", result.x
    else:
        branch, vector = "strict_dual", result.y
    if args.format == "json":
        print(json.dumps({"branch": branch, "vector": list(vector)}, sort_keys=True))
    else:
        print(branch)
        print(" ".join(map(str, vector)))
    return EXIT_PROVED if branch == "kernel" else EXIT_REFUTED


def _cmd_interpolate(args) -> int:
    logic_name, assumptions, conclusion = _parse_problem(_read_text(args.problem))
    if conclusion is not None:
        raise GordianError("interpolate takes assume lines only")
    if args.logic:
        logic_name = args.logic
    if logic_name is None:
        raise GordianError("interpolate needs a logic (flag or directive)")
    x_vars = [v.strip() for v in args.vars.split(",") if v.strip()]
    interpolant = lift_interpolant(
        lookup_logic(logic_name), assumptions, x_vars, _budget(args)
    )
    if args.format == "json":
        payload = {
            "logic": logic_name,
            "vars": sorted(x_vars),
            "interpolant": [render(f) for f in interpolant],
        }
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(f"interpolant over {{{', '.join(sorted(x_vars))}}}:")
        if not interpolant:
            print("  (empty)")
        for f in interpolant:
            print(f"  {render(f)}")
    return EXIT_PROVED


def _cmd_density(args) -> int:
    logic_name, assumptions, conclusion = _parse_problem(_read_text(args.problem)) if args.problem else (None, [], None)
    if conclusion is not None:
        raise GordianError("density takes assume lines only")
    if args.logic:
        logic_name = args.logic
    if logic_name is None:
        raise GordianError("density needs a logic (flag or directive)")
    logic = lookup_logic(logic_name)
    budget = _budget(args)
    if not density_precondition(logic, budget):
        raise GordianError(f"{logic.name} does not prove 1 -> 0; transform refused")
    phi, psi = parse(args.phi), parse(args.psi)
    chi = parse(args.chi) if args.chi else None
    goal = density_goal(phi, psi, chi, args.fresh, assumptions)
    result = prove_disjunction(logic, goal, budget)
    if result.status != "proved":
        if args.format == "json":
            print(json.dumps({"status": result.status, "input": _goal_json(result)}, indent=2, sort_keys=True))
        else:
            print(result.status)
            if result.countermodel:
                _print_countermodel(result.countermodel, sys.stdout)
        return _STATUS_EXIT[result.status]
    out = density_transform(
        logic, assumptions, phi, psi, chi, args.fresh, result.certificate, budget
    )
    if args.format == "json":
        payload = {
            "status": "proved",
            "input": _goal_json(result),
            "output": {
                "disjuncts": [render(d) for d in out.disjuncts],
                "lambdas": list(out.certificate.lambdas),
                "witness": _witness_json(out.certificate.witness),
            },
        }
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print("proved")
        print(f"input lambdas: {' '.join(map(str, result.certificate.lambdas))}")
        print(f"output goal: {' | '.join(render(d) for d in out.disjuncts)}")
        print(f"output lambdas: {' '.join(map(str, out.certificate.lambdas))}")
        _print_witness(out.certificate.witness, sys.stdout)
    return EXIT_PROVED


def _cmd_check_toa(args) -> int:
    if not args.logic:
        raise GordianError("check-toa needs --logic")
    logic = lookup_logic(args.logic)
    witnesses = {}
    for spec in args.witness or []:
        n, k, m = (int(v) for v in spec.split(":"))
        witnesses[n] = (k, m)
    report = check_toa_condition(
        logic, args.n_max, witnesses, budget=HilbertBudget(max_lines=max(400, 250 * args.budget))
    )
    if args.format == "json":
        payload = {
            "logic": logic.name,
            "all_proved": report.all_proved,
            "entries": [
                {"n": e.n, "k": e.k, "m": e.m, "status": e.status} for e in report.entries
            ],
        }
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for e in report.entries:
            print(f"n={e.n} (k={e.k}, m={e.m}): {e.status}")
    if all(e.status == "proved" for e in report.entries):
        return EXIT_PROVED
    if any(e.status == "refuted" for e in report.entries):
        return EXIT_REFUTED
    return EXIT_UNKNOWN


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gordian",
        description="certificate-producing decision engine for logics with a theorem of alternatives",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--logic", help="logic name (overrides the problem file)")
        p.add_argument("--budget", type=int, default=16, help="weight-sum cap / derivation budget")
        p.add_argument(
            "--chain-bound",
            type=int,
            default=0,
            help="widen the Sugihara decision chains by this many elements per side",
        )

    p = sub.add_parser("prove", help="decide a consequence from a problem file")
    p.add_argument("problem", help="problem file path, or - for stdin")
    common(p)
    p.set_defaults(func=_cmd_prove)

    p = sub.add_parser("gordan", help="strict-dual/kernel dichotomy for an integer matrix")
    p.add_argument("matrix", help="whitespace-separated integer rows, or - for stdin")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=_cmd_gordan)

    p = sub.add_parser("interpolate", help="uniform interpolant of the assumptions")
    p.add_argument("problem", help="problem file with assume lines, or - for stdin")
    p.add_argument("--vars", required=True, help='shared variables, e.g. "p,r"')
    common(p)
    p.set_defaults(func=_cmd_interpolate)

    p = sub.add_parser("density", help="transform a fresh-variable disjunction certificate")
    p.add_argument("problem", nargs="?", help="optional problem file with assume lines")
    p.add_argument("--phi", required=True, help="left endpoint formula")
    p.add_argument("--psi", required=True, help="right endpoint formula")
    p.add_argument("--chi", help="optional side disjunct")
    p.add_argument("--fresh", default="p", help="the fresh middle variable")
    common(p)
    p.set_defaults(func=_cmd_density)

    p = sub.add_parser("check-toa", help="check the scaling side condition (n*p)^k -> m*(p^n)")
    p.add_argument("--n-max", type=int, default=6)
    p.add_argument("--witness", action="append", metavar="n:k:m", help="candidate (k,m) for one n")
    common(p)
    p.set_defaults(func=_cmd_check_toa)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_PROVED
    try:
        return args.func(args)
    except (GordianError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
