"""Command-line front end.

Subcommands: solve, propagate, check, gen-rules, translate, verify.
Exit codes: 0 = SAT / property holds, 3 = UNSAT / check failed,
2 = usage or parse error, 1 = internal error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from boolprop.bcn import BcnError, format_bcn, parse_bcn
from boolprop.clauses import (
    EMPTY_CLAUSE,
    constraints_to_clauses,
    format_dimacs,
    parse_dimacs,
    translate_clause_set,
    verify_reduction_to_rules,
    verify_reduction_to_unit,
)
from boolprop.consistency import (
    hyper_arc_consistent,
    is_limited,
    verify_bool_prime,
    verify_characterization,
    verify_rule_necessity,
)
from boolprop.model import (
    BooleanCSP,
    ConstraintKind,
    Variable,
    csp_to_store,
    store_to_csp,
)
from boolprop.rulegen import named_minimal_rules, verify_completeness
from boolprop.rules import (
    PropagationRule,
    builtin_ruleset,
    close,
    format_csp_step,
    format_rule,
)
from boolprop.solver import SAT, solve

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_USAGE = 2
EXIT_FAILED = 3


def _looks_like_dimacs(text: str) -> bool:
    for line in text.splitlines():
        stripped = line.strip()
        if not stripped or stripped.startswith("c"):
            continue
        first = stripped.split()[0]
        if first == "p":
            return True
        try:
            int(first)
        except ValueError:
            return False
        return True
    return False


@dataclass(frozen=True)
class ProblemFile:
    """A parsed input: either a .bcn CSP or a DIMACS clause set."""

    format: str  # "bcn" or "dimacs"
    content: object  # BooleanCSP or a frozenset of clauses
    clause_vars: tuple = ()  # the DIMACS variable sequence

    def as_csp(self) -> BooleanCSP:
        """The problem as a CSP; clause sets go through the standard
        clause-to-constraint translation."""
        if self.format == "bcn":
            return self.content
        return _csp_from_clauses(self.content, self.clause_vars)


def _csp_from_clauses(clauses, vars) -> BooleanCSP:
    contradiction = EMPTY_CLAUSE in clauses
    csp = store_to_csp(translate_clause_set(clauses - {EMPTY_CLAUSE}))
    missing = [v for v in vars if v not in csp.domains]
    if missing:  # variables mentioned in no clause stay unconstrained
        csp = BooleanCSP(
            csp.vars + tuple(missing),
            {**csp.domains, **{v: frozenset({0, 1}) for v in missing}},
            csp.constraints,
        )
    if contradiction:  # the empty clause: fail the CSP outright
        false_var = Variable("_false", len(csp.vars))
        csp = BooleanCSP(
            csp.vars + (false_var,),
            {**csp.domains, false_var: frozenset()},
            csp.constraints,
        )
    return csp


def load_problem(path: str) -> ProblemFile:
    text = Path(path).read_text(encoding="utf-8")
    if _looks_like_dimacs(text):
        clauses, vars = parse_dimacs(text)
        return ProblemFile("dimacs", clauses, vars)
    return ProblemFile("bcn", parse_bcn(text))


def _load_csp(path: str) -> tuple[BooleanCSP, tuple]:
    """Read a problem file; returns the CSP and the variables the caller
    should report on (original clause variables for DIMACS input)."""
    problem = load_problem(path)
    return problem.as_csp(), problem.clause_vars


def _cmd_solve(args) -> int:
    csp, report_vars = _load_csp(args.file)
    system = builtin_ruleset(args.system)
    trace = [] if args.trace else None
    result = solve(csp, system, trace=trace)
    if trace:
        for step in trace:
            print(format_csp_step(step))
    print(f"status: {result.status}")
    if result.model is not None:
        shown = report_vars or result.model.vars
        values = {v: d for v, d in zip(result.model.vars, result.model.values)}
        print("model: " + " ".join(f"{v.name}={values[v]}" for v in shown))
    print(f"propagations: {result.propagation_steps}")
    print(f"splits: {result.split_count}")
    return EXIT_OK if result.status == SAT else EXIT_FAILED


def _cmd_propagate(args) -> int:
    csp, _ = _load_csp(args.file)
    system = builtin_ruleset(args.system)
    closed, trace = close(csp, system)
    if args.trace:
        for step in trace:
            print(format_csp_step(step))
    print(format_bcn(closed), end="")
    print(f"# steps: {len(trace)}")
    return EXIT_OK


def _cmd_check(args) -> int:
    csp, _ = _load_csp(args.file)
    report = hyper_arc_consistent(csp)
    if args.limited:
        print(f"limited: {is_limited(csp)}")
        return EXIT_OK if report.limited else EXIT_FAILED
    if args.closed_under:
        system = builtin_ruleset(args.closed_under)
        closed = (
            report.closed_bool if system.name == "BOOL" else report.closed_bool_prime
        )
        print(f"closed under {system.name}: {closed}")
        return EXIT_OK if closed else EXIT_FAILED
    print(f"hyper-arc consistent: {report.hyper_arc}")
    for c, v, value in report.witnesses:
        print(f"unsupported: {v.name} = {value} in {c}")
    return EXIT_OK if report.hyper_arc else EXIT_FAILED


def _cmd_gen_rules(args) -> int:
    kinds = (
        list(ConstraintKind)
        if args.kind == "all"
        else [ConstraintKind(args.kind)]
    )
    for kind in kinds:
        for name, cand in named_minimal_rules(kind):
            generated = PropagationRule(name, kind, cand.premise, cand.conclusion)
            print(format_rule(generated))
    return EXIT_OK


def _cmd_translate(args) -> int:
    text = Path(args.file).read_text(encoding="utf-8")
    if args.to_cnf:
        csp = parse_bcn(text)
        clauses = constraints_to_clauses(csp_to_store(csp))
        print(format_dimacs(clauses, csp.vars), end="")
        return EXIT_OK
    clauses, _ = parse_dimacs(text)
    csp = store_to_csp(translate_clause_set(clauses))
    print(format_bcn(csp), end="")
    return EXIT_OK


_THEOREMS = {
    "completeness": lambda args: verify_completeness(),
    "reduction1": lambda args: verify_reduction_to_unit(),
    "reduction2": lambda args: verify_reduction_to_rules(args.budget or 500, args.seed),
    "characterization": lambda args: verify_characterization(
        args.budget or 1000, args.seed
    ),
    "bool-prime": lambda args: verify_bool_prime(args.budget or 1000, args.seed),
}


def _cmd_verify(args) -> int:
    report = _THEOREMS[args.theorem](args)
    print(report.summary())
    if args.theorem == "characterization":
        necessity = verify_rule_necessity()
        print(necessity.summary())
        if not necessity.ok:
            return EXIT_FAILED
    return EXIT_OK if report.ok else EXIT_FAILED


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="boolprop",
        description="Boolean constraint propagation solver and verifier",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_system(p):
        p.add_argument(
            "--system",
            choices=["bool", "bool-prime"],
            default="bool",
            help="rule system to propagate with (default: bool)",
        )

    p = sub.add_parser("solve", help="decide satisfiability, print a model")
    p.add_argument("file")
    add_system(p)
    p.add_argument("--trace", action="store_true", help="print propagation steps")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("propagate", help="close under the rules, print the result")
    p.add_argument("file")
    add_system(p)
    p.add_argument("--trace", action="store_true")
    p.set_defaults(func=_cmd_propagate)

    p = sub.add_parser("check", help="check a property of the problem")
    p.add_argument("file")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--hyper-arc", action="store_true", default=True)
    group.add_argument("--limited", action="store_true")
    group.add_argument("--closed-under", choices=["bool", "bool-prime"])
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("gen-rules", help="derive the minimal rules from the tables")
    p.add_argument(
        "--kind", choices=["eq", "not", "and", "or", "all"], default="all"
    )
    p.set_defaults(func=_cmd_gen_rules)

    p = sub.add_parser("translate", help="convert between .bcn and DIMACS CNF")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--to-cnf", action="store_true")
    group.add_argument("--to-bcn", action="store_true")
    p.add_argument("file")
    p.set_defaults(func=_cmd_translate)

    p = sub.add_parser("verify", help="machine-check one of the theorems")
    p.add_argument(
        "--theorem",
        required=True,
        choices=sorted(_THEOREMS),
    )
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=None)
    p.set_defaults(func=_cmd_verify)

    return parser


def run_command(argv: Sequence[str] | None = None) -> int:
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except (BcnError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except RuntimeError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()
