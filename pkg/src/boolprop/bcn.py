"""The .bcn problem file format.

Line-oriented, UTF-8, ``#`` starts a comment:

    var <name> <name> ...     declare variables (declaration order is the
                              CSP's variable sequence)
    dom <name> <0|1|01|{}>    restrict a domain (default is 01)
    eq  a b                   a = b
    not a b                   -a = b
    and a b c                 a /\\ b = c
    or  a b c                 a \\/ b = c

Parsing then printing a canonical file reproduces it exactly.
"""

from __future__ import annotations

from boolprop.model import (
    BoolConstraint,
    BooleanCSP,
    ConstraintKind,
    Variable,
    bcsp,
    constraint_sort_key,
)
from boolprop.rules import domain_token


class BcnError(ValueError):
    """Malformed .bcn input; message carries the offending line number."""


_DOMAIN_TOKENS = {
    "0": frozenset({0}),
    "1": frozenset({1}),
    "01": frozenset({0, 1}),
    "{}": frozenset(),
}

_CONSTRAINT_DIRECTIVES = {
    "eq": ConstraintKind.EQ,
    "not": ConstraintKind.NOT,
    "and": ConstraintKind.AND,
    "or": ConstraintKind.OR,
}


def parse_bcn(text: str) -> BooleanCSP:
    vars: list[Variable] = []
    by_name: dict[str, Variable] = {}
    domains: dict[Variable, frozenset] = {}
    constraints: list[BoolConstraint] = []

    def lookup(lineno: int, name: str) -> Variable:
        try:
            return by_name[name]
        except KeyError:
            raise BcnError(f"line {lineno}: unknown variable {name!r}") from None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        directive, *args = line.split()
        if directive == "var":
            if not args:
                raise BcnError(f"line {lineno}: var needs at least one name")
            for name in args:
                if name in by_name:
                    raise BcnError(f"line {lineno}: variable {name!r} redeclared")
                v = Variable(name, len(vars))
                vars.append(v)
                by_name[name] = v
        elif directive == "dom":
            if len(args) != 2:
                raise BcnError(f"line {lineno}: dom needs a name and a domain")
            v = lookup(lineno, args[0])
            if args[1] not in _DOMAIN_TOKENS:
                raise BcnError(
                    f"line {lineno}: bad domain {args[1]!r} (expected 0, 1, 01 or {{}})"
                )
            domains[v] = _DOMAIN_TOKENS[args[1]]
        elif directive in _CONSTRAINT_DIRECTIVES:
            kind = _CONSTRAINT_DIRECTIVES[directive]
            if len(args) != kind.arity:
                raise BcnError(
                    f"line {lineno}: {directive} needs {kind.arity} variables"
                )
            picked = tuple(lookup(lineno, name) for name in args)
            try:
                constraints.append(BoolConstraint(kind, picked))
            except ValueError as exc:
                raise BcnError(f"line {lineno}: {exc}") from None
        else:
            raise BcnError(f"line {lineno}: unknown directive {directive!r}")
    return bcsp(tuple(vars), domains, constraints)


def format_bcn(csp: BooleanCSP) -> str:
    """Canonical text: one var line, dom lines for non-full domains,
    constraints in canonical order."""
    lines = _bcn_lines(csp)
    return "\n".join(lines) + "\n" if lines else ""


def bcn_line(csp: BooleanCSP) -> str:
    """The canonical .bcn text on a single semicolon-joined line, for
    embedding replayable instances in reports."""
    return "; ".join(_bcn_lines(csp))


def _bcn_lines(csp: BooleanCSP) -> list[str]:
    lines = []
    if csp.vars:
        lines.append("var " + " ".join(v.name for v in csp.vars))
    for v in csp.vars:
        d = csp.domains[v]
        if d != frozenset({0, 1}):
            lines.append(f"dom {v.name} {domain_token(d)}")
    for c in sorted(csp.constraints, key=constraint_sort_key):
        lines.append(str(c))
    return lines
