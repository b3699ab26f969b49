"""Hyper-arc consistency, limited CSPs, and the verification sweeps.

A constraint is hyper-arc consistent when every value in each of its
variables' domains appears in some tuple of the constraint restricted to
the current domains; a CSP is hyper-arc consistent when all of its
constraints are.  The sweeps below machine-check the relationships
between this notion and closure under the two rule systems, over every
single-constraint CSP with nonempty domains plus seeded random
multi-constraint instances.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterator

from boolprop.bcn import bcn_line
from boolprop.model import (
    EMPTY,
    FULL,
    ONE,
    ZERO,
    BoolConstraint,
    BooleanCSP,
    ConstraintKind,
    Variable,
    bcsp,
    constraint_sort_key,
    is_failed,
    is_reformulation,
    restricted_relation,
    variables,
)
from boolprop.reports import SweepReport
from boolprop.rules import BOOL, BOOL_PRIME, close, closed_under

Witness = tuple[BoolConstraint, Variable, int]


@dataclass(frozen=True)
class ConsistencyReport:
    hyper_arc: bool
    failed: bool
    limited: bool
    closed_bool: bool
    closed_bool_prime: bool
    witnesses: tuple[Witness, ...]


def hyper_arc_witnesses(csp: BooleanCSP) -> tuple[Witness, ...]:
    """All (constraint, variable, value) triples lacking support."""
    out = []
    for c in sorted(csp.constraints, key=constraint_sort_key):
        rel = restricted_relation(c, csp)
        for i, v in enumerate(c.vars):
            for val in sorted(csp.domains[v]):
                if not any(t[i] == val for t in rel):
                    out.append((c, v, val))
    return tuple(out)


def hyper_arc_consistent(csp: BooleanCSP) -> ConsistencyReport:
    witnesses = hyper_arc_witnesses(csp)
    return ConsistencyReport(
        hyper_arc=not witnesses,
        failed=is_failed(csp),
        limited=is_limited(csp),
        closed_bool=closed_under(csp, BOOL),
        closed_bool_prime=closed_under(csp, BOOL_PRIME),
        witnesses=witnesses,
    )


# The four problematic domain patterns: an AND/OR constraint that has
# collapsed to an equality over two unpruned domains.
_PROBLEM_PATTERNS: tuple[tuple[ConstraintKind, tuple[frozenset, ...]], ...] = (
    (ConstraintKind.AND, (ONE, FULL, FULL)),
    (ConstraintKind.AND, (FULL, ONE, FULL)),
    (ConstraintKind.OR, (ZERO, FULL, FULL)),
    (ConstraintKind.OR, (FULL, ZERO, FULL)),
)


def is_limited(csp: BooleanCSP) -> bool:
    """True when none of the four problematic patterns occurs in the CSP."""
    for c in csp.constraints:
        doms = tuple(csp.domains[v] for v in c.vars)
        for kind, pattern in _PROBLEM_PATTERNS:
            if c.kind == kind and doms == pattern:
                return False
    return True


def problematic_csps() -> tuple[BooleanCSP, ...]:
    """The four single-constraint CSPs excluded by limitedness."""
    x, y, z = variables("x y z")
    out = []
    for kind, pattern in _PROBLEM_PATTERNS:
        c = BoolConstraint(kind, (x, y, z))
        out.append(bcsp((x, y, z), dict(zip((x, y, z), pattern)), [c]))
    return tuple(out)


def describe_csp(csp: BooleanCSP) -> str:
    """Counterexamples are reported in single-line .bcn form so they can
    be written to a file and replayed through the CLI directly."""
    return bcn_line(csp)


# ---------------------------------------------------------------------------
# Instance generators
# ---------------------------------------------------------------------------

_NONEMPTY_DOMAINS = (ZERO, ONE, FULL)


def single_constraint_csps() -> Iterator[BooleanCSP]:
    """All single-constraint CSPs with nonempty domains: 9 + 9 + 27 + 27."""
    for kind in ConstraintKind:
        vars = variables("x y" if kind.arity == 2 else "x y z")
        c = BoolConstraint(kind, vars)
        for doms in itertools.product(_NONEMPTY_DOMAINS, repeat=kind.arity):
            yield bcsp(vars, dict(zip(vars, doms)), [c])


_DOMAIN_CHOICES = (FULL, FULL, FULL, FULL, ZERO, ZERO, ONE, ONE, EMPTY)


def random_csp(
    rng: random.Random,
    max_vars: int = 6,
    max_constraints: int = 6,
    allow_empty_domains: bool = True,
) -> BooleanCSP:
    """A seeded random CSP; may be failed unless empty domains are disabled."""
    n = rng.randint(1, max_vars)
    vars = variables([f"v{i}" for i in range(n)])
    choices = _DOMAIN_CHOICES if allow_empty_domains else _NONEMPTY_DOMAINS
    domains = {v: rng.choice(choices) for v in vars}
    constraints = set()
    kinds = [k for k in ConstraintKind if k.arity <= n]
    if kinds:
        for _ in range(rng.randint(0, max_constraints)):
            kind = rng.choice(kinds)
            constraints.add(
                BoolConstraint(kind, tuple(rng.sample(vars, kind.arity)))
            )
    return bcsp(vars, domains, constraints)


def _random_non_failed(
    rng: random.Random, budget: int, **kwargs
) -> Iterator[BooleanCSP]:
    produced = 0
    while produced < budget:
        csp = random_csp(rng, **kwargs)
        if not is_failed(csp):
            produced += 1
            yield csp


# ---------------------------------------------------------------------------
# Verification sweeps
# ---------------------------------------------------------------------------


def verify_characterization(budget: int = 1000, seed: int = 0) -> SweepReport:
    """closed under BOOL <=> hyper-arc consistent, on every non-failed
    instance of the exhaustive single-constraint sweep plus ``budget``
    seeded random multi-constraint CSPs."""
    rng = random.Random(seed)
    failures = []
    checked = 0
    instances = itertools.chain(
        single_constraint_csps(), _random_non_failed(rng, budget)
    )
    for csp in instances:
        checked += 1
        closed = closed_under(csp, BOOL)
        hac = not hyper_arc_witnesses(csp)
        if closed != hac:
            failures.append(
                f"{describe_csp(csp)}: closed={closed}, hyper-arc={hac}"
            )
    return SweepReport("characterization", checked, tuple(failures))


def rule_necessity_counterexamples() -> dict[str, list[BooleanCSP]]:
    """For each rule of BOOL, the single-constraint instances that are
    closed under the remaining nineteen rules yet not hyper-arc
    consistent.  Every rule must have at least one."""
    out: dict[str, list[BooleanCSP]] = {}
    instances = list(single_constraint_csps())
    for r in BOOL.rules:
        reduced = BOOL.without(r.name)
        found = [
            csp
            for csp in instances
            if closed_under(csp, reduced) and hyper_arc_witnesses(csp)
        ]
        out[r.name] = found
    return out


def verify_rule_necessity() -> SweepReport:
    failures = []
    by_rule = rule_necessity_counterexamples()
    for name, found in by_rule.items():
        if not found:
            failures.append(f"{name}: no counterexample after removal")
    return SweepReport("rule-necessity", len(by_rule), tuple(failures))


def verify_bool_prime(budget: int = 1000, seed: int = 0) -> SweepReport:
    """The primed-system checks.

    (i) non-failed and closed under BOOL' implies hyper-arc consistent
    (exhaustive single-constraint sweep plus random instances);
    (ii) non-failed, limited and hyper-arc consistent implies closed
    under BOOL' (same instances);
    (iii) each of the four problematic CSPs is hyper-arc consistent yet
    not closed under BOOL';
    (iv) on the limited single-constraint instances the closures under
    BOOL and BOOL' coincide: both failed, or reformulations of each
    other.  (Inconsistent instances fail with different empty domains --
    BOOL propagates towards outputs, BOOL' towards inputs -- so the
    non-failed guard applies here as everywhere else.)
    """
    rng = random.Random(seed)
    failures = []
    checked = 0
    singles = list(single_constraint_csps())
    instances = itertools.chain(singles, _random_non_failed(rng, budget))
    for csp in instances:
        checked += 1
        hac = not hyper_arc_witnesses(csp)
        closed_prime = closed_under(csp, BOOL_PRIME)
        if closed_prime and not hac:
            failures.append(f"{describe_csp(csp)}: closed under BOOL' but not hyper-arc")
        if is_limited(csp) and hac and not closed_prime:
            failures.append(f"{describe_csp(csp)}: limited + hyper-arc but not closed")
    for csp in problematic_csps():
        checked += 1
        if hyper_arc_witnesses(csp):
            failures.append(f"{describe_csp(csp)}: problematic CSP not hyper-arc")
        if closed_under(csp, BOOL_PRIME):
            failures.append(f"{describe_csp(csp)}: problematic CSP closed under BOOL'")
    for csp in singles:
        if not is_limited(csp):
            continue
        checked += 1
        closure_bool, _ = close(csp, BOOL)
        closure_prime, _ = close(csp, BOOL_PRIME)
        if is_failed(closure_bool) and is_failed(closure_prime):
            continue
        if not is_reformulation(closure_bool, closure_prime):
            failures.append(
                f"{describe_csp(csp)}: closures diverge "
                f"({describe_csp(closure_bool)} vs {describe_csp(closure_prime)})"
            )
    return SweepReport("bool-prime", checked, tuple(failures))
