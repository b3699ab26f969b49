"""Executable propagation rules: the BOOL and BOOL' systems.

A rule pairs a constraint kind with premise assignments (role position ->
required value) and a conclusion, which is either further assignments or,
in the primed system, replacement constraints.  Rules act in two
interpretations: on constraint stores (premise literals present -> add
conclusion literals) and on CSPs (premise domains are the matching
singletons -> intersect conclusion domains).  Both interpretations drop
the matched constraint exactly when the premise plus conclusion pin it
down to a solved relation; every rule of BOOL does, the four split rules
of BOOL' (AND 3'/6', OR 4'/6') do not and keep the constraint instead.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

from boolprop.model import (
    BoolConstraint,
    BooleanCSP,
    ConstraintKind,
    ConstraintStore,
    Literal,
    constraint_sort_key,
    is_reformulation,
    truth_table,
)

# A conclusion constraint pattern: kind plus role positions of the match.
ConstraintPattern = tuple[ConstraintKind, tuple[int, ...]]


@dataclass(frozen=True)
class PropagationRule:
    name: str
    kind: ConstraintKind
    premise: tuple[tuple[int, int], ...]  # sorted (position, value) pairs
    conclusion_assignments: tuple[tuple[int, int], ...]
    conclusion_constraints: frozenset[ConstraintPattern] = frozenset()

    def __post_init__(self) -> None:
        arity = self.kind.arity
        prem = dict(self.premise)
        concl = dict(self.conclusion_assignments)
        if not prem:
            raise ValueError(f"{self.name}: empty premise")
        if not concl and not self.conclusion_constraints:
            raise ValueError(f"{self.name}: empty conclusion")
        if set(prem) & set(concl):
            raise ValueError(f"{self.name}: premise and conclusion positions overlap")
        for p in list(prem) + list(concl):
            if not 0 <= p < arity:
                raise ValueError(f"{self.name}: position {p} out of range")
        for _, positions in self.conclusion_constraints:
            for p in positions:
                if not 0 <= p < arity:
                    raise ValueError(f"{self.name}: pattern position {p} out of range")

    @property
    def premise_map(self) -> dict[int, int]:
        return dict(self.premise)

    @property
    def conclusion_map(self) -> dict[int, int]:
        return dict(self.conclusion_assignments)


def rule(
    name: str,
    kind: ConstraintKind,
    premise: Mapping[int, int],
    conclusion: Mapping[int, int],
    conclusion_constraints: Iterable[ConstraintPattern] = (),
) -> PropagationRule:
    return PropagationRule(
        name,
        kind,
        tuple(sorted(premise.items())),
        tuple(sorted(conclusion.items())),
        frozenset(conclusion_constraints),
    )


def rule_discharges_constraint(r: PropagationRule) -> bool:
    """True when firing the rule leaves the matched constraint solved.

    Holds iff every combination of values at the unpinned positions,
    together with the premise and concluded values, lies in the relation.
    Such a constraint carries no further information and is removed on
    application; otherwise it is kept (or replaced, for rules with
    constraint conclusions).
    """
    if r.conclusion_constraints:
        return False
    pinned = dict(r.premise) | dict(r.conclusion_assignments)
    free = [p for p in range(r.kind.arity) if p not in pinned]
    matching = [
        t for t in truth_table(r.kind) if all(t[p] == v for p, v in pinned.items())
    ]
    return len(matching) == 2 ** len(free)


@dataclass(frozen=True)
class RuleSet:
    name: str
    rules: tuple[PropagationRule, ...]

    def by_name(self, rule_name: str) -> PropagationRule:
        for r in self.rules:
            if r.name == rule_name:
                return r
        raise KeyError(rule_name)

    def without(self, rule_name: str) -> RuleSet:
        remaining = tuple(r for r in self.rules if r.name != rule_name)
        if len(remaining) == len(self.rules):
            raise KeyError(rule_name)
        return RuleSet(f"{self.name}-{rule_name}", remaining)


_K = ConstraintKind

_EQ_NOT_RULES = (
    rule("EQU 1", _K.EQ, {0: 1}, {1: 1}),
    rule("EQU 2", _K.EQ, {1: 1}, {0: 1}),
    rule("EQU 3", _K.EQ, {0: 0}, {1: 0}),
    rule("EQU 4", _K.EQ, {1: 0}, {0: 0}),
    rule("NOT 1", _K.NOT, {0: 1}, {1: 0}),
    rule("NOT 2", _K.NOT, {0: 0}, {1: 1}),
    rule("NOT 3", _K.NOT, {1: 1}, {0: 0}),
    rule("NOT 4", _K.NOT, {1: 0}, {0: 1}),
)

BOOL = RuleSet(
    "BOOL",
    _EQ_NOT_RULES
    + (
        rule("AND 1", _K.AND, {0: 1, 1: 1}, {2: 1}),
        rule("AND 2", _K.AND, {0: 1, 2: 0}, {1: 0}),
        rule("AND 3", _K.AND, {1: 1, 2: 0}, {0: 0}),
        rule("AND 4", _K.AND, {0: 0}, {2: 0}),
        rule("AND 5", _K.AND, {1: 0}, {2: 0}),
        rule("AND 6", _K.AND, {2: 1}, {0: 1, 1: 1}),
        rule("OR 1", _K.OR, {0: 1}, {2: 1}),
        rule("OR 2", _K.OR, {0: 0, 1: 0}, {2: 0}),
        rule("OR 3", _K.OR, {0: 0, 2: 1}, {1: 1}),
        rule("OR 4", _K.OR, {1: 0, 2: 1}, {0: 1}),
        rule("OR 5", _K.OR, {1: 1}, {2: 1}),
        rule("OR 6", _K.OR, {2: 0}, {0: 0, 1: 0}),
    ),
)

BOOL_PRIME = RuleSet(
    "BOOL_PRIME",
    _EQ_NOT_RULES
    + (
        rule("AND 1'", _K.AND, {0: 1}, {}, [(_K.EQ, (1, 2))]),
        rule("AND 2'", _K.AND, {1: 1}, {}, [(_K.EQ, (0, 2))]),
        rule("AND 3'", _K.AND, {2: 1}, {0: 1}),
        rule("AND 4", _K.AND, {0: 0}, {2: 0}),
        rule("AND 5", _K.AND, {1: 0}, {2: 0}),
        rule("AND 6'", _K.AND, {2: 1}, {1: 1}),
        rule("OR 1", _K.OR, {0: 1}, {2: 1}),
        rule("OR 2'", _K.OR, {0: 0}, {}, [(_K.EQ, (1, 2))]),
        rule("OR 3'", _K.OR, {1: 0}, {}, [(_K.EQ, (0, 2))]),
        rule("OR 4'", _K.OR, {2: 0}, {0: 0}),
        rule("OR 5", _K.OR, {1: 1}, {2: 1}),
        rule("OR 6'", _K.OR, {2: 0}, {1: 0}),
    ),
)

_BUILTIN = {
    "BOOL": BOOL,
    "BOOL_PRIME": BOOL_PRIME,
    "bool": BOOL,
    "bool-prime": BOOL_PRIME,
    "bool'": BOOL_PRIME,
}


def builtin_ruleset(name: str) -> RuleSet:
    try:
        return _BUILTIN[name]
    except KeyError:
        raise ValueError(
            f"unknown rule system {name!r} (expected bool or bool-prime)"
        ) from None


@dataclass(frozen=True)
class StoreStep:
    rule: str
    matched_constraint: BoolConstraint
    before: ConstraintStore
    after: ConstraintStore


@dataclass(frozen=True)
class CspStep:
    rule: str
    matched_constraint: BoolConstraint
    before: BooleanCSP
    after: BooleanCSP
    relevant: bool


def _instantiated_conclusions(
    r: PropagationRule, c: BoolConstraint
) -> list[BoolConstraint]:
    return [
        BoolConstraint(kind, tuple(c.vars[p] for p in positions))
        for kind, positions in sorted(
            r.conclusion_constraints, key=lambda pat: (pat[0].value, pat[1])
        )
    ]


def apply_rule_store(r: PropagationRule, s: ConstraintStore) -> list[StoreStep]:
    """All applications of the rule to a store, in canonical match order.

    A constraint of the rule's kind matches when every premise literal
    (instantiated through the constraint's variable tuple) is present.
    Premise literals are retained; conclusion literals and replacement
    constraints are added.  Applications that would leave the store
    unchanged are omitted.
    """
    steps = []
    for c in sorted(s.constraints, key=constraint_sort_key):
        if c.kind != r.kind:
            continue
        if not all(
            Literal(c.vars[p], v == 1) in s.literals for p, v in r.premise
        ):
            continue
        literals = s.literals | {
            Literal(c.vars[p], v == 1) for p, v in r.conclusion_assignments
        }
        constraints = set(s.constraints)
        if r.conclusion_constraints:
            constraints.discard(c)
            constraints.update(_instantiated_conclusions(r, c))
        elif rule_discharges_constraint(r):
            constraints.discard(c)
        after = ConstraintStore(frozenset(constraints), literals)
        if after != s:
            steps.append(StoreStep(r.name, c, s, after))
    return steps


def apply_rule_csp(r: PropagationRule, csp: BooleanCSP) -> list[CspStep]:
    """All applications of the rule to a CSP, in canonical match order.

    A constraint matches when each premise position's domain is exactly
    the required singleton (an empty domain never matches).  Conclusion
    position domains are intersected with their singletons; the matched
    constraint is dropped, kept, or replaced as described in the module
    docstring.  A step is relevant when its result is not a
    reformulation of the input.
    """
    steps = []
    for c in sorted(csp.constraints, key=constraint_sort_key):
        if c.kind != r.kind:
            continue
        if not all(
            csp.domains[c.vars[p]] == frozenset({v}) for p, v in r.premise
        ):
            continue
        domains = dict(csp.domains)
        for p, v in r.conclusion_assignments:
            var = c.vars[p]
            domains[var] = domains[var] & {v}
        constraints = set(csp.constraints)
        if r.conclusion_constraints:
            constraints.discard(c)
            constraints.update(_instantiated_conclusions(r, c))
        elif rule_discharges_constraint(r):
            constraints.discard(c)
        after = BooleanCSP(csp.vars, domains, frozenset(constraints))
        steps.append(CspStep(r.name, c, csp, after, not is_reformulation(csp, after)))
    return steps


def _relevant_steps(csp: BooleanCSP, rs: RuleSet) -> Iterator[CspStep]:
    for r in rs.rules:
        for step in apply_rule_csp(r, csp):
            if step.relevant:
                yield step


def closed_under(csp: BooleanCSP, rs: RuleSet) -> bool:
    """True iff no rule of the set has a relevant application."""
    return next(_relevant_steps(csp, rs), None) is None


def close(
    csp: BooleanCSP,
    rs: RuleSet,
    rng: random.Random | None = None,
    max_steps: int = 10_000,
) -> tuple[BooleanCSP, list[CspStep]]:
    """Perform relevant applications until the CSP is closed.

    The default schedule is deterministic: lowest rule index first, then
    canonical constraint order.  Passing ``rng`` picks a random relevant
    application instead (used to probe schedule independence).  Each
    relevant step shrinks <total domain size, non-equality constraint
    count> lexicographically, so this terminates.
    """
    trace: list[CspStep] = []
    current = csp
    while True:
        if rng is None:
            step = next(_relevant_steps(current, rs), None)
        else:
            candidates = list(_relevant_steps(current, rs))
            step = rng.choice(candidates) if candidates else None
        if step is None:
            return current, trace
        trace.append(step)
        current = step.after
        if len(trace) > max_steps:
            raise RuntimeError(f"closure exceeded {max_steps} steps; scheduler bug?")


def derive_store(
    s: ConstraintStore, rs: RuleSet, max_steps: int = 10_000
) -> list[StoreStep]:
    """A deterministic store derivation run to fixpoint (or the step cap).

    Schedule: lowest rule index first, then canonical match order.
    """
    if max_steps < 0:
        raise ValueError("max_steps must be >= 0")
    trace: list[StoreStep] = []
    current = s
    while len(trace) < max_steps:
        step = next(
            (st for r in rs.rules for st in apply_rule_store(r, current)), None
        )
        if step is None:
            break
        trace.append(step)
        current = step.after
    return trace


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------

_ROLE_NAMES = {2: ("x", "y"), 3: ("x", "y", "z")}
_KIND_TEMPLATES = {
    ConstraintKind.EQ: "{0} = {1}",
    ConstraintKind.NOT: "~{0} = {1}",
    ConstraintKind.AND: "{0} /\\ {1} = {2}",
    ConstraintKind.OR: "{0} \\/ {1} = {2}",
}


def _render_pattern(kind: ConstraintKind, names: Sequence[str]) -> str:
    return _KIND_TEMPLATES[kind].format(*names)


def format_rule(r: PropagationRule) -> str:
    """One line in the rule-table style, e.g. ``AND 6  x /\\ y = z, z = 1 -> x = 1, y = 1``."""
    roles = _ROLE_NAMES[r.kind.arity]
    premise = ", ".join(f"{roles[p]} = {v}" for p, v in r.premise)
    concl_parts = [f"{roles[p]} = {v}" for p, v in r.conclusion_assignments]
    concl_parts += [
        _render_pattern(kind, [roles[p] for p in positions])
        for kind, positions in sorted(
            r.conclusion_constraints, key=lambda pat: (pat[0].value, pat[1])
        )
    ]
    head = _render_pattern(r.kind, roles)
    return f"{r.name:<7} {head}, {premise} -> {', '.join(concl_parts)}"


def domain_token(d: frozenset) -> str:
    """Render a domain the way .bcn files spell it: 0, 1, 01 or {}."""
    return "".join(str(v) for v in sorted(d)) if d else "{}"


def format_csp_step(step: CspStep) -> str:
    """``<rule> | <matched constraint> | <domain changes and constraint fate>``."""
    parts = []
    for v in step.before.vars:
        b, a = step.before.domains[v], step.after.domains[v]
        if b != a:
            parts.append(f"{v.name}: {domain_token(b)} -> {domain_token(a)}")
    if step.matched_constraint not in step.after.constraints:
        parts.append(f"dropped {step.matched_constraint}")
    for c in sorted(
        step.after.constraints - step.before.constraints, key=constraint_sort_key
    ):
        parts.append(f"added {c}")
    return f"{step.rule} | {step.matched_constraint} | {'; '.join(parts)}"


def format_store_step(step: StoreStep) -> str:
    removed = step.before.difference(step.after)
    added = step.after.difference(step.before)
    parts = [f"- {item}" for item in removed.items()] + [
        f"+ {item}" for item in added.items()
    ]
    return f"{step.rule} | {step.matched_constraint} | {'; '.join(parts)}"


def format_trace(steps: Sequence[CspStep | StoreStep]) -> str:
    lines = []
    for step in steps:
        if isinstance(step, CspStep):
            lines.append(format_csp_step(step))
        else:
            lines.append(format_store_step(step))
    return "\n".join(lines)
