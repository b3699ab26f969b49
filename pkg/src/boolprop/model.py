"""Boolean CSP data model: variables, domains, constraints, and stores.

A Boolean CSP couples an ordered variable sequence with per-variable
domains (subsets of {0, 1}) and a set of constraints drawn from the four
connective relations EQ, NOT, AND, OR.  Constraint stores are the flat
companion form: a finite set of constraints plus a set of literals, with
a fixed interpretation of literal sets as domains.

Everything here is immutable, and the solution-level operations
(``solutions``, ``equivalent``, ...) work by exhaustive enumeration.
This module is the oracle layer the propagation engines are tested
against, so it favours obviousness over speed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, Mapping, Sequence

BoolValue = int  # 0 (false) or 1 (true)
Domain = frozenset  # subset of {0, 1}

FULL: Domain = frozenset({0, 1})
EMPTY: Domain = frozenset()
ZERO: Domain = frozenset({0})
ONE: Domain = frozenset({1})


class ConstraintKind(Enum):
    EQ = "eq"
    NOT = "not"
    AND = "and"
    OR = "or"

    @property
    def arity(self) -> int:
        return 2 if self in (ConstraintKind.EQ, ConstraintKind.NOT) else 3


_TABLES: dict[ConstraintKind, frozenset[tuple[int, ...]]] = {
    ConstraintKind.EQ: frozenset({(0, 0), (1, 1)}),
    ConstraintKind.NOT: frozenset({(0, 1), (1, 0)}),
    ConstraintKind.AND: frozenset({(0, 0, 0), (0, 1, 0), (1, 0, 0), (1, 1, 1)}),
    ConstraintKind.OR: frozenset({(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 1)}),
}


def truth_table(kind: ConstraintKind) -> frozenset[tuple[int, ...]]:
    """Full relation of the connective over {0,1}^arity."""
    return _TABLES[kind]


@dataclass(frozen=True)
class Variable:
    """A named Boolean variable; ``index`` is its declaration position."""

    name: str
    index: int

    def __str__(self) -> str:
        return self.name


def variables(names: str | Sequence[str], start: int = 0) -> tuple[Variable, ...]:
    """Declare variables in order: ``variables("x y z")`` -> indices 0,1,2."""
    parts = names.split() if isinstance(names, str) else list(names)
    if len(set(parts)) != len(parts):
        raise ValueError(f"duplicate variable names in {parts!r}")
    return tuple(Variable(n, start + i) for i, n in enumerate(parts))


@dataclass(frozen=True)
class Literal:
    """A variable or its negation."""

    var: Variable
    positive: bool = True

    def negated(self) -> Literal:
        return Literal(self.var, not self.positive)

    def __str__(self) -> str:
        return self.var.name if self.positive else "-" + self.var.name


def pos(var: Variable) -> Literal:
    return Literal(var, True)


def neg(var: Variable) -> Literal:
    return Literal(var, False)


def literal_sort_key(lit: Literal) -> tuple[int, int, str]:
    # positive before negative at equal index
    return (lit.var.index, 0 if lit.positive else 1, lit.var.name)


@dataclass(frozen=True)
class BoolConstraint:
    """One connective constraint on an ordered tuple of distinct variables.

    The tuple is in role order: for AND/OR the third variable is the
    output, for EQ/NOT the second is the right-hand side.
    """

    kind: ConstraintKind
    vars: tuple[Variable, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "vars", tuple(self.vars))
        if len(self.vars) != self.kind.arity:
            raise ValueError(
                f"{self.kind.value} constraint needs {self.kind.arity} variables, "
                f"got {len(self.vars)}"
            )
        if len(set(self.vars)) != len(self.vars):
            raise ValueError(f"repeated variable in {self.kind.value} constraint")

    def __str__(self) -> str:
        return self.kind.value + " " + " ".join(v.name for v in self.vars)


def eqc(x: Variable, y: Variable) -> BoolConstraint:
    return BoolConstraint(ConstraintKind.EQ, (x, y))


def notc(x: Variable, y: Variable) -> BoolConstraint:
    return BoolConstraint(ConstraintKind.NOT, (x, y))


def andc(x: Variable, y: Variable, z: Variable) -> BoolConstraint:
    return BoolConstraint(ConstraintKind.AND, (x, y, z))


def orc(x: Variable, y: Variable, z: Variable) -> BoolConstraint:
    return BoolConstraint(ConstraintKind.OR, (x, y, z))


def constraint_sort_key(c: BoolConstraint) -> tuple:
    return (tuple(v.index for v in c.vars), c.kind.value)


def as_domain(value) -> Domain:
    """Normalise 1 / (0,1) / iterables / None into a domain frozenset."""
    if value is None:
        return FULL
    if isinstance(value, int):
        value = (value,)
    dom = frozenset(value)
    if not dom <= {0, 1}:
        raise ValueError(f"domain members must be 0 or 1, got {sorted(dom)}")
    return dom


@dataclass(frozen=True)
class Assignment:
    """A total valuation of a variable sequence, hashable for set use."""

    vars: tuple[Variable, ...]
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.vars) != len(self.values):
            raise ValueError("assignment arity mismatch")

    def __getitem__(self, var: Variable) -> int:
        return self.values[self.vars.index(var)]

    def as_dict(self) -> dict[Variable, int]:
        return dict(zip(self.vars, self.values))

    def __str__(self) -> str:
        return " ".join(f"{v.name}={d}" for v, d in zip(self.vars, self.values))


@dataclass(frozen=True)
class BooleanCSP:
    """Variable sequence + per-variable domains + constraint set."""

    vars: tuple[Variable, ...]
    domains: Mapping[Variable, Domain]
    constraints: frozenset[BoolConstraint] = frozenset()

    def __post_init__(self) -> None:
        object.__setattr__(self, "vars", tuple(self.vars))
        object.__setattr__(
            self, "domains", {v: as_domain(d) for v, d in self.domains.items()}
        )
        object.__setattr__(self, "constraints", frozenset(self.constraints))
        names = [v.name for v in self.vars]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in CSP: {names}")
        if set(self.domains) != set(self.vars):
            raise ValueError("domains must be defined for exactly the CSP variables")
        for c in self.constraints:
            for v in c.vars:
                if v not in self.domains:
                    raise ValueError(f"constraint {c} uses undeclared variable {v}")

    def domain(self, var: Variable) -> Domain:
        return self.domains[var]

    def with_domains(self, updates: Mapping[Variable, object]) -> BooleanCSP:
        new = dict(self.domains)
        for v, d in updates.items():
            new[v] = as_domain(d)
        return BooleanCSP(self.vars, new, self.constraints)

    def with_constraints(self, constraints: Iterable[BoolConstraint]) -> BooleanCSP:
        return BooleanCSP(self.vars, self.domains, frozenset(constraints))


def bcsp(
    vars: Sequence[Variable],
    domains: Mapping[Variable, object] | None = None,
    constraints: Iterable[BoolConstraint] = (),
) -> BooleanCSP:
    """Build a CSP; unmentioned domains default to {0, 1}."""
    doms = {v: FULL for v in vars}
    for v, d in (domains or {}).items():
        doms[v] = as_domain(d)
    return BooleanCSP(tuple(vars), doms, frozenset(constraints))


@dataclass(frozen=True)
class ConstraintStore:
    """A finite set of constraints and literals.

    Stores may contain complementary literals; such a store is
    inconsistent and maps to an empty domain under ``store_to_csp``.
    """

    constraints: frozenset[BoolConstraint] = frozenset()
    literals: frozenset[Literal] = frozenset()

    def __post_init__(self) -> None:
        object.__setattr__(self, "constraints", frozenset(self.constraints))
        object.__setattr__(self, "literals", frozenset(self.literals))

    def union(self, other: ConstraintStore) -> ConstraintStore:
        return ConstraintStore(
            self.constraints | other.constraints, self.literals | other.literals
        )

    def difference(self, other: ConstraintStore) -> ConstraintStore:
        return ConstraintStore(
            self.constraints - other.constraints, self.literals - other.literals
        )

    def items(self) -> tuple:
        """Canonical ordering: constraints before literals, by variable index."""
        return tuple(sorted(self.constraints, key=constraint_sort_key)) + tuple(
            sorted(self.literals, key=literal_sort_key)
        )

    def __str__(self) -> str:
        return "{" + ", ".join(str(i) for i in self.items()) + "}"


def store(*items: BoolConstraint | Literal) -> ConstraintStore:
    """Build a store from a mixed list of constraints and literals."""
    cons, lits = set(), set()
    for item in items:
        if isinstance(item, BoolConstraint):
            cons.add(item)
        elif isinstance(item, Literal):
            lits.add(item)
        else:
            raise TypeError(f"not a constraint or literal: {item!r}")
    return ConstraintStore(frozenset(cons), frozenset(lits))


def store_variables(s: ConstraintStore) -> tuple[Variable, ...]:
    """Variables of a store in first-occurrence (canonical) order."""
    seen: dict[Variable, None] = {}
    for item in s.items():
        if isinstance(item, BoolConstraint):
            for v in item.vars:
                seen.setdefault(v)
        else:
            seen.setdefault(item.var)
    return tuple(seen)


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------


def restricted_relation(c: BoolConstraint, csp: BooleanCSP) -> frozenset[tuple[int, ...]]:
    """The constraint's relation intersected with the current domain product."""
    doms = [csp.domains[v] for v in c.vars]
    return frozenset(
        t for t in truth_table(c.kind) if all(t[i] in doms[i] for i in range(len(doms)))
    )


def is_solved(c: BoolConstraint, csp: BooleanCSP) -> bool:
    """True when the restricted relation equals the full domain product."""
    size = 1
    for v in c.vars:
        size *= len(csp.domains[v])
    return len(restricted_relation(c, csp)) == size


def is_failed(csp: BooleanCSP) -> bool:
    return any(not csp.domains[v] for v in csp.vars)


def iter_solutions(csp: BooleanCSP) -> Iterator[Assignment]:
    """Enumerate solutions exhaustively (intended for <= ~20 variables)."""
    position = {v: i for i, v in enumerate(csp.vars)}
    checks = [
        (truth_table(c.kind), tuple(position[v] for v in c.vars))
        for c in csp.constraints
    ]
    pools = [sorted(csp.domains[v]) for v in csp.vars]
    for values in itertools.product(*pools):
        if all(tuple(values[i] for i in idx) in table for table, idx in checks):
            yield Assignment(csp.vars, values)


def solutions(csp: BooleanCSP) -> frozenset[Assignment]:
    return frozenset(iter_solutions(csp))


def has_solution(csp: BooleanCSP) -> bool:
    return next(iter_solutions(csp), None) is not None


def drop_solved(csp: BooleanCSP) -> BooleanCSP:
    return csp.with_constraints(
        c for c in csp.constraints if not is_solved(c, csp)
    )


def _require_same_vars(a: BooleanCSP, b: BooleanCSP) -> None:
    if a.vars != b.vars:
        raise ValueError(
            f"CSPs range over different variable sequences: "
            f"{[v.name for v in a.vars]} vs {[v.name for v in b.vars]}"
        )


def is_reformulation(a: BooleanCSP, b: BooleanCSP) -> bool:
    """True when deleting solved constraints from each yields the same CSP."""
    _require_same_vars(a, b)
    ra, rb = drop_solved(a), drop_solved(b)
    return ra.domains == rb.domains and ra.constraints == rb.constraints


def equivalent(a: BooleanCSP, b: BooleanCSP) -> bool:
    """True when both CSPs have the same solution set."""
    _require_same_vars(a, b)
    return solutions(a) == solutions(b)


def store_to_csp(
    s: ConstraintStore, vars: Sequence[Variable] | None = None
) -> BooleanCSP:
    """Interpret a store as a CSP.

    Per variable: no literal -> {0,1}; positive -> {1}; negative -> {0};
    both -> empty domain.  ``vars`` overrides the default first-occurrence
    variable sequence (it must cover every variable of the store).
    """
    seq = tuple(vars) if vars is not None else store_variables(s)
    missing = set(store_variables(s)) - set(seq)
    if missing:
        raise ValueError(f"variable sequence misses {sorted(v.name for v in missing)}")
    domains = {}
    for v in seq:
        has_pos = Literal(v, True) in s.literals
        has_neg = Literal(v, False) in s.literals
        if has_pos and has_neg:
            domains[v] = EMPTY
        elif has_pos:
            domains[v] = ONE
        elif has_neg:
            domains[v] = ZERO
        else:
            domains[v] = FULL
    return BooleanCSP(seq, domains, s.constraints)


def csp_to_store(csp: BooleanCSP) -> ConstraintStore:
    """Inverse interpretation: singleton domains become literals."""
    lits = set()
    for v in csp.vars:
        d = csp.domains[v]
        if d == ONE:
            lits.add(Literal(v, True))
        elif d == ZERO:
            lits.add(Literal(v, False))
        elif d == EMPTY:
            lits.add(Literal(v, True))
            lits.add(Literal(v, False))
    return ConstraintStore(csp.constraints, frozenset(lits))


def store_satisfied(s: ConstraintStore, valuation: Mapping[Variable, int]) -> bool:
    """Does a total valuation of the store's variables satisfy it?"""
    for lit in s.literals:
        if valuation[lit.var] != (1 if lit.positive else 0):
            return False
    for c in s.constraints:
        if tuple(valuation[v] for v in c.vars) not in truth_table(c.kind):
            return False
    return True
