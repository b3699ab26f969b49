import itertools

import pytest
from hypothesis import given, settings

from boolprop.clauses import (
    EMPTY_CLAUSE,
    RESOLVE,
    SUBSUME,
    Clause,
    FreshVarSource,
    clause,
    clause_set_satisfied,
    clause_set_variables,
    constraints_to_clauses,
    format_dimacs,
    minimal_matching_store,
    parse_dimacs,
    semantically_follows,
    simulate_bool_by_unit,
    simulate_unit_by_bool,
    trans_clause,
    trans_clause_eq,
    translate_clause_set,
    unit_propagate,
    unit_step,
    verify_reduction_to_rules,
    verify_reduction_to_unit,
)
from boolprop.model import (
    BoolConstraint,
    ConstraintKind,
    Literal,
    andc,
    eqc,
    neg,
    notc,
    orc,
    pos,
    store,
    store_satisfied,
    store_variables,
    variables,
)
from boolprop.rules import BOOL, apply_rule_store
from strategies import clause_sets, stores

X, Y, Z = variables("x y z")


# ---------------------------------------------------------------------------
# translations constraint -> clauses
# ---------------------------------------------------------------------------


def test_constraints_to_clauses():
    s = store(orc(X, Y, Z), neg(X), pos(Z))
    assert constraints_to_clauses(s) == {
        clause(neg(X), pos(Z)),
        clause(neg(Y), pos(Z)),
        clause(pos(X), pos(Y), neg(Z)),
        clause(neg(X)),
        clause(pos(Z)),
    }
    assert constraints_to_clauses(store(andc(X, Y, Z))) == {
        clause(neg(X), neg(Y), pos(Z)),
        clause(pos(X), neg(Z)),
        clause(pos(Y), neg(Z)),
    }
    assert constraints_to_clauses(store()) == frozenset()


@given(stores(max_vars=4))
@settings(max_examples=150)
def test_clause_translation_preserves_satisfaction(s):
    cs = constraints_to_clauses(s)
    vars = store_variables(s)
    for values in itertools.product((0, 1), repeat=len(vars)):
        valuation = dict(zip(vars, values))
        assert store_satisfied(s, valuation) == clause_set_satisfied(cs, valuation)


# ---------------------------------------------------------------------------
# unit propagation
# ---------------------------------------------------------------------------


def test_unit_step_resolution():
    cs = constraints_to_clauses(store(orc(X, Y, Z), neg(X), pos(Z)))
    results = {s.result for s in unit_step(cs) if s.op == RESOLVE}
    assert (cs - {clause(pos(X), pos(Y), neg(Z))}) | {clause(pos(X), pos(Y))} in results


def test_unit_step_complementary_units_give_empty_clause():
    cs = frozenset({clause(pos(X)), clause(neg(X))})
    steps = unit_step(cs)
    assert any(EMPTY_CLAUSE in s.result for s in steps)


def test_unit_step_without_units():
    assert unit_step(frozenset({clause(pos(X), pos(Y))})) == []


def test_unit_subsumption_never_deletes_the_unit_itself():
    cs = frozenset({clause(pos(X))})
    assert unit_step(cs) == []


def test_unit_resolution_on_tautological_clause():
    # x | -x | y is a legal clause of distinct literals; resolving with
    # the unit x removes the complement and keeps the rest
    cs = frozenset({clause(pos(X)), clause(pos(X), neg(X), pos(Y))})
    results = {s.result for s in unit_step(cs) if s.op == RESOLVE}
    assert frozenset({clause(pos(X)), clause(pos(X), pos(Y))}) in results


def test_unit_propagate_worked_example():
    cs = constraints_to_clauses(store(orc(X, Y, Z), neg(X), pos(Z)))
    fixpoint, trace = unit_propagate(cs)
    assert fixpoint == {clause(neg(X)), clause(pos(Y)), clause(pos(Z))}
    assert trace


def test_unit_propagate_chain():
    cs = frozenset(
        {clause(pos(X)), clause(neg(X), pos(Y)), clause(neg(Y), pos(Z))}
    )
    fixpoint, _ = unit_propagate(cs)
    assert fixpoint == {clause(pos(X)), clause(pos(Y)), clause(pos(Z))}


def test_unit_propagate_empty_set():
    assert unit_propagate(frozenset()) == (frozenset(), [])


def test_unit_propagate_stops_on_empty_clause():
    cs = frozenset({clause(pos(X)), clause(neg(X)), clause(neg(X), pos(Y))})
    fixpoint, _ = unit_propagate(cs)
    assert EMPTY_CLAUSE in fixpoint


@given(clause_sets(max_vars=4))
@settings(max_examples=150)
def test_unit_steps_preserve_satisfying_assignments(cs):
    vars = clause_set_variables(cs)
    for step in unit_step(cs):
        for values in itertools.product((0, 1), repeat=len(vars)):
            valuation = dict(zip(vars, values))
            assert clause_set_satisfied(cs, valuation) == clause_set_satisfied(
                step.result, valuation
            )


@given(clause_sets(max_vars=5))
@settings(max_examples=100)
def test_empty_clause_in_fixpoint_implies_unsatisfiable(cs):
    fixpoint, _ = unit_propagate(cs)
    if EMPTY_CLAUSE in fixpoint:
        vars = clause_set_variables(cs)
        for values in itertools.product((0, 1), repeat=len(vars)):
            assert not clause_set_satisfied(cs, dict(zip(vars, values)))


# ---------------------------------------------------------------------------
# translations clause -> constraints
# ---------------------------------------------------------------------------


def test_trans_unit_clauses():
    fresh = FreshVarSource.avoiding([X, Y, Z])
    assert trans_clause_eq(clause(pos(X)), Z, fresh) == store(eqc(X, Z))
    assert trans_clause_eq(clause(neg(X)), Z, fresh) == store(notc(X, Z))
    assert trans_clause(clause(pos(X)), fresh) == store(pos(X))


def test_trans_positive_pair():
    x1, x2 = variables("x1 x2")
    fresh = FreshVarSource.avoiding([x1, x2])
    z, = variables("z", start=10)
    result = trans_clause_eq(clause(pos(x1), pos(x2)), z, fresh)
    (y,) = [v for v in store_variables(result) if v.name.startswith("_t")]
    assert result == store(orc(x1, y, z), eqc(x2, y))


def test_trans_negative_head_introduces_two_fresh_vars():
    fresh = FreshVarSource.avoiding([X, Y, Z])
    result = trans_clause_eq(clause(neg(X), pos(Y)), Z, fresh)
    helpers = [v for v in store_variables(result) if v.name.startswith("_t")]
    assert len(helpers) == 2
    v, y = helpers
    assert result == store(notc(X, v), orc(v, y, Z), eqc(Y, y))


def test_trans_clause_non_unit_adds_root_literal():
    x1, x2 = variables("x1 x2")
    fresh = FreshVarSource.avoiding([x1, x2])
    result = trans_clause(clause(pos(x1), pos(x2)), fresh)
    roots = [l for l in result.literals]
    assert len(roots) == 1 and roots[0].positive
    assert len(result.constraints) == 2


def test_trans_rejects_empty_clause():
    fresh = FreshVarSource.avoiding([X])
    with pytest.raises(ValueError):
        trans_clause(EMPTY_CLAUSE, fresh)
    with pytest.raises(ValueError):
        trans_clause_eq(EMPTY_CLAUSE, X, fresh)


def test_fresh_variables_avoid_collisions():
    taken = variables(["_t0", "_t1", "a"])
    fresh = FreshVarSource.avoiding(taken)
    v = fresh.fresh()
    assert v.name == "_t2" and v.index == 3


@given(clause_sets(max_vars=4, max_clauses=1, max_len=4))
@settings(max_examples=150)
def test_clause_equivalent_to_projected_translation(cs):
    """A clause holds exactly when its translation extends to a model."""
    (q,) = cs
    fresh = FreshVarSource.avoiding(clause_set_variables(cs))
    translated = trans_clause(q, fresh)
    t_vars = store_variables(translated)
    q_vars = sorted({l.var for l in q.literals}, key=lambda v: v.index)
    extra = [v for v in t_vars if v not in q_vars]
    for values in itertools.product((0, 1), repeat=len(q_vars)):
        base = dict(zip(q_vars, values))
        clause_holds = any(
            base[l.var] == (1 if l.positive else 0) for l in q.literals
        )
        extendable = any(
            store_satisfied(translated, {**base, **dict(zip(extra, ext))})
            for ext in itertools.product((0, 1), repeat=len(extra))
        )
        assert clause_holds == extendable


@given(clause_sets(max_vars=4, max_clauses=1, max_len=4))
@settings(max_examples=100)
def test_trans_clause_eq_is_always_satisfiable(cs):
    (q,) = cs
    fresh = FreshVarSource.avoiding(clause_set_variables(cs))
    target = fresh.fresh()
    translated = trans_clause_eq(q, target, fresh)
    t_vars = store_variables(translated)
    assert any(
        store_satisfied(translated, dict(zip(t_vars, values)))
        for values in itertools.product((0, 1), repeat=len(t_vars))
    )


@pytest.mark.parametrize("signs", [(1,) * 6, (0,) * 6, (1, 0, 1, 0, 1, 0), (0, 0, 1, 1, 0, 1)])
def test_trans_of_six_literal_clause_extends_any_base_valuation(signs):
    """The translation is satisfiable under every valuation of the
    clause's own variables, up to the six-literal bound."""
    vars6 = variables([f"q{i}" for i in range(6)])
    q = clause(*(Literal(v, bool(s)) for v, s in zip(vars6, signs)))
    fresh = FreshVarSource.avoiding(vars6)
    target = fresh.fresh()
    translated = trans_clause_eq(q, target, fresh)
    helpers = [v for v in store_variables(translated) if v not in vars6]
    for base_values in itertools.product((0, 1), repeat=6):
        base = dict(zip(vars6, base_values))
        assert any(
            store_satisfied(translated, {**base, **dict(zip(helpers, ext))})
            for ext in itertools.product((0, 1), repeat=len(helpers))
        )


# ---------------------------------------------------------------------------
# semantic consequence
# ---------------------------------------------------------------------------


def test_semantically_follows_fresh_literals():
    v, y, z = variables("v y z", start=10)
    c = store(pos(z), neg(v), pos(y))
    s = store(pos(X), eqc(X, Y))
    assert semantically_follows(c, s)


def test_semantically_follows_trivial_cases():
    assert semantically_follows(store(), store(neg(X)))
    assert not semantically_follows(store(pos(X)), store(neg(X)))


def test_semantically_follows_uses_shared_information():
    # {x} follows from {x, y=x} even though not from every valuation of x
    assert semantically_follows(store(pos(X)), store(pos(X), eqc(X, Y)))


# ---------------------------------------------------------------------------
# simulation: rule step -> unit steps
# ---------------------------------------------------------------------------


def test_simulate_or3_uses_the_four_step_script():
    s1 = store(orc(X, Y, Z), neg(X), pos(Z))
    (step,) = apply_rule_store(BOOL.by_name("OR 3"), s1)
    script = simulate_bool_by_unit(s1, step)
    assert [(u.op, str(u.unit)) for u in script] == [
        (RESOLVE, "z"),
        (SUBSUME, "z"),
        (SUBSUME, "z"),
        (RESOLVE, "-x"),
    ]
    assert script[0].target == clause(pos(X), pos(Y), neg(Z))
    assert script[-1].result == constraints_to_clauses(step.after)


def test_simulate_and6_three_steps():
    s1 = store(andc(X, Y, Z), pos(Z))
    (step,) = apply_rule_store(BOOL.by_name("AND 6"), s1)
    script = simulate_bool_by_unit(s1, step)
    assert len(script) == 3
    assert script[-1].result == constraints_to_clauses(store(pos(X), pos(Y), pos(Z)))


def test_simulate_equ1_two_steps():
    s1 = store(eqc(X, Y), pos(X))
    (step,) = apply_rule_store(BOOL.by_name("EQU 1"), s1)
    script = simulate_bool_by_unit(s1, step)
    assert len(script) == 2
    assert script[-1].result == constraints_to_clauses(store(pos(X), pos(Y)))


def test_simulate_all_rules_on_minimal_stores():
    report = verify_reduction_to_unit()
    assert report.ok, report.summary()
    assert report.checked == 20


def test_simulate_with_extra_context():
    w, = variables("w", start=3)
    s1 = store(orc(X, Y, Z), neg(X), pos(Z), eqc(Z, w), pos(w))
    (or3,) = [
        s
        for s in apply_rule_store(BOOL.by_name("OR 3"), s1)
    ]
    script = simulate_bool_by_unit(s1, or3)
    assert script[-1].result == constraints_to_clauses(or3.after)
    assert len(script) <= 4


# ---------------------------------------------------------------------------
# simulation: unit step -> rule steps
# ---------------------------------------------------------------------------


def _steps_of(phi1, op, unit, target):
    return [
        s
        for s in unit_step(phi1)
        if s.op == op and s.unit == unit and s.target == target
    ]


def test_simulate_resolution_positive_unit():
    q1, q2 = variables("a b")
    phi1 = frozenset({clause(pos(X)), clause(neg(X), pos(q1), pos(q2))})
    (step,) = _steps_of(phi1, RESOLVE, pos(X), clause(neg(X), pos(q1), pos(q2)))
    s1, s2, derivation, c = simulate_unit_by_bool(phi1, step)
    assert [d.rule for d in derivation] == ["NOT 1", "OR 3"]
    assert semantically_follows(c, s2)
    final = derivation[-1].after
    assert final == s2.union(c)
    # the redundant set is two dangling helper literals: the deleted
    # clause's root (positive) and the negated selection helper
    assert not c.constraints
    signs = sorted(l.positive for l in c.literals)
    assert len(c.literals) == 2 and signs == [False, True]


def test_simulate_resolution_with_unit_remainder_uses_equ2():
    phi1 = frozenset({clause(pos(X)), clause(neg(X), pos(Y))})
    (step,) = _steps_of(phi1, RESOLVE, pos(X), clause(neg(X), pos(Y)))
    s1, s2, derivation, c = simulate_unit_by_bool(phi1, step)
    assert [d.rule for d in derivation] == ["NOT 1", "OR 3", "EQU 2"]
    assert pos(Y) in s2.literals
    assert semantically_follows(c, s2)
    # here the remainder's root literal also dangles: root, helper, and y
    assert not c.constraints and len(c.literals) == 3


def test_simulate_subsumption_negative_unit():
    phi1 = frozenset({clause(neg(X)), clause(neg(X), pos(Y), neg(Z))})
    (step,) = _steps_of(phi1, SUBSUME, neg(X), clause(neg(X), pos(Y), neg(Z)))
    s1, s2, derivation, c = simulate_unit_by_bool(phi1, step)
    assert [d.rule for d in derivation] == ["NOT 2", "OR 1"]
    # the redundant set contains the dangling remainder translation
    assert any(con.kind != ConstraintKind.OR for con in c.constraints) or c.literals
    assert semantically_follows(c, s2)


def test_simulate_subsumption_positive_unit():
    phi1 = frozenset({clause(pos(X)), clause(pos(X), pos(Y))})
    (step,) = _steps_of(phi1, SUBSUME, pos(X), clause(pos(X), pos(Y)))
    _, s2, derivation, c = simulate_unit_by_bool(phi1, step)
    assert [d.rule for d in derivation] == ["OR 1"]
    assert semantically_follows(c, s2)


def test_simulate_resolution_whose_remainder_merges():
    """Resolution result already present in the set: the dangling
    remainder translation lands in the redundant set, and its consequence
    proof needs the result's own copy of the clause."""
    a, b, c, d, e, f = variables("a b c d e f")
    target = clause(neg(a), pos(b), pos(c), pos(d), pos(e))
    remainder = clause(pos(b), pos(c), pos(d), pos(e))
    bulk = [  # fatten the translated result well past direct enumeration
        clause(neg(b), pos(c), neg(d), pos(e), neg(f)),
        clause(pos(a), neg(c), pos(d), neg(e), pos(f)),
        clause(neg(a), neg(b), neg(c), neg(d), neg(e)),
        clause(pos(b), neg(c), pos(e), neg(f)),
    ]
    phi1 = frozenset({clause(pos(a)), target, remainder, *bulk})
    (step,) = _steps_of(phi1, RESOLVE, pos(a), target)
    s1, s2, derivation, redundant = simulate_unit_by_bool(phi1, step)
    assert [d.rule for d in derivation] == ["NOT 1", "OR 3"]
    assert derivation[-1].after == s2.union(redundant)
    # the redundant set keeps the whole dangling chain, constraints included
    assert redundant.constraints
    assert len(store_variables(s2)) > 24


def test_simulate_merge_with_lookalike_clauses():
    """Several clauses cover the remainder's variables; only the result's
    own copy of the remainder clause certifies the dangling chain."""
    x1, x2, x3 = variables("x1 x2 x3")
    target = clause(pos(x1), pos(x2), neg(x3))
    phi1 = frozenset(
        {
            clause(neg(x1), neg(x3)),
            clause(neg(x2)),
            clause(pos(x1), neg(x3)),
            target,
            clause(pos(x1), pos(x3)),
            clause(pos(x2), pos(x3)),
        }
    )
    (step,) = _steps_of(phi1, RESOLVE, neg(x2), target)
    _, s2, derivation, redundant = simulate_unit_by_bool(phi1, step)
    assert derivation[-1].after == s2.union(redundant)


def test_simulate_complementary_units():
    phi1 = frozenset({clause(pos(X)), clause(neg(X))})
    (step,) = _steps_of(phi1, RESOLVE, pos(X), clause(neg(X)))
    s1, s2, derivation, c = simulate_unit_by_bool(phi1, step)
    assert derivation == [] and c == store()
    assert s1 == s2
    assert {pos(X), neg(X)} <= s2.literals
    # the inconsistent store maps to an empty domain
    from boolprop.model import store_to_csp

    assert store_to_csp(s2).domains[X] == frozenset()


def test_reduction_to_rules_sweep():
    report = verify_reduction_to_rules(budget=120, seed=7)
    assert report.ok, report.summary()


# ---------------------------------------------------------------------------
# DIMACS
# ---------------------------------------------------------------------------


def test_dimacs_roundtrip():
    text = "c comment\np cnf 3 3\n1 -2 0\n2 3 0\n-1 0\n"
    cs, vars = parse_dimacs(text)
    assert len(cs) == 3 and len(vars) == 3
    again, _ = parse_dimacs(format_dimacs(cs, vars))
    assert again == cs


def test_dimacs_rejects_garbage():
    with pytest.raises(ValueError):
        parse_dimacs("p cnf x y\n")
    with pytest.raises(ValueError):
        parse_dimacs("1 two 0\n")


def test_dimacs_empty_clause():
    cs, _ = parse_dimacs("p cnf 1 1\n0\n")
    assert EMPTY_CLAUSE in cs


def test_translate_clause_set_is_deterministic():
    cs, _ = parse_dimacs("p cnf 3 2\n1 2 0\n-2 3 0\n")
    assert translate_clause_set(cs) == translate_clause_set(cs)
