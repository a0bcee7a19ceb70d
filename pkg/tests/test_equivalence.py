import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lawlike import parse_formula
from lawlike.equivalence import (
    ASSERTIONAL,
    POINTWISE,
    Bounds,
    count_models,
    equiv_material,
    equiv_material_fo,
    equiv_material_prop,
    equiv_strict,
    kripke_models,
    law_survival,
    replay,
    run_catalog,
    comparison_signature,
)
from lawlike.errors import CapExceeded, UnsupportedConnective
from lawlike.formula import Signature
from lawlike.generate import random_formula
from lawlike.worlds import KripkeModel, eval_strict_assert

P = parse_formula
SMALL = Signature({"p", "q"}, {"P": 1})


# --- oracles: semantics written out by hand, no library evaluator -------------


def _valuations3():
    # index = p + 2q + 4r
    return [(bool(n & 1), bool(n & 2), bool(n & 4)) for n in range(8)]


def oracle_switch_countermodel():
    """Minimal world set separating (p&q)=>r from (p=>r)|(q=>r)."""
    vals = _valuations3()
    lhs = lambda W: all(not (p and q) or r for p, q, r in W)  # noqa: E731
    rhs = lambda W: all(not p or r for p, q, r in W) or all(not q or r for p, q, r in W)  # noqa: E731
    for k in range(1, 9):
        for combo in itertools.combinations(range(8), k):
            W = [vals[i] for i in combo]
            if lhs(W) != rhs(W):
                return W, lhs(W), rhs(W)
    return None


def _fo_worlds(d):
    # bit 0 = r, bits 1.. = P(0), P(1), ...
    out = []
    for n in range(2 ** (d + 1)):
        out.append((bool(n & 1), frozenset(i for i in range(d) if n >> (i + 1) & 1)))
    return out


def paradise_lhs(W, d):
    return all((not all(x in P_ for x in range(d))) or r for r, P_ in W)


def paradise_rhs(W, d):
    return any(all((x not in P_) or r for r, P_ in W) for x in range(d))


def oracle_paradise_countermodels(max_d, max_k):
    found = []
    for d in range(1, max_d + 1):
        worlds = _fo_worlds(d)
        for k in range(1, max_k + 1):
            for combo in itertools.combinations(worlds, k):
                if paradise_lhs(combo, d) != paradise_rhs(combo, d):
                    found.append((d, combo))
    return found


# --- material ---------------------------------------------------------------


@pytest.mark.parametrize(
    "f, g",
    [
        ("(p & q) -> r", "(p -> r) | (q -> r)"),
        ("p <-> q", "(p -> q) & (q -> p)"),
        ("(p | q) -> r", "(p -> r) & (q -> r)"),
        ("(p | q | s) -> r", "(p -> r) & (q -> r) & (s -> r)"),
    ],
)
def test_material_prop_equivalences(f, g):
    v = equiv_material_prop(P(f), P(g))
    assert v.equivalent and v.exact
    n = len(comparison_signature(P(f), P(g)).prop_atoms)
    assert v.examined == 2**n


def test_material_prop_converse():
    v = equiv_material_prop(P("p -> q"), P("q -> p"))
    assert not v.equivalent
    assert v.countermodel == {"p": True, "q": False}
    assert replay(P("p -> q"), P("q -> p"), v) == (False, True)


def test_material_prop_rejects_strict():
    with pytest.raises(UnsupportedConnective):
        equiv_material_prop(P("p => q"), P("p -> q"))


def test_material_fo_paradox_bounded():
    v = equiv_material_fo(P("(forall x. P(x)) -> r"), P("exists x. (P(x) -> r)"), Bounds(max_domain=3))
    assert v.equivalent and not v.exact
    assert v.examined_by_domain == {1: 4, 2: 8, 3: 16}


def test_material_fo_paradox_oracle():
    # the classical equivalence checked structure by structure with hand-coded semantics
    for d in (1, 2, 3):
        for r, P_ in _fo_worlds(d):
            assert paradise_lhs([(r, P_)], d) == paradise_rhs([(r, P_)], d)


def test_material_fo_forall_vs_exists():
    f, g = P("forall x. P(x)"), P("exists x. P(x)")
    v = equiv_material_fo(f, g)
    assert not v.equivalent
    assert v.countermodel.domain_size == 2
    assert v.countermodel.table("P") == [(0,)]
    assert replay(f, g, v) == (False, True)
    # hand enumeration at d=2: P={}, {0}, {1}, {0,1}; the first split is {0}
    assert [all(x in s for x in (0, 1)) != any(x in s for x in (0, 1))
            for s in ({}, {0}, {1}, {0, 1})] == [False, True, True, False]


def test_material_fo_identity():
    assert equiv_material_fo(P("forall x. P(x)"), P("forall x. P(x)")).equivalent


def test_material_fo_cap():
    with pytest.raises(CapExceeded):
        equiv_material_fo(P("forall x. forall y. Q(x, y)"), P("exists x. Q(x, x)"), Bounds(max_domain=5))


# --- strict -----------------------------------------------------------------


def test_strict_switch_pair():
    f, g = P("(p & q) => r"), P("(p => r) | (q => r)")
    v = equiv_strict(f, g)
    assert not v.equivalent
    assert v.world_count == 2 and v.domain_size == 1
    worlds = [w.true_atoms() for w in v.countermodel.worlds]
    assert worlds == [["p"], ["q"]]
    expected, lhs, rhs = oracle_switch_countermodel()
    assert [(w.value("p"), w.value("q"), w.value("r")) for w in v.countermodel.worlds] == expected
    assert replay(f, g, v) == (lhs, rhs) == (True, False)


def test_strict_paradise_pair():
    f, g = P("(forall x. P(x)) => r"), P("exists x. (P(x) => r)")
    v = equiv_strict(f, g)
    assert not v.equivalent
    assert (v.domain_size, v.world_count) == (2, 2)
    got = {(w.value("r"), frozenset(t[0] for t in w.table("P"))) for w in v.countermodel.worlds}
    assert got == {(False, frozenset({0})), (False, frozenset({1}))}
    assert replay(f, g, v) == (True, False)
    # oracle: first hand-coded countermodel in the same search order
    first_d, first_combo = oracle_paradise_countermodels(2, 2)[0]
    assert first_d == 2 and set(first_combo) == got


def test_paradise_no_small_countermodels():
    found = oracle_paradise_countermodels(3, 4)
    assert found
    assert all(d >= 2 and len(W) >= 2 for d, W in found)


@pytest.mark.parametrize(
    "f, g",
    [("(p | q) => r", "(p => r) & (q => r)"), ("p => q", "p => q"), ("p <=> q", "(p => q) & (q => p)")],
)
def test_strict_equivalent(f, g):
    v = equiv_strict(P(f), P(g))
    assert v.equivalent
    assert v.examined == count_models(comparison_signature(P(f), P(g)), Bounds())


def test_cases_law_oracle():
    # (p|q)=>r against (p=>r)&(q=>r) over every nonempty world set on 3 atoms
    vals = _valuations3()
    for k in range(1, 9):
        for W in itertools.combinations(vals, k):
            lhs = all(not (p or q) or r for p, q, r in W)
            rhs = all(not p or r for p, q, r in W) and all(not q or r for p, q, r in W)
            assert lhs == rhs


def test_exactness_flag():
    f, g = P("(p | q) => r"), P("(p => r) & (q => r)")
    assert not equiv_strict(f, g).exact
    assert equiv_strict(f, g, Bounds(max_worlds=8)).exact
    assert not equiv_strict(P("forall x. P(x) => P(x)"), P("p | !p")).exact


def test_strict_cap():
    with pytest.raises(CapExceeded):
        equiv_strict(P("forall x. forall y. Q(x, y) => r"), P("r"), Bounds(max_domain=3, max_worlds=4))


def test_minimality_by_replay():
    f, g = P("(forall x. P(x)) => r"), P("exists x. (P(x) => r)")
    v = equiv_strict(f, g)
    sig = comparison_signature(f, g)
    earlier = 0
    for d in (1, 2):
        for k in range(1, 5):
            for m in kripke_models(sig, d, k):
                if m == v.countermodel:
                    assert earlier + 1 == v.examined
                    return
                earlier += 1
                assert eval_strict_assert(f, m) == eval_strict_assert(g, m)
    pytest.fail("countermodel not reached in canonical order")


def test_pointwise_mode():
    # p vs p & (q => q): same at each world
    assert equiv_strict(P("p"), P("p & (q => q)"), mode=POINTWISE).equivalent
    # p => q is a law, p -> q only a fact about one world
    v = equiv_strict(P("p => q"), P("p -> q"), mode=POINTWISE)
    assert not v.equivalent and v.world is not None
    assert replay(P("p => q"), P("p -> q"), v) == v.values
    assert equiv_strict(P("p => q"), P("p -> q"), mode=ASSERTIONAL).equivalent


def _pair(seed: int):
    rng = random.Random(seed)
    sig = Signature({"p", "q"}, {"P": 1})
    return random_formula(rng, sig, 2), random_formula(rng, sig, 2)


TINY = Bounds(max_domain=2, max_worlds=2)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_mode_coherence(seed):
    f, g = _pair(seed)
    if equiv_strict(f, g, TINY, POINTWISE).equivalent:
        assert equiv_strict(f, g, TINY, ASSERTIONAL).equivalent


def test_mode_coherence_on_equivalent_pairs():
    pairs = [("p & (q => p)", "(q => p) & p"), ("!(p => q) | p", "p | !(p => q)"), ("exists x. (P(x) => p)", "exists y. (P(y) => p)")]
    for f, g in pairs:
        assert equiv_strict(P(f), P(g), TINY, POINTWISE).equivalent
        assert equiv_strict(P(f), P(g), TINY, ASSERTIONAL).equivalent


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_strict_free_agreement(seed):
    rng = random.Random(seed)
    sig = Signature({"p", "q"}, {"P": 1})
    f, g = random_formula(rng, sig, 3, strict=False), random_formula(rng, sig, 3, strict=False)
    b = Bounds(max_domain=2, max_worlds=1)
    material = equiv_material(f, g, b)
    strict = equiv_strict(f, g, b, POINTWISE)
    assert material.equivalent == strict.equivalent
    if not material.equivalent:
        assert not equiv_strict(f, g, Bounds(max_domain=2, max_worlds=2)).equivalent


# --- laws -------------------------------------------------------------------


@pytest.mark.parametrize(
    "name, f, g, survives",
    [
        ("cases", "(p | q) => r", "(p => r) & (q => r)", True),
        ("conjunctive-antecedent-split", "(p & q) => r", "(p => r) | (q => r)", False),
        ("biconditional-split", "p <=> q", "(p => q) & (q => p)", True),
        ("contraposition", "p => q", "!q => !p", True),
    ],
)
def test_law_survival(name, f, g, survives):
    report = law_survival(name, P(f), P(g))
    assert report.classical.equivalent
    assert report.strict.equivalent is survives
    assert report.survives is survives


def test_catalog():
    reports = {r.name: r for r in run_catalog()}
    assert {n for n, r in reports.items() if r.survives} == {"cases", "cases-3", "biconditional-split", "contraposition"}
    assert reports["fo-paradox"].classical.equivalent and not reports["fo-paradox"].strict.equivalent
