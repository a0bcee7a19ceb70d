"""Hypothesis strategies for formula trees.

Atom names and variable names are drawn from disjoint pools so every
generated tree is accepted by the parser regardless of binding.
"""

import random

from hypothesis import strategies as st

from lawlike.formula import (
    And,
    Exists,
    Forall,
    Iff,
    MaterialImp,
    Not,
    Or,
    PredAtom,
    PropAtom,
    StrictImp,
)
from lawlike.generate import DEFAULT_SIGNATURE, random_formula, random_model

ATOMS = ("p", "q", "r", "s")
VARS = ("x", "y", "z")
ARITIES = {"P": 1, "Q": 2, "R": 1}

var = st.sampled_from(VARS)
prop_atom = st.sampled_from(ATOMS).map(PropAtom)
pred_atom = st.sampled_from(sorted(ARITIES)).flatmap(
    lambda name: st.tuples(*[var] * ARITIES[name]).map(lambda args: PredAtom(name, args))
)

BINARY = (And, Or, MaterialImp, StrictImp, Iff)


def _extend(children):
    return st.one_of(
        children.map(Not),
        st.tuples(st.sampled_from(BINARY), children, children).map(lambda t: t[0](t[1], t[2])),
        st.tuples(st.sampled_from((Forall, Exists)), var, children).map(lambda t: t[0](t[1], t[2])),
    )


# open formulas: predicate arguments may be free
formulas = st.recursive(prop_atom | pred_atom, _extend, max_leaves=12)

propositional = st.recursive(
    prop_atom,
    lambda kids: st.one_of(
        kids.map(Not),
        st.tuples(st.sampled_from((And, Or, MaterialImp, Iff)), kids, kids).map(lambda t: t[0](t[1], t[2])),
    ),
    max_leaves=10,
)

# closed sentences and models come from the seeded generator, driven by hypothesis seeds
sentences = st.integers(0, 2**32 - 1).map(lambda seed: random_formula(random.Random(seed), DEFAULT_SIGNATURE, 4))
models = st.integers(0, 2**32 - 1).map(lambda seed: random_model(random.Random(seed)))
