"""Material versus law-like (world-quantified) conditionals.

Parse formulas, lift them into an explicitly world-indexed form, and
decide classical and strict equivalence by bounded model enumeration.
"""

from .equivalence import (
    ASSERTIONAL,
    POINTWISE,
    Bounds,
    LawReport,
    Verdict,
    equiv_material,
    equiv_material_fo,
    equiv_material_prop,
    equiv_strict,
    law_survival,
    replay,
    run_catalog,
)
from .errors import (
    ArityMismatch,
    CapExceeded,
    EvaluationError,
    FormulaSyntaxError,
    FreeVariable,
    LogicError,
    UndeclaredAtom,
    UnsupportedConnective,
    WorldNotInModel,
)
from .formula import (
    And,
    Exists,
    Forall,
    Iff,
    MaterialImp,
    Not,
    Or,
    PredAtom,
    PropAtom,
    Signature,
    StrictImp,
    erase_strict,
    free_vars,
    render,
    signature_of,
    well_formed,
)
from .material import (
    Structure,
    enumerate_structures,
    enumerate_valuations,
    eval_fo,
    eval_prop,
)
from .parser import ParseResult, parse, parse_formula
from .worlds import (
    KripkeModel,
    WorldAtom,
    WorldForall,
    WorldPred,
    assert_closure,
    encode_model,
    eval_strict_assert,
    eval_strict_at,
    eval_via_encoding,
    lift,
    relativize,
)

__version__ = "0.1.0"
