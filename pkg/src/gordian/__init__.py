"""Certificate-producing decision engine for substructural logics that
reduce to their multiplicative fragment via a theorem of alternatives."""

from .chains import (
    ChainAlgebra,
    abelian_grid_refute,
    brute_force_consequence,
    eval_abelian,
    eval_formula,
    sugihara_chain,
)
from .density import (
    DensityCertificate,
    DensityReport,
    check_density_property,
    density_goal,
    density_precondition,
    density_transform,
)
from .engine import (
    ConsequenceResult,
    EngineBudget,
    ProofResult,
    ToACertificate,
    check_excluded_middle,
    check_expansion,
    combination_formula,
    expand_combination,
    prove_consequence,
    prove_disjunction,
)
from .errors import (
    ArityError,
    EnumerationBudgetExceededError,
    FormulaSyntaxError,
    GordianError,
    InvalidCertificateError,
    LogicWithoutToAError,
    MissingMetavariableError,
    MissingVariableError,
    NotMultiplicativeError,
    PreconditionFailedError,
    SizeBudgetExceededError,
    UnknownLogicError,
    UnsupportedLogicError,
)
from .interpolate import (
    InterpolationReport,
    lift_interpolant,
    mult_uniform_interpolant,
    verify_interpolant,
)
from .linalg import (
    ConeMembership,
    IntMatrix,
    Kernel,
    LinForm,
    StrictDual,
    gordan,
    nonneg_combination,
    project_fm,
    translate_abelian,
)
from .logics import (
    AxiomSchema,
    LogicSpec,
    RuleSchema,
    check_toa_condition,
    instantiate,
    knotted_logic,
    lookup_logic,
    match_template,
    registered_logics,
)
from .normalize import Goal, MultClause, decompose_consequence, to_mult_clauses
from .oracles import (
    ChainExhaustiveWitness,
    Countermodel,
    DerivationLine,
    DerivationWitness,
    HilbertBudget,
    LinearWitness,
    Proved,
    Refuted,
    Unknown,
    abelian_decide,
    countermodel_refutes,
    decide,
    hilbert_search,
    sugihara_decide,
    verify_derivation,
)
from .syntax import (
    Conj,
    Disj,
    Formula,
    Fuse,
    Imp,
    MVar,
    ONE,
    One,
    Var,
    ZERO,
    Zero,
    is_multiplicative,
    neg,
    parse,
    parse_template,
    plus,
    power,
    render,
    scalar,
    substitute,
    variables,
)

__version__ = "0.1.0"
