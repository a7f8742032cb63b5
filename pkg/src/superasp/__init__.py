"""Super-coherence toolkit for propositional answer set programs."""

from .analysis import ClassReport, DependencyGraph, classify, dependency_graph
from .embedding import (
    EmbeddingArtifact,
    embed_brave_query,
    embed_cautious_query,
    embed_coherence,
    recover_answer_sets,
    shift_transform,
    strat_shift,
    strat_transform,
)
from .errors import (
    ConstraintPresent,
    GuardExceeded,
    InvariantViolation,
    NotNormal,
    ParseError,
    UniverseMismatch,
    UnknownAtom,
)
from .qbf import (
    Qbf2,
    Qbf3,
    ReductionReport,
    encode_disjunctive,
    encode_normal,
    parse_qbf,
    qbf2_valid,
    qbf3_valid,
    verify_phi_norm_reduction,
    verify_phi_reduction,
)
from .semantics import (
    AnswerSetReport,
    Interpretation,
    answer_sets,
    is_answer_set,
    query,
    reduct,
    satisfies,
)
from .supercoherence import (
    EquivVerdict,
    ScVerdict,
    exists_coherent_extension,
    is_super_coherent,
    projected_uniform_equiv,
)
from .syntax import (
    AtomTable,
    Program,
    Rule,
    atoms_of,
    eliminate_constraints,
    parse_program,
    render_program,
)

__version__ = "0.1.0"
