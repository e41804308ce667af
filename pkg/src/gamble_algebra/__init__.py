"""Exact information algebra of coherent sets of desirable gambles.

Finite possibility spaces, partitions as questions, finitely generated
cones of gambles in exact rational arithmetic, and the combination /
extraction calculus on top of them, together with its atoms and labeled
views.
"""

from .spaces import (
    PossibilitySpace,
    Partition,
    Relation,
    SpaceMismatch,
    bottom,
    commutes,
    cond_independent,
    independent,
    join,
    leq,
    meet,
    partition,
    relation_of,
    star_product,
    top,
)
from .cones import (
    ConeH,
    ConeV,
    Gamble,
    MeasurableSubspace,
    cone_intersect,
    cone_member,
    constant,
    dd_convert,
    dd_convert_back,
    gamble,
    intersect_subspace,
    is_measurable,
    measurable_subspace,
    unit_indicator,
    zero_nontrivial,
)
from .desirability import (
    PhiElement,
    closure,
    generators_without_units,
    natural_extension,
    phi_equal,
    phi_leq,
    phi_meet,
    phi_member,
    phi_top,
    phi_unit,
)
from .algebra import (
    LawRecord,
    QuestionSet,
    Report,
    axiom_suite,
    combine,
    extract,
    is_support,
    question_set,
)
from .atoms import (
    MaximalSet,
    NotMaximal,
    blockwise_min,
    dominates,
    expectations,
    extend_to_maximal,
    lex_member,
    lex_new,
    local_atom_member,
    marginal_chain,
    separating_superset,
)
from .labeled import (
    LabeledPiece,
    TildePiece,
    from_tilde,
    lab_combine,
    labeled,
    piece_equal,
    tilde_combine,
    tilde_equal,
    tilde_transport,
    to_tilde,
    transport,
)
from .multivariate import (
    ConsistencyError,
    VariableSystem,
    commuting_extract_compose,
    cylinder,
    subset_ci,
    variable_system,
)

__version__ = "0.1.0"
