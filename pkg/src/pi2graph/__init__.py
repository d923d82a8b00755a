"""Discrete fundamental groups of finite graphs.

Closed walks of a graph modulo substitution/insertion/deletion rewriting
form a group under concatenation (4-cycles act as relations; a variant
also fills 3-cycles).  This package computes finite presentations of
these groups, validates cover-gluing hypotheses and colimit agreement,
and constructs, for any finite group given by multiplication table, a
graph realizing it as the closed-walk group.
"""

from .graph import (
    Cover,
    Graph,
    GraphError,
    GluingError,
    IdentificationMap,
    connected_components,
    cycle_graph,
    disjoint_union,
    empty_graph,
    enumerate_cycles,
    glue,
    is_connected,
    path_graph,
    quotient_by_action,
    walk_counts_by_length,
)
from .homotopy import (
    HomotopyMove,
    HomotopyVerdict,
    Walk,
    WalkError,
    apply_move,
    concat,
    homotopic,
    reduce,
    reverse,
)
from .presentation import (
    AbelianInvariants,
    GroupPresentation,
    PresentationError,
    SpanningTree,
    Word,
    abelianize,
    pi12_presentation,
    tietze_simplify,
    walk_to_word,
)
from .snf import smith_normal_form
from .coset import CosetResult, todd_coxeter
from .svk import (
    BaseSet,
    CoverError,
    CoverReport,
    SvkVerdict,
    amalgamated_presentation,
    check_base_set,
    check_cover,
    groupoid_colimit_group,
    verify_svk,
)
from .classifying import (
    FiniteGroup,
    GroupAction,
    GroupInputError,
    LemmaReport,
    build_B,
    build_D,
    build_Xtilde,
    build_classifying_graph,
    build_grid22,
    check_lemma_conditions,
    cyclic_group,
    dihedral_group,
    group_from_spec,
    product_group,
    symmetric_group,
)

__version__ = "0.1.0"
