"""groupsmith: economical root adjunction and equation solving over
finite groups, with exhaustive lower-bound verification."""

__version__ = "0.1.0"

from .core import (
    AtLeast,
    Element,
    Exact,
    Group,
    PermGroup,
    Subgroup,
    TableGroup,
    direct_product,
    find_odd_abelian_normal,
    find_odd_central,
    internal_odd_sqrt,
    mutual_commutator,
    normal_closure,
    roots_in_group,
    subgroup_generated,
    table_from_generators,
    verify_group_axioms,
)
from .constructions import (
    WreathGroup,
    lemma7_subgroup,
    lemma8_construct,
    levin_root,
    named_group,
    prop1_embedding,
    wreath_cyclic,
)
from .equations import (
    PositiveEquation,
    adjoin_nth_root,
    evaluate,
    levin_solve,
    parse_equation,
    solve_in_group,
)
from .dihedral import (
    ConjugateGraph,
    Theorem1Report,
    build_conjugate_graph,
    conjugation_parity,
    lemma2_check,
    lemma3_check,
    lemma5_lemma6_checks,
    minus_one_is_square_mod_p,
    theorem1_trace,
)
from .search import (
    SearchReport,
    closure_order_capped,
    embed_dihedral,
    min_overgroup_search,
    square_roots_in_Sm,
)
from .errors import CapExceeded, Falsification, GroupsmithError, ParseError, PreconditionError

__all__ = [
    "AtLeast",
    "CapExceeded",
    "ConjugateGraph",
    "Element",
    "Exact",
    "Falsification",
    "Group",
    "GroupsmithError",
    "ParseError",
    "PermGroup",
    "PositiveEquation",
    "PreconditionError",
    "SearchReport",
    "Subgroup",
    "TableGroup",
    "Theorem1Report",
    "WreathGroup",
    "adjoin_nth_root",
    "build_conjugate_graph",
    "closure_order_capped",
    "conjugation_parity",
    "direct_product",
    "embed_dihedral",
    "evaluate",
    "find_odd_abelian_normal",
    "find_odd_central",
    "internal_odd_sqrt",
    "lemma2_check",
    "lemma3_check",
    "lemma5_lemma6_checks",
    "lemma7_subgroup",
    "lemma8_construct",
    "levin_root",
    "levin_solve",
    "min_overgroup_search",
    "minus_one_is_square_mod_p",
    "mutual_commutator",
    "named_group",
    "normal_closure",
    "parse_equation",
    "prop1_embedding",
    "roots_in_group",
    "solve_in_group",
    "square_roots_in_Sm",
    "subgroup_generated",
    "table_from_generators",
    "theorem1_trace",
    "verify_group_axioms",
    "wreath_cyclic",
]
