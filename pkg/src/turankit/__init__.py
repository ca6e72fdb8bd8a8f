"""turankit: an exact laboratory for small hypergraph Turán-type problems.

Submodules:
- core     — hypergraph values, joins, links, canonical forms, .hg files
- zoo      — named constructions and forbidden configurations
- patterns — patterns, blowups, exact part-size optimization, Lagrangians
- matching — embeddings, disjoint-copy numbers, rainbow matchings
- solver   — exact extremal numbers/graphs by branch-and-bound, tables
- genfree  — isomorph-free generation of feasible graphs
- verify   — executable checks of formulas, lemmas, and facts
- cli      — command-line interface (`turankit ...`)
"""

from .core import (
    CanonicalForm,
    DegreeProfile,
    Hypergraph,
    are_isomorphic,
    canonical_form,
    complete,
    disjoint_union,
    dump_hg,
    dumps_hg,
    empty,
    general_join,
    join,
    load_hg,
    loads_hg,
)
from .errors import (
    BudgetExceededError,
    FormatError,
    IndeterminateBracketsError,
    TurankitError,
)
from .genfree import count_free, free_graphs
from .matching import (
    Embedding,
    MatchingWitness,
    embed,
    has_disjoint_config,
    is_free,
    matching_number,
    rainbow_matching,
)
from .patterns import (
    LagrangianEstimate,
    MinimalityReport,
    Pattern,
    blowup,
    blowup_count,
    density_poly_eval,
    dump_pat,
    dumps_pat,
    full_construction_assignment,
    is_minimal,
    is_subconstruction,
    lagrangian,
    lambda_n,
    load_pat,
    loads_pat,
    remove_part,
)
from .solver import (
    ForbiddenConfig,
    TuranRecord,
    TuranTable,
    config_of,
    enumerate_extremal,
    ex_table,
    max_edges,
    pi_upper,
)
from .verify import (
    BoundsParams,
    CheckReport,
    GrowthFn,
    Violation,
    check_boundedness,
    check_facts,
    check_lemmas,
    check_main_theorem,
    check_matching_theorems,
    check_rainbow,
    check_remark_2k3,
    check_smoothness,
    known_density,
    parse_growth,
    trim_low_degree,
)
from .zoo import ZooSpec, chromatic_number, construct, is_edge_critical

__version__ = "0.1.0"

__all__ = [
    "BoundsParams",
    "BudgetExceededError",
    "CanonicalForm",
    "CheckReport",
    "DegreeProfile",
    "Embedding",
    "ForbiddenConfig",
    "FormatError",
    "GrowthFn",
    "Hypergraph",
    "IndeterminateBracketsError",
    "LagrangianEstimate",
    "MatchingWitness",
    "MinimalityReport",
    "Pattern",
    "TuranRecord",
    "TuranTable",
    "TurankitError",
    "Violation",
    "ZooSpec",
    "are_isomorphic",
    "blowup",
    "blowup_count",
    "canonical_form",
    "check_boundedness",
    "check_facts",
    "check_lemmas",
    "check_main_theorem",
    "check_matching_theorems",
    "check_rainbow",
    "check_remark_2k3",
    "check_smoothness",
    "chromatic_number",
    "complete",
    "config_of",
    "construct",
    "count_free",
    "density_poly_eval",
    "disjoint_union",
    "dump_hg",
    "dump_pat",
    "dumps_hg",
    "dumps_pat",
    "embed",
    "empty",
    "enumerate_extremal",
    "ex_table",
    "free_graphs",
    "full_construction_assignment",
    "general_join",
    "has_disjoint_config",
    "is_edge_critical",
    "is_free",
    "is_minimal",
    "is_subconstruction",
    "join",
    "known_density",
    "lagrangian",
    "lambda_n",
    "load_hg",
    "load_pat",
    "loads_hg",
    "loads_pat",
    "matching_number",
    "max_edges",
    "parse_growth",
    "pi_upper",
    "rainbow_matching",
    "remove_part",
    "trim_low_degree",
    "__version__",
]
