"""
condsplit: conditional belief bases, their syntax splittings and the
inductive inference operators that respect them.
"""

from .conditionals import (
    BeliefBase,
    Conditional,
    Inconsistent,
    TolerancePartition,
    tolerance_partition,
    tolerates,
    ver_fal_sets,
    xi_level,
    xi_total,
)
from .crep import (
    ImpactVector,
    c_infer,
    ccore_infer,
    check_ip_cspg,
    compose_solutions,
    constraint_sets,
    cr_plus,
    enumerate_solutions,
    induced_ocf,
    is_solution,
    minimal_core_vector,
    reduce,
    split_solution,
    strategy_infer,
)
from .errors import CondSplitError
from .kb import dump_kb, load_kb, parse_kb
from .logic import Signature, World, WorldSet, models, parse_formula
from .operators import (
    get_operator,
    lex_infer,
    system_z_infer,
    system_z_ocf,
    w_infer,
    zw_infer,
)
from .postulates import check_cindg, check_crelg, check_csynsplitg, check_di_tv
from .ranking import RankingFunction, accepts, infer, kappa_independent, marginal
from .splitting import Splitting, enumerate_splittings, induce

__all__ = [
    # Logic
    "Signature",
    "World",
    "WorldSet",
    "models",
    "parse_formula",
    # Conditionals
    "Conditional",
    "BeliefBase",
    "TolerancePartition",
    "Inconsistent",
    "tolerates",
    "tolerance_partition",
    "ver_fal_sets",
    "xi_level",
    "xi_total",
    # Ranking functions
    "RankingFunction",
    "accepts",
    "infer",
    "marginal",
    "kappa_independent",
    # Splittings
    "Splitting",
    "induce",
    "enumerate_splittings",
    # Operators
    "get_operator",
    "system_z_ocf",
    "system_z_infer",
    "lex_infer",
    "w_infer",
    "zw_infer",
    # c-Representations
    "ImpactVector",
    "constraint_sets",
    "reduce",
    "cr_plus",
    "is_solution",
    "induced_ocf",
    "enumerate_solutions",
    "minimal_core_vector",
    "ccore_infer",
    "c_infer",
    "strategy_infer",
    "check_ip_cspg",
    "split_solution",
    "compose_solutions",
    # Postulates
    "check_di_tv",
    "check_crelg",
    "check_cindg",
    "check_csynsplitg",
    # Files and errors
    "load_kb",
    "parse_kb",
    "dump_kb",
    "CondSplitError",
]
