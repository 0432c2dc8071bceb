"""
Inductive inference operators and their registry.
"""

from .base import InferenceOperator, OcfReasoner, Reasoner
from .crep import CCore, CInference, CInferenceReasoner, StrategyOperator
from .lex import Comparison, Lex, lex_compare, lex_infer, lex_ranks, lex_vector
from .registry import OperatorRegistry, get_all_operators, get_operator, operator_registry
from .systemw import SystemW, SystemWReasoner, preference_matrix, w_dot, w_infer, w_preferred
from .systemz import SystemZ, system_z_infer, system_z_ocf
from .zw import ZW, zw_infer

__all__ = [
    # Interface
    "InferenceOperator",
    "Reasoner",
    "OcfReasoner",
    # System Z
    "SystemZ",
    "system_z_ocf",
    "system_z_infer",
    # Lexicographic inference
    "Lex",
    "Comparison",
    "lex_vector",
    "lex_compare",
    "lex_ranks",
    "lex_infer",
    # System W
    "SystemW",
    "SystemWReasoner",
    "w_preferred",
    "preference_matrix",
    "w_infer",
    "w_dot",
    # C^zw
    "ZW",
    "zw_infer",
    # c-representations
    "CCore",
    "CInference",
    "CInferenceReasoner",
    "StrategyOperator",
    # Registry
    "OperatorRegistry",
    "operator_registry",
    "get_operator",
    "get_all_operators",
]
