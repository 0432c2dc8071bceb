from condsplit.crep import STRATEGIES, get_strategy
from condsplit.errors import UnknownOperator
from condsplit.operators.base import InferenceOperator
from condsplit.operators.crep import CCore, CInference, StrategyOperator
from condsplit.operators.lex import Lex
from condsplit.operators.systemw import SystemW
from condsplit.operators.systemz import SystemZ
from condsplit.operators.zw import ZW


class OperatorRegistry:
    """Registry for managing available inference operators"""

    def __init__(self):
        self._operators: dict[str, InferenceOperator] = {}
        self._register_all_operators()

    def _register_all_operators(self):
        """Register all available operators"""
        self._operators.update(
            {
                operator.name: operator
                for operator in (SystemZ(), Lex(), SystemW(), ZW(), CCore(), CInference())
            }
        )
        for strategy in STRATEGIES.values():
            operator = StrategyOperator(strategy)
            self._operators[operator.name] = operator

    def get(self, name: str) -> InferenceOperator:
        """Get an operator by name; `crep:<strategy>` resolves any known strategy"""
        if name in self._operators:
            return self._operators[name]
        if name.startswith("crep:"):
            return StrategyOperator(get_strategy(name.removeprefix("crep:")))
        raise UnknownOperator(
            f"Unknown operator '{name}'; available: {', '.join(self._operators)}"
        )

    def get_all_operators(self) -> dict[str, InferenceOperator]:
        """Get all registered operators"""
        return self._operators.copy()


# Global registry instance
operator_registry = OperatorRegistry()


def get_operator(name: str) -> InferenceOperator:
    """Get an operator from the global registry"""
    return operator_registry.get(name)


def get_all_operators() -> dict[str, InferenceOperator]:
    """Get all operators from the global registry"""
    return operator_registry.get_all_operators()
