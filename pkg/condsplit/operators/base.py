"""
Uniform interface of inductive inference operators.

An operator maps a belief base to a Reasoner, which answers queries A |~ B
over that base. Reasoners are built once per base and cached on it.
"""

from abc import ABC, abstractmethod

import numpy as np

from condsplit.conditionals import BeliefBase
from condsplit.logic import Formula, models
from condsplit.ranking import RankingFunction

_NO_RANK = np.iinfo(np.int64).max


class Reasoner(ABC):
    """One operator bound to one belief base."""

    def __init__(self, base: BeliefBase):
        self.base = base
        self.signature = base.signature

    @abstractmethod
    def entails_masks(self, a: np.ndarray, b: np.ndarray) -> bool:
        """A |~ B for world masks over the base's signature."""

    def entails_many(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Batched queries: row q of `a` and `b` is one query."""
        return np.array([self.entails_masks(x, y) for x, y in zip(a, b)], dtype=bool)

    def infer(self, a: Formula, b: Formula) -> bool:
        a_mask = models(a, self.signature).mask
        if not a_mask.any():
            return True
        return self.entails_masks(a_mask, models(b, self.signature).mask)

    def explain(self, a: Formula, b: Formula) -> list[str]:
        return []


class OcfReasoner(Reasoner):
    """Inference induced by one OCF: A |~ B iff κ(AB) < κ(A!B)."""

    def __init__(self, base: BeliefBase, kappa: RankingFunction):
        super().__init__(base)
        self.kappa = kappa
        self._ranks = kappa.ranks.astype(np.int64)

    def entails_masks(self, a: np.ndarray, b: np.ndarray) -> bool:
        if not a.any():
            return True
        return self.kappa.rank_of_mask(a & b) < self.kappa.rank_of_mask(a & ~b)

    def entails_many(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        verified = np.where(a & b, self._ranks, _NO_RANK).min(axis=1)
        falsified = np.where(a & ~b, self._ranks, _NO_RANK).min(axis=1)
        return ~a.any(axis=1) | (verified < falsified)

    def explain(self, a: Formula, b: Formula) -> list[str]:
        a_mask = models(a, self.signature).mask
        b_mask = models(b, self.signature).mask
        return [
            f"κ({a} ∧ {b}) = {self.kappa.rank_of_mask(a_mask & b_mask)}",
            f"κ({a} ∧ !({b})) = {self.kappa.rank_of_mask(a_mask & ~b_mask)}",
        ]


class InferenceOperator(ABC):
    """Maps a belief base to its inference relation."""

    name: str = ""
    description: str = ""

    @abstractmethod
    def _build(self, base: BeliefBase) -> Reasoner: ...

    def reasoner(self, base: BeliefBase) -> Reasoner:
        return base.cached(f"reasoner:{self.name}", lambda: self._build(base))

    def query(self, base: BeliefBase, a: Formula, b: Formula) -> bool:
        return self.reasoner(base).infer(a, b)
