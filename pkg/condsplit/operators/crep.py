"""
Operators over c-representations: the core operator C^ccore, skeptical
c-inference and one operator per selection strategy.
"""

import numpy as np

from condsplit.conditionals import BeliefBase
from condsplit.crep import (
    ImpactVector,
    SelectionStrategy,
    default_bound,
    effective_bound,
    induced_ocf,
    minimal_core_vector,
    solution_ocfs,
    strategy_vector,
)
from condsplit.logic import Formula, models
from condsplit.operators.base import InferenceOperator, OcfReasoner, Reasoner

_NO_RANK = np.iinfo(np.int64).max
_CHUNK_ELEMENTS = 1 << 22


class CCore(InferenceOperator):
    name = "ccore"
    description = "inference of the minimal core c-representation"

    def _build(self, base: BeliefBase) -> Reasoner:
        return OcfReasoner(base, induced_ocf(base, minimal_core_vector(base)))


class CInferenceReasoner(Reasoner):
    """Skeptical inference over all c-representations with impacts up to a bound.

    Below the completeness threshold 2^|Δ| a query without countermodel is
    undecided and is not accepted, unless `within_bound` asks for the bounded
    relation itself: acceptance by every solution with impacts up to the bound.
    """

    def __init__(self, base: BeliefBase, bound: int, within_bound: bool = False):
        super().__init__(base)
        self.bound = bound
        self.threshold = default_bound(base)
        self.complete = bound >= self.threshold
        self.within_bound = within_bound
        batches = list(solution_ocfs(base, bound))
        width = base.signature.num_worlds
        solutions = (
            np.concatenate([s for s, _ in batches]) if batches else np.zeros((0, len(base)), np.int64)
        )
        kappas = (
            np.concatenate([k for _, k in batches]) if batches else np.zeros((0, width), np.int64)
        )
        self.solution_count = len(solutions)
        # solutions inducing the same ranks answer every query alike
        if len(kappas):
            kappas, first = np.unique(kappas, axis=0, return_index=True)
            solutions = solutions[first]
        self.kappas, self.solutions = kappas, solutions

    def entails_masks(self, a: np.ndarray, b: np.ndarray) -> bool:
        return bool(self.entails_many(a[None, :], b[None, :])[0])

    def entails_many(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        result = np.empty(len(a), dtype=bool)
        chunk = max(1, _CHUNK_ELEMENTS // max(1, self.kappas.size))
        for start in range(0, len(a), chunk):
            verified = (a & b)[start : start + chunk]
            falsified = (a & ~b)[start : start + chunk]
            rank_verified = np.where(verified[:, None, :], self.kappas[None], _NO_RANK).min(axis=2)
            rank_falsified = np.where(falsified[:, None, :], self.kappas[None], _NO_RANK).min(axis=2)
            accepted = (rank_verified < rank_falsified).all(axis=1)
            if not (self.complete or self.within_bound):
                accepted[:] = False
            result[start : start + chunk] = ~a[start : start + chunk].any(axis=1) | accepted
        return result

    def countermodel(self, a: Formula, b: Formula) -> ImpactVector | None:
        a_mask = models(a, self.signature).mask
        b_mask = models(b, self.signature).mask
        if not a_mask.any():
            return None
        rank_verified = np.where(a_mask & b_mask, self.kappas, _NO_RANK).min(axis=1)
        rank_falsified = np.where(a_mask & ~b_mask, self.kappas, _NO_RANK).min(axis=1)
        bad = np.flatnonzero(~(rank_verified < rank_falsified))
        return ImpactVector.for_base(self.base, self.solutions[bad[0]]) if len(bad) else None

    def explain(self, a: Formula, b: Formula) -> list[str]:
        lines = [f"{self.solution_count} c-representations with impacts ≤ {self.bound}"]
        if not self.complete:
            relation = "bounded relation" if self.within_bound else "unproven answers rejected"
            lines[0] += f" (incomplete: bound below {self.threshold}, {relation})"
        counter = self.countermodel(a, b)
        if counter is not None:
            lines.append(f"countermodel η = {counter}")
        return lines


class CInference(InferenceOperator):
    name = "cinf"
    description = "skeptical c-inference, bounded by the candidate budget"

    def __init__(self, bound: int | None = None, within_bound: bool = False):
        self.bound = bound
        self.within_bound = within_bound

    def bounded(self, bound: int) -> "CInference":
        """The bounded skeptical relation at a fixed bound, for any base."""
        return CInference(bound=bound, within_bound=True)

    def reasoner(self, base: BeliefBase) -> Reasoner:
        base.require_partition()
        requested = default_bound(base) if self.bound is None else self.bound
        used = effective_bound(base, requested)
        return base.cached(
            f"reasoner:{self.name}:{used}:{self.within_bound}",
            lambda: CInferenceReasoner(base, used, self.within_bound),
        )

    def _build(self, base: BeliefBase) -> Reasoner:
        return self.reasoner(base)


class StrategyOperator(InferenceOperator):
    """C^σ: inference of the c-representation picked by a selection strategy."""

    def __init__(self, strategy: SelectionStrategy):
        self.strategy = strategy
        self.name = f"crep:{strategy.name}"
        self.description = f"c-representation selected by {strategy.description}"

    def _build(self, base: BeliefBase) -> Reasoner:
        return OcfReasoner(base, induced_ocf(base, strategy_vector(base, self.strategy)))
