"""
Lexicographic inference.

Worlds are compared by their vectors (|ξ^0(ω)|, ..., |ξ^k(ω)|) with the
highest partition level most significant. The comparison is a total preorder,
so it is materialized as dense ranks and inference reuses the OCF rule.
"""

from condsplit._compat import StrEnum

import numpy as np

from condsplit.conditionals import BeliefBase, xi_counts
from condsplit.logic import Formula, World, models
from condsplit.operators.base import InferenceOperator, OcfReasoner, Reasoner
from condsplit.ranking import RankingFunction, infer


class Comparison(StrEnum):
    LESS = "less"
    EQUAL = "equal"
    GREATER = "greater"


def lex_vector(delta: BeliefBase, world: World) -> tuple[int, ...]:
    return tuple(int(v) for v in xi_counts(delta)[world.index])


def lex_compare(delta: BeliefBase, w1: World, w2: World) -> Comparison:
    first = lex_vector(delta, w1)[::-1]
    second = lex_vector(delta, w2)[::-1]
    if first < second:
        return Comparison.LESS
    if first > second:
        return Comparison.GREATER
    return Comparison.EQUAL


def lex_ranks(delta: BeliefBase) -> RankingFunction:
    """Dense ranks of the lex preorder: equal vectors share a rank."""

    def build() -> RankingFunction:
        counts = xi_counts(delta)
        if counts.shape[1] == 0:
            return RankingFunction.zero(delta.signature)
        _, inverse = np.unique(counts[:, ::-1], axis=0, return_inverse=True)
        return RankingFunction(delta.signature, inverse.reshape(-1))

    return delta.cached("lex_ranks", build)


def lex_infer(delta: BeliefBase, a: Formula, b: Formula) -> bool:
    return infer(lex_ranks(delta), a, b)


class LexReasoner(OcfReasoner):
    def explain(self, a: Formula, b: Formula) -> list[str]:
        counts = xi_counts(self.base)
        lines = []
        for label, worlds in (("A ∧ B", a & b), ("A ∧ !B", a & ~b)):
            mask = models(worlds, self.signature).mask
            if not mask.any():
                lines.append(f"{label}: unsatisfiable")
                continue
            best = int(np.flatnonzero(mask)[np.argmin(self._ranks[mask])])
            vector = tuple(int(v) for v in counts[best])
            lines.append(f"{label}: minimal world {self.signature.world(best)} with vector {vector}")
        return lines


class Lex(InferenceOperator):
    name = "lex"
    description = "lexicographic inference over ξ-count vectors"

    def _build(self, base: BeliefBase) -> Reasoner:
        return LexReasoner(base, lex_ranks(base))
