"""
System Z: κ^z(ω) = j+1 for the latest partition level Δ^j with a conditional
falsified by ω, and 0 for worlds falsifying nothing.
"""

import numpy as np

from condsplit.conditionals import BeliefBase
from condsplit.logic import Formula
from condsplit.operators.base import InferenceOperator, OcfReasoner, Reasoner
from condsplit.ranking import RankingFunction, infer


def system_z_ocf(delta: BeliefBase) -> RankingFunction:
    def build() -> RankingFunction:
        falsify = delta.falsify_matrix
        ranks = np.zeros(delta.signature.num_worlds, dtype=np.int64)
        for level, columns in enumerate(delta.level_positions()):
            ranks[falsify[:, columns].any(axis=1)] = level + 1
        return RankingFunction(delta.signature, ranks)

    return delta.cached("kappa_z", build)


def system_z_infer(delta: BeliefBase, a: Formula, b: Formula) -> bool:
    return infer(system_z_ocf(delta), a, b)


class SystemZ(InferenceOperator):
    name = "systemz"
    description = "System Z, the inference relation of κ^z"

    def _build(self, base: BeliefBase) -> Reasoner:
        return OcfReasoner(base, system_z_ocf(base))
