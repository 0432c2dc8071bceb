"""
C^zw: System W on bases with a genuine safe splitting, System Z otherwise.
"""

import logfire

from condsplit.conditionals import BeliefBase
from condsplit.logic import Formula
from condsplit.operators.base import InferenceOperator, OcfReasoner, Reasoner
from condsplit.operators.systemw import SystemWReasoner, w_infer
from condsplit.operators.systemz import system_z_infer, system_z_ocf
from condsplit.splitting import has_genuine_safe_splitting


def zw_infer(delta: BeliefBase, a: Formula, b: Formula) -> bool:
    delta.require_partition()
    if has_genuine_safe_splitting(delta):
        return w_infer(delta, a, b)
    return system_z_infer(delta, a, b)


class ZW(InferenceOperator):
    name = "zw"
    description = "System W if a genuine safe splitting exists, else System Z"

    def _build(self, base: BeliefBase) -> Reasoner:
        base.require_partition()
        uses_w = has_genuine_safe_splitting(base)
        logfire.info("C^zw resolved", base=base.name, delegate="systemw" if uses_w else "systemz")
        if uses_w:
            return SystemWReasoner(base)
        return OcfReasoner(base, system_z_ocf(base))
