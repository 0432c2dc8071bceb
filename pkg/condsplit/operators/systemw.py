"""
System W.

ω <^w ω′ holds when, scanning the partition from its highest level down, the
first level where the falsified sets differ has ξ^l(ω) ⊊ ξ^l(ω′). A query
A |~ B holds when every A!B-world is dominated by some AB-world.
"""

import numpy as np

from condsplit.conditionals import BeliefBase
from condsplit.logic import Formula, World, models
from condsplit.operators.base import InferenceOperator, Reasoner

_BLOCK = 512
_MATRIX_WORLDS = 4096


def preference_block(delta: BeliefBase, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    """Boolean matrix whose entry (i, j) is xs[i] <^w ys[j] (world indices)."""
    falsify = delta.falsify_matrix
    result = np.zeros((len(xs), len(ys)), dtype=bool)
    decided = np.zeros_like(result)
    for columns in reversed(delta.level_positions()):
        fx = falsify[np.ix_(xs, columns)][:, None, :]
        fy = falsify[np.ix_(ys, columns)][None, :, :]
        differ = (fx != fy).any(axis=-1)
        subset = ~(fx & ~fy).any(axis=-1)
        result |= differ & subset & ~decided
        decided |= differ
    return result


def w_preferred(delta: BeliefBase, w1: World, w2: World) -> bool:
    """ω1 <^w ω2."""
    return bool(preference_block(delta, np.array([w1.index]), np.array([w2.index]))[0, 0])


def preference_matrix(delta: BeliefBase) -> np.ndarray:
    """The full <^w relation as a (worlds × worlds) boolean matrix."""

    def build() -> np.ndarray:
        worlds = np.arange(delta.signature.num_worlds)
        matrix = preference_block(delta, worlds, worlds)
        matrix.flags.writeable = False
        return matrix

    return delta.cached("w_preference", build)


def _dominated(delta: BeliefBase, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    """For each world in ys, whether some world in xs is <^w-below it."""
    covered = np.zeros(len(ys), dtype=bool)
    for start in range(0, len(xs), _BLOCK):
        block = xs[start : start + _BLOCK]
        open_ = np.flatnonzero(~covered)
        for inner in range(0, len(open_), _BLOCK):
            targets = open_[inner : inner + _BLOCK]
            covered[targets] |= preference_block(delta, block, ys[targets]).any(axis=0)
        if covered.all():
            break
    return covered


def _entails(delta: BeliefBase, a: np.ndarray, b: np.ndarray) -> bool:
    witnesses = np.flatnonzero(a & b)
    challengers = np.flatnonzero(a & ~b)
    if not len(challengers):
        return True
    if not len(witnesses):
        return False
    return bool(_dominated(delta, witnesses, challengers).all())


def w_infer(delta: BeliefBase, a: Formula, b: Formula) -> bool:
    a_mask = models(a, delta.signature).mask
    return _entails(delta, a_mask, models(b, delta.signature).mask)


class SystemWReasoner(Reasoner):
    def entails_masks(self, a: np.ndarray, b: np.ndarray) -> bool:
        return _entails(self.base, a, b)

    def entails_many(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.signature.num_worlds > _MATRIX_WORLDS:
            return super().entails_many(a, b)
        preference = preference_matrix(self.base).astype(np.float32)
        dominated = ((a & b).astype(np.float32) @ preference) > 0
        return ~((a & ~b) & ~dominated).any(axis=1)

    def explain(self, a: Formula, b: Formula) -> list[str]:
        a_mask = models(a, self.signature).mask
        b_mask = models(b, self.signature).mask
        witnesses = np.flatnonzero(a_mask & b_mask)
        lines = []
        for challenger in np.flatnonzero(a_mask & ~b_mask):
            below = witnesses[preference_block(self.base, witnesses, np.array([challenger]))[:, 0]]
            world = self.signature.world(int(challenger))
            if len(below):
                lines.append(f"{world} is dominated by {self.signature.world(int(below[0]))}")
            else:
                lines.append(f"{world} is not dominated by any model of A ∧ B")
        return lines


class SystemW(InferenceOperator):
    name = "systemw"
    description = "System W, the preferential order <^w on falsified sets"

    def _build(self, base: BeliefBase) -> Reasoner:
        base.require_partition()
        return SystemWReasoner(base)


def w_dot(delta: BeliefBase) -> str:
    """The Hasse diagram of <^w in Graphviz DOT; an edge ω → ω′ means ω <^w ω′."""
    matrix = preference_matrix(delta)
    # transitive reduction: drop edges implied by a two-step path
    implied = (matrix.astype(np.int64) @ matrix.astype(np.int64)) > 0
    covers = matrix & ~implied
    lines = [f'digraph "{delta.name or "systemw"}" {{', "  rankdir=BT;"]
    for index in range(delta.signature.num_worlds):
        falsified = sorted(delta.falsified_labels(index))
        tag = ",".join(f"δ{label}" for label in falsified) or "∅"
        lines.append(f'  w{index} [label="{delta.signature.world(index)}\\n{tag}"];')
    for source, target in zip(*np.nonzero(covers)):
        lines.append(f"  w{source} -> w{target};")
    lines.append("}")
    return "\n".join(lines)
