"""
Ordinal conditional functions (OCFs): formula and conditional ranks, acceptance,
the induced inference relation, marginals and conditional κ-independence.
"""

import math
from collections.abc import Sequence

import numpy as np
from pydantic import BaseModel

from condsplit.conditionals import BeliefBase, Conditional
from condsplit.errors import (
    InvalidRanking,
    NonDisjointSubsignatures,
    UndefinedRank,
)
from condsplit.logic import Formula, Signature, WorldSet, models, project_indices

INFINITY = math.inf

Rank = int | float


class RankingModel(BaseModel):
    """JSON shape of an OCF: ranks listed in world-index order."""

    signature: list[str]
    ranks: list[int]


class RankingFunction:
    """A finite-valued OCF over a signature, normalized to a rank-0 world."""

    __slots__ = ("signature", "ranks")

    def __init__(self, signature: Signature, ranks: Sequence[int] | np.ndarray):
        values = np.asarray(ranks)
        if values.shape != (signature.num_worlds,):
            raise InvalidRanking(
                f"Expected {signature.num_worlds} ranks for {signature}, got shape {values.shape}"
            )
        if values.size and (values < 0).any():
            raise InvalidRanking("Ranks must be natural numbers")
        if values.size and values.min() != 0:
            raise InvalidRanking("A ranking function needs a world of rank 0")
        self.signature = signature
        self.ranks = values.astype(np.uint64)
        self.ranks.flags.writeable = False

    @classmethod
    def zero(cls, signature: Signature) -> "RankingFunction":
        return cls(signature, np.zeros(signature.num_worlds, dtype=np.uint64))

    @classmethod
    def from_json(cls, data: dict | RankingModel) -> "RankingFunction":
        model = data if isinstance(data, RankingModel) else RankingModel.model_validate(data)
        return cls(Signature(atoms=tuple(model.signature)), model.ranks)

    def to_json(self) -> dict:
        return RankingModel(
            signature=list(self.signature.atoms), ranks=[int(r) for r in self.ranks]
        ).model_dump()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RankingFunction):
            return NotImplemented
        return self.signature == other.signature and bool(np.array_equal(self.ranks, other.ranks))

    def __hash__(self) -> int:
        return hash((self.signature, self.ranks.tobytes()))

    def __repr__(self) -> str:
        return f"RankingFunction({self.signature}, {[int(r) for r in self.ranks]})"

    def __getitem__(self, world_index: int) -> int:
        return int(self.ranks[world_index])

    def rank_of_mask(self, mask: np.ndarray) -> Rank:
        if not mask.any():
            return INFINITY
        return int(self.ranks[mask].min())

    def layers(self) -> list[list[int]]:
        """World indices grouped by rank, most plausible first."""
        return [
            [int(i) for i in np.flatnonzero(self.ranks == value)]
            for value in np.unique(self.ranks)
        ]


def rank_formula(kappa: RankingFunction, formula: Formula | WorldSet) -> Rank:
    """κ(A) = min rank over Mod(A); +∞ for unsatisfiable A."""
    worlds = formula if isinstance(formula, WorldSet) else models(formula, kappa.signature)
    return kappa.rank_of_mask(worlds.mask)


def conditional_rank(kappa: RankingFunction, conditional: Conditional) -> Rank:
    """κ(B|A) = κ(AB) - κ(A)."""
    a = models(conditional.antecedent, kappa.signature).mask
    if not a.any():
        raise UndefinedRank(f"The antecedent of {conditional} is unsatisfiable")
    b = models(conditional.consequent, kappa.signature).mask
    return kappa.rank_of_mask(a & b) - kappa.rank_of_mask(a)


def accepts_masks(kappa: RankingFunction, a: np.ndarray, b: np.ndarray) -> bool:
    return kappa.rank_of_mask(a & b) < kappa.rank_of_mask(a & ~b)


def accepts(kappa: RankingFunction, conditional: Conditional) -> bool:
    """κ ⊨ (B|A) iff κ(AB) < κ(A!B)."""
    a = models(conditional.antecedent, kappa.signature).mask
    b = models(conditional.consequent, kappa.signature).mask
    return accepts_masks(kappa, a, b)


def accepts_base(kappa: RankingFunction, delta: BeliefBase) -> bool:
    return all(accepts(kappa, conditional) for conditional in delta.conditionals)


def infer(kappa: RankingFunction, a: Formula, b: Formula) -> bool:
    """A |~κ B iff A is unsatisfiable or κ(AB) < κ(A!B)."""
    a_mask = models(a, kappa.signature).mask
    if not a_mask.any():
        return True
    return accepts_masks(kappa, a_mask, models(b, kappa.signature).mask)


def marginal(kappa: RankingFunction, theta: Signature) -> RankingFunction:
    """κ|Θ: the rank of each world over Θ is the minimum over its extensions."""
    projection = project_indices(kappa.signature, theta)
    ranks = np.full(theta.num_worlds, np.iinfo(np.uint64).max, dtype=np.uint64)
    np.minimum.at(ranks, projection, kappa.ranks)
    return RankingFunction(theta, ranks)


def _check_disjoint(signature: Signature, parts: Sequence[Signature]) -> None:
    seen: set[str] = set()
    for part in parts:
        missing = [atom for atom in part.atoms if atom not in signature.atoms]
        if missing:
            raise NonDisjointSubsignatures(f"Atoms {missing} are not part of {signature}")
        overlap = seen & set(part.atoms)
        if overlap:
            raise NonDisjointSubsignatures(f"Atoms {sorted(overlap)} occur in two subsignatures")
        seen |= set(part.atoms)


def kappa_independent(
    kappa: RankingFunction, s1: Signature, s2: Signature, s3: Signature
) -> bool:
    """Whether Σ1 and Σ2 are independent given Σ3 under κ.

    Checks κ(ω1ω2ω3) + κ(ω3) = κ(ω1ω3) + κ(ω2ω3) for every world over the
    union of the three subsignatures, which is the defining identity
    κ(ω1|ω2ω3) = κ(ω1|ω3) with the conditional ranks expanded.
    """
    _check_disjoint(kappa.signature, (s1, s2, s3))
    union = kappa.signature.subsignature(s1.atoms + s2.atoms + s3.atoms)
    joint = marginal(kappa, union).ranks.astype(np.int64)
    s13 = union.subsignature(s1.atoms + s3.atoms)
    s23 = union.subsignature(s2.atoms + s3.atoms)
    r13 = marginal(kappa, s13).ranks.astype(np.int64)[project_indices(union, s13)]
    r23 = marginal(kappa, s23).ranks.astype(np.int64)[project_indices(union, s23)]
    r3 = marginal(kappa, s3).ranks.astype(np.int64)[project_indices(union, s3)]
    return bool(np.array_equal(joint + r3, r13 + r23))
