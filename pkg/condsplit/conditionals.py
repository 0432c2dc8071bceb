"""
Conditionals, belief bases, tolerance and the ordered tolerance partition OP(Δ).

All world-level computations go through two boolean matrices of a base,
verify_matrix and falsify_matrix, of shape (worlds, conditionals).
"""

from collections.abc import Callable, Iterable
from condsplit._compat import StrEnum
from typing import TypeVar

import logfire
import numpy as np
from pydantic import BaseModel, ConfigDict, PrivateAttr, model_validator

from condsplit.errors import DuplicateConditional, InconsistentBeliefBase, InvalidPartition
from condsplit.logic import (
    And,
    Formula,
    Signature,
    World,
    WorldSet,
    check_atoms,
    models,
    parse_formula,
)


T = TypeVar("T")


class Applicability(StrEnum):
    VERIFIES = "verifies"
    FALSIFIES = "falsifies"
    NOT_APPLICABLE = "not_applicable"


class Conditional(BaseModel):
    """A defeasible rule (B|A), labelled by its position in the base (1-based)."""

    model_config = ConfigDict(frozen=True)

    consequent: Formula
    antecedent: Formula
    label: int = 0

    @property
    def tag(self) -> str:
        return f"δ{self.label}"

    def atom_names(self) -> frozenset[str]:
        return self.consequent.atom_names() | self.antecedent.atom_names()

    def same_syntax(self, other: "Conditional") -> bool:
        return (self.consequent, self.antecedent) == (other.consequent, other.antecedent)

    def __str__(self) -> str:
        return f"({self.consequent}|{self.antecedent})"


class TolerancePartition(BaseModel):
    """OP(Δ) = (Δ^0, ..., Δ^k) as sorted label tuples."""

    model_config = ConfigDict(frozen=True)

    parts: tuple[tuple[int, ...], ...] = ()

    @property
    def num_levels(self) -> int:
        return len(self.parts)

    def level_of(self, label: int) -> int:
        for level, part in enumerate(self.parts):
            if label in part:
                return level
        raise InvalidPartition(f"Conditional {label} is not part of the partition")

    def part(self, level: int) -> tuple[int, ...]:
        """Δ^level; levels beyond the last one are empty."""
        if level < 0:
            raise InvalidPartition(f"Negative partition level {level}")
        return self.parts[level] if level < len(self.parts) else ()


class Inconsistent(BaseModel):
    """Outcome of a failed tolerance partition: the labels left unplaced."""

    model_config = ConfigDict(frozen=True)

    remaining: tuple[int, ...]


class BeliefBase(BaseModel):
    """An ordered, finite set of conditionals over a signature."""

    model_config = ConfigDict(frozen=True)

    signature: Signature
    conditionals: tuple[Conditional, ...] = ()
    name: str = ""

    _cache: dict = PrivateAttr(default_factory=dict)

    @model_validator(mode="after")
    def _check_conditionals(self) -> "BeliefBase":
        labels = [c.label for c in self.conditionals]
        if len(set(labels)) != len(labels):
            raise DuplicateConditional(f"Conditional labels are not unique: {labels}")
        for i, first in enumerate(self.conditionals):
            check_atoms(first.consequent, self.signature)
            check_atoms(first.antecedent, self.signature)
            for second in self.conditionals[i + 1 :]:
                if first.same_syntax(second):
                    raise DuplicateConditional(
                        f"{first} occurs twice ({first.tag} and {second.tag})"
                    )
        return self

    @classmethod
    def from_pairs(
        cls,
        signature: Signature,
        pairs: Iterable[tuple[Formula | str, Formula | str]],
        name: str = "",
    ) -> "BeliefBase":
        """Build a base from (consequent, antecedent) pairs, labelled 1..n."""
        conditionals = []
        for label, (consequent, antecedent) in enumerate(pairs, start=1):
            if isinstance(consequent, str):
                consequent = parse_formula(consequent, signature)
            if isinstance(antecedent, str):
                antecedent = parse_formula(antecedent, signature)
            conditionals.append(
                Conditional(consequent=consequent, antecedent=antecedent, label=label)
            )
        return cls(signature=signature, conditionals=tuple(conditionals), name=name)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BeliefBase):
            return NotImplemented
        return (self.signature, self.conditionals) == (other.signature, other.conditionals)

    def __hash__(self) -> int:
        return hash((self.signature, self.conditionals))

    def __len__(self) -> int:
        return len(self.conditionals)

    def __str__(self) -> str:
        return "{" + ", ".join(str(c) for c in self.conditionals) + "}"

    @property
    def labels(self) -> tuple[int, ...]:
        return tuple(c.label for c in self.conditionals)

    def position(self, label: int) -> int:
        for position, conditional in enumerate(self.conditionals):
            if conditional.label == label:
                return position
        raise InvalidPartition(f"No conditional with label {label} in base {self.name!r}")

    def conditional(self, label: int) -> Conditional:
        return self.conditionals[self.position(label)]

    def subbase(
        self,
        labels: Iterable[int],
        signature: Signature | None = None,
        name: str | None = None,
    ) -> "BeliefBase":
        """The conditionals with the given labels, keeping labels and base order."""
        wanted = set(labels)
        return BeliefBase(
            signature=signature or self.signature,
            conditionals=tuple(c for c in self.conditionals if c.label in wanted),
            name=self.name if name is None else name,
        )

    def _matrices(self) -> tuple[np.ndarray, np.ndarray]:
        if "matrices" not in self._cache:
            size = self.signature.num_worlds
            verify = np.zeros((size, len(self.conditionals)), dtype=bool)
            falsify = np.zeros((size, len(self.conditionals)), dtype=bool)
            for j, conditional in enumerate(self.conditionals):
                a = models(conditional.antecedent, self.signature).mask
                b = models(conditional.consequent, self.signature).mask
                verify[:, j] = a & b
                falsify[:, j] = a & ~b
            verify.flags.writeable = False
            falsify.flags.writeable = False
            self._cache["matrices"] = (verify, falsify)
        return self._cache["matrices"]

    @property
    def verify_matrix(self) -> np.ndarray:
        return self._matrices()[0]

    @property
    def falsify_matrix(self) -> np.ndarray:
        return self._matrices()[1]

    def falsified_labels(self, world_index: int) -> frozenset[int]:
        row = self.falsify_matrix[world_index]
        return frozenset(self.conditionals[j].label for j in np.flatnonzero(row))

    def cached(self, key: str, compute: Callable[[], T]) -> T:
        """Per-base memo for derived data that depends only on the base."""
        if key not in self._cache:
            self._cache[key] = compute()
        return self._cache[key]

    def partition(self) -> TolerancePartition | Inconsistent:
        """OP(Δ), computed once per base."""
        if "partition" not in self._cache:
            self._cache["partition"] = tolerance_partition(self)
        return self._cache["partition"]

    def is_consistent(self) -> bool:
        return isinstance(self.partition(), TolerancePartition)

    def require_partition(self) -> TolerancePartition:
        partition = self.partition()
        if isinstance(partition, Inconsistent):
            raise InconsistentBeliefBase(partition.remaining)
        return partition

    def level_positions(self) -> list[np.ndarray]:
        """Column positions of each partition level."""
        partition = self.require_partition()
        return [
            np.array([self.position(label) for label in part], dtype=np.int64)
            for part in partition.parts
        ]


def classify_world(world: World, conditional: Conditional) -> Applicability:
    if not world.satisfies(conditional.antecedent):
        return Applicability.NOT_APPLICABLE
    if world.satisfies(conditional.consequent):
        return Applicability.VERIFIES
    return Applicability.FALSIFIES


def ver_fal_sets(conditional: Conditional, signature: Signature) -> tuple[WorldSet, WorldSet]:
    """(Mod(AB), Mod(A!B))."""
    a = models(conditional.antecedent, signature)
    b = models(conditional.consequent, signature)
    return a & b, a - b


def _own_signature(conditional: Conditional) -> Signature:
    return Signature(atoms=tuple(sorted(conditional.atom_names())))


def self_fulfilling(conditional: Conditional, signature: Signature | None = None) -> bool:
    _, falsifying = ver_fal_sets(conditional, signature or _own_signature(conditional))
    return falsifying.is_empty()


def tolerates(
    delta: BeliefBase, conditional: Conditional, among: Iterable[int] | None = None
) -> bool:
    """Whether some world verifies `conditional` and falsifies nothing in delta.

    Args:
        delta: The tolerating base.
        conditional: The conditional to test, over delta's signature.
        among: Optional labels restricting delta to a subset.
    """
    check_atoms(conditional.consequent, delta.signature)
    check_atoms(conditional.antecedent, delta.signature)
    verifying = models(And(left=conditional.antecedent, right=conditional.consequent), delta.signature).mask
    if among is None:
        columns = delta.falsify_matrix
    else:
        columns = delta.falsify_matrix[:, [delta.position(label) for label in among]]
    clean = ~columns.any(axis=1)
    return bool((verifying & clean).any())


def tolerance_partition(delta: BeliefBase) -> TolerancePartition | Inconsistent:
    """Compute OP(Δ), or Inconsistent when some stage tolerates nothing."""
    with logfire.span("tolerance_partition", base=delta.name, conditionals=len(delta)):
        verify, falsify = delta.verify_matrix, delta.falsify_matrix
        remaining = list(range(len(delta)))
        parts: list[tuple[int, ...]] = []
        while remaining:
            clean = ~falsify[:, remaining].any(axis=1)
            tolerated = (verify[:, remaining] & clean[:, None]).any(axis=0)
            part = [remaining[k] for k in np.flatnonzero(tolerated)]
            if not part:
                labels = tuple(sorted(delta.conditionals[j].label for j in remaining))
                logfire.info("Belief base is inconsistent", base=delta.name, remaining=labels)
                return Inconsistent(remaining=labels)
            parts.append(tuple(sorted(delta.conditionals[j].label for j in part)))
            remaining = [j for j in remaining if j not in part]
        return TolerancePartition(parts=tuple(parts))


def xi_level(
    delta: BeliefBase, partition: TolerancePartition, level: int, world: World
) -> frozenset[int]:
    """ξ^level(ω): labels of Δ^level falsified by the world."""
    if not 0 <= level < max(partition.num_levels, 1):
        raise InvalidPartition(
            f"Level {level} is outside 0..{partition.num_levels - 1}"
        )
    return delta.falsified_labels(world.index) & frozenset(partition.part(level))


def xi_total(delta: BeliefBase, world: World) -> frozenset[int]:
    """ξ(ω): all labels falsified by the world."""
    return delta.falsified_labels(world.index)


def xi_counts(delta: BeliefBase) -> np.ndarray:
    """Matrix of (|ξ^0(ω)|, ..., |ξ^k(ω)|) for every world ω."""
    falsify = delta.falsify_matrix
    positions = delta.level_positions()
    counts = np.zeros((delta.signature.num_worlds, len(positions)), dtype=np.int64)
    for level, columns in enumerate(positions):
        counts[:, level] = falsify[:, columns].sum(axis=1)
    return counts


def semantic_duplicates(delta: BeliefBase) -> list[tuple[int, int]]:
    """Label pairs of distinct conditionals with identical verifying and falsifying worlds."""
    verify, falsify = delta.verify_matrix, delta.falsify_matrix
    pairs = []
    for i in range(len(delta)):
        for j in range(i + 1, len(delta)):
            if np.array_equal(verify[:, i], verify[:, j]) and np.array_equal(
                falsify[:, i], falsify[:, j]
            ):
                pairs.append((delta.conditionals[i].label, delta.conditionals[j].label))
    return pairs
