"""
Conditional syntax splittings of a belief base.

A candidate (Σ1, Σ2, Σ3) partitions the signature; it induces the subbases
Δi = conditionals whose atoms all lie in Σi ∪ Σ3, and it is a splitting when
Δ1 ∪ Δ2 = Δ. Splittings are classified as safe, generalized safe and genuine.
"""

import itertools
from collections.abc import Iterable
from condsplit._compat import StrEnum

import logfire
import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from condsplit.conditionals import BeliefBase
from condsplit.errors import InvalidPartition, NotASplitting
from condsplit.logic import Signature, project_indices


class SimpleKind(StrEnum):
    TRIVIAL = "trivial"
    SET_EMPTY = "setEmpty"
    SIG_EMPTY = "sigEmpty"


class SplittingRecord(BaseModel):
    """JSON record of one classified splitting."""

    sigma1: list[str]
    sigma2: list[str]
    sigma3: list[str]
    delta1: list[int]
    delta2: list[int]
    delta3: list[int]
    splitting: bool
    safe: bool | None
    generalized_safe: bool | None
    genuine: bool | None
    simple: list[SimpleKind]


class Splitting(BaseModel):
    """A partition (Σ1, Σ2, Σ3) of the signature with its induced subbases and flags."""

    model_config = ConfigDict(frozen=True)

    base: BeliefBase = Field(exclude=True, repr=False)
    sigma1: tuple[str, ...]
    sigma2: tuple[str, ...]
    sigma3: tuple[str, ...]
    delta1: tuple[int, ...]
    delta2: tuple[int, ...]
    delta3: tuple[int, ...]
    delta1_minus3: tuple[int, ...]
    delta2_minus3: tuple[int, ...]
    is_splitting: bool
    safe: bool | None = None
    generalized_safe: bool | None = None
    genuine: bool | None = None
    simple_kinds: frozenset[SimpleKind] = frozenset()

    def sigma(self, side: int) -> tuple[str, ...]:
        return (self.sigma1, self.sigma2, self.sigma3)[side - 1]

    def delta(self, side: int) -> tuple[int, ...]:
        return (self.delta1, self.delta2, self.delta3)[side - 1]

    def delta_minus3(self, side: int) -> tuple[int, ...]:
        return (self.delta1_minus3, self.delta2_minus3)[side - 1]

    def subsignature(self, *sides: int) -> Signature:
        """Union of the given parts as a subsignature of the base's signature."""
        return self.base.signature.subsignature(
            atom for side in sides for atom in self.sigma(side)
        )

    def subbase(self, side: int) -> BeliefBase:
        """Δ1, Δ2 or Δ3 over the full signature, keeping labels."""
        return self.base.subbase(self.delta(side), name=f"{self.base.name}[{side}]")

    def swapped(self) -> "Splitting":
        return induce(self.base, self.sigma2, self.sigma1, self.sigma3)

    def key(self) -> tuple[frozenset[frozenset[str]], frozenset[str]]:
        """Orientation-free identity: ({Σ1, Σ2}, Σ3)."""
        return frozenset({frozenset(self.sigma1), frozenset(self.sigma2)}), frozenset(self.sigma3)

    def __str__(self) -> str:
        parts = ("{" + ",".join(sigma) + "}" for sigma in (self.sigma1, self.sigma2, self.sigma3))
        return " | ".join(parts)

    def to_record(self) -> SplittingRecord:
        return SplittingRecord(
            sigma1=list(self.sigma1),
            sigma2=list(self.sigma2),
            sigma3=list(self.sigma3),
            delta1=list(self.delta1),
            delta2=list(self.delta2),
            delta3=list(self.delta3),
            splitting=self.is_splitting,
            safe=self.safe,
            generalized_safe=self.generalized_safe,
            genuine=self.genuine,
            simple=sorted(self.simple_kinds),
        )


def _extensions_avoid(delta: BeliefBase, own: Signature, avoid: Iterable[int]) -> bool:
    """Whether every world over `own` extends to a world falsifying none of `avoid`."""
    positions = [delta.position(label) for label in avoid]
    if not positions:
        return True
    good = ~delta.falsify_matrix[:, positions].any(axis=1)
    covered = np.zeros(own.num_worlds, dtype=bool)
    np.logical_or.at(covered, project_indices(delta.signature, own), good)
    return bool(covered.all())


def _simple_kinds(delta: BeliefBase, s: Splitting) -> frozenset[SimpleKind]:
    kinds = set()
    everything = len(delta.signature.atoms)
    if (
        (len(s.sigma1) == everything and not s.sigma3)
        or (len(s.sigma2) == everything and not s.sigma3)
        or len(s.sigma3) == everything
    ):
        kinds.add(SimpleKind.TRIVIAL)
    if not s.delta1 or not s.delta2:
        kinds.add(SimpleKind.SET_EMPTY)
    if not s.sigma1 or not s.sigma2:
        kinds.add(SimpleKind.SIG_EMPTY)
    return frozenset(kinds)


def induce(
    delta: BeliefBase,
    sigma1: Iterable[str],
    sigma2: Iterable[str],
    sigma3: Iterable[str],
) -> Splitting:
    """Induce the subbases of the candidate (Σ1, Σ2, Σ3) and classify it."""
    signature = delta.signature
    parts = [set(sigma1), set(sigma2), set(sigma3)]
    for part in parts:
        unknown = part - set(signature.atoms)
        if unknown:
            raise InvalidPartition(f"Atoms {sorted(unknown)} are not part of {signature}")
    if parts[0] & parts[1] or parts[0] & parts[2] or parts[1] & parts[2]:
        raise InvalidPartition("The parts of a splitting must be pairwise disjoint")
    if parts[0] | parts[1] | parts[2] != set(signature.atoms):
        raise InvalidPartition(f"The parts of a splitting must cover {signature}")
    ordered = [tuple(a for a in signature.atoms if a in part) for part in parts]

    side1 = parts[0] | parts[2]
    side2 = parts[1] | parts[2]
    delta1 = tuple(c.label for c in delta.conditionals if c.atom_names() <= side1)
    delta2 = tuple(c.label for c in delta.conditionals if c.atom_names() <= side2)
    delta3 = tuple(label for label in delta1 if label in delta2)
    delta1_minus3 = tuple(label for label in delta1 if label not in delta3)
    delta2_minus3 = tuple(label for label in delta2 if label not in delta3)
    is_splitting = set(delta1) | set(delta2) == set(delta.labels)

    fields = dict(
        base=delta,
        sigma1=ordered[0],
        sigma2=ordered[1],
        sigma3=ordered[2],
        delta1=delta1,
        delta2=delta2,
        delta3=delta3,
        delta1_minus3=delta1_minus3,
        delta2_minus3=delta2_minus3,
        is_splitting=is_splitting,
    )
    if not is_splitting:
        return Splitting(**fields)

    own1 = signature.subsignature(side1)
    own2 = signature.subsignature(side2)
    safe = _extensions_avoid(delta, own1, delta2) and _extensions_avoid(delta, own2, delta1)
    generalized_safe = _extensions_avoid(delta, own1, delta2_minus3) and _extensions_avoid(
        delta, own2, delta1_minus3
    )
    candidate = Splitting(
        **fields,
        safe=safe,
        generalized_safe=generalized_safe,
        genuine=bool(delta1_minus3) and bool(delta2_minus3),
    )
    return candidate.model_copy(update={"simple_kinds": _simple_kinds(delta, candidate)})


def _require_splitting(s: Splitting) -> None:
    if not s.is_splitting:
        raise NotASplitting(f"{s} does not split the base (Δ1 ∪ Δ2 ≠ Δ)")


def is_safe(s: Splitting) -> bool:
    _require_splitting(s)
    return bool(s.safe)


def is_generalized_safe(s: Splitting) -> bool:
    _require_splitting(s)
    return bool(s.generalized_safe)


def is_genuine(s: Splitting) -> bool:
    _require_splitting(s)
    return bool(s.genuine)


def classify_simple(s: Splitting) -> frozenset[SimpleKind]:
    _require_splitting(s)
    return s.simple_kinds


def enumerate_splittings(delta: BeliefBase, dedup: bool = True) -> list[Splitting]:
    """All splittings of the base, in assignment order.

    Every atom is assigned to Σ1, Σ2 or Σ3 (3^n candidates). With dedup, each
    unordered pair {Σ1, Σ2} is emitted once, in the orientation whose Σ1 holds
    the first atom of Σ1 ∪ Σ2.
    """
    signature = delta.signature
    signature.check_size()
    atoms = signature.atoms
    with logfire.span("enumerate_splittings", base=delta.name, atoms=len(atoms), dedup=dedup):
        found = []
        for assignment in itertools.product((0, 1, 2), repeat=len(atoms)):
            if dedup:
                first = next((part for part in assignment if part != 2), 0)
                if first != 0:
                    continue
            sigmas = [[a for a, part in zip(atoms, assignment) if part == p] for p in range(3)]
            candidate = induce(delta, *sigmas)
            if candidate.is_splitting:
                found.append(candidate)
        logfire.info(
            "Splittings enumerated",
            base=delta.name,
            total=len(found),
            generalized_safe=sum(1 for s in found if s.generalized_safe),
        )
        return found


def census(splittings: Iterable[Splitting]) -> dict[str, int]:
    """Counts header: total, safe, gensafe, genuine."""
    splittings = list(splittings)
    return {
        "total": len(splittings),
        "safe": sum(1 for s in splittings if s.safe),
        "gensafe": sum(1 for s in splittings if s.generalized_safe),
        "genuine": sum(1 for s in splittings if s.genuine),
    }


def has_genuine_safe_splitting(delta: BeliefBase) -> bool:
    """Whether some splitting is both safe and genuine; cached per base."""
    return delta.cached(
        "genuine_safe",
        lambda: any(s.safe and s.genuine for s in enumerate_splittings(delta, dedup=True)),
    )
