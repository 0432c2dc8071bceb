"""
c-Representations of a belief base.

An impact vector η assigns a non-negative integer to every conditional; it
induces the OCF κη(ω) = sum of the impacts of the conditionals ω falsifies.
κη accepts Δ exactly when η solves the constraint system CR(Δ). This module
builds CR(Δ) as constraint-inducing sets (V_i, F_i), simplifies it with the
transformation rules R1..R6, derives the minimal core vector, and implements
c-inference (skeptical over all solutions), selection strategies and the
split/compose correspondence of solutions along generalized safe splittings.
"""

import itertools
from abc import ABC, abstractmethod
from collections.abc import Callable, Iterable, Iterator, Sequence
from condsplit._compat import StrEnum
from typing import Literal

import logfire
import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from condsplit.conditionals import BeliefBase
from condsplit.config import get_settings
from condsplit.errors import (
    CyclicDependency,
    InconsistentBeliefBase,
    InvalidRanking,
    LengthMismatch,
    MismatchedDelta3Impacts,
    NotGeneralizedSafe,
    StrategyReturnedNonSolution,
    UnknownOperator,
)
from condsplit.logic import Formula, models
from condsplit.ranking import RankingFunction, infer
from condsplit.splitting import Splitting

LabelSet = frozenset[int]
_NO_RANK = np.iinfo(np.int64).max


class ImpactVector(BaseModel):
    """Impacts η_j keyed by conditional label, in base order."""

    model_config = ConfigDict(frozen=True)

    labels: tuple[int, ...]
    impacts: tuple[int, ...]

    @model_validator(mode="after")
    def _check(self) -> "ImpactVector":
        if len(self.labels) != len(self.impacts):
            raise LengthMismatch(
                f"{len(self.impacts)} impacts given for {len(self.labels)} conditionals"
            )
        if any(value < 0 for value in self.impacts):
            raise InvalidRanking(f"Impacts must be non-negative, got {self.impacts}")
        return self

    @classmethod
    def for_base(cls, delta: BeliefBase, impacts: Sequence[int]) -> "ImpactVector":
        return cls(labels=delta.labels, impacts=tuple(int(v) for v in impacts))

    def __getitem__(self, label: int) -> int:
        return self.impacts[self.labels.index(label)]

    def __str__(self) -> str:
        return "(" + ",".join(str(v) for v in self.impacts) + ")"

    def as_dict(self) -> dict[int, int]:
        return dict(zip(self.labels, self.impacts))

    def restrict(self, labels: Iterable[int]) -> "ImpactVector":
        """η restricted to the given labels, keeping this vector's order."""
        wanted = set(labels)
        pairs = [(label, value) for label, value in zip(self.labels, self.impacts) if label in wanted]
        return ImpactVector(
            labels=tuple(label for label, _ in pairs), impacts=tuple(value for _, value in pairs)
        )

    def array(self) -> np.ndarray:
        return np.array(self.impacts, dtype=np.int64)


def _coerce(delta: BeliefBase, eta: ImpactVector | Sequence[int]) -> ImpactVector:
    if isinstance(eta, ImpactVector):
        if eta.labels != delta.labels:
            raise LengthMismatch(
                f"Impact vector for conditionals {list(eta.labels)} does not fit base "
                f"with conditionals {list(delta.labels)}"
            )
        return eta
    if len(eta) != len(delta):
        raise LengthMismatch(f"{len(eta)} impacts given for {len(delta)} conditionals")
    return ImpactVector.for_base(delta, eta)


# Constraint system


def format_label_set(labels: Iterable[int]) -> str:
    labels = sorted(labels)
    return "∅" if not labels else "{" + ",".join(f"δ{label}" for label in labels) + "}"


def format_family(family: Iterable[LabelSet]) -> str:
    ordered = sorted(family, key=lambda s: (len(s), sorted(s)))
    return "{" + ", ".join(format_label_set(s) for s in ordered) + "}"


class ConstraintRow(BaseModel):
    """(V_i, F_i) of one conditional: falsified-label sets of its verifying / falsifying worlds."""

    model_config = ConfigDict(frozen=True)

    label: int
    verifying: frozenset[LabelSet]
    falsifying: frozenset[LabelSet]


class ConstraintSystem(BaseModel):
    model_config = ConfigDict(frozen=True)

    rows: tuple[ConstraintRow, ...]
    reduced: bool = False

    def row(self, label: int) -> ConstraintRow:
        for row in self.rows:
            if row.label == label:
                return row
        raise KeyError(label)

    def satisfied_by(self, labels: Sequence[int], etas: np.ndarray) -> np.ndarray:
        """Which impact vectors (rows, columns ordered like `labels`) meet every constraint.

        Row i demands η_i > min over V of the summed impacts minus min over F;
        an empty V is unsatisfiable and an empty F vacuous.
        """
        etas = np.atleast_2d(np.asarray(etas, dtype=np.int64))
        column = {label: k for k, label in enumerate(labels)}

        def smallest(family: frozenset[LabelSet]) -> np.ndarray:
            sums = [etas[:, [column[j] for j in sorted(s)]].sum(axis=1) for s in family]
            return np.min(sums, axis=0)

        ok = (etas >= 0).all(axis=1)
        for row in self.rows:
            if not row.verifying:
                ok[:] = False
            elif row.falsifying:
                ok &= etas[:, column[row.label]] > smallest(row.verifying) - smallest(row.falsifying)
        return ok


def constraint_sets(delta: BeliefBase) -> ConstraintSystem:
    """The unreduced system: V_i and F_i for every conditional."""
    verify, falsify = delta.verify_matrix, delta.falsify_matrix
    labels = np.array(delta.labels, dtype=np.int64)
    rows = []
    for i, label in enumerate(delta.labels):
        others = falsify.copy()
        others[:, i] = False

        def family(worlds: np.ndarray) -> frozenset[LabelSet]:
            if not worlds.any():
                return frozenset()
            unique = np.unique(others[worlds], axis=0)
            return frozenset(frozenset(int(x) for x in labels[row]) for row in unique)

        rows.append(
            ConstraintRow(
                label=label,
                verifying=family(verify[:, i]),
                falsifying=family(falsify[:, i]),
            )
        )
    return ConstraintSystem(rows=tuple(rows))


def solution_mask(delta: BeliefBase, etas: np.ndarray) -> np.ndarray:
    """Evaluate the CR(Δ) constraints for a batch of impact vectors (one per row).

    A conditional without verifying worlds makes the constraint unsatisfiable;
    one without falsifying worlds makes it vacuous.
    """
    etas = np.atleast_2d(np.asarray(etas, dtype=np.int64))
    verify, falsify = delta.verify_matrix, delta.falsify_matrix
    kappa = etas @ falsify.T.astype(np.int64)
    ok = (etas >= 0).all(axis=1)
    for j in range(len(delta)):
        verifying, falsifying = verify[:, j], falsify[:, j]
        if not verifying.any():
            ok[:] = False
            continue
        if not falsifying.any():
            continue
        min_verifying = kappa[:, verifying].min(axis=1)
        min_falsifying = (kappa[:, falsifying] - etas[:, [j]]).min(axis=1)
        ok &= etas[:, j] > min_verifying - min_falsifying
    return ok


def is_solution(delta: BeliefBase, eta: ImpactVector | Sequence[int]) -> bool:
    eta = _coerce(delta, eta)
    return bool(solution_mask(delta, eta.array()[None, :])[0])


def induced_ocf(delta: BeliefBase, eta: ImpactVector | Sequence[int]) -> RankingFunction:
    """κη(ω) = sum of η_j over the conditionals ω falsifies."""
    eta = _coerce(delta, eta)
    ranks = delta.falsify_matrix.astype(np.int64) @ eta.array()
    return RankingFunction(delta.signature, ranks)


def _grid(size: int, bound: int) -> np.ndarray:
    if size == 0:
        return np.zeros((1, 0), dtype=np.int64)
    return np.indices((bound + 1,) * size).reshape(size, -1).T.astype(np.int64)


def _candidate_batches(size: int, bound: int, batch_limit: int = 1 << 16) -> Iterator[np.ndarray]:
    """All vectors of {0..bound}^size in lexicographic order, in batches."""
    if size == 0:
        yield np.zeros((1, 0), dtype=np.int64)
        return
    tail = 1
    while tail < size and (bound + 1) ** (tail + 1) <= batch_limit:
        tail += 1
    head = size - tail
    tail_grid = _grid(tail, bound)
    for prefix in itertools.product(range(bound + 1), repeat=head):
        batch = np.empty((len(tail_grid), size), dtype=np.int64)
        batch[:, :head] = prefix
        batch[:, head:] = tail_grid
        yield batch


def _solution_batches(
    delta: BeliefBase, bound: int, fixed: dict[int, int] | None = None
) -> Iterator[np.ndarray]:
    """Solutions within the bound, in lexicographic order; `fixed` pins labels to values."""
    fixed = fixed or {}
    pinned = {delta.position(label): value for label, value in fixed.items()}
    free = [p for p in range(len(delta)) if p not in pinned]
    for batch in _candidate_batches(len(free), bound):
        full = np.empty((len(batch), len(delta)), dtype=np.int64)
        full[:, free] = batch
        for position, value in pinned.items():
            full[:, position] = value
        solutions = full[solution_mask(delta, full)]
        if len(solutions):
            yield solutions


def enumerate_solutions(delta: BeliefBase, bound: int) -> Iterator[ImpactVector]:
    """All solutions of CR(Δ) in {0..bound}^|Δ|, in lexicographic order."""
    for solutions in _solution_batches(delta, bound):
        for row in solutions:
            yield ImpactVector.for_base(delta, row)


# Transformation rules

Rows = dict[int, tuple[frozenset[LabelSet], frozenset[LabelSet]]]
EMPTY_ONLY: frozenset[LabelSet] = frozenset({frozenset()})


def _minimal(family: frozenset[LabelSet]) -> frozenset[LabelSet]:
    return frozenset(s for s in family if not any(t < s for t in family))


def _rule_subset_verifying(rows: Rows) -> bool:
    changed = False
    for label, (verifying, falsifying) in rows.items():
        reduced = _minimal(verifying)
        if reduced != verifying:
            rows[label] = (reduced, falsifying)
            changed = True
    return changed


def _rule_subset_falsifying(rows: Rows) -> bool:
    changed = False
    for label, (verifying, falsifying) in rows.items():
        reduced = _minimal(falsifying)
        if reduced != falsifying:
            rows[label] = (verifying, reduced)
            changed = True
    return changed


def _rule_common_element(rows: Rows) -> bool:
    changed = False
    for label, (verifying, falsifying) in rows.items():
        if not verifying or not falsifying:
            continue
        common = frozenset.intersection(*verifying, *falsifying)
        if common:
            rows[label] = (
                frozenset(s - common for s in verifying),
                frozenset(s - common for s in falsifying),
            )
            changed = True
    return changed


def _rule_equal_sides(rows: Rows) -> bool:
    changed = False
    for label, (verifying, falsifying) in rows.items():
        if verifying and verifying == falsifying and verifying != EMPTY_ONLY:
            rows[label] = (EMPTY_ONLY, EMPTY_ONLY)
            changed = True
    return changed


def _subsets(elements: LabelSet) -> Iterator[LabelSet]:
    ordered = sorted(elements)
    for size in range(len(ordered) + 1):
        for combo in itertools.combinations(ordered, size):
            yield frozenset(combo)


def _factor(
    verifying: frozenset[LabelSet], falsifying: frozenset[LabelSet]
) -> tuple[frozenset[LabelSet], frozenset[LabelSet]] | None:
    """Match V = {S_k ⊍ T}, F = {S_k ⊍ T'} and return ({T}, {T'})."""
    if not verifying or len(verifying) != len(falsifying):
        return None
    common_verifying = frozenset.intersection(*verifying)
    common_falsifying = frozenset.intersection(*falsifying)
    for t in _subsets(common_verifying):
        stems = frozenset(s - t for s in verifying)
        for t_prime in _subsets(common_falsifying):
            if any(stem & t_prime for stem in stems):
                continue
            if frozenset(stem | t_prime for stem in stems) != falsifying:
                continue
            result = (frozenset({t}), frozenset({t_prime}))
            if result != (verifying, falsifying):
                return result
    return None


def _rule_factoring(rows: Rows) -> bool:
    changed = False
    for label, (verifying, falsifying) in rows.items():
        factored = _factor(verifying, falsifying)
        if factored is not None:
            rows[label] = factored
            changed = True
    return changed


def _rule_mutual_singletons(rows: Rows) -> bool:
    changed = False
    labels = sorted(rows)
    for i, j in itertools.combinations(labels, 2):
        verifying_i, falsifying_i = rows[i]
        verifying_j, falsifying_j = rows[j]
        if falsifying_i != EMPTY_ONLY or falsifying_j != EMPTY_ONLY:
            continue
        if frozenset({j}) not in verifying_i or frozenset({i}) not in verifying_j:
            continue
        shared = verifying_i - {frozenset({j})}
        if shared != verifying_j - {frozenset({i})}:
            continue
        rows[i] = (shared, EMPTY_ONLY)
        rows[j] = (shared, EMPTY_ONLY)
        changed = True
    return changed


RULES: dict[str, Callable[[Rows], bool]] = {
    "R1": _rule_subset_verifying,
    "R2": _rule_subset_falsifying,
    "R3": _rule_common_element,
    "R4": _rule_equal_sides,
    "R5": _rule_factoring,
    "R6": _rule_mutual_singletons,
}


def reduce(system: ConstraintSystem, order: Sequence[str] | None = None) -> ConstraintSystem:
    """Apply the rules R1..R6 until none changes the system.

    Args:
        system: A reduced or unreduced constraint system.
        order: Rule names in the order they are tried in each pass.
    """
    order = list(order or RULES)
    rows: Rows = {row.label: (row.verifying, row.falsifying) for row in system.rows}
    with logfire.span("reduce_constraints", rows=len(rows), order=order):
        passes = 0
        while True:
            passes += 1
            changed = False
            for name in order:
                changed = RULES[name](rows) or changed
            if not changed:
                break
        logfire.info("Constraint system reduced", rows=len(rows), passes=passes)
    return ConstraintSystem(
        rows=tuple(
            ConstraintRow(label=row.label, verifying=rows[row.label][0], falsifying=rows[row.label][1])
            for row in system.rows
        ),
        reduced=True,
    )


def reduced_constraints(delta: BeliefBase) -> ConstraintSystem:
    return delta.cached("reduced_constraints", lambda: reduce(constraint_sets(delta)))


class PositiveConstraint(BaseModel):
    """Ĉ_i^+: η_i > min{Σ_{j∈S} η_j | S ∈ V̂_i}; vacuous for self-fulfilling conditionals."""

    model_config = ConfigDict(frozen=True)

    label: int
    alternatives: tuple[LabelSet, ...]
    vacuous: bool = False

    def __str__(self) -> str:
        if self.vacuous:
            return f"η{self.label} ≥ 0"
        terms = ["0" if not s else "+".join(f"η{j}" for j in sorted(s)) for s in self.alternatives]
        bound = terms[0] if len(terms) == 1 else f"min({', '.join(terms)})"
        return f"η{self.label} > {bound}"

    def holds(self, impacts: dict[int, int]) -> bool:
        if self.vacuous:
            return impacts[self.label] >= 0
        return impacts[self.label] > min(sum(impacts[j] for j in s) for s in self.alternatives)


def cr_plus(delta: BeliefBase) -> list[PositiveConstraint]:
    """CR^+(Δ): the reduced constraints with their falsifying term dropped."""
    delta.require_partition()
    constraints = []
    for row in reduced_constraints(delta).rows:
        if not row.falsifying:
            constraints.append(PositiveConstraint(label=row.label, alternatives=(), vacuous=True))
            continue
        if not row.verifying:
            raise InconsistentBeliefBase((row.label,))
        alternatives = tuple(sorted(row.verifying, key=lambda s: (len(s), sorted(s))))
        constraints.append(PositiveConstraint(label=row.label, alternatives=alternatives))
    return constraints


def _kleene(
    constraints: dict[int, PositiveConstraint], known: dict[int, int], limit: int
) -> dict[int, int]:
    current = {label: 1 for label in constraints}
    for _ in range(limit):
        values = known | current
        updated = {
            label: min(sum(values[j] for j in s) for s in c.alternatives) + 1
            for label, c in constraints.items()
        }
        if updated == current:
            return updated
        current = updated
    raise CyclicDependency(
        f"Minimal core impacts for conditionals {sorted(constraints)} do not converge"
    )


def minimal_core_vector(delta: BeliefBase) -> ImpactVector:
    """η^mc: the pareto-minimal solution of CR^+(Δ), computed stratum by stratum."""

    def compute() -> ImpactVector:
        with logfire.span("minimal_core_vector", base=delta.name):
            pending = {c.label: c for c in cr_plus(delta)}
            values: dict[int, int] = {}
            while pending:
                progress = False
                for label, constraint in list(pending.items()):
                    if constraint.vacuous:
                        values[label] = 0
                    elif all(j in values for s in constraint.alternatives for j in s):
                        values[label] = (
                            min(sum(values[j] for j in s) for s in constraint.alternatives) + 1
                        )
                    else:
                        continue
                    del pending[label]
                    progress = True
                if not progress:
                    logfire.warning(
                        "Cyclic impact dependencies, falling back to fixpoint iteration",
                        base=delta.name,
                        labels=sorted(pending),
                    )
                    limit = len(delta) * (2 ** len(delta) + 1)
                    values |= _kleene(pending, values, limit)
                    pending = {}
            return ImpactVector.for_base(delta, [values[label] for label in delta.labels])

    return delta.cached("minimal_core_vector", compute)


def ccore_infer(delta: BeliefBase, a: Formula, b: Formula) -> bool:
    """A |~mc B iff A |~ B under the OCF of the minimal core vector."""
    return infer(induced_ocf(delta, minimal_core_vector(delta)), a, b)


# c-Inference


class Verdict(StrEnum):
    TRUE = "true"
    FALSE = "false"
    UNKNOWN = "unknown"


class CInferenceResult(BaseModel):
    verdict: Verdict
    bound: int
    threshold: int
    countermodel: ImpactVector | None = None


def default_bound(delta: BeliefBase) -> int:
    return 2 ** len(delta)


def effective_bound(delta: BeliefBase, requested: int) -> int:
    """The requested bound, lowered until the impact grid fits the candidate budget."""
    budget = get_settings().cinf_max_candidates
    size = len(delta)
    bound = requested
    while bound > 0 and size and (bound + 1) ** size > budget:
        bound -= 1
    if bound != requested:
        logfire.warning(
            "c-inference bound lowered to fit the candidate budget",
            base=delta.name,
            requested=requested,
            used=bound,
            budget=budget,
        )
    return bound


def solution_ocfs(delta: BeliefBase, bound: int) -> Iterator[tuple[np.ndarray, np.ndarray]]:
    """Batches of (solutions, their induced ranks) within the bound."""
    falsify = delta.falsify_matrix.T.astype(np.int64)
    for solutions in _solution_batches(delta, bound):
        yield solutions, solutions @ falsify


def c_infer(
    delta: BeliefBase, a: Formula, b: Formula, bound: int | None = None
) -> CInferenceResult:
    """Skeptical inference over all c-representations with impacts up to the bound.

    False comes with a countermodel and is always sound. True needs the bound
    to reach the completeness threshold 2^|Δ|; below it the answer is Unknown.
    """
    delta.require_partition()
    threshold = default_bound(delta)
    used = effective_bound(delta, threshold if bound is None else bound)
    a_mask = models(a, delta.signature).mask
    b_mask = models(b, delta.signature).mask
    with logfire.span("c_infer", base=delta.name, bound=used, threshold=threshold):
        if not a_mask.any():
            return CInferenceResult(verdict=Verdict.TRUE, bound=used, threshold=threshold)
        verified, falsified = a_mask & b_mask, a_mask & ~b_mask
        for solutions, kappas in solution_ocfs(delta, used):
            rank_verified = np.where(verified, kappas, _NO_RANK).min(axis=1)
            rank_falsified = np.where(falsified, kappas, _NO_RANK).min(axis=1)
            counter = np.flatnonzero(~(rank_verified < rank_falsified))
            if len(counter):
                countermodel = ImpactVector.for_base(delta, solutions[counter[0]])
                logfire.info("c-inference countermodel found", countermodel=str(countermodel))
                return CInferenceResult(
                    verdict=Verdict.FALSE,
                    bound=used,
                    threshold=threshold,
                    countermodel=countermodel,
                )
        verdict = Verdict.TRUE if used >= threshold else Verdict.UNKNOWN
        return CInferenceResult(verdict=verdict, bound=used, threshold=threshold)


# Selection strategies


class SelectionStrategy(ABC):
    """Chooses one solution of CR(Δ) per belief base."""

    name: str = ""
    description: str = ""

    @abstractmethod
    def pick(self, delta: BeliefBase) -> ImpactVector: ...


class MinimalCoreStrategy(SelectionStrategy):
    name = "mc"
    description = "minimal core vector η^mc"

    def pick(self, delta: BeliefBase) -> ImpactVector:
        return minimal_core_vector(delta)


class LexMinStrategy(SelectionStrategy):
    name = "lexmin"
    description = "lexicographically first solution within the default bound"

    def pick(self, delta: BeliefBase) -> ImpactVector:
        delta.require_partition()
        bound = effective_bound(delta, default_bound(delta))
        for eta in enumerate_solutions(delta, bound):
            return eta
        raise StrategyReturnedNonSolution(
            f"No solution with impacts up to {bound} for base {delta.name!r}"
        )


class ConstantStrategy(SelectionStrategy):
    """Always picks the same impacts; for experiments on a fixed base."""

    def __init__(self, impacts: Sequence[int], name: str = "constant"):
        self.impacts = tuple(impacts)
        self.name = name
        self.description = f"constant impacts {self.impacts}"

    def pick(self, delta: BeliefBase) -> ImpactVector:
        return ImpactVector.for_base(delta, self.impacts)


STRATEGIES: dict[str, SelectionStrategy] = {
    strategy.name: strategy for strategy in (MinimalCoreStrategy(), LexMinStrategy())
}


def get_strategy(name: str) -> SelectionStrategy:
    try:
        return STRATEGIES[name]
    except KeyError:
        raise UnknownOperator(
            f"Unknown selection strategy '{name}'; available: {sorted(STRATEGIES)}"
        ) from None


def strategy_vector(delta: BeliefBase, sigma: SelectionStrategy) -> ImpactVector:
    eta = sigma.pick(delta)
    if not is_solution(delta, eta):
        logfire.error("Strategy returned a non-solution", strategy=sigma.name, impacts=str(eta))
        raise StrategyReturnedNonSolution(
            f"Strategy '{sigma.name}' picked {eta}, which does not solve CR({delta.name or 'Δ'})"
        )
    return eta


def strategy_infer(delta: BeliefBase, sigma: SelectionStrategy, a: Formula, b: Formula) -> bool:
    return infer(induced_ocf(delta, strategy_vector(delta, sigma)), a, b)


def _require_generalized_safe(s: Splitting) -> None:
    if not (s.is_splitting and s.generalized_safe):
        raise NotGeneralizedSafe(f"{s} is not a generalized safe splitting")


def check_ip_cspg(sigma: SelectionStrategy, delta: BeliefBase, s: Splitting) -> bool:
    """Whether σ(Δi) equals σ(Δ) restricted to Δi for both subbases."""
    _require_generalized_safe(s)
    eta = sigma.pick(delta)
    for side in (1, 2):
        sub = s.subbase(side)
        if sigma.pick(sub) != eta.restrict(sub.labels):
            return False
    return True


# Solutions along a splitting


def split_solution(
    delta: BeliefBase, s: Splitting, eta: ImpactVector | Sequence[int]
) -> tuple[ImpactVector, ImpactVector, ImpactVector]:
    """η ↦ (η|Δ1, η|Δ2, η|Δ3)."""
    _require_generalized_safe(s)
    eta = _coerce(delta, eta)
    return eta.restrict(s.delta1), eta.restrict(s.delta2), eta.restrict(s.delta3)


def compose_solutions(
    delta: BeliefBase, s: Splitting, eta1: ImpactVector, eta2: ImpactVector
) -> ImpactVector:
    """Combine solutions of Δ1 and Δ2 that agree on Δ3."""
    _require_generalized_safe(s)
    if eta1.labels != s.delta1 or eta2.labels != s.delta2:
        raise LengthMismatch(f"Impact vectors do not match the subbases of {s}")
    if eta1.restrict(s.delta3) != eta2.restrict(s.delta3):
        raise MismatchedDelta3Impacts(
            f"Impacts on Δ3 differ: {eta1.restrict(s.delta3)} vs {eta2.restrict(s.delta3)}"
        )
    values = eta1.as_dict() | eta2.as_dict()
    return ImpactVector.for_base(delta, [values[label] for label in delta.labels])


def solution_split_compose(
    delta: BeliefBase,
    s: Splitting,
    direction: Literal["split", "compose"],
    eta: ImpactVector | None = None,
    parts: tuple[ImpactVector, ImpactVector] | None = None,
) -> tuple[ImpactVector, ImpactVector, ImpactVector] | ImpactVector:
    if direction == "split":
        if eta is None:
            raise LengthMismatch("Splitting a solution needs an impact vector")
        return split_solution(delta, s, eta)
    if parts is None:
        raise LengthMismatch("Composing solutions needs two impact vectors")
    return compose_solutions(delta, s, *parts)


def match_delta3(
    delta: BeliefBase, s: Splitting, eta: ImpactVector, side: int, bound: int
) -> tuple[ImpactVector, ImpactVector] | None:
    """For a solution of Δ_side, find a solution of the other subbase agreeing on Δ3.

    Returns the other side's vector and the shared Δ3 part, or None when no
    match exists within the bound.
    """
    _require_generalized_safe(s)
    other = s.subbase(2 if side == 1 else 1)
    shared = eta.restrict(s.delta3)
    for solutions in _solution_batches(other, bound, fixed=shared.as_dict()):
        return ImpactVector.for_base(other, solutions[0]), shared
    return None
