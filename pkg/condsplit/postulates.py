"""
Executable checks of the splitting postulates for inference operators.

A postulate quantifies over formulas, so a check can refute it but never
prove it: a report without violations means "satisfied at the tested scale".
Formula variables range over one representative per semantic class when the
part of the signature is small enough (formula_cap) and over conjunctions of
literals otherwise. Pairs (A, B) are enumerated as the disjoint world sets
(Mod(AB), Mod(A!B)), which covers every query up to equivalence.
"""

import itertools
from collections.abc import Iterator
from dataclasses import dataclass
from condsplit._compat import StrEnum
from typing import Literal

import logfire
import numpy as np
from pydantic import BaseModel, Field

from condsplit.conditionals import BeliefBase
from condsplit.config import get_settings
from condsplit.errors import NotGeneralizedSafe, QuantificationDomainTooLarge
from condsplit.logic import (
    Atom,
    Bot,
    Formula,
    Not,
    Signature,
    WorldSet,
    conjunction,
    models,
    project_indices,
    worldset_to_formula,
)
from condsplit.crep import default_bound, effective_bound
from condsplit.operators.base import InferenceOperator
from condsplit.operators.crep import CInference
from condsplit.splitting import Splitting, enumerate_splittings

Scope = Literal["safe", "gensafe"]


class PostulateStatus(StrEnum):
    SATISFIED = "satisfied-at-scale"
    VIOLATED = "violated"


class Violation(BaseModel):
    splitting: str | None = None
    side: int | None = None
    a: str
    b: str
    d: str | None = None
    e: str | None = None
    lhs: bool
    rhs: bool


class PostulateReport(BaseModel):
    postulate: str
    operator: str
    base: str
    scope: str | None = None
    splittings_tested: int = 0
    queries_tested: int = 0
    families: list[str] = Field(default_factory=list)
    restricted_family: bool = False
    bound: int | None = None
    violations: list[Violation] = Field(default_factory=list)
    violation_count: int = 0

    @property
    def status(self) -> PostulateStatus:
        return PostulateStatus.VIOLATED if self.violation_count else PostulateStatus.SATISFIED

    def record(self, violation: Violation) -> None:
        self.violation_count += 1
        if len(self.violations) < get_settings().violation_limit:
            self.violations.append(violation)

    def note_family(self, family: str) -> None:
        if family not in self.families:
            self.families.append(family)

    def to_json(self) -> dict:
        return self.model_dump() | {"status": str(self.status)}


# Formula families


def canonical_formulas(theta: Signature, cap: int | None = None) -> list[Formula]:
    """One formula per subset of Ω(θ), in subset-index order."""
    cap = get_settings().formula_cap if cap is None else cap
    if theta.size > cap:
        raise QuantificationDomainTooLarge(theta.size, cap)
    return [
        worldset_to_formula(WorldSet(theta, mask)) for mask in _all_subsets(theta.num_worlds)
    ]


def literal_conjunctions(theta: Signature) -> list[Formula]:
    """All conjunctions of literals over θ (⊤ included) plus ⊥."""
    formulas = []
    for choice in itertools.product((None, True, False), repeat=theta.size):
        formulas.append(
            conjunction(
                Atom(name=atom) if value else Not(operand=Atom(name=atom))
                for atom, value in zip(theta.atoms, choice)
                if value is not None
            )
        )
    formulas.append(Bot())
    return formulas


def complete_conjunctions(theta: Signature) -> list[Formula]:
    """The 2^|θ| complete conjunctions, one per world of θ."""
    return [worldset_to_formula(WorldSet.from_indices(theta, [index])) for index in range(theta.num_worlds)]


def _all_subsets(size: int) -> np.ndarray:
    """Every boolean mask of the given width, one per row."""
    rows = np.arange(1 << size, dtype=np.int64)
    return ((rows[:, None] >> np.arange(size, dtype=np.int64)) & 1).astype(bool)


@dataclass
class _Family:
    """World masks over a part of the signature with printable formulas."""

    name: str
    signature: Signature
    masks: np.ndarray
    formulas: list[Formula] | None = None

    def describe(self, row: int) -> str:
        if self.formulas is not None:
            return str(self.formulas[row])
        return str(worldset_to_formula(WorldSet(self.signature, self.masks[row])))

    def lift(self, target: Signature) -> np.ndarray:
        return self.masks[:, project_indices(target, self.signature)]


@dataclass
class _PairFamily:
    """Query pairs (A, B) as disjoint world sets X = Mod(AB), Y = Mod(A!B)."""

    name: str
    signature: Signature
    verified: np.ndarray
    falsified: np.ndarray

    def __len__(self) -> int:
        return len(self.verified)

    def describe(self, row: int) -> tuple[str, str]:
        x = WorldSet(self.signature, self.verified[row])
        y = WorldSet(self.signature, self.falsified[row])
        return str(worldset_to_formula(x | y)), str(worldset_to_formula(x))

    def lift(self, target: Signature) -> tuple[np.ndarray, np.ndarray]:
        projection = project_indices(target, self.signature)
        return self.verified[:, projection], self.falsified[:, projection]


def _pair_family(theta: Signature, cap: int) -> _PairFamily:
    if theta.size <= cap:
        codes = np.array(
            list(itertools.product((0, 1, 2), repeat=theta.num_worlds)), dtype=np.int8
        ).reshape(-1, theta.num_worlds)
        return _PairFamily("semantic", theta, codes == 1, codes == 2)
    formulas = literal_conjunctions(theta)
    masks = np.array([models(f, theta).mask for f in formulas])
    a = np.repeat(masks, len(formulas), axis=0)
    b = np.tile(masks, (len(formulas), 1))
    verified, falsified = a & b, a & ~b
    # equal (X, Y) pairs are the same query
    _, keep = np.unique(np.concatenate([verified, falsified], axis=1), axis=0, return_index=True)
    keep.sort()
    return _PairFamily("literal", theta, verified[keep], falsified[keep])


def _formula_family(theta: Signature, cap: int) -> _Family:
    if theta.size <= cap:
        return _Family("semantic", theta, _all_subsets(theta.num_worlds))
    formulas = literal_conjunctions(theta)
    return _Family("literal", theta, np.array([models(f, theta).mask for f in formulas]), formulas)


def _complete_family(theta: Signature) -> _Family:
    return _Family(
        "complete", theta, np.eye(theta.num_worlds, dtype=bool), complete_conjunctions(theta)
    )


# Checks


def _fixed_bound(op: InferenceOperator, delta: BeliefBase, report: PostulateReport) -> InferenceOperator:
    """c-inference is checked as the bounded relation at one bound shared by Δ and every Δi."""
    if not isinstance(op, CInference):
        return op
    delta.require_partition()
    requested = default_bound(delta) if op.bound is None else op.bound
    report.bound = effective_bound(delta, requested)
    return op.bounded(report.bound)


def _splitting_bases(delta: BeliefBase, s: Splitting, side: int) -> tuple[Signature, BeliefBase]:
    signature = s.subsignature(side, 3)
    return signature, delta.subbase(s.delta(side), signature=signature, name=f"{delta.name}[{side}]")


def _require_generalized_safe(s: Splitting) -> None:
    if not (s.is_splitting and s.generalized_safe):
        raise NotGeneralizedSafe(f"{s} is not a generalized safe splitting")


def check_di_tv(op: InferenceOperator, delta: BeliefBase) -> PostulateReport:
    """Direct Inference on the base and Trivial Vacuity on the empty base over Σ."""
    report = PostulateReport(postulate="ditv", operator=op.name, base=delta.name)
    op = _fixed_bound(op, delta, report)
    with logfire.span("check_di_tv", operator=op.name, base=delta.name):
        reasoner = op.reasoner(delta)
        for conditional in delta.conditionals:
            report.queries_tested += 1
            if not reasoner.infer(conditional.antecedent, conditional.consequent):
                report.record(
                    Violation(
                        a=str(conditional.antecedent),
                        b=str(conditional.consequent),
                        lhs=False,
                        rhs=True,
                    )
                )
        empty = BeliefBase(signature=delta.signature, name="∅")
        pairs = _pair_family(delta.signature, get_settings().formula_cap)
        report.note_family(f"A,B over Σ: {pairs.name}")
        report.restricted_family = pairs.name != "semantic"
        verified, falsified = pairs.verified, pairs.falsified
        accepted = op.reasoner(empty).entails_many(verified | falsified, verified)
        report.queries_tested += len(pairs)
        for row in np.flatnonzero(accepted & falsified.any(axis=1)):
            a, b = pairs.describe(int(row))
            report.record(Violation(a=a, b=b, lhs=True, rhs=False))
    _log_report(report)
    return report


def _crelg(
    op: InferenceOperator, delta: BeliefBase, s: Splitting, report: PostulateReport
) -> None:
    cap = get_settings().formula_cap
    whole = op.reasoner(delta)
    contexts = _complete_family(s.subsignature(3))
    for side in (1, 2):
        signature, sub = _splitting_bases(delta, s, side)
        part = _pair_family(s.subsignature(side), cap)
        report.note_family(f"A,B over Σ{side}: {part.name}")
        report.note_family("E over Σ3: complete")
        report.restricted_family |= part.name != "semantic"
        local = op.reasoner(sub)
        x_full, y_full = part.lift(delta.signature)
        x_sub, y_sub = part.lift(signature)
        e_full = contexts.lift(delta.signature)
        e_sub = contexts.lift(signature)
        for e_row in range(len(contexts.masks)):
            lhs = whole.entails_many((x_full | y_full) & e_full[e_row], x_full)
            rhs = local.entails_many((x_sub | y_sub) & e_sub[e_row], x_sub)
            report.queries_tested += 2 * len(part)
            for row in np.flatnonzero(lhs != rhs):
                a, b = part.describe(int(row))
                report.record(
                    Violation(
                        splitting=str(s),
                        side=side,
                        a=a,
                        b=b,
                        e=contexts.describe(e_row),
                        lhs=bool(lhs[row]),
                        rhs=bool(rhs[row]),
                    )
                )


def _cindg(
    op: InferenceOperator, delta: BeliefBase, s: Splitting, report: PostulateReport
) -> None:
    cap = get_settings().formula_cap
    reasoner = op.reasoner(delta)
    signature = delta.signature
    contexts = _complete_family(s.subsignature(3))
    e_full = contexts.lift(signature)
    nothing = np.zeros(signature.num_worlds, dtype=bool)
    for side, other in ((1, 2), (2, 1)):
        part = _pair_family(s.subsignature(side), cap)
        extra = _formula_family(s.subsignature(other), cap)
        report.note_family(f"A,B over Σ{side}: {part.name}")
        report.note_family(f"D over Σ{other}: {extra.name}")
        report.restricted_family |= part.name != "semantic" or extra.name != "semantic"
        x, y = part.lift(signature)
        d_full = extra.lift(signature)
        for e_row in range(len(contexts.masks)):
            e = e_full[e_row]
            lhs = reasoner.entails_many((x | y) & e, x)
            contexts_de = d_full & e
            inconsistent = reasoner.entails_many(
                contexts_de, np.broadcast_to(nothing, contexts_de.shape)
            )
            report.queries_tested += len(part) + len(d_full)
            for d_row in np.flatnonzero(~inconsistent):
                rhs = reasoner.entails_many((x | y) & contexts_de[d_row], x)
                report.queries_tested += len(part)
                for row in np.flatnonzero(lhs != rhs):
                    a, b = part.describe(int(row))
                    report.record(
                        Violation(
                            splitting=str(s),
                            side=side,
                            a=a,
                            b=b,
                            d=extra.describe(int(d_row)),
                            e=contexts.describe(e_row),
                            lhs=bool(lhs[row]),
                            rhs=bool(rhs[row]),
                        )
                    )


def check_crelg(op: InferenceOperator, delta: BeliefBase, s: Splitting) -> PostulateReport:
    """AE |~Δ B iff AE |~Δi B for A, B over Σi and complete conjunctions E over Σ3."""
    _require_generalized_safe(s)
    report = PostulateReport(postulate="crelg", operator=op.name, base=delta.name, splittings_tested=1)
    op = _fixed_bound(op, delta, report)
    with logfire.span("check_crelg", operator=op.name, base=delta.name, splitting=str(s)):
        _crelg(op, delta, s, report)
    _log_report(report)
    return report


def check_cindg(op: InferenceOperator, delta: BeliefBase, s: Splitting) -> PostulateReport:
    """AE |~Δ B iff AED |~Δ B for D over the other part, unless DE |~Δ ⊥."""
    _require_generalized_safe(s)
    report = PostulateReport(postulate="cindg", operator=op.name, base=delta.name, splittings_tested=1)
    op = _fixed_bound(op, delta, report)
    with logfire.span("check_cindg", operator=op.name, base=delta.name, splitting=str(s)):
        _cindg(op, delta, s, report)
    _log_report(report)
    return report


def splittings_in_scope(delta: BeliefBase, scope: Scope) -> Iterator[Splitting]:
    for s in enumerate_splittings(delta, dedup=True):
        if (s.safe if scope == "safe" else s.generalized_safe):
            yield s


def check_postulate(
    op: InferenceOperator,
    delta: BeliefBase,
    postulate: Literal["crelg", "cindg", "csynsplitg"],
    scope: Scope = "gensafe",
) -> PostulateReport:
    """Run a splitting postulate over every splitting in scope.

    With scope "safe" the checks realize the postulates restricted to safe
    splittings; "csynsplitg" is the conjunction of the other two.
    """
    checks = {"crelg": (_crelg,), "cindg": (_cindg,), "csynsplitg": (_crelg, _cindg)}[postulate]
    report = PostulateReport(postulate=postulate, operator=op.name, base=delta.name, scope=scope)
    op = _fixed_bound(op, delta, report)
    with logfire.span("check_postulate", postulate=postulate, operator=op.name, base=delta.name, scope=scope):
        for s in splittings_in_scope(delta, scope):
            report.splittings_tested += 1
            for check in checks:
                check(op, delta, s, report)
    _log_report(report)
    return report


def check_csynsplitg(op: InferenceOperator, delta: BeliefBase, scope: Scope = "gensafe") -> PostulateReport:
    return check_postulate(op, delta, "csynsplitg", scope)


def _log_report(report: PostulateReport) -> None:
    logfire.info(
        "Postulate checked",
        postulate=report.postulate,
        operator=report.operator,
        base=report.base,
        status=str(report.status),
        violations=report.violation_count,
        queries=report.queries_tested,
    )
