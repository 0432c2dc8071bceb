"""
Text, JSON lines and Markdown renderings shared by the CLI and the service.
"""

import json
from collections.abc import Iterable

from condsplit.conditionals import BeliefBase, TolerancePartition
from condsplit.crep import (
    ConstraintSystem,
    constraint_sets,
    cr_plus,
    format_family,
    induced_ocf,
    minimal_core_vector,
    reduced_constraints,
)
from condsplit.operators.systemz import system_z_ocf
from condsplit.postulates import PostulateReport
from condsplit.ranking import RankingFunction
from condsplit.splitting import Splitting, census, enumerate_splittings


def census_line(splittings: Iterable[Splitting]) -> str:
    counts = census(splittings)
    return " ".join(f"{key}={value}" for key, value in counts.items())


def _flags(s: Splitting) -> str:
    flags = []
    if s.safe:
        flags.append("safe")
    if s.generalized_safe:
        flags.append("gensafe")
    if s.genuine:
        flags.append("genuine")
    flags.extend(sorted(s.simple_kinds))
    return ",".join(flags) or "-"


def _labels(labels: Iterable[int]) -> str:
    return "{" + ",".join(str(label) for label in labels) + "}"


def splittings_text(splittings: list[Splitting], counts_from: list[Splitting] | None = None) -> str:
    lines = [census_line(counts_from if counts_from is not None else splittings)]
    for s in splittings:
        lines.append(
            f"{s}  Δ1={_labels(s.delta1)} Δ2={_labels(s.delta2)} Δ3={_labels(s.delta3)}  {_flags(s)}"
        )
    return "\n".join(lines)


def splittings_jsonl(splittings: list[Splitting]) -> str:
    return "\n".join(s.to_record().model_dump_json() for s in splittings)


def partition_text(delta: BeliefBase) -> str:
    partition = delta.partition()
    if not isinstance(partition, TolerancePartition):
        return f"inconsistent: no level for {_labels(partition.remaining)}"
    return "\n".join(
        f"Δ^{level} = " + "{" + ", ".join(str(delta.conditional(label)) for label in part) + "}"
        for level, part in enumerate(partition.parts)
    )


def constraint_text(original: ConstraintSystem, reduced: ConstraintSystem) -> str:
    lines = []
    for before, after in zip(original.rows, reduced.rows):
        lines.append(
            f"δ{before.label}: V={format_family(before.verifying)} F={format_family(before.falsifying)}"
            f"  →  V̂={format_family(after.verifying)} F̂={format_family(after.falsifying)}"
        )
    return "\n".join(lines)


def ranks_text(kappa: RankingFunction) -> str:
    return "\n".join(
        f"{kappa.signature.world(index)}: {rank}" for index, rank in enumerate(kappa.ranks.tolist())
    )


def layers_text(kappa: RankingFunction) -> str:
    lines = []
    for layer in kappa.layers():
        rank = kappa[layer[0]]
        worlds = "; ".join(str(kappa.signature.world(index)) for index in layer)
        lines.append(f"{rank}: {worlds}")
    return "\n".join(lines)


def core_text(delta: BeliefBase) -> str:
    eta = minimal_core_vector(delta)
    lines = ["CR^+:"]
    lines.extend(f"  {constraint}" for constraint in cr_plus(delta))
    lines.append(f"η^mc = {eta}")
    lines.append(ranks_text(induced_ocf(delta, eta)))
    return "\n".join(lines)


def postulate_text(report: PostulateReport) -> str:
    lines = [
        f"{report.postulate} for {report.operator} on {report.base or 'Δ'}"
        + (f" (scope {report.scope})" if report.scope else "")
        + f": {report.status}",
        f"splittings tested: {report.splittings_tested}, queries tested: {report.queries_tested}",
    ]
    if report.families:
        lines.append("families: " + "; ".join(report.families))
    if report.restricted_family:
        lines.append("at scale with a restricted formula family")
    if report.bound is not None:
        lines.append(f"c-inference as the bounded relation with impacts ≤ {report.bound}")
    if report.violation_count:
        lines.append(f"violations: {report.violation_count}")
    for v in report.violations:
        where = f"{v.splitting} side {v.side}: " if v.splitting else ""
        context = "".join(
            f" {name}={value}" for name, value in (("E", v.e), ("D", v.d)) if value is not None
        )
        lines.append(f"  {where}A={v.a} B={v.b}{context} lhs={v.lhs} rhs={v.rhs}")
    return "\n".join(lines)


def markdown_report(delta: BeliefBase) -> str:
    """Dossier of a base: conditionals, partition, κ^z, splittings, constraints, η^mc."""
    title = delta.name or "belief base"
    sections = [f"# {title}", "", f"Signature: `{', '.join(delta.signature.atoms)}`", ""]
    sections += ["## Conditionals", "", "| label | conditional |", "|---|---|"]
    sections += [f"| δ{c.label} | `{c}` |" for c in delta.conditionals]
    sections += ["", "## Tolerance partition", "", "```", partition_text(delta), "```", ""]
    if not delta.is_consistent():
        return "\n".join(sections)

    sections += ["## System Z", "", "```", layers_text(system_z_ocf(delta)), "```", ""]

    splittings = enumerate_splittings(delta, dedup=True)
    sections += ["## Splittings", "", f"`{census_line(splittings)}`", ""]
    sections += ["| Σ1 | Σ2 | Σ3 | flags |", "|---|---|---|---|"]
    sections += [
        f"| {{{','.join(s.sigma1)}}} | {{{','.join(s.sigma2)}}} | {{{','.join(s.sigma3)}}} | {_flags(s)} |"
        for s in splittings
    ]

    original, reduced = constraint_sets(delta), reduced_constraints(delta)
    sections += ["", "## Constraint sets", "", "| δ | V | F | V̂ | F̂ |", "|---|---|---|---|---|"]
    for before, after in zip(original.rows, reduced.rows):
        sections.append(
            f"| δ{before.label} | {format_family(before.verifying)} | {format_family(before.falsifying)}"
            f" | {format_family(after.verifying)} | {format_family(after.falsifying)} |"
        )
    eta = minimal_core_vector(delta)
    sections += ["", "## Minimal core", "", f"η^mc = `{eta}`", ""]
    sections += ["```", ranks_text(induced_ocf(delta, eta)), "```", ""]
    return "\n".join(sections)


def dumps(payload: dict) -> str:
    return json.dumps(payload, indent=2, ensure_ascii=False)
