import functools
import json
from pathlib import Path

import click

from condsplit.config import configure_logging, override_max_atoms
from condsplit.crep import (
    Verdict,
    c_infer,
    constraint_sets,
    enumerate_solutions,
    induced_ocf,
    minimal_core_vector,
    reduced_constraints,
)
from condsplit.errors import CondSplitError
from condsplit.kb import dump_kb, load_kb, parse_conditional
from condsplit.operators import get_all_operators, get_operator, w_dot
from condsplit.postulates import check_di_tv, check_postulate
from condsplit.reports import (
    constraint_text,
    core_text,
    dumps,
    markdown_report,
    partition_text,
    postulate_text,
    splittings_jsonl,
    splittings_text,
)
from condsplit.splitting import census, enumerate_splittings

EXIT_CODES = {Verdict.TRUE: 0, Verdict.FALSE: 1, Verdict.UNKNOWN: 2}
ANSWERS = {Verdict.TRUE: "ACCEPT", Verdict.FALSE: "REJECT", Verdict.UNKNOWN: "UNKNOWN"}
INPUT_ERROR = 3

kb_option = click.option(
    "--kb",
    "kb_path",
    required=True,
    type=click.Path(path_type=Path),
    help="Knowledge base file (.cl).",
)
json_option = click.option("--json", "as_json", is_flag=True, default=False, help="Print JSON.")


def reports_errors(command):
    """Print library errors on stderr and exit with the input-error status."""

    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except (CondSplitError, ValueError) as exc:
            click.echo(f"error: {exc}", err=True)
            raise SystemExit(INPUT_ERROR)

    return wrapper


@click.group()
@click.option(
    "--max-atoms",
    type=int,
    default=None,
    help="Override the signature cap (CONDSPLIT_MAX_ATOMS) for this run.",
)
def cli(max_atoms: int | None) -> None:
    """Conditional belief bases: inference operators, splittings, c-representations."""
    if max_atoms is not None:
        override_max_atoms(max_atoms)
    configure_logging()


@cli.group(name="kb")
def kb_group() -> None:
    """Knowledge base files."""
    pass


@kb_group.command(name="validate")
@kb_option
@reports_errors
def kb_validate(kb_path: Path) -> None:
    """Parse a knowledge base and report its size and consistency."""
    kb = load_kb(kb_path)
    base = kb.base
    click.echo(
        f"{kb.name}: {len(base)} conditionals over {{{','.join(base.signature.atoms)}}} ({kb.syntax} syntax)"
    )
    click.echo(partition_text(base))


@kb_group.command(name="dump")
@kb_option
@reports_errors
def kb_dump(kb_path: Path) -> None:
    """Print a knowledge base in the line format."""
    click.echo(dump_kb(load_kb(kb_path).base), nl=False)


@cli.command(name="operators")
def operators_cmd() -> None:
    """List available inference operators."""
    click.echo("Available operators:")
    for name, operator in get_all_operators().items():
        click.echo(f"- {name}: {operator.description}")


@cli.command(name="infer")
@kb_option
@click.option("--op", "op_name", required=True, help="Operator name (see `operators`).")
@click.option("--query", required=True, help='Conditional query, e.g. "(w | p,b)".')
@click.option("--bound", type=int, default=None, help="Impact bound for c-inference.")
@click.option("--verbose", is_flag=True, default=False, help="Print the witness trace.")
@json_option
@reports_errors
def infer_cmd(
    kb_path: Path, op_name: str, query: str, bound: int | None, verbose: bool, as_json: bool
) -> None:
    """Answer A |~ B; exit 0 accept, 1 reject, 2 unknown."""
    base = load_kb(kb_path).base
    operator = get_operator(op_name)
    conditional = parse_conditional(query, base.signature)
    a, b = conditional.antecedent, conditional.consequent
    payload: dict = {"operator": operator.name, "query": str(conditional)}
    trace: list[str] = []
    if operator.name == "cinf":
        result = c_infer(base, a, b, bound=bound)
        verdict = result.verdict
        payload |= {"bound": result.bound, "threshold": result.threshold}
        if result.countermodel is not None:
            payload["countermodel"] = list(result.countermodel.impacts)
            trace.append(f"countermodel η = {result.countermodel}")
        if verdict == Verdict.UNKNOWN:
            trace.append(f"no countermodel with impacts ≤ {result.bound} (complete from {result.threshold})")
    else:
        reasoner = operator.reasoner(base)
        verdict = Verdict.TRUE if reasoner.infer(a, b) else Verdict.FALSE
        if verbose or as_json:
            trace = reasoner.explain(a, b)
    payload |= {"verdict": ANSWERS[verdict], "trace": trace}
    if as_json:
        click.echo(dumps(payload))
    else:
        click.echo(ANSWERS[verdict])
        if verbose:
            for line in trace:
                click.echo(f"  {line}")
    raise SystemExit(EXIT_CODES[verdict])


_FILTERS = {
    "safe": lambda s: bool(s.safe),
    "gensafe": lambda s: bool(s.generalized_safe),
    "genuine": lambda s: bool(s.genuine),
    "simple": lambda s: bool(s.simple_kinds),
}


@cli.command(name="splittings")
@kb_option
@click.option("--only", type=click.Choice(list(_FILTERS)), default=None, help="Keep one class.")
@click.option(
    "--require",
    type=click.Choice(list(_FILTERS)),
    multiple=True,
    help="Additional classes every listed splitting must have.",
)
@click.option(
    "--oriented",
    is_flag=True,
    default=False,
    help="List both orientations (Σ1, Σ2) and (Σ2, Σ1).",
)
@click.option(
    "--format",
    "output_format",
    type=click.Choice(["text", "jsonl"]),
    default="text",
    show_default=True,
)
@reports_errors
def splittings_cmd(
    kb_path: Path, only: str | None, require: tuple[str, ...], oriented: bool, output_format: str
) -> None:
    """Enumerate and classify the splittings of a base."""
    base = load_kb(kb_path).base
    everything = enumerate_splittings(base, dedup=not oriented)
    wanted = ([only] if only else []) + list(require)
    selected = [s for s in everything if all(_FILTERS[name](s) for name in wanted)]
    if output_format == "jsonl":
        click.echo(json.dumps(census(everything)))
        if selected:
            click.echo(splittings_jsonl(selected))
    else:
        click.echo(splittings_text(selected, counts_from=everything))


@cli.group(name="crep")
def crep_group() -> None:
    """c-Representations: constraint sets, minimal core, solutions."""
    pass


@crep_group.command(name="dump")
@kb_option
@json_option
@reports_errors
def crep_dump(kb_path: Path, as_json: bool) -> None:
    """Print V/F and the reduced V̂/F̂ tables."""
    base = load_kb(kb_path).base
    original, reduced = constraint_sets(base), reduced_constraints(base)
    if as_json:
        click.echo(dumps({"original": original.model_dump(mode="json"), "reduced": reduced.model_dump(mode="json")}))
    else:
        click.echo(constraint_text(original, reduced))


@crep_group.command(name="core")
@kb_option
@json_option
@reports_errors
def crep_core(kb_path: Path, as_json: bool) -> None:
    """Print CR^+, the minimal core vector and its OCF."""
    base = load_kb(kb_path).base
    if as_json:
        eta = minimal_core_vector(base)
        click.echo(dumps({"impacts": list(eta.impacts), "ranks": induced_ocf(base, eta).to_json()}))
    else:
        click.echo(core_text(base))


@crep_group.command(name="solutions")
@kb_option
@click.option("--bound", type=int, default=2, show_default=True, help="Largest impact.")
@click.option("--limit", type=int, default=None, help="Stop after this many solutions.")
@reports_errors
def crep_solutions(kb_path: Path, bound: int, limit: int | None) -> None:
    """Stream the solutions of CR(Δ) within the bound, in lexicographic order."""
    base = load_kb(kb_path).base
    for count, eta in enumerate(enumerate_solutions(base, bound), start=1):
        click.echo(str(eta))
        if limit is not None and count >= limit:
            break


@cli.group(name="postulates")
def postulates_group() -> None:
    """Check inference postulates at desk scale."""
    pass


@postulates_group.command(name="check")
@kb_option
@click.option("--op", "op_name", required=True, help="Operator name (see `operators`).")
@click.option(
    "--postulate",
    type=click.Choice(["crelg", "cindg", "csynsplitg", "ditv"]),
    required=True,
)
@click.option(
    "--scope",
    type=click.Choice(["safe", "gensafe"]),
    default="gensafe",
    show_default=True,
    help="Splittings to check: safe ones only or all generalized safe ones.",
)
@json_option
@reports_errors
def postulates_check(kb_path: Path, op_name: str, postulate: str, scope: str, as_json: bool) -> None:
    """Exit 0 when no violation was found, 1 otherwise."""
    base = load_kb(kb_path).base
    operator = get_operator(op_name)
    if postulate == "ditv":
        report = check_di_tv(operator, base)
    else:
        report = check_postulate(operator, base, postulate, scope)
    click.echo(dumps(report.to_json()) if as_json else postulate_text(report))
    raise SystemExit(1 if report.violation_count else 0)


@cli.command(name="report")
@kb_option
@click.option(
    "--output",
    type=click.Path(path_type=Path),
    default=None,
    help="Write the Markdown dossier to this file instead of stdout.",
)
@reports_errors
def report_cmd(kb_path: Path, output: Path | None) -> None:
    """Markdown dossier of a knowledge base."""
    text = markdown_report(load_kb(kb_path).base)
    if output is None:
        click.echo(text)
    else:
        output.write_text(text, encoding="utf-8")
        click.echo(f"Report written to {output}")


@cli.command(name="dot")
@kb_option
@reports_errors
def dot_cmd(kb_path: Path) -> None:
    """Graphviz DOT of the System W preference <^w."""
    click.echo(w_dot(load_kb(kb_path).base))


if __name__ == "__main__":
    cli()
