"""
Knowledge base files.

Two syntaxes are read, and the format is detected from the first line:

    # line format            signature
    name: birds              b,p,f,w
    signature: b, p, f, w
    (f | b)                  conditionals
    (!f | p)                 birds{
                             (f|b), (!f|p)
                             }

Conditionals are written (B | A) with the formula grammar of condsplit.logic;
(B) is short for (B | top).
"""

from pathlib import Path
from typing import Literal

import logfire
import pyparsing as pp
from pydantic import BaseModel, ConfigDict

from condsplit.conditionals import BeliefBase, Conditional, semantic_duplicates
from condsplit.errors import (
    InvalidSignature,
    KbReadError,
    KbSyntaxError,
    UnknownAtom,
)
from condsplit.logic import FORMULA, Formula, Signature, Top, check_atoms, format_formula

_NAME = pp.Word(pp.alphas + "_", pp.alphanums + "_-")

CONDITIONAL = (
    pp.Suppress("(")
    + FORMULA("consequent")
    + pp.Opt(pp.Suppress("|") + FORMULA("antecedent"))
    + pp.Suppress(")")
)

_BLOCK = (
    pp.CaselessKeyword("signature").suppress()
    + pp.Group(pp.DelimitedList(pp.Word(pp.alphas, pp.alphanums + "_")))("atoms")
    + pp.CaselessKeyword("conditionals").suppress()
    + _NAME("name")
    + pp.Suppress("{")
    + pp.Group(pp.Opt(pp.DelimitedList(pp.Group(CONDITIONAL))))("conditionals")
    + pp.Suppress("}")
).ignore(pp.python_style_comment)


class KnowledgeBaseFile(BaseModel):
    """A parsed knowledge base with its source metadata."""

    model_config = ConfigDict(frozen=True)

    path: Path | None = None
    name: str
    base: BeliefBase
    comments: tuple[str, ...] = ()
    syntax: Literal["lines", "block"] = "lines"

    @property
    def signature(self) -> Signature:
        return self.base.signature


def _pair(tokens: pp.ParseResults) -> tuple[Formula, Formula]:
    antecedent = tokens.get("antecedent")
    return tokens["consequent"], antecedent if antecedent is not None else Top()


def parse_conditional(text: str, signature: Signature | None = None) -> Conditional:
    """Parse one `(B | A)`; used for queries."""
    try:
        consequent, antecedent = _pair(CONDITIONAL.parse_string(text.strip(), parse_all=True))
    except pp.ParseBaseException as exc:
        raise KbSyntaxError(f"expected a conditional (B | A): {exc.msg}", 1, exc.col) from None
    if signature is not None:
        check_atoms(consequent, signature)
        check_atoms(antecedent, signature)
    return Conditional(consequent=consequent, antecedent=antecedent)


def _build(
    signature: Signature,
    pairs: list[tuple[Formula, Formula]],
    name: str,
    lines: list[int],
) -> BeliefBase:
    for (consequent, antecedent), line in zip(pairs, lines):
        try:
            check_atoms(consequent, signature)
            check_atoms(antecedent, signature)
        except UnknownAtom as exc:
            raise KbSyntaxError(f"atom '{exc.name}' is not declared in the signature", line, 1) from None
    base = BeliefBase.from_pairs(signature, pairs, name=name)
    for first, second in semantic_duplicates(base):
        logfire.warning(
            "Semantically equivalent conditionals",
            base=name,
            first=str(base.conditional(first)),
            second=str(base.conditional(second)),
        )
    return base


def _parse_lines(text: str, default_name: str) -> tuple[BeliefBase, str, list[str]]:
    name = default_name
    signature: Signature | None = None
    pairs: list[tuple[Formula, Formula]] = []
    lines: list[int] = []
    comments: list[str] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        content, _, comment = raw.partition("#")
        if comment.strip():
            comments.append(comment.strip())
        content = content.strip()
        if not content:
            continue
        key, colon, value = content.partition(":")
        if colon and key.strip().lower() == "name":
            name = value.strip()
            continue
        if colon and key.strip().lower() == "signature":
            if signature is not None:
                raise KbSyntaxError("signature declared twice", number, 1)
            atoms = tuple(a.strip() for a in value.split(",") if a.strip())
            try:
                signature = Signature(atoms=atoms)
            except InvalidSignature as exc:
                raise KbSyntaxError(str(exc), number, content.index(":") + 2) from None
            continue
        if signature is None:
            raise KbSyntaxError("the signature line must come before the conditionals", number, 1)
        column = raw.index(content) + 1
        try:
            pairs.append(_pair(CONDITIONAL.parse_string(content, parse_all=True)))
        except pp.ParseBaseException as exc:
            raise KbSyntaxError(f"expected a conditional (B | A): {exc.msg}", number, column + exc.col - 1) from None
        lines.append(number)
    if signature is None:
        raise KbSyntaxError("missing signature line", max(1, len(text.splitlines())), 1)
    return _build(signature, pairs, name, lines), name, comments


def _parse_block(text: str) -> tuple[BeliefBase, str, list[str]]:
    try:
        tokens = _BLOCK.parse_string(text, parse_all=True)
    except pp.ParseBaseException as exc:
        raise KbSyntaxError(exc.msg, exc.lineno, exc.col) from None
    try:
        signature = Signature(atoms=tuple(tokens["atoms"]))
    except InvalidSignature as exc:
        raise KbSyntaxError(str(exc), 2, 1) from None
    pairs = [_pair(group) for group in tokens["conditionals"]]
    comments = [line.partition("#")[2].strip() for line in text.splitlines() if "#" in line]
    name = tokens["name"]
    # the block format keeps no line numbers per conditional
    return _build(signature, pairs, name, [1] * len(pairs)), name, comments


def _is_block(text: str) -> bool:
    for raw in text.splitlines():
        content = raw.partition("#")[0].strip()
        if content:
            return content.lower() == "signature"
    return False


def parse_kb(text: str, name: str = "", path: Path | None = None) -> KnowledgeBaseFile:
    if _is_block(text):
        base, name, comments = _parse_block(text)
        syntax = "block"
    else:
        base, name, comments = _parse_lines(text, name)
        syntax = "lines"
    return KnowledgeBaseFile(
        path=path, name=name, base=base, comments=tuple(comments), syntax=syntax
    )


def load_kb(path: str | Path) -> KnowledgeBaseFile:
    """Read and parse a knowledge base file (UTF-8)."""
    path = Path(path)
    with logfire.span("load_kb", path=str(path)):
        try:
            text = path.read_text(encoding="utf-8")
        except (OSError, UnicodeDecodeError) as exc:
            raise KbReadError(f"Cannot read knowledge base {path}: {exc}") from None
        try:
            kb = parse_kb(text, name=path.stem, path=path)
        except KbSyntaxError as exc:
            raise KbSyntaxError(f"{path}: {exc.message}", exc.line, exc.column) from None
        logfire.info("Knowledge base loaded", path=str(path), name=kb.name, conditionals=len(kb.base))
        return kb


def dump_kb(base: BeliefBase) -> str:
    """The line format of a base; parse_kb(dump_kb(base)) yields the same base."""
    lines = []
    if base.name:
        lines.append(f"name: {base.name}")
    lines.append("signature: " + ", ".join(base.signature.atoms))
    for conditional in base.conditionals:
        lines.append(
            f"({format_formula(conditional.consequent)} | {format_formula(conditional.antecedent)})"
        )
    return "\n".join(lines) + "\n"
