"""
Propositional signatures, worlds, formulas and world sets.

Worlds over a signature are bit-indexed: atom i of the signature (declaration
order) is bit i of the world index, so the worlds over a signature of n atoms
are exactly the integers 0..2^n-1.
"""

import re
from collections.abc import Iterable, Iterator, Mapping
from functools import cache, lru_cache

import numpy as np
import pyparsing as pp
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from condsplit.config import get_settings
from condsplit.errors import (
    AtomNotInSignature,
    FormulaSyntaxError,
    InvalidSignature,
    OverlappingSignatures,
    SignatureOverflow,
    UnknownAtom,
)

IDENTIFIER = re.compile(r"[a-zA-Z][a-zA-Z0-9_]*\Z")
RESERVED_WORDS = frozenset({"top", "bot"})


@cache
def _truth_table(size: int) -> np.ndarray:
    indices = np.arange(1 << size, dtype=np.int64)
    table = ((indices[:, None] >> np.arange(size, dtype=np.int64)) & 1).astype(bool)
    table.flags.writeable = False
    return table


class Signature(BaseModel):
    """Ordered set of propositional atoms."""

    model_config = ConfigDict(frozen=True)

    atoms: tuple[str, ...] = ()

    @field_validator("atoms")
    @classmethod
    def _check_atoms(cls, atoms: tuple[str, ...]) -> tuple[str, ...]:
        seen: set[str] = set()
        for atom in atoms:
            if not IDENTIFIER.match(atom):
                raise InvalidSignature(f"'{atom}' is not a valid atom name")
            if atom in RESERVED_WORDS:
                raise InvalidSignature(f"'{atom}' is a reserved word")
            if atom in seen:
                raise InvalidSignature(f"Atom '{atom}' is declared twice")
            seen.add(atom)
        return atoms

    @classmethod
    def of(cls, *atoms: str) -> "Signature":
        return cls(atoms=tuple(atoms))

    @property
    def size(self) -> int:
        return len(self.atoms)

    @property
    def num_worlds(self) -> int:
        return 1 << len(self.atoms)

    def __contains__(self, atom: object) -> bool:
        return atom in self.atoms

    def __str__(self) -> str:
        return "{" + ",".join(self.atoms) + "}"

    def index(self, atom: str) -> int:
        try:
            return self.atoms.index(atom)
        except ValueError:
            raise UnknownAtom(atom) from None

    def check_size(self) -> None:
        cap = get_settings().max_atoms
        if self.size > cap:
            raise SignatureOverflow(self.size, cap)

    def truth_table(self) -> np.ndarray:
        """Boolean matrix of shape (2^n, n); row w holds the assignment of world w."""
        self.check_size()
        return _truth_table(self.size)

    def subsignature(self, atoms: Iterable[str]) -> "Signature":
        """The given atoms as a signature, ordered like this one."""
        wanted = set(atoms)
        missing = wanted - set(self.atoms)
        if missing:
            raise AtomNotInSignature(
                f"Atoms {sorted(missing)} are not part of signature {self}"
            )
        return Signature(atoms=tuple(a for a in self.atoms if a in wanted))

    def complement(self, theta: "Signature") -> "Signature":
        self.subsignature(theta.atoms)
        return Signature(atoms=tuple(a for a in self.atoms if a not in theta.atoms))

    def union(self, other: "Signature") -> "Signature":
        return Signature(
            atoms=self.atoms + tuple(a for a in other.atoms if a not in self.atoms)
        )

    def is_disjoint(self, other: "Signature") -> bool:
        return not set(self.atoms) & set(other.atoms)

    def world(self, index: int) -> "World":
        return World(signature=self, index=index)

    def worlds(self) -> Iterator["World"]:
        self.check_size()
        for index in range(self.num_worlds):
            yield World(signature=self, index=index)

    def world_from_literals(self, values: Mapping[str, bool]) -> "World":
        if set(values) != set(self.atoms):
            raise AtomNotInSignature(
                f"A world over {self} needs exactly one value per atom, got {sorted(values)}"
            )
        index = sum(1 << i for i, atom in enumerate(self.atoms) if values[atom])
        return World(signature=self, index=index)


class World(BaseModel):
    """A propositional interpretation, identified by its index over a signature."""

    model_config = ConfigDict(frozen=True)

    signature: Signature
    index: int

    @model_validator(mode="after")
    def _check_index(self) -> "World":
        if not 0 <= self.index < self.signature.num_worlds:
            raise InvalidSignature(
                f"World index {self.index} is out of range for signature {self.signature}"
            )
        return self

    def value(self, atom: str) -> bool:
        return bool((self.index >> self.signature.index(atom)) & 1)

    def literals(self) -> dict[str, bool]:
        return {atom: bool((self.index >> i) & 1) for i, atom in enumerate(self.signature.atoms)}

    def satisfies(self, formula: "Formula") -> bool:
        return bool(models(formula, self.signature).mask[self.index])

    def __str__(self) -> str:
        if not self.signature.atoms:
            return "top"
        return ",".join(
            atom if (self.index >> i) & 1 else f"!{atom}"
            for i, atom in enumerate(self.signature.atoms)
        )


# Formulas


class Formula(BaseModel):
    """Propositional formula AST node."""

    model_config = ConfigDict(frozen=True)

    def atom_names(self) -> frozenset[str]:
        raise NotImplementedError

    def __and__(self, other: "Formula") -> "Formula":
        return And(left=self, right=other)

    def __or__(self, other: "Formula") -> "Formula":
        return Or(left=self, right=other)

    def __invert__(self) -> "Formula":
        return Not(operand=self)

    def __str__(self) -> str:
        return format_formula(self)


class Atom(Formula):
    name: str

    def atom_names(self) -> frozenset[str]:
        return frozenset({self.name})


class Top(Formula):
    def atom_names(self) -> frozenset[str]:
        return frozenset()


class Bot(Formula):
    def atom_names(self) -> frozenset[str]:
        return frozenset()


class Not(Formula):
    operand: Formula

    def atom_names(self) -> frozenset[str]:
        return self.operand.atom_names()


class And(Formula):
    left: Formula
    right: Formula

    def atom_names(self) -> frozenset[str]:
        return self.left.atom_names() | self.right.atom_names()


class Or(Formula):
    left: Formula
    right: Formula

    def atom_names(self) -> frozenset[str]:
        return self.left.atom_names() | self.right.atom_names()


def conjunction(formulas: Iterable[Formula]) -> Formula:
    result: Formula | None = None
    for formula in formulas:
        result = formula if result is None else And(left=result, right=formula)
    return Top() if result is None else result


def disjunction(formulas: Iterable[Formula]) -> Formula:
    result: Formula | None = None
    for formula in formulas:
        result = formula if result is None else Or(left=result, right=formula)
    return Bot() if result is None else result


def _precedence(formula: Formula) -> int:
    match formula:
        case Or():
            return 1
        case And():
            return 2
        case Not():
            return 3
        case _:
            return 4


def format_formula(formula: Formula) -> str:
    """Print a formula in the input grammar with minimal parentheses."""
    match formula:
        case Atom(name=name):
            return name
        case Top():
            return "top"
        case Bot():
            return "bot"
        case Not(operand=operand):
            inner = format_formula(operand)
            return f"!{inner}" if _precedence(operand) >= 3 else f"!({inner})"
        case And(left=left, right=right) | Or(left=left, right=right):
            level = _precedence(formula)
            symbol = "," if level == 2 else ";"
            lhs = format_formula(left)
            rhs = format_formula(right)
            if _precedence(left) < level:
                lhs = f"({lhs})"
            if _precedence(right) <= level:
                rhs = f"({rhs})"
            return f"{lhs}{symbol}{rhs}"
    raise TypeError(f"Not a formula: {formula!r}")


# Parsing

pp.ParserElement.enable_packrat()


def _make_atom(tokens: pp.ParseResults) -> Formula:
    return Atom(name=tokens[0])


def _make_top(tokens: pp.ParseResults) -> Formula:
    return Top()


def _make_bot(tokens: pp.ParseResults) -> Formula:
    return Bot()


def _make_not(tokens: pp.ParseResults) -> Formula:
    return Not(operand=tokens[0][1])


def _folder(node: type[Formula]):
    def fold(tokens: pp.ParseResults) -> Formula:
        operands = tokens[0][0::2]
        result = operands[0]
        for operand in operands[1:]:
            result = node(left=result, right=operand)
        return result

    return fold


_TOP = pp.Keyword("top").set_parse_action(_make_top)
_BOT = pp.Keyword("bot").set_parse_action(_make_bot)
_ATOM = (
    ~(pp.Keyword("top") | pp.Keyword("bot")) + pp.Word(pp.alphas, pp.alphanums + "_")
).set_parse_action(_make_atom)

FORMULA = pp.infix_notation(
    _TOP | _BOT | _ATOM,
    [
        (pp.Literal("!"), 1, pp.OpAssoc.RIGHT, _make_not),
        (pp.Literal(","), 2, pp.OpAssoc.LEFT, _folder(And)),
        (pp.Literal(";"), 2, pp.OpAssoc.LEFT, _folder(Or)),
    ],
).set_name("formula")


def check_atoms(formula: Formula, signature: Signature) -> None:
    for name in sorted(formula.atom_names()):
        if name not in signature.atoms:
            raise UnknownAtom(name)


def parse_formula(text: str, signature: Signature | None = None) -> Formula:
    """Parse `text` in the formula grammar; with a signature, reject unknown atoms."""
    try:
        formula = FORMULA.parse_string(text, parse_all=True)[0]
    except pp.ParseBaseException as exc:
        raise FormulaSyntaxError(text, exc.loc, exc.msg) from None
    if signature is not None:
        check_atoms(formula, signature)
    return formula


# World sets


class WorldSet:
    """A set of worlds over one signature, stored as a boolean mask."""

    __slots__ = ("signature", "mask")

    def __init__(self, signature: Signature, mask: np.ndarray):
        mask = np.asarray(mask, dtype=bool)
        if mask.shape != (signature.num_worlds,):
            raise InvalidSignature(
                f"Mask of shape {mask.shape} does not match the {signature.num_worlds} "
                f"worlds of {signature}"
            )
        self.signature = signature
        self.mask = mask

    @classmethod
    def empty(cls, signature: Signature) -> "WorldSet":
        return cls(signature, np.zeros(signature.num_worlds, dtype=bool))

    @classmethod
    def full(cls, signature: Signature) -> "WorldSet":
        return cls(signature, np.ones(signature.num_worlds, dtype=bool))

    @classmethod
    def from_indices(cls, signature: Signature, indices: Iterable[int]) -> "WorldSet":
        mask = np.zeros(signature.num_worlds, dtype=bool)
        mask[list(indices)] = True
        return cls(signature, mask)

    def _same(self, other: "WorldSet") -> None:
        if other.signature != self.signature:
            raise InvalidSignature(
                f"World sets over {self.signature} and {other.signature} cannot be combined"
            )

    def __and__(self, other: "WorldSet") -> "WorldSet":
        self._same(other)
        return WorldSet(self.signature, self.mask & other.mask)

    def __or__(self, other: "WorldSet") -> "WorldSet":
        self._same(other)
        return WorldSet(self.signature, self.mask | other.mask)

    def __sub__(self, other: "WorldSet") -> "WorldSet":
        self._same(other)
        return WorldSet(self.signature, self.mask & ~other.mask)

    def __invert__(self) -> "WorldSet":
        return WorldSet(self.signature, ~self.mask)

    def __le__(self, other: "WorldSet") -> bool:
        self._same(other)
        return not bool((self.mask & ~other.mask).any())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WorldSet):
            return NotImplemented
        return self.signature == other.signature and bool(np.array_equal(self.mask, other.mask))

    def __hash__(self) -> int:
        return hash((self.signature, self.mask.tobytes()))

    def __len__(self) -> int:
        return int(self.mask.sum())

    def __contains__(self, world: World) -> bool:
        return world.signature == self.signature and bool(self.mask[world.index])

    def __iter__(self) -> Iterator[World]:
        for index in self.indices():
            yield World(signature=self.signature, index=index)

    def __repr__(self) -> str:
        return f"WorldSet({self.signature}, {self.indices()})"

    def indices(self) -> list[int]:
        return [int(i) for i in np.flatnonzero(self.mask)]

    def is_empty(self) -> bool:
        return not bool(self.mask.any())


@lru_cache(maxsize=8192)
def _formula_mask(formula: Formula, signature: Signature) -> np.ndarray:
    mask = _evaluate(formula, signature, signature.truth_table())
    mask.flags.writeable = False
    return mask


def _evaluate(formula: Formula, signature: Signature, table: np.ndarray) -> np.ndarray:
    match formula:
        case Atom(name=name):
            return table[:, signature.index(name)].copy()
        case Top():
            return np.ones(table.shape[0], dtype=bool)
        case Bot():
            return np.zeros(table.shape[0], dtype=bool)
        case Not(operand=operand):
            return ~_evaluate(operand, signature, table)
        case And(left=left, right=right):
            return _evaluate(left, signature, table) & _evaluate(right, signature, table)
        case Or(left=left, right=right):
            return _evaluate(left, signature, table) | _evaluate(right, signature, table)
    raise TypeError(f"Not a formula: {formula!r}")


def models(formula: Formula, signature: Signature) -> WorldSet:
    """Mod(formula) over the signature."""
    signature.check_size()
    return WorldSet(signature, _formula_mask(formula, signature))


def entails(a: Formula, b: Formula, signature: Signature) -> bool:
    return models(a, signature) <= models(b, signature)


def equivalent(a: Formula, b: Formula, signature: Signature) -> bool:
    return models(a, signature) == models(b, signature)


@lru_cache(maxsize=1024)
def project_indices(signature: Signature, theta: Signature) -> np.ndarray:
    """For every world of `signature`, the index of its reduct to `theta`."""
    columns = [signature.index(atom) for atom in theta.atoms]
    weights = np.left_shift(1, np.arange(len(columns), dtype=np.int64))
    projected = signature.truth_table()[:, columns].astype(np.int64) @ weights
    projected = np.asarray(projected, dtype=np.int64).reshape(signature.num_worlds)
    projected.flags.writeable = False
    return projected


def _require_subsignature(signature: Signature, theta: Signature) -> None:
    missing = [atom for atom in theta.atoms if atom not in signature.atoms]
    if missing:
        raise AtomNotInSignature(f"Atoms {missing} are not part of signature {signature}")


def reduct(world: World, theta: Signature) -> World:
    """The reduct of `world` to the atoms of `theta`."""
    _require_subsignature(world.signature, theta)
    index = 0
    for j, atom in enumerate(theta.atoms):
        if world.value(atom):
            index |= 1 << j
    return World(signature=theta, index=index)


def compose(w1: World, w2: World, signature: Signature | None = None) -> World:
    """The world agreeing with w1 and w2 on their (disjoint) signatures."""
    if not w1.signature.is_disjoint(w2.signature):
        raise OverlappingSignatures(
            f"Cannot compose worlds over {w1.signature} and {w2.signature}"
        )
    target = signature or Signature(atoms=w1.signature.atoms + w2.signature.atoms)
    if set(target.atoms) != set(w1.signature.atoms) | set(w2.signature.atoms):
        raise InvalidSignature(
            f"{target} is not the union of {w1.signature} and {w2.signature}"
        )
    values = w1.literals() | w2.literals()
    return target.world_from_literals(values)


def restrict_worldset(worlds: WorldSet, theta: Signature) -> WorldSet:
    """{reduct(w, theta) | w in worlds}."""
    _require_subsignature(worlds.signature, theta)
    mask = np.zeros(theta.num_worlds, dtype=bool)
    mask[project_indices(worlds.signature, theta)[worlds.mask]] = True
    return WorldSet(theta, mask)


def extend_worldset(worlds: WorldSet, signature: Signature) -> WorldSet:
    """All worlds of `signature` whose reduct to the set's signature is a member."""
    _require_subsignature(signature, worlds.signature)
    return WorldSet(signature, worlds.mask[project_indices(signature, worlds.signature)])


def _literal(atom: str, value: bool) -> Formula:
    return Atom(name=atom) if value else Not(operand=Atom(name=atom))


def _cube(worlds: WorldSet) -> Formula | None:
    """The conjunction of literals whose model set is `worlds`, if there is one."""
    members = worlds.signature.truth_table()[worlds.mask]
    fixed = [
        i for i in range(worlds.signature.size)
        if members[:, i].all() or not members[:, i].any()
    ]
    if len(members) != 1 << (worlds.signature.size - len(fixed)):
        return None
    return conjunction(
        _literal(worlds.signature.atoms[i], bool(members[0, i])) for i in fixed
    )


def worldset_to_formula(worlds: WorldSet) -> Formula:
    """Canonical formula for a world set: a literal conjunction when possible, else a DNF."""
    if worlds.is_empty():
        return Bot()
    cube = _cube(worlds)
    if cube is not None:
        return cube
    return disjunction(
        conjunction(_literal(atom, value) for atom, value in world.literals().items())
        for world in worlds
    )
