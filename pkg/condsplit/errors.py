"""
Exception hierarchy for condsplit.

Every error raised on purpose by the library derives from CondSplitError, so
surfaces (CLI, HTTP) can map them to a single input-error response.
"""


class CondSplitError(Exception):
    """Base class for all condsplit errors."""


class FormulaSyntaxError(CondSplitError):
    def __init__(self, text: str, position: int, expected: str):
        self.text = text
        self.position = position
        self.expected = expected
        super().__init__(
            f"Syntax error in formula {text!r} at position {position}: expected {expected}"
        )


class KbSyntaxError(CondSplitError):
    def __init__(self, message: str, line: int, column: int):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


class KbReadError(CondSplitError):
    """The knowledge base file could not be read."""


class UnknownAtom(CondSplitError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"Unknown atom '{name}'")


class InvalidSignature(CondSplitError):
    pass


class SignatureOverflow(CondSplitError):
    def __init__(self, size: int, cap: int):
        self.size = size
        self.cap = cap
        super().__init__(
            f"Signature of {size} atoms exceeds the cap of {cap} atoms "
            "(set CONDSPLIT_MAX_ATOMS to raise it)"
        )


class AtomNotInSignature(CondSplitError):
    pass


class OverlappingSignatures(CondSplitError):
    pass


class DuplicateConditional(CondSplitError):
    pass


class InconsistentBeliefBase(CondSplitError):
    def __init__(self, remaining: tuple[int, ...] = ()):
        self.remaining = remaining
        detail = f" (no tolerance partition for conditionals {list(remaining)})" if remaining else ""
        super().__init__(f"Belief base is not strongly consistent{detail}")


class UndefinedRank(CondSplitError):
    pass


class InvalidRanking(CondSplitError):
    pass


class NonDisjointSubsignatures(CondSplitError):
    pass


class InvalidPartition(CondSplitError):
    pass


class NotASplitting(CondSplitError):
    pass


class NotGeneralizedSafe(CondSplitError):
    pass


class LengthMismatch(CondSplitError):
    pass


class CyclicDependency(CondSplitError):
    pass


class StrategyReturnedNonSolution(CondSplitError):
    pass


class MismatchedDelta3Impacts(CondSplitError):
    pass


class QuantificationDomainTooLarge(CondSplitError):
    def __init__(self, size: int, cap: int):
        self.size = size
        self.cap = cap
        super().__init__(
            f"Semantic formula family over {size} atoms exceeds the cap of {cap}; "
            "use the literal-conjunction family instead"
        )


class UnknownOperator(CondSplitError):
    pass
