"""Exception types raised across the package."""


class FcaError(Exception):
    """Base class for domain errors (as opposed to usage errors)."""


class FormatError(FcaError):
    """Malformed input file or text format."""


class NotAnEquivalenceError(FcaError):
    pass


class NotAPartialOrderError(FcaError):
    pass


class NotALatticeError(FcaError):
    """Some pair has no unique supremum or infimum."""

    def __init__(self, kind: str, pair: tuple[int, int]):
        self.kind = kind
        self.pair = pair
        super().__init__(f"no unique {kind} for pair {pair}")


class NotAClosureOperatorError(FcaError):
    """A claimed closure operator violates one of its three laws."""

    def __init__(self, law: str, witness):
        self.law = law
        self.witness = witness
        super().__init__(f"{law} violated at {witness}")


class ExplorationError(FcaError):
    """Invalid exploration move; `code` is one of the wire error codes."""

    def __init__(self, code: str, detail: str):
        self.code = code
        self.detail = detail
        super().__init__(f"{code}: {detail}")
