"""Exception hierarchy shared by every module of the package."""


class PosetDiffError(Exception):
    """Base class for all errors raised by this package."""


class UnknownElementError(PosetDiffError, KeyError):
    """An identifier does not name an element of the poset at hand."""

    def __init__(self, name):
        super().__init__(name)
        self.name = name

    def __str__(self):
        return f"unknown element {self.name!r}"


class InvalidPosetError(PosetDiffError, ValueError):
    """Cover data does not describe a finite partial order."""


class IncomparableError(PosetDiffError, ValueError):
    """An operation needed p <= q but the pair is not ordered that way."""

    def __init__(self, p, q):
        super().__init__(f"{p!r} is not below {q!r}")
        self.p = p
        self.q = q


class NotJordanHolderError(PosetDiffError, ValueError):
    """The poset has two maximal chains of different length between a pair."""

    def __init__(self, pair):
        super().__init__(f"maximal chains between {pair[0]!r} and {pair[1]!r} differ in length")
        self.pair = pair


class CapExceededError(PosetDiffError):
    """A structure is larger than the configured element cap."""

    def __init__(self, size, cap):
        super().__init__(f"{size} elements exceed the cap of {cap}")
        self.size = size
        self.cap = cap


class DomainMismatchError(PosetDiffError, ValueError):
    """Vectors or operators built over different posets were combined."""


class InvalidComplexError(PosetDiffError, ValueError):
    """A family of simplices is not a simplicial complex."""

    def __init__(self, message, missing_face=None):
        super().__init__(message)
        self.missing_face = missing_face


class PastingError(PosetDiffError, ValueError):
    """Boolean blocks cannot be pasted into an atomic Greechie logic."""

    def __init__(self, message, blocks=None, shared=None):
        super().__init__(message)
        self.blocks = blocks
        self.shared = shared


class CertifierError(PosetDiffError, ValueError):
    """A border operator does not satisfy the conditions needed to build D."""


class ParseError(PosetDiffError, ValueError):
    """A text input file could not be parsed."""

    def __init__(self, message, path=None, line=None):
        where = ""
        if path is not None:
            where = f"{path}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)
        self.path = path
        self.line = line


class NotInBlockError(PosetDiffError, ValueError):
    """A proper element has no (or no unique) representation in a block."""
