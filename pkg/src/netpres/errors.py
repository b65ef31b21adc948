"""Exception hierarchy shared by all netpres modules."""


class NetpresError(Exception):
    """Base class for every error raised by netpres."""


class SingularMatrix(NetpresError, ValueError):
    pass


class NonPositiveDeterminant(NetpresError, ValueError):
    pass


class ZeroVector(NetpresError, ValueError):
    pass


class SingularInput(NetpresError, ValueError):
    pass


class NonIntegralResult(NetpresError, ValueError):
    pass


class ParseError(NetpresError, ValueError):
    """Syntax error in a diagram file.

    ``line`` and ``column`` are 1-based; ``expected`` names the token the
    parser was looking for.
    """

    def __init__(self, message, line=0, column=0, expected=None):
        self.line = line
        self.column = column
        self.expected = expected
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(where + message)


class SemanticError(NetpresError, ValueError):
    """Well-formed file whose content cannot describe a diagram."""


class InternalInconsistency(NetpresError, RuntimeError):
    pass


class NormalizationObstructed(NetpresError):
    """Some conjugated push segment has no lift inside the new domain."""


class DuplicateTerminalClass(NetpresError, ValueError):
    pass
