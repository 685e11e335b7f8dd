"""Exception types shared across the package."""


class HjlabError(Exception):
    pass


class ClosureViolation(HjlabError):
    """A Cayley table entry falls outside the carrier."""

    def __init__(self, i, j, value, order):
        self.i, self.j, self.value, self.order = i, j, value, order
        super().__init__(
            f"table[{i}][{j}] = {value} is outside the carrier [0..{order})"
        )


class AssociativityViolation(HjlabError):
    """First triple (i, j, k) with (i*j)*k != i*(j*k)."""

    def __init__(self, i, j, k):
        self.i, self.j, self.k = i, j, k
        super().__init__(f"associativity fails at triple ({i}, {j}, {k})")


class EmptySubset(HjlabError):
    pass


class CarrierMismatch(HjlabError):
    pass


class CarrierTooLarge(HjlabError):
    pass


class SearchSpaceTooLarge(HjlabError):
    pass


class UnassignedVariable(HjlabError):
    pass


class InvalidColoring(HjlabError):
    pass


class ColoringSpecError(HjlabError):
    """A coloring spec string failed to parse; names the offending token."""

    def __init__(self, token, message):
        self.token = token
        super().__init__(f"bad coloring spec token {token!r}: {message}")


class TableParseError(HjlabError):
    """Semigroup file parse failure with 1-based line and column."""

    def __init__(self, line, column, message):
        self.line, self.column = line, column
        super().__init__(f"line {line}, column {column}: {message}")


class CertificateError(HjlabError):
    """Certificate file is malformed (distinct from failing verification)."""
