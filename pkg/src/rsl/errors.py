"""Exception hierarchy.

Every error carries a stable ``code`` string; the CLI reports it verbatim in
its ``{"error": code, "detail": ...}`` body.
"""

from __future__ import annotations


class RslError(Exception):
    code = "Error"

    def __init__(self, detail: str = "", **extra: object) -> None:
        super().__init__(detail or self.code)
        self.detail = detail
        self.extra = extra

    def to_json(self) -> dict:
        body: dict = {"error": self.code, "detail": self.detail}
        body.update({k: v if isinstance(v, (int, str)) else str(v) for k, v in self.extra.items()})
        return body


class EndpointIsRoot(RslError):
    code = "EndpointIsRoot"


class DegreeCapExceeded(RslError):
    code = "DegreeCapExceeded"


class DomainMismatch(RslError):
    code = "DomainMismatch"


class OutOfDomain(RslError):
    code = "OutOfDomain"


class SideNotAdmissible(RslError):
    code = "SideNotAdmissible"


class InvalidDescriptor(RslError):
    code = "InvalidDescriptor"


class NotInIdeal(RslError):
    code = "NotInIdeal"


class NotPositive(RslError):
    code = "NotPositive"


class UnsupportedForMinimal(RslError):
    code = "UnsupportedForMinimal"


class MinimalPrimeNotPrincipal(RslError):
    code = "MinimalPrimeNotPrincipal"


class NotAMember(RslError):
    code = "NotAMember"


class NotDisjoint(RslError):
    code = "NotDisjoint"


class NoWitnessInterval(RslError):
    code = "NoWitnessInterval"


class ZeroFunction(RslError):
    code = "ZeroFunction"


class SchemaError(RslError):
    code = "SchemaError"


class ParseError(RslError):
    """Syntax error in an expression, with 1-based line/column."""

    code = "SyntaxError"

    def __init__(self, detail: str, line: int, column: int) -> None:
        super().__init__(f"{detail} at line {line}, column {column}", line=line, column=column)
        self.line = line
        self.column = column


class DiscontinuousPiecewise(RslError):
    code = "DiscontinuousPiecewise"
