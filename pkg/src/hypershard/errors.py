"""Exception types shared across the package."""

from __future__ import annotations


class InputError(ValueError):
    """Base class for rejected input documents."""


class DocumentSyntaxError(InputError):
    """Malformed JSON. Carries the decoder position."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        loc = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(f"{message}{loc}")
        self.line = line
        self.column = column


class DocumentSemanticError(InputError):
    """Well-formed JSON violating a document invariant. Names the invariant."""

    def __init__(self, invariant: str, detail: str):
        super().__init__(f"{invariant}: {detail}")
        self.invariant = invariant


class PredicateCapError(InputError):
    """A relation's workload needs more distinct predicates than the enumerator allows."""

    def __init__(self, relation: str, count: int, cap: int):
        super().__init__(
            f"relation {relation!r} requires {count} distinct predicates, cap is {cap}"
        )
        self.relation = relation
        self.count = count
        self.cap = cap


class RoutingError(ValueError):
    """A tuple or statement could not be routed."""


class InfeasibleError(RuntimeError):
    """No iteration satisfied the cluster constraints within the budget.

    Carries the best infeasible report so callers can show how close the
    search came (CLI exit code 2).
    """

    def __init__(self, report):
        super().__init__(
            "no feasible placement within the iteration budget; "
            f"best attempt has {len(report.violations)} violation(s)"
        )
        self.report = report
