"""Exception hierarchy shared by all modules."""


class DepcrossError(Exception):
    """Base class for every error raised by the package."""


class NotATree(DepcrossError, ValueError):
    """The edge list does not describe a tree on vertices 1..n."""

    REASONS = ("cycle", "disconnected", "wrong edge count", "duplicate", "self-loop", "label")

    def __init__(self, reason: str, detail: str = ""):
        self.reason = reason
        msg = f"not a tree ({reason})"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class NotALeaf(DepcrossError, ValueError):
    pass


class DomainTooSmall(DepcrossError, ValueError):
    pass


class OutOfTableRange(DepcrossError, ValueError):
    pass


class SameVertex(DepcrossError, ValueError):
    pass


class TooFewVertices(DepcrossError, ValueError):
    pass


class TooLarge(DepcrossError):
    """The exact computation would exceed the configured size bound."""


class UnreachableD(DepcrossError, ValueError):
    """No arrangement of the tree has the requested sum of lengths."""


class DegenerateCmax(DepcrossError, ValueError):
    pass


class ParseError(DepcrossError, ValueError):
    """A sentence could not be read; carries the sentence id and line number."""

    kind = "parse error"

    def __init__(self, message: str, sentence_id: str | None = None, line: int | None = None):
        self.sentence_id = sentence_id
        self.line = line
        where = []
        if sentence_id is not None:
            where.append(f"sentence {sentence_id}")
        if line is not None:
            where.append(f"line {line}")
        prefix = f"{self.kind}"
        if where:
            prefix += f" ({', '.join(where)})"
        super().__init__(f"{prefix}: {message}")


class MalformedRow(ParseError):
    kind = "malformed row"


class MultipleRoots(ParseError):
    kind = "multiple roots"


class NoRoot(ParseError):
    kind = "no root"


class CycleInHeads(ParseError):
    kind = "cycle in heads"
