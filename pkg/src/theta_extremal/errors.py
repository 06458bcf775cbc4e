"""Exception hierarchy shared by every module."""


class ThetaExtremalError(Exception):
    pass


class InvalidEdge(ThetaExtremalError, ValueError):
    pass


class InvalidVertex(ThetaExtremalError, ValueError):
    pass


class ParseError(ThetaExtremalError, ValueError):
    pass


class SpecError(ThetaExtremalError, ValueError):
    """Malformed theta specification."""


class ParityError(SpecError):
    pass


class MultiplicityError(SpecError):
    pass


class NotPrimePower(ThetaExtremalError, ValueError):
    pass


class SizeLimit(ThetaExtremalError, ValueError):
    pass


class PreconditionError(ThetaExtremalError, ValueError):
    """An algorithm was called outside the hypotheses it relies on."""


class RangeError(ThetaExtremalError, ValueError):
    pass


class EmbeddingError(ThetaExtremalError, RuntimeError):
    """A constructive routine found no embedding although its preconditions held."""
