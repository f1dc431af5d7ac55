"""Exception types shared across the package.

Everything raised on purpose derives from QuiverFoldError, so callers can
catch one base class.  Builtin exceptions (IndexError, ValueError,
ZeroDivisionError) are still used where they are the natural fit.
"""


class QuiverFoldError(Exception):
    pass


class FrozenNodeMutation(QuiverFoldError):
    """Mutation requested at a frozen node."""


class NotAPartition(QuiverFoldError):
    """Groups fail to partition the node set."""


class IntraGroupArrow(QuiverFoldError):
    """A group carries an arrow between two of its own nodes."""


class NotAnAutomorphism(QuiverFoldError):
    """The given node map does not preserve the arrow matrix."""


class FrozenGroup(QuiverFoldError):
    """Group mutation requested at a frozen group."""


class FoldingBroken(QuiverFoldError):
    """A mutation word led to a quiver where some group has internal arrows.

    The offending word is stored on .word as a tuple of group indices.
    """

    def __init__(self, word, message=None):
        self.word = tuple(word)
        super().__init__(message or f"folding broken by group word {self.word}")


class FoldedClusterViolation(QuiverFoldError):
    """Nodes of one group disagree on the exchanged variable.

    .word holds the group word from the initial seed, ending with the
    mutation that exposed the disagreement.
    """

    def __init__(self, word, message=None):
        self.word = tuple(word)
        super().__init__(message or f"cluster condition fails at group word {self.word}")


class GraphNotExhausted(QuiverFoldError):
    """A computation that needs the full exchange graph got a truncated one."""


class ArcNotPresent(QuiverFoldError):
    """Flip requested at an arc the triangulation does not contain."""


class TooSmall(QuiverFoldError):
    """Disk size below the supported range."""


class IdentityViolation(QuiverFoldError):
    """A cross-system variable identity failed on a concrete triangulation."""


class UnknownName(QuiverFoldError):
    """Catalog lookup with a name that is not registered."""


class BadParam(QuiverFoldError):
    """Catalog constructor called with an out-of-range parameter."""
