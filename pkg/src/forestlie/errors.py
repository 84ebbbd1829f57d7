class SelfCheckError(RuntimeError):
    """Two independent computations of the same quantity disagree.

    Raised by operations that cross-verify their result against an
    alternative construction; seeing it means a bug, not bad input.
    """
