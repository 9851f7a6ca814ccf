"""Error types shared across the package.

Plain ``ValueError`` / ``ZeroDivisionError`` cover invalid arguments and
division by zero; the classes here mark conditions a caller may want to
route differently (budget overruns, out-of-scope parameters, and internal
consistency checks whose failure means an arithmetic bug, not bad input).
"""


class ResourceLimitError(RuntimeError):
    """An enumeration would exceed the configured budget."""


class UnsupportedParameterError(ValueError):
    """Inputs outside the supported parameter family (documented limitation)."""


class InternalCheckError(AssertionError):
    """A built-in self-test failed; indicates a bug, not a user error."""


class InconsistentDistributionError(ValueError):
    """A weight distribution is not that of any linear code (transform failed)."""
