"""Error classes shared across the package.

The CLI maps these onto exit codes: InputError is 2 (bad or out-of-domain
input), ResourceGuardError is 3 (a size cap tripped).  Verification failures
are not exceptions; reports carry a pass flag and the CLI exits 1.
"""


class InputError(ValueError):
    """Invalid or out-of-domain input."""


class ResourceGuardError(RuntimeError):
    """An enumeration or field-size cap was exceeded."""
