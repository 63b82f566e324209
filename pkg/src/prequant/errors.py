"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes: usage problems exit 1, domain problems
exit 2 and internal consistency failures exit 3.
"""


class PrequantError(Exception):
    exit_code = 2


class UsageError(PrequantError):
    """Malformed input: bad group spec, bad flag, unparsable class file."""

    exit_code = 1


class DomainError(PrequantError):
    exit_code = 2


class DegreeCapExceeded(DomainError):
    pass


class MissingTableEntry(DomainError):
    pass


class NotDefined(DomainError):
    """A higher Bockstein was requested where lower ones do not vanish."""


class NotHit(DomainError):
    pass


class IrrelevantPrime(DomainError):
    pass


class NotInAlcove(DomainError):
    pass


class ConsistencyFailure(PrequantError):
    exit_code = 3
