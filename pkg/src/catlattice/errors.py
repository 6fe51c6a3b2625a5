"""Exception types shared across the package.

The command line tool maps these onto process exit codes, so library code
should raise the most specific type that applies rather than bare
ValueError/RuntimeError for anything a user can trigger from a config file
or a numerical-contract breach.
"""


class ConfigError(ValueError):
    """A scenario configuration is invalid or inconsistent.

    Covers unknown keys, out-of-range parameters, and model-validity
    failures such as a waveguide profile that is not single-moded.
    Exit code 1 at the CLI.
    """


class NumericalContractError(RuntimeError):
    """A numerical guarantee of the simulator was violated.

    Raised when a run breaks one of the stated numerical contracts
    (unitarity, step-size limits, spectral aliasing, truncation trace
    deficits). Exit code 2 at the CLI.
    """


class SelftestFailure(RuntimeError):
    """One or more selftest invariants failed. Exit code 3 at the CLI."""
