"""Python bindings for the bowtie ring-spectrum library."""

from ._bowtie import (
    DEFAULT_CAP,
    Amalgam,
    CapExceeded,
    Error,
    InputError,
    PreconditionError,
    Ring,
    TheoremViolation,
    amalgam_from_json,
    amalgamate,
    check_spectrum_data,
    duplicate,
    fuzz_spectrum_data,
    product,
    quotient,
    ring_from_json,
    spectrum_data_is_pm,
    trivext,
    verify_corpus,
    verify_fuzz,
    zn,
)

__all__ = [
    "DEFAULT_CAP",
    "Amalgam",
    "CapExceeded",
    "Error",
    "InputError",
    "PreconditionError",
    "Ring",
    "TheoremViolation",
    "amalgam_from_json",
    "amalgamate",
    "check_spectrum_data",
    "duplicate",
    "fuzz_spectrum_data",
    "product",
    "quotient",
    "ring_from_json",
    "spectrum_data_is_pm",
    "trivext",
    "verify_corpus",
    "verify_fuzz",
    "zn",
]
