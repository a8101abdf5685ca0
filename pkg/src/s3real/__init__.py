"""Degree sequences with S3-connected realizations: decide, construct, certify."""

__version__ = "0.1.0"

from .sequences import DegreeSequence, parse, is_graphic, is_s3_realizable, is_z3_realizable  # noqa: E402
from .graph import MultiGraph  # noqa: E402

__all__ = [
    "__version__",
    "DegreeSequence",
    "MultiGraph",
    "parse",
    "is_graphic",
    "is_s3_realizable",
    "is_z3_realizable",
]
