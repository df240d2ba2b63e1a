from .encoding import (
    EncodingKind,
    EncodingVector,
    jou_variant_input,
    left_checksum,
    make_encoding,
)
from .pipeline import (
    FLOOR_COEF,
    ChecksumState,
    DetectionConfig,
    DetectionReport,
    FlaggedSignal,
    LocationError,
    PendingFault,
    UnrecoverableError,
    correct_group,
    detect,
    encode_group,
    finalize_group,
    locate_quotient,
)
from .element import ElementReport, two_sided_element
from .protected import RunReport, Scheme, calibrate_delta, default_delta, run_protected

__all__ = [
    "FLOOR_COEF",
    "ChecksumState",
    "DetectionConfig",
    "DetectionReport",
    "ElementReport",
    "EncodingKind",
    "EncodingVector",
    "FlaggedSignal",
    "LocationError",
    "PendingFault",
    "RunReport",
    "Scheme",
    "UnrecoverableError",
    "calibrate_delta",
    "correct_group",
    "default_delta",
    "detect",
    "encode_group",
    "finalize_group",
    "jou_variant_input",
    "left_checksum",
    "locate_quotient",
    "make_encoding",
    "run_protected",
    "two_sided_element",
]
