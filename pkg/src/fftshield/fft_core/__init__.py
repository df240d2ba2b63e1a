from .plan import (
    DEFAULT_MAX_TILE,
    MAX_BATCH,
    MAX_SIGNAL_N,
    PRECISION_DTYPES,
    REAL_DTYPES,
    FftPlan,
    Stage,
    fit_group_size,
    make_plan,
    validate_signal,
)
from .reference import ORACLE_MAX_N, dft_reference
from .twiddle import (
    DEFAULT_RENORM_INTERVAL,
    StageTwiddles,
    TwiddleTable,
    all_factors,
    build_twiddles,
)
from .execute import PassCounter, fft_execute, stage_pass

__all__ = [
    "DEFAULT_MAX_TILE",
    "DEFAULT_RENORM_INTERVAL",
    "MAX_BATCH",
    "MAX_SIGNAL_N",
    "ORACLE_MAX_N",
    "PRECISION_DTYPES",
    "REAL_DTYPES",
    "FftPlan",
    "PassCounter",
    "Stage",
    "StageTwiddles",
    "TwiddleTable",
    "all_factors",
    "build_twiddles",
    "dft_reference",
    "fft_execute",
    "fit_group_size",
    "make_plan",
    "stage_pass",
    "validate_signal",
]
