from .bits import WIDTH_FOR, BitFlipInjector, FaultSpec, apply_fault, flip_bit
from .campaign import (
    DEFAULT_DELTA_GRID,
    RECORD_COLUMNS,
    ROC_COLUMNS,
    CampaignConfig,
    CampaignResult,
    RocPoint,
    RunRecord,
    records_csv,
    roc_csv,
    run_campaign,
)
from .propagation import propagation_footprint

__all__ = [
    "DEFAULT_DELTA_GRID",
    "RECORD_COLUMNS",
    "ROC_COLUMNS",
    "WIDTH_FOR",
    "BitFlipInjector",
    "CampaignConfig",
    "CampaignResult",
    "FaultSpec",
    "RocPoint",
    "RunRecord",
    "apply_fault",
    "flip_bit",
    "propagation_footprint",
    "records_csv",
    "roc_csv",
    "run_campaign",
]
