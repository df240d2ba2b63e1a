"""Group checksum state, error detection, location and correction.

A group is ``bs`` signals protected together: per-signal left checksums
locate which signal broke, while unit- and linear-weight combinations
across the group reconstruct the correction vector without recomputation.
"""

from dataclasses import dataclass, field

import numpy as np

from ..fft_core import FftPlan, TwiddleTable, fft_execute
from .encoding import EncodingVector

# Guards for near-zero checksums, scaled by each signal's l1 mass.
FLOOR_COEF = {"fp32": 1e-6, "fp64": 1e-12}


class UnrecoverableError(RuntimeError):
    """Raised when the single-error assumption or a correction check fails."""


class LocationError(RuntimeError):
    """Raised when the quotient test cannot name a corrupted index."""


@dataclass
class DetectionConfig:
    delta: float
    abs_floor: float = 0.0

    def __post_init__(self):
        if self.delta <= 0:
            raise ValueError("delta must be positive")
        if self.abs_floor < 0:
            raise ValueError("abs_floor must be >= 0")


@dataclass
class PendingFault:
    signal_idx: int
    detected_discrepancy: float


@dataclass
class FlaggedSignal:
    signal_idx: int
    rel_discrepancy: float
    epsilon_estimate: complex


@dataclass
class DetectionReport:
    flagged: list[FlaggedSignal] = field(default_factory=list)
    corrected: list[int] = field(default_factory=list)
    unrecoverable: bool = False
    rel_discrepancies: np.ndarray | None = None


@dataclass
class ChecksumState:
    group_size: int
    s0: np.ndarray  # sum_b x_b
    s1: np.ndarray  # sum_b (b+1) x_b
    c_in: np.ndarray  # (e^T W) x_b per signal
    x_l1: np.ndarray  # per-signal l1 mass, for the relative-test floor
    r0: np.ndarray | None = None  # sum_b y_b, finalized at the store pass
    r1: np.ndarray | None = None  # sum_b (b+1) y_b
    pending: PendingFault | None = None


def encode_group(
    xg: np.ndarray, enc: EncodingVector, inverse: bool = False
) -> ChecksumState:
    """Load-pass accumulation: combinations and per-signal input checksums."""
    bs = xg.shape[0]
    weights = np.arange(1, bs + 1, dtype=np.float64)
    row = enc.etw_inv if inverse else enc.etw
    return ChecksumState(
        group_size=bs,
        s0=xg.sum(axis=0),
        s1=(weights[:, None] * xg).sum(axis=0),
        c_in=xg @ row.astype(xg.dtype),
        x_l1=np.abs(xg).sum(axis=1),
    )


def finalize_group(state: ChecksumState, yg: np.ndarray) -> None:
    """Store-pass accumulation of the output-side combinations.

    Runs after the final write so a later fault cannot contaminate a
    checksum that already recorded one.
    """
    weights = np.arange(1, state.group_size + 1, dtype=np.float64)
    with np.errstate(all="ignore"):  # faulted outputs may hold inf/nan
        state.r0 = yg.sum(axis=0)
        state.r1 = (weights[:, None] * yg).sum(axis=0)


def _floors(state: ChecksumState, cfg: DetectionConfig, precision: str) -> np.ndarray:
    return np.maximum(cfg.abs_floor, FLOOR_COEF[precision] * state.x_l1)


def detect(
    state: ChecksumState,
    outputs: np.ndarray,
    enc: EncodingVector,
    cfg: DetectionConfig,
    precision: str = "fp64",
) -> DetectionReport:
    """Flag signals whose output checksum disagrees with the input-side one.

    Non-finite outputs are always flagged. More than one flagged signal
    violates the single-event assumption and is reported unrecoverable.
    """
    with np.errstate(all="ignore"):  # faulted outputs may hold inf/nan
        c_out = outputs @ enc.values.astype(outputs.dtype)
        raw = state.c_in - c_out
        floors = _floors(state, cfg, precision)
        denom = np.maximum(np.abs(state.c_in), floors)
        rel = np.abs(raw) / denom
        nonfinite = ~np.isfinite(outputs).all(axis=1)
        rel = np.where(nonfinite | ~np.isfinite(rel), np.inf, rel)
    report = DetectionReport(rel_discrepancies=rel)
    for b in np.flatnonzero((rel > cfg.delta)):
        report.flagged.append(
            FlaggedSignal(
                signal_idx=int(b),
                rel_discrepancy=float(rel[b]),
                epsilon_estimate=complex(raw[b]) if np.isfinite(raw[b]) else complex(np.inf),
            )
        )
    if len(report.flagged) > 1:
        report.unrecoverable = True
    return report


def locate_quotient(
    u0: np.ndarray,
    u1: np.ndarray,
    abs_floor: float = 0.0,
    count: int | None = None,
) -> int:
    """Zero-based index recovered from the linear/unit discrepancy quotient.

    ``count`` bounds the valid index range (the number of linearly weighted
    signals); without it only negative indices are rejected.
    """
    u0 = np.asarray(u0)
    u1 = np.asarray(u1)
    k = int(np.argmax(np.abs(u0)))
    if abs(u0[k]) <= abs_floor:
        raise LocationError("no dominant discrepancy component above the floor")
    q = u1[k] / u0[k]
    nearest = round(q.real)
    if abs(q - nearest) > 0.25:
        raise LocationError(f"quotient {q} too far from an integer")
    idx = nearest - 1
    if idx < 0 or (count is not None and idx >= count):
        raise LocationError(f"located index {idx} out of range")
    return idx


def correct_group(
    state: ChecksumState,
    outputs: np.ndarray,
    flagged_idx: int,
    plan: FftPlan,
    twiddles: TwiddleTable,
    enc: EncodingVector,
    cfg: DetectionConfig,
    inverse: bool = False,
) -> np.ndarray:
    """Rebuild the flagged signal from the group combination checksum.

    The corrected signal is W s0 minus the other observed outputs, which is
    algebraically y_flagged + (W s0 - sum_b y_b) but stays finite when the
    corrupted entry overflowed to inf/nan. Raises if residuals persist.
    """
    ws0 = fft_execute(plan, twiddles, state.s0, inverse=inverse)
    # sum the healthy signals only: subtracting the corrupted one from a
    # grand total would cancel catastrophically (or produce inf - inf)
    others = np.delete(outputs, flagged_idx, axis=0).sum(axis=0)
    outputs = outputs.copy()
    outputs[flagged_idx] = ws0 - others
    finalize_group(state, outputs)
    post = detect(state, outputs, enc, cfg, plan.precision)
    if post.flagged:
        raise UnrecoverableError(
            "post-correction residual above threshold; combination checksum corrupted"
        )
    return outputs
