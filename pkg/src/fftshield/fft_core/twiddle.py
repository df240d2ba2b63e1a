"""Twiddle factor tables: direct trig, multiplicative recurrence, precomputed.

Each stage needs two kinds of unit-circle factors: the butterfly factors
w_dim^k (k < dim/2) consumed by the tile kernel, and -- for every stage but
the last -- the inter-stage factors w_M^(rc) that glue a stage of dim
columns to the remaining M/dim rows.
"""

from dataclasses import dataclass, field

import numpy as np

from .plan import PRECISION_DTYPES, FftPlan

DEFAULT_RENORM_INTERVAL = 16


def _direct_sequence(count: int, m: int, dtype) -> np.ndarray:
    """w_m^k for k < count, evaluated by trig calls."""
    return np.exp(-2j * np.pi * np.arange(count) / m).astype(dtype)


def _recurrence_sequence(count: int, m: int, interval: int, dtype) -> np.ndarray:
    """w_m^k for k < count via repeated multiplication.

    One trig call total; drift is pulled back to the unit circle every
    ``interval`` steps. Accumulation runs in double precision so the cast
    to the table dtype is the only rounding the caller sees.
    """
    step = complex(np.exp(-2j * np.pi / m))
    out = np.empty(count, dtype=np.complex128)
    cur = 1.0 + 0.0j
    for k in range(count):
        out[k] = cur
        cur *= step
        if (k + 1) % interval == 0:
            cur /= abs(cur)
    return out.astype(dtype)


def _inter_matrix(rows: int, cols: int, mode: str, interval: int, dtype) -> np.ndarray:
    """w_M^(rc) for r < rows, c < cols, with M = rows*cols."""
    m = rows * cols
    if mode == "recurrence":
        gen = _recurrence_sequence(cols, m, interval, np.complex128)
        out = np.empty((rows, cols), dtype=np.complex128)
        out[0] = 1.0
        for r in range(1, rows):
            out[r] = out[r - 1] * gen
            if r % interval == 0:
                out[r] /= np.abs(out[r])
        return out.astype(dtype)
    r = np.arange(rows)
    c = np.arange(cols)
    return np.exp(-2j * np.pi * np.outer(r, c) / m).astype(dtype)


@dataclass
class StageTwiddles:
    butterfly: np.ndarray
    inter: np.ndarray | None


@dataclass
class TwiddleTable:
    n: int
    mode: str
    renorm_interval: int
    precision: str
    stages: list[StageTwiddles] = field(default_factory=list)

    @property
    def base(self) -> complex:
        return complex(np.exp(-2j * np.pi / self.n))


def build_twiddles(
    plan: FftPlan,
    mode: str | None = None,
    renorm_interval: int = DEFAULT_RENORM_INTERVAL,
) -> TwiddleTable:
    """Materialize all factor arrays a plan's stage passes will consume."""
    mode = mode or plan.twiddle_mode
    if mode not in ("direct", "recurrence", "precomputed"):
        raise ValueError(f"unknown twiddle mode {mode!r}")
    if renorm_interval < 1:
        raise ValueError("renorm_interval must be >= 1")
    dtype = PRECISION_DTYPES[plan.precision]
    dims = plan.dims
    table = TwiddleTable(
        n=plan.n, mode=mode, renorm_interval=renorm_interval, precision=plan.precision
    )
    for k, dim in enumerate(dims):
        if mode == "recurrence":
            butterfly = _recurrence_sequence(max(dim // 2, 1), dim, renorm_interval, dtype)
        else:
            butterfly = _direct_sequence(max(dim // 2, 1), dim, dtype)
        inter = None
        if k < len(dims) - 1:
            rest = 1
            for later in dims[k + 1 :]:
                rest *= later
            inter = _inter_matrix(rest, dim, mode, renorm_interval, dtype)
        table.stages.append(StageTwiddles(butterfly=butterfly, inter=inter))
    return table


def all_factors(table: TwiddleTable) -> np.ndarray:
    """Every factor in the table, flattened; used for magnitude scans."""
    parts = []
    for st in table.stages:
        parts.append(st.butterfly.ravel())
        if st.inter is not None:
            parts.append(st.inter.ravel())
    return np.concatenate(parts)
