"""Transform plans: stage decomposition, radices and checksum group size."""

import math
from dataclasses import dataclass

import numpy as np

from .. import planner

PRECISION_DTYPES = {"fp32": np.complex64, "fp64": np.complex128}
REAL_DTYPES = {"fp32": np.float32, "fp64": np.float64}
MAX_SIGNAL_N = 2**22  # execution cap; planning alone goes to 2^29
MAX_BATCH = 1024
DEFAULT_MAX_TILE = 2**13

TWIDDLE_MODES = ("direct", "recurrence", "precomputed")


@dataclass(frozen=True)
class Stage:
    dim: int
    thread_radix: int


@dataclass(frozen=True)
class FftPlan:
    n: int
    stages: tuple[Stage, ...]
    bs: int
    precision: str
    twiddle_mode: str

    def __post_init__(self):
        if self.precision not in PRECISION_DTYPES:
            raise ValueError(f"precision must be one of {tuple(PRECISION_DTYPES)}")
        if self.twiddle_mode not in TWIDDLE_MODES:
            raise ValueError(f"twiddle_mode must be one of {TWIDDLE_MODES}")
        if not 1 <= len(self.stages) <= 3:
            raise ValueError("plans use 1 to 3 stages")
        if math.prod(s.dim for s in self.stages) != self.n:
            raise ValueError("stage dims must multiply to n")
        for s in self.stages:
            if s.thread_radix not in planner.ALLOWED_RADICES:
                raise ValueError(f"radix {s.thread_radix} unsupported")
            if s.dim % s.thread_radix:
                raise ValueError("thread radix must divide its stage dim")
        if self.bs < 1:
            raise ValueError("bs must be >= 1")

    @property
    def dtype(self):
        return PRECISION_DTYPES[self.precision]

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(s.dim for s in self.stages)


def _default_twiddle_mode(precision: str) -> str:
    # fp64 pays the most for trig calls, so it gets the materialized tables
    return "precomputed" if precision == "fp64" else "direct"


def make_plan(
    n: int,
    precision: str = "fp32",
    max_tile: int = DEFAULT_MAX_TILE,
    batch: int = 1,
    twiddle_mode: str | None = None,
) -> FftPlan:
    """Build a plan for a power-of-two size.

    Stage dims and radices come from the tuned parameter table where the
    size is covered, otherwise from the balanced-split fallback. A smaller
    ``max_tile`` forces more stages than the default size classes.
    """
    params = planner.select_parameters(n, batch)
    dims = params.dims
    radices = params.radices
    if max_tile != DEFAULT_MAX_TILE or max(dims) > max_tile:
        count = len(dims)
        while count <= 3 and max(planner.balanced_dims(n, count)) > max_tile:
            count += 1
        if count > 3:
            raise ValueError(f"size {n} cannot be tiled to max_tile={max_tile} in 3 stages")
        if count != len(dims) or max(dims) > max_tile:
            dims = planner.balanced_dims(n, count)
            radices = tuple(min(16, d) for d in dims)
    stages = tuple(Stage(dim=d, thread_radix=r) for d, r in zip(dims, radices))
    mode = twiddle_mode or _default_twiddle_mode(precision)
    return FftPlan(n=n, stages=stages, bs=params.bs, precision=precision, twiddle_mode=mode)


def fit_group_size(plan: FftPlan, batch: int) -> FftPlan:
    """Shrink bs to the largest divisor of ``batch`` not exceeding it."""
    bs = plan.bs
    while batch % bs:
        bs -= 1
    if bs == plan.bs:
        return plan
    return FftPlan(plan.n, plan.stages, bs, plan.precision, plan.twiddle_mode)


def validate_signal(x: np.ndarray, n: int | None = None) -> np.ndarray:
    """Check the executable-signal invariants (power-of-two length, cap)."""
    x = np.asarray(x)
    length = x.shape[-1]
    if length < 2 or length & (length - 1):
        raise ValueError(f"signal length must be a power of two, got {length}")
    if length > MAX_SIGNAL_N:
        raise ValueError(f"signal length {length} exceeds cap {MAX_SIGNAL_N}")
    if n is not None and length != n:
        raise ValueError(f"signal length {length} does not match plan size {n}")
    if x.ndim == 2 and not 1 <= x.shape[0] <= MAX_BATCH:
        raise ValueError(f"batch size must be in 1..{MAX_BATCH}")
    return x
