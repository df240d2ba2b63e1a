"""Staged Stockham execution with pass-count instrumentation.

Every stage is one read pass plus one write pass over the working buffer,
regardless of how many radix-2 butterfly steps run inside the tile kernel.
The inter-stage reshuffles keep the final output in natural order without a
separate permutation pass.
"""

from dataclasses import dataclass

import numpy as np

from ..kernels import get_backend
from .plan import FftPlan, Stage, validate_signal
from .twiddle import TwiddleTable


@dataclass
class PassCounter:
    reads: int = 0
    writes: int = 0

    @property
    def total(self) -> int:
        return self.reads + self.writes


def stage_pass(
    buffer: np.ndarray,
    stage: Stage,
    butterfly: np.ndarray,
    counter: PassCounter,
    inverse: bool = False,
    inter: np.ndarray | None = None,
    backend: str = "auto",
) -> np.ndarray:
    """Apply one stage: tile transforms plus optional inter-stage factors.

    ``buffer`` is reshaped to (tiles, stage.dim); output keeps that shape.
    Exactly one read pass and one write pass are charged.
    """
    buf = np.asarray(buffer)
    if buf.size % stage.dim:
        raise ValueError(f"buffer size {buf.size} not divisible by stage dim {stage.dim}")
    tiles = buf.reshape(-1, stage.dim)
    counter.reads += 1
    out = get_backend(backend).tile_fft(tiles, butterfly, inverse)
    if inter is not None:
        rest, dim = inter.shape
        factors = np.conj(inter) if inverse else inter
        out.reshape(-1, rest, dim)[:] *= factors
    counter.writes += 1
    return out.reshape(buf.shape)


def fft_execute(
    plan: FftPlan,
    twiddles: TwiddleTable,
    data: np.ndarray,
    inverse: bool = False,
    counter: PassCounter | None = None,
    on_stage=None,
    backend: str = "auto",
) -> np.ndarray:
    """Transform a signal (1-D) or batch (2-D, signal-major) out-of-place.

    ``on_stage(k, view)`` is called after stage ``k`` with a mutable
    (batch, n) view of the intermediate buffer; used by fault injection.
    """
    x = validate_signal(data, plan.n)
    single = x.ndim == 1
    work = np.ascontiguousarray(x, dtype=plan.dtype).reshape(-1, plan.n)
    if counter is None:
        counter = PassCounter()
    batch = work.shape[0]
    out = _run_stages(work, plan, twiddles, 0, inverse, counter, on_stage, batch, backend)
    if inverse:
        out = out * plan.dtype(1.0 / plan.n)
    return out[0] if single else out


def _run_stages(x, plan, tw, k, inverse, counter, on_stage, batch, backend):
    """Recursive split: stage k transforms along its dim, rest recurses."""
    rows, m = x.shape
    stage = plan.stages[k]
    st = tw.stages[k]
    last = k == len(plan.stages) - 1
    if last:
        if m != stage.dim:
            raise ValueError("plan stage dims inconsistent with buffer")
        y = stage_pass(x, stage, st.butterfly, counter, inverse, None, backend)
        _notify(on_stage, k, y, batch)
        return y
    rest = m // stage.dim
    tiles = np.ascontiguousarray(
        x.reshape(rows, stage.dim, rest).transpose(0, 2, 1)
    ).reshape(rows * rest, stage.dim)
    y = stage_pass(tiles, stage, st.butterfly, counter, inverse, st.inter, backend)
    _notify(on_stage, k, y, batch)
    z = np.ascontiguousarray(
        y.reshape(rows, rest, stage.dim).transpose(0, 2, 1)
    ).reshape(rows * stage.dim, rest)
    u = _run_stages(z, plan, tw, k + 1, inverse, counter, on_stage, batch, backend)
    return np.ascontiguousarray(
        u.reshape(rows, stage.dim, rest).transpose(0, 2, 1)
    ).reshape(rows, m)


def _notify(on_stage, k, buf, batch):
    if on_stage is not None:
        on_stage(k, buf.reshape(batch, -1))
