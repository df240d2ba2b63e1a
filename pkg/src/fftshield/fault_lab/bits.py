"""IEEE-754 single-bit flips and their application to complex buffers."""

from dataclasses import dataclass

import numpy as np

_UINT_FOR = {np.dtype(np.float32): np.uint32, np.dtype(np.float64): np.uint64}
WIDTH_FOR = {"fp32": 32, "fp64": 64}


def flip_bit(value, bit: int):
    """Flip one bit of the IEEE-754 representation; involutive by XOR.

    Accepts float32/float64 scalars (or python floats, treated as float64);
    non-finite results are legal outcomes.
    """
    arr = np.asarray(value)
    if arr.dtype not in _UINT_FOR:
        arr = arr.astype(np.float64)
    uint = _UINT_FOR[arr.dtype]
    width = arr.dtype.itemsize * 8
    if not 0 <= bit < width:
        raise ValueError(f"bit {bit} out of range for {width}-bit value")
    flipped = arr.copy().view(uint)
    flipped ^= uint(1) << uint(bit)
    out = flipped.view(arr.dtype)
    return out[()] if out.ndim == 0 else out


@dataclass(frozen=True)
class FaultSpec:
    """Injection coordinates for one transient fault."""

    run_id: int
    signal_idx: int
    element_idx: int
    component: str  # "re" | "im"
    bit: int
    stage: str = "output"  # "input" | "stage:<k>" | "output"

    def __post_init__(self):
        if self.component not in ("re", "im"):
            raise ValueError("component must be 're' or 'im'")
        if self.bit < 0:
            raise ValueError("bit must be >= 0")


def apply_fault(buf: np.ndarray, signal_idx: int, element_idx: int,
                component: str, bit: int) -> None:
    """Flip one bit of one component of buf[signal_idx, element_idx] in place."""
    reals = buf.view(buf.real.dtype).reshape(buf.shape[0], -1)
    col = 2 * element_idx + (0 if component == "re" else 1)
    reals[signal_idx, col] = flip_bit(reals[signal_idx, col], bit)


class BitFlipInjector:
    """Adapter wiring a FaultSpec into the protected-run injection hook.

    Fires at most once: the modelled fault is transient, so a one-sided
    recompute of the same signal runs clean.
    """

    def __init__(self, spec: FaultSpec):
        self.spec = spec
        self.fired = False

    def __call__(self, where: str, group_start: int, buf: np.ndarray) -> None:
        if self.fired or where != self.spec.stage:
            return
        local = self.spec.signal_idx - group_start
        if not 0 <= local < buf.shape[0]:
            return
        flat = buf.reshape(buf.shape[0], -1)
        if self.spec.element_idx >= flat.shape[1]:
            return
        apply_fault(flat, local, self.spec.element_idx, self.spec.component, self.spec.bit)
        self.fired = True
