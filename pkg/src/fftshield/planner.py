"""Kernel parameter selection and descriptor emission.

Plans are driven by a small table of tuned parameters for the sizes it
covers; everything else falls back to a balanced split of the exponent.
Descriptors are interpretable data (op lists), not generated source: the
same template structure, minus the compile step.
"""

import json
import math
from dataclasses import dataclass, field

import numpy as np

MIN_EXP = 1
MAX_EXP = 29
ALLOWED_RADICES = (2, 4, 8, 16, 32)
FT_MODES = ("none", "one_sided", "two_sided")

# Stage-count classes: one pass up to 2^13, two up to 2^22, three beyond.
ONE_STAGE_MAX = 2**13
TWO_STAGE_MAX = 2**22
MAX_BS = 16


@dataclass(frozen=True)
class PlanParams:
    """Seven-parameter kernel setup: stage dims, per-stage radices, group size."""

    N1: int
    N2: int
    N3: int
    n1: int
    n2: int
    n3: int
    bs: int

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(d for d in (self.N1, self.N2, self.N3) if d)

    @property
    def radices(self) -> tuple[int, ...]:
        return tuple(r for r in (self.n1, self.n2, self.n3) if r)

    @property
    def n(self) -> int:
        return math.prod(self.dims)

    def __post_init__(self):
        if math.prod(self.dims) < 1 or not self.dims:
            raise ValueError("at least one nonzero stage dim required")
        if len(self.dims) != len(self.radices):
            raise ValueError("each nonzero dim needs a radix")
        for dim, radix in zip(self.dims, self.radices):
            if radix not in ALLOWED_RADICES:
                raise ValueError(f"radix {radix} not in {ALLOWED_RADICES}")
            if dim % radix:
                raise ValueError(f"radix {radix} does not divide dim {dim}")
        if self.bs < 1:
            raise ValueError("bs must be >= 1")


# Tuned parameters for the sizes the table covers; all other sizes use the
# balanced-split fallback below.
PARAM_TABLE: dict[int, PlanParams] = {
    2**10: PlanParams(2**10, 0, 0, 8, 0, 0, 1),
    2**17: PlanParams(2**8, 2**9, 0, 16, 16, 0, 8),
    2**23: PlanParams(2**8, 2**7, 2**8, 16, 16, 16, 16),
}


def _validate_size(n: int) -> int:
    if n < 2 or n & (n - 1):
        raise ValueError(f"size must be a power of two, got {n}")
    exp = n.bit_length() - 1
    if not MIN_EXP <= exp <= MAX_EXP:
        raise ValueError(f"size 2^{exp} outside supported range 2^{MIN_EXP}..2^{MAX_EXP}")
    return exp


def stage_count(n: int) -> int:
    """Size class: 1, 2 or 3 stage passes."""
    _validate_size(n)
    if n <= ONE_STAGE_MAX:
        return 1
    if n <= TWO_STAGE_MAX:
        return 2
    return 3


def balanced_dims(n: int, count: int) -> tuple[int, ...]:
    """Split the exponent as evenly as possible, later stages never smaller."""
    exp = _validate_size(n)
    base, rem = divmod(exp, count)
    exps = [base] * (count - rem) + [base + 1] * rem
    return tuple(2**e for e in exps)


def _fallback_radix(dim: int) -> int:
    return min(16, dim)


def select_parameters(n: int, batch: int = 1) -> PlanParams:
    """Table values where defined, balanced-split fallback elsewhere."""
    _validate_size(n)
    if batch < 1:
        raise ValueError("batch must be >= 1")
    if n in PARAM_TABLE:
        return PARAM_TABLE[n]
    dims = balanced_dims(n, stage_count(n))
    radices = tuple(_fallback_radix(d) for d in dims)
    padded_d = dims + (0,) * (3 - len(dims))
    padded_r = radices + (0,) * (3 - len(radices))
    bs = min(max(batch, 1), MAX_BS)
    return PlanParams(*padded_d, *padded_r, bs)


@dataclass(frozen=True)
class KernelDescriptor:
    """Unrolled op schedule for one thread-radix tile."""

    params: PlanParams
    ft_mode: str
    unrolled_ops: tuple = field(default=())


def _tile_ops(radix: int) -> list[dict]:
    """Radix-2 decomposition of one tile: radix*log2(radix)/2 butterflies."""
    ops = []
    m = radix // 2
    s = 1
    step = 0
    while m >= 1:
        stride = radix // (2 * s)
        for p in range(m):
            for q in range(s):
                ops.append(
                    {
                        "op": "butterfly",
                        "step": step,
                        "src": [q + s * p, q + s * (p + m)],
                        "dst": [q + s * 2 * p, q + s * (2 * p + 1)],
                        "twiddle_power": q * stride,
                    }
                )
        m //= 2
        s *= 2
        step += 1
    return ops


def emit_descriptor(params: PlanParams, ft_mode: str = "none") -> KernelDescriptor:
    """Deterministic op list for the first-stage tile of ``params``.

    With fault tolerance enabled, checksum-accumulate ops are interleaved
    after the loads and (two-sided only) before the stores.
    """
    if ft_mode not in FT_MODES:
        raise ValueError(f"ft_mode must be one of {FT_MODES}")
    radix = params.radices[0]
    ops: list[dict] = [{"op": "load", "index": i} for i in range(radix)]
    if ft_mode in ("one_sided", "two_sided"):
        ops.append({"op": "checksum_accumulate", "phase": "post_load"})
    ops.extend(_tile_ops(radix))
    if ft_mode == "two_sided":
        ops.append({"op": "checksum_accumulate", "phase": "pre_store"})
    ops.extend({"op": "store", "index": i} for i in range(radix))
    return KernelDescriptor(params=params, ft_mode=ft_mode, unrolled_ops=tuple(
        tuple(sorted(op.items())) for op in ops
    ))


def descriptor_ops(desc: KernelDescriptor) -> list[dict]:
    return [dict(items) for items in desc.unrolled_ops]


def render_descriptor(desc: KernelDescriptor) -> str:
    """Byte-stable JSON rendering (alphabetical keys, fixed separators)."""
    params = desc.params
    doc = {
        "n": params.n,
        "stages": [
            {"dim": d, "radix": r} for d, r in zip(params.dims, params.radices)
        ],
        "bs": params.bs,
        "ft_mode": desc.ft_mode,
        "ops": descriptor_ops(desc),
    }
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def execute_descriptor(desc: KernelDescriptor, tile: np.ndarray) -> np.ndarray:
    """Interpret the op list over one tile; used to check the schedule."""
    ops = descriptor_ops(desc)
    radix = desc.params.radices[0]
    tile = np.asarray(tile, dtype=np.complex128)
    if tile.shape != (radix,):
        raise ValueError(f"tile must have shape ({radix},)")
    omega = np.exp(-2j * np.pi / radix)
    cur = np.zeros(radix, dtype=np.complex128)
    out = np.zeros(radix, dtype=np.complex128)
    nxt = np.zeros(radix, dtype=np.complex128)
    step = 0
    for op in ops:
        kind = op["op"]
        if kind == "load":
            cur[op["index"]] = tile[op["index"]]
        elif kind == "butterfly":
            if op["step"] != step:
                cur, nxt = nxt, cur
                step = op["step"]
            lo = cur[op["src"][0]]
            hi = cur[op["src"][1]] * omega ** op["twiddle_power"]
            nxt[op["dst"][0]] = lo + hi
            nxt[op["dst"][1]] = lo - hi
        elif kind == "store":
            out[op["index"]] = nxt[op["index"]]
        elif kind == "checksum_accumulate":
            pass
    return out
