"""Element-level two-sided check on one radix tile.

Protects a single r x B tile computation Y = W X: row checksums locate the
corrupted column (signal), the transformed column-combination locates the
row and yields the disagreement used for the in-place fix.
"""

from dataclasses import dataclass

import numpy as np

from ..kernels import get_backend
from .encoding import EncodingVector
from .pipeline import DetectionConfig, UnrecoverableError

TILE_RADICES = (2, 4, 8, 16, 32)


@dataclass
class ElementReport:
    located: tuple[int, int] | None = None  # (row, col) of the fixed entry
    corrected: bool = False
    col_discrepancies: np.ndarray | None = None


def _tile_transform(x_cols: np.ndarray, r: int, backend: str = "auto") -> np.ndarray:
    base = np.exp(-2j * np.pi * np.arange(max(r // 2, 1)) / r).astype(x_cols.dtype)
    return get_backend(backend).tile_fft(
        np.ascontiguousarray(x_cols.T), base, False
    ).T


def two_sided_element(
    r: int,
    tile: np.ndarray,
    enc_row: EncodingVector,
    enc_col: EncodingVector,
    cfg: DetectionConfig,
    inject=None,
) -> tuple[np.ndarray, ElementReport]:
    """Transform an r x B tile under two-sided protection.

    ``inject(y)`` may mutate the freshly computed output tile, modelling a
    fault inside the tile computation. Returns the (possibly corrected)
    output tile and a report. Raises UnrecoverableError when the row- and
    column-side disagreements are inconsistent.
    """
    if r not in TILE_RADICES:
        raise ValueError(f"tile radix must be one of {TILE_RADICES}")
    x = np.asarray(tile, dtype=np.complex128)
    if x.ndim == 1:
        x = x[:, None]
    if x.shape[0] != r:
        raise ValueError(f"tile must have {r} rows")
    # right-side combination encoded while the transform is computed
    xe = x @ enc_col.values[: x.shape[1]]
    row_in = enc_row.etw @ x  # (e^T W) X, one predicted checksum per column
    y = _tile_transform(x, r)
    if inject is not None:
        inject(y)
    # row side: locate the corrupted column
    d_row = row_in - enc_row.values @ y
    denom = np.maximum(np.abs(row_in), cfg.abs_floor)
    rel = np.abs(d_row) / np.where(denom > 0, denom, 1.0)
    rel = np.where(~np.isfinite(y).all(axis=0) | ~np.isfinite(rel), np.inf, rel)
    report = ElementReport(col_discrepancies=rel)
    flagged = np.flatnonzero(rel > cfg.delta)
    if flagged.size == 0:
        return y, report
    if flagged.size > 1:
        raise UnrecoverableError("multiple corrupted columns in one tile")
    j = int(flagged[0])
    # column side: locate the row and recover the disagreement
    d_col = _tile_transform(xe[:, None], r)[:, 0] - y @ enc_col.values[: y.shape[1]]
    i = int(np.argmax(np.where(np.isfinite(d_col), np.abs(d_col), np.inf)))
    fix = d_col[i] / enc_col.values[j]
    eps_col = -fix
    eps_row = -d_row[j] / enc_row.values[i]
    if np.isfinite(eps_col) and np.isfinite(eps_row):
        if abs(eps_row - eps_col) > cfg.delta * max(abs(eps_col), cfg.abs_floor):
            raise UnrecoverableError("row/column disagreements inconsistent")
    y = y.copy()
    if np.isfinite(y[i, j]):
        y[i, j] += fix
    else:
        cols = np.delete(np.arange(y.shape[1]), j)
        others = y[:, cols] @ enc_col.values[: y.shape[1]][cols]
        recovered = _tile_transform(xe[:, None], r)[:, 0] - others
        y[i, j] = recovered[i] / enc_col.values[j]
    report.located = (i, j)
    report.corrected = True
    return y, report
