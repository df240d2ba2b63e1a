"""fftshield: fault-tolerant FFT with checksum-based detection and correction."""

from . import abft, fault_lab, fft_core, planner, signal_io
from .abft import Scheme, run_protected
from .fft_core import build_twiddles, dft_reference, fft_execute, make_plan

__version__ = "0.1.0"

__all__ = [
    "Scheme",
    "abft",
    "build_twiddles",
    "dft_reference",
    "fault_lab",
    "fft_core",
    "fft_execute",
    "make_plan",
    "planner",
    "run_protected",
    "signal_io",
    "__version__",
]
