"""Kernel backend selection.

The compiled extension is preferred when the build produced it; the
pure-Python twin is the fallback.  `BACKEND` reports which one is live.
Both expose the same names with bit-identical float64 behaviour, so the
choice is purely about speed (see benchmarks/bench_kernels.py).
"""

try:
    from . import _kernels as _impl
except ImportError:  # extension not built; see setup.py
    from . import _kernels_py as _impl

BACKEND = _impl.BACKEND
RAW = _impl.RAW
BANDED = _impl.BANDED
CHAIN = _impl.CHAIN
sigma = _impl.sigma
sigma_prime = _impl.sigma_prime
merge_raw_x = _impl.merge_raw_x
merge_banded_x = _impl.merge_banded_x
chain_x = _impl.chain_x
sample_rows = _impl.sample_rows
