"""Backend selection for the packed-triangle reduction kernels.

The compiled extension is preferred when present; the pure-NumPy module is a
drop-in replacement.  Set TSRE_BACKEND=python to force the fallback (useful
for benchmarking and for testing the selection logic).
"""

import os

from . import _py

BACKEND = "python"
_impl = _py

if os.environ.get("TSRE_BACKEND", "").lower() != "python":
    try:
        from . import _core as _impl  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        _impl = _py

pair_sums = _impl.pair_sums
diag_sums = _impl.diag_sums

__all__ = ["BACKEND", "pair_sums", "diag_sums"]
