"""Kernel backend selection: compiled extension with pure-Python fallback.

The compiled module (svcminer._kernels, built from Cython) and the pure
module (svcminer._kernels_py) expose the same three functions with
identical numeric behaviour; whichever imports successfully is used.
Set SVCMINER_BACKEND=python to force the fallback (benchmarks, parity
tests) or SVCMINER_BACKEND=c to insist on the extension.
"""

import os

_requested = os.environ.get("SVCMINER_BACKEND", "").strip().lower()

if _requested in ("python", "py", "pure"):
    from svcminer import _kernels_py as _impl
    BACKEND = "python"
elif _requested in ("", "c", "compiled", "native"):
    try:
        from svcminer import _kernels as _impl
        BACKEND = "compiled"
    except ImportError:
        if _requested:
            raise ImportError(
                "SVCMINER_BACKEND requested the compiled kernels, "
                "but the extension is not built") from None
        from svcminer import _kernels_py as _impl
        BACKEND = "python"
else:
    raise ValueError(f"unknown SVCMINER_BACKEND value {_requested!r}")

OE = _impl.OE
MI = _impl.MI
LOCAL_MI = _impl.LOCAL_MI
Z_SCORE = _impl.Z_SCORE
T_SCORE = _impl.T_SCORE
SIMPLE_LL = _impl.SIMPLE_LL

count_pairs = _impl.count_pairs
score_many = _impl.score_many
cpr_many = _impl.cpr_many
