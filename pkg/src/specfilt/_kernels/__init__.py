"""CSR kernel backend selection.

The compiled Cython kernels are preferred when the extension was built;
otherwise the vectorized NumPy implementations are used. Setting the
environment variable ``SPECFILT_FORCE_PYTHON=1`` forces the fallback, which
is how the benchmark compares the two.
"""

import os

if os.environ.get("SPECFILT_FORCE_PYTHON", "").strip() not in ("", "0"):
    from . import _csr_np as _impl

    BACKEND = "python"
else:
    try:
        from . import _csr_cy as _impl

        BACKEND = "compiled"
    except ImportError:
        from . import _csr_np as _impl

        BACKEND = "python"

matvec = _impl.matvec
matmat = _impl.matmat
spmm = _impl.spmm
add = _impl.add
