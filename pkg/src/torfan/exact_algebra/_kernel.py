"""Monomial-kernel selection.

The compiled kernel is used when it imported successfully; set the
environment variable ``TORFAN_PURE_PYTHON=1`` to force the pure-Python
fallback (used by the benchmark for comparison).
"""

import os

if os.environ.get("TORFAN_PURE_PYTHON"):
    from ._mono_py import KERNEL, grevlex_key, mono_div, mono_divides, mono_lcm, mono_mul
else:
    try:
        from ._mono_cy import (  # type: ignore[import-not-found]
            KERNEL,
            grevlex_key,
            mono_div,
            mono_divides,
            mono_lcm,
            mono_mul,
        )
    except ImportError:
        from ._mono_py import (
            KERNEL,
            grevlex_key,
            mono_div,
            mono_divides,
            mono_lcm,
            mono_mul,
        )

__all__ = ["KERNEL", "mono_mul", "mono_divides", "mono_div", "mono_lcm", "grevlex_key"]
