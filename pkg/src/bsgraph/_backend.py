"""Pick the compiled flow kernel when available, else the pure-Python one.

Set ``BSGRAPH_PURE_PYTHON=1`` to force the fallback.
"""

import os

if os.environ.get("BSGRAPH_PURE_PYTHON", "") not in ("", "0"):
    from ._flow_py import FlowGraph

    BACKEND = "python"
else:
    try:
        from ._flow_ext import FlowGraph

        BACKEND = "cython"
    except ImportError:
        from ._flow_py import FlowGraph

        BACKEND = "python"

__all__ = ["FlowGraph", "BACKEND"]
