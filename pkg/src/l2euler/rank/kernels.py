"""Select the compiled elimination kernels, falling back to numpy.

Set ``L2EULER_PURE=1`` to force the fallback.
"""

import os

BACKEND = "python"

if os.environ.get("L2EULER_PURE", "") not in ("1", "true", "yes"):
    try:
        from ._kernels import rank_mod_p_batch, rank_mod_p_dense
        BACKEND = "cython"
    except ImportError:
        pass

if BACKEND == "python":
    from ._fallback import rank_mod_p_batch, rank_mod_p_dense
