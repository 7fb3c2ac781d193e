"""Backend selection for the nested-sum kernel.

The compiled GMP kernel is used when it was built; otherwise, or when
``MZVKIT_PURE_PYTHON=1`` is set, the pure-Python version is used. Both
return identical integers.
"""

import os

from . import _lisum_py

BACKEND = "python"
nested_sum_half = _lisum_py.nested_sum_half

if os.environ.get("MZVKIT_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _lisum  # type: ignore[attr-defined]
    except ImportError:
        pass
    else:
        nested_sum_half = _lisum.nested_sum_half
        BACKEND = "gmp"

python_nested_sum_half = _lisum_py.nested_sum_half
