"""Selects the series kernel: compiled extension if importable, else pure Python.

Set ``BESSELFRAME_PURE=1`` to force the pure-Python kernel.
"""

import os

from . import _dd

pure_hyp_sum = _dd.hyp_sum

try:
    from ._hypsum import hyp_sum as compiled_hyp_sum
except ImportError:  # extension not built
    compiled_hyp_sum = None


def forced_pure() -> bool:
    return os.environ.get("BESSELFRAME_PURE") == "1"


if compiled_hyp_sum is not None and not forced_pure():
    hyp_sum = compiled_hyp_sum
    BACKEND = "compiled"
else:
    hyp_sum = pure_hyp_sum
    BACKEND = "python"
