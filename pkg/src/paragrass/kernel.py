"""Select the term-product kernel at import time.

The compiled kernel is used when it was built; set
``PARAGRASS_PURE_PYTHON=1`` to force the pure-Python one.
"""

from __future__ import annotations

import os

from . import _pykernel

if os.environ.get("PARAGRASS_PURE_PYTHON"):
    _impl = _pykernel
else:
    try:
        from . import _ckernel as _impl
    except ImportError:
        _impl = _pykernel

product = _impl.product
KERNEL_NAME = _impl.KERNEL_NAME
python_product = _pykernel.product
