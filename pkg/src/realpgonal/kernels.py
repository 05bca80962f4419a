"""Backend selection for the table kernels.

The compiled extension is used when it imports; otherwise, or when the
environment variable ``REALPGONAL_PURE_PYTHON`` is set to ``1``, the
pure-Python versions are used. ``BACKEND`` names the active one.
"""

import os

from . import _pykernels

if os.environ.get("REALPGONAL_PURE_PYTHON") == "1":
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl
    except ImportError:  # extension not built
        _impl = _pykernels

BACKEND = "python" if _impl is _pykernels else "cython"

prepare = _impl.prepare
prepare_vector = _impl.prepare_vector
closure = _impl.closure
closure_size = _impl.closure_size
element_orders = _impl.element_orders
conjugacy_labels = _impl.conjugacy_labels
normalizer_elements = _impl.normalizer_elements
centralizer_elements = _impl.centralizer_elements
is_associative = _impl.is_associative
search_epis = _impl.search_epis


def backend_module(name: str):
    """Return the kernel module for ``"python"`` or ``"cython"`` (for benchmarks)."""
    if name == "python":
        return _pykernels
    from . import _ckernels

    return _ckernels
