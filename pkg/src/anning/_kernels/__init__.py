"""Kernel backend selection.

The compiled Cython extension is preferred when present; the pure-Python
reference implementation is the fallback.  Set ANNING_PURE_PY=1 to force the
reference backend (used by the parity tests and the benchmark).
"""

import os

from . import _reference

if os.environ.get("ANNING_PURE_PY") == "1":
    _impl = _reference
else:
    try:
        from . import _speedups as _impl
    except ImportError:
        _impl = _reference

BACKEND = _impl.BACKEND

KIND_LP = _reference.KIND_LP
KIND_LINF = _reference.KIND_LINF
KIND_ARCS = _reference.KIND_ARCS
KIND_TORUS = _reference.KIND_TORUS
KIND_CONE = _reference.KIND_CONE

dist_one = _impl.dist_one
dist_many = _impl.dist_many
dist_pairs = _impl.dist_pairs
radial_one = _impl.radial_one
weighted_diffs = _impl.weighted_diffs
newton3 = _impl.newton3
