"""Kernel dispatch: compiled extension when present, pure Python otherwise.

The two backends implement identical algorithms with identical tie-breaks,
so results match bit for bit; only speed differs.  ``BACKEND`` records
which one was selected at import time.
"""

from __future__ import annotations

import numpy as np

from . import _kernels_py

try:
    from . import _kernels as _compiled
except ImportError:
    _compiled = None

BACKEND = "compiled" if _compiled is not None else "pure"
_impl = _compiled if _compiled is not None else _kernels_py


def _i64(seq):
    return np.ascontiguousarray(seq, dtype=np.int64)


def _i32(seq):
    return np.ascontiguousarray(seq, dtype=np.int32)


def min_ratio_cut(n, vol, eu, ev, ew):
    if _impl is _kernels_py:
        return _kernels_py.min_ratio_cut(n, vol, eu, ev, ew)
    return _compiled.min_ratio_cut(n, _i64(vol), _i32(eu), _i32(ev), _i64(ew))


def min_bipartiteness(n, vol, eu, ev, ew):
    if _impl is _kernels_py:
        return _kernels_py.min_bipartiteness(n, vol, eu, ev, ew)
    return _compiled.min_bipartiteness(n, _i64(vol), _i32(eu), _i32(ev), _i64(ew))


def max_skeleton_surplus(n, vdeg, eu, ev, ew, dv, de):
    if _impl is _kernels_py:
        return _kernels_py.max_skeleton_surplus(n, vdeg, eu, ev, ew, dv, de)
    return _compiled.max_skeleton_surplus(
        n, _i64(vdeg), _i32(eu), _i32(ev), _i64(ew), int(dv), int(de)
    )


def min_colorful_ratio(m, fdeg, cdeg, cptr, cidx, nsub, dtot):
    if _impl is _kernels_py:
        return _kernels_py.min_colorful_ratio(m, fdeg, cdeg, cptr, cidx, nsub, dtot)
    return _compiled.min_colorful_ratio(
        m, _i64(fdeg), _i64(cdeg), _i32(cptr), _i32(cidx), int(nsub), int(dtot)
    )


def backends():
    """Mapping of available backend name -> module (for benchmarks/tests)."""
    out = {"pure": _kernels_py}
    if _compiled is not None:
        out["compiled"] = _compiled
    return out
