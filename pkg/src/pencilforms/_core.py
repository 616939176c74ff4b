"""Kernel selection: compiled backend when available, pure Python otherwise.

Set PENCILFORMS_PURE=1 to force the pure-Python kernel.
"""

from __future__ import annotations

import os

if os.environ.get("PENCILFORMS_PURE"):
    from pencilforms import _core_py as _impl
else:
    try:
        from pencilforms import _core_cy as _impl  # type: ignore[attr-defined]
    except ImportError:
        from pencilforms import _core_py as _impl

BACKEND = _impl.BACKEND
Q_ZERO = _impl.Q_ZERO
Q_ONE = _impl.Q_ONE
qnorm = _impl.qnorm
qadd = _impl.qadd
qneg = _impl.qneg
qsub = _impl.qsub
qmul = _impl.qmul
qinv = _impl.qinv
exp_add = _impl.exp_add
poly_add = _impl.poly_add
poly_neg = _impl.poly_neg
poly_sub = _impl.poly_sub
poly_scale = _impl.poly_scale
poly_mul = _impl.poly_mul
poly_mul_term = _impl.poly_mul_term
