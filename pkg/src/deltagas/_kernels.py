"""Hot numeric kernels with a numba fast path and a numpy fallback.

The backend is chosen once at import time from the environment variable
DELTAGAS_BACKEND: "numba" forces the compiled path (ImportError if numba
is missing), "numpy" forces the vectorised fallback, unset tries numba
and falls back silently.  Both paths compute identical quantities; the
test suite compares them, and benchmarks/bench_backends.py times them.

Kernels:
  lorentz_system(x, w, diag, scale, width)
      A[i, j] = diag*(i == j) + scale * w[j] / ((x[i]-x[j])^2 + width^2)
  lorentz_apply(xe, x, w, f, scale, width)
      out[i] = scale * sum_j w[j] f[j] / ((xe[i]-x[j])^2 + width^2)
  exp_dot(c, t, x)
      out[i] = sum_m c[m] * exp(-x[i] * t[m])
"""

import math
import os

import numpy as np

__all__ = ["backend_name", "lorentz_system", "lorentz_apply", "exp_dot"]

_CHOICE = os.environ.get("DELTAGAS_BACKEND", "").strip().lower()
if _CHOICE not in ("", "numba", "numpy"):
    raise ValueError(
        "DELTAGAS_BACKEND must be 'numba' or 'numpy', got %r" % (_CHOICE,)
    )


def _np_lorentz_system(x, w, diag, scale, width):
    d = x[:, None] - x[None, :]
    a = scale * w[None, :] / (d * d + width * width)
    a[np.diag_indices_from(a)] += diag
    return a


def _np_lorentz_apply(xe, x, w, f, scale, width):
    d = xe[:, None] - x[None, :]
    return scale * ((w * f)[None, :] / (d * d + width * width)).sum(axis=1)


def _np_exp_dot(c, t, x):
    return np.exp(-np.outer(x, t)) @ c


def _build_numba():
    import numba

    @numba.njit(cache=True)
    def lorentz_system(x, w, diag, scale, width):
        n = x.shape[0]
        a = np.empty((n, n))
        w2 = width * width
        for i in range(n):
            xi = x[i]
            for j in range(n):
                d = xi - x[j]
                a[i, j] = scale * w[j] / (d * d + w2)
            a[i, i] += diag
        return a

    @numba.njit(cache=True)
    def lorentz_apply(xe, x, w, f, scale, width):
        n = xe.shape[0]
        m = x.shape[0]
        out = np.empty(n)
        w2 = width * width
        for i in range(n):
            acc = 0.0
            xi = xe[i]
            for j in range(m):
                d = xi - x[j]
                acc += w[j] * f[j] / (d * d + w2)
            out[i] = scale * acc
        return out

    @numba.njit(cache=True)
    def exp_dot(c, t, x):
        n = x.shape[0]
        m = t.shape[0]
        out = np.empty(n)
        for i in range(n):
            acc = 0.0
            xi = x[i]
            for k in range(m):
                e = xi * t[k]
                if e < 745.0:  # exp underflows to zero beyond this
                    acc += c[k] * math.exp(-e)
            out[i] = acc
        return out

    return lorentz_system, lorentz_apply, exp_dot


if _CHOICE == "numpy":
    _BACKEND = "numpy"
    lorentz_system, lorentz_apply, exp_dot = (
        _np_lorentz_system,
        _np_lorentz_apply,
        _np_exp_dot,
    )
else:
    try:
        lorentz_system, lorentz_apply, exp_dot = _build_numba()
        _BACKEND = "numba"
    except ImportError:
        if _CHOICE == "numba":
            raise
        _BACKEND = "numpy"
        lorentz_system, lorentz_apply, exp_dot = (
            _np_lorentz_system,
            _np_lorentz_apply,
            _np_exp_dot,
        )


def backend_name() -> str:
    return _BACKEND
