"""Shared comparison tolerance.

An inequality ``lhs <= rhs`` is violated only when ``lhs - rhs`` exceeds
``rtol * max(|lhs|, |rhs|)`` with an absolute floor of ``ABS_TOL``.
"""
import numpy as np

REL_TOL = 1e-9
ABS_TOL = 1e-12


def allowance(lhs, rhs, rtol=REL_TOL, atol=ABS_TOL):
    return np.maximum(rtol * np.maximum(np.abs(lhs), np.abs(rhs)), atol)


def exceeds(lhs, rhs, rtol=REL_TOL, atol=ABS_TOL):
    """Elementwise: does ``lhs`` exceed ``rhs`` beyond tolerance?"""
    lhs = np.asarray(lhs, dtype=float)
    rhs = np.asarray(rhs, dtype=float)
    return lhs - rhs > allowance(lhs, rhs, rtol, atol)


def close(a, b, rtol=REL_TOL, atol=ABS_TOL):
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return np.abs(a - b) <= allowance(a, b, rtol, atol)
