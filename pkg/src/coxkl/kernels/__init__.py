"""Kernel selection: compiled fast path with a pure-Python twin.

The compiled kernel (Cython, int64 with a checked guard) covers the
crystallographic backend for words of length <= 32; longer words or
oversized coordinates escalate per call to the pure kernel, whose Python
ints cannot overflow.  If the extension failed to build, the pure kernel
serves everything.  Set COXKL_KERNEL=pure|compiled|auto to override the
choice (default: auto).
"""

from __future__ import annotations

import os

from .pykernel import PyIntKernel, RingKernel

try:
    from ._ckernel import CKernel, KernelOverflow

    HAVE_COMPILED = True
except ImportError:  # extension not built
    CKernel = None

    class KernelOverflow(Exception):
        pass

    HAVE_COMPILED = False

__all__ = [
    "PyIntKernel",
    "RingKernel",
    "HybridKernel",
    "KernelOverflow",
    "HAVE_COMPILED",
    "make_integer_kernel",
    "kernel_mode",
]


class HybridKernel:
    """int64 fast path backed by the big-integer kernel on escalation."""

    kind = "compiled"

    def __init__(self, cartan):
        self._fast = CKernel(cartan)
        self._slow = PyIntKernel(cartan)

    def canonicalize(self, word):
        try:
            return self._fast.canonicalize(word)
        except KernelOverflow:
            return self._slow.canonicalize(word)

    def right_descent_mask(self, word):
        try:
            return self._fast.right_descent_mask(word)
        except KernelOverflow:
            return self._slow.right_descent_mask(word)


def kernel_mode() -> str:
    mode = os.environ.get("COXKL_KERNEL", "auto")
    if mode not in ("auto", "pure", "compiled"):
        raise ValueError(f"COXKL_KERNEL must be auto, pure or compiled, not {mode!r}")
    return mode


def make_integer_kernel(cartan):
    """Kernel for integer Cartan matrices, honoring COXKL_KERNEL."""
    mode = kernel_mode()
    if mode == "pure":
        return PyIntKernel(cartan)
    if mode == "compiled":
        if not HAVE_COMPILED:
            raise RuntimeError("compiled kernel requested but not available")
        return HybridKernel(cartan)
    if HAVE_COMPILED:
        try:
            return HybridKernel(cartan)
        except KernelOverflow:
            return PyIntKernel(cartan)
    return PyIntKernel(cartan)
