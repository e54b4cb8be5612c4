"""Compiled kernel vs pure kernel: identical answers, graceful escalation."""

import random

import pytest

from coxkl.core import INF, _integer_cartan, CoxeterMatrix
from coxkl.kernels import HAVE_COMPILED, HybridKernel, PyIntKernel

MATRICES = {
    "A3": [[1, 3, 2], [3, 1, 3], [2, 3, 1]],
    "B3": [[1, 4, 2], [4, 1, 3], [2, 3, 1]],
    "G2": [[1, 6], [6, 1]],
    "affineA2": [[1, 3, 3], [3, 1, 3], [3, 3, 1]],
    "universal3": [[1, INF, INF], [INF, 1, INF], [INF, INF, 1]],
}


def _kernels(name):
    cartan = _integer_cartan(CoxeterMatrix(MATRICES[name]))
    pure = PyIntKernel(cartan)
    fast = HybridKernel(cartan) if HAVE_COMPILED else None
    return pure, fast


@pytest.mark.skipif(not HAVE_COMPILED, reason="compiled kernel not built")
@pytest.mark.parametrize("name", sorted(MATRICES))
def test_compiled_matches_pure_on_random_words(name):
    pure, fast = _kernels(name)
    rng = random.Random(12345)
    n = pure.n
    for _ in range(300):
        word = tuple(rng.randrange(n) for _ in range(rng.randrange(0, 14)))
        assert fast.canonicalize(word) == pure.canonicalize(word)
        assert fast.right_descent_mask(word) == pure.right_descent_mask(word)


@pytest.mark.skipif(not HAVE_COMPILED, reason="compiled kernel not built")
def test_long_words_escalate_to_pure(name="universal3"):
    pure, fast = _kernels(name)
    # free-ish group: long words never reduce, coordinates explode
    word = tuple([0, 1, 2] * 20)
    assert fast.canonicalize(word) == pure.canonicalize(word)
    canon, reduced = fast.canonicalize(word)
    assert reduced and len(canon) == 60


@pytest.mark.skipif(not HAVE_COMPILED, reason="compiled kernel not built")
def test_overflow_guard_fires_below_word_cap():
    from coxkl.kernels._ckernel import CKernel, KernelOverflow

    # a pairing this steep is hyperbolic: coordinates blow past int64
    # well before the 32-letter cap, so the guard must escalate
    cartan = ((2, -8), (-8, 2))
    ck = CKernel(cartan)
    word = (0, 1) * 16
    with pytest.raises(KernelOverflow):
        ck.canonicalize(word)
    pure = PyIntKernel(cartan)
    fast = HybridKernel(cartan)
    assert fast.canonicalize(word) == pure.canonicalize(word)
    assert fast.right_descent_mask(word) == pure.right_descent_mask(word)


def test_kernel_mode_env(monkeypatch):
    from coxkl.kernels import make_integer_kernel

    cartan = _integer_cartan(CoxeterMatrix(MATRICES["A3"]))
    monkeypatch.setenv("COXKL_KERNEL", "pure")
    assert make_integer_kernel(cartan).kind == "pure"
    monkeypatch.setenv("COXKL_KERNEL", "bogus")
    with pytest.raises(ValueError):
        make_integer_kernel(cartan)
    if HAVE_COMPILED:
        monkeypatch.setenv("COXKL_KERNEL", "compiled")
        assert make_integer_kernel(cartan).kind == "compiled"
