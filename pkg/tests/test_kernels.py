import random

import pytest
from hypothesis import given, settings, strategies as st

from voakit import _pykernels, kernels

BACKENDS = kernels.available_backends()


@pytest.fixture(params=BACKENDS)
def backend(request):
    prev = kernels.get_backend()
    kernels.use_backend(request.param)
    yield request.param
    kernels.use_backend(prev)


def test_python_backend_always_available():
    assert "python" in BACKENDS


def test_partition_counts(backend):
    assert kernels.partition_counts(10) == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]


def test_large_partitions_fall_back_exactly(backend):
    assert kernels.partition_counts(500)[500] == 2300165032574323995027


def test_big_coefficients(backend):
    a = [10**30, -1, 7]
    assert kernels.conv_trunc(a, a, 3) == _pykernels.conv_trunc(a, a, 3)


@settings(max_examples=80)
@given(st.lists(st.integers(-50, 50), max_size=12), st.lists(st.integers(-50, 50), max_size=12),
       st.integers(0, 15))
def test_conv_matches_reference(a, b, n):
    ref = _pykernels.conv_trunc(a, b, n)
    for name in BACKENDS:
        kernels.use_backend(name)
        assert kernels.conv_trunc(a, b, n) == ref
    kernels.use_backend(BACKENDS[-1])


@settings(max_examples=40)
@given(st.lists(st.integers(-5, 5), min_size=1, max_size=6), st.integers(0, 6), st.integers(0, 12))
def test_power_matches_repeated_product(a, e, n):
    ref = [1] + [0] * (n - 1) if n else []
    for _ in range(e):
        ref = _pykernels.conv_trunc(ref, a, n)
    for name in BACKENDS:
        kernels.use_backend(name)
        assert kernels.poly_pow_trunc(a, e, n) == ref
    kernels.use_backend(BACKENDS[-1])


def test_unknown_backend():
    with pytest.raises(ValueError):
        kernels.use_backend("fortran")


def test_env_forces_python(monkeypatch):
    import importlib
    monkeypatch.setenv("VOAKIT_PURE_PYTHON", "1")
    mod = importlib.reload(kernels)
    try:
        assert mod.BACKEND == "python"
    finally:
        monkeypatch.delenv("VOAKIT_PURE_PYTHON")
        importlib.reload(kernels)
