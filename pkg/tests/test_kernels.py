import random

import pytest

from quivermoduli import _kernels
from quivermoduli.quiver import Quiver, standard_quiver

compiled = pytest.mark.skipif("compiled" not in _kernels.BACKENDS, reason="extension not built")

CASES = [
    (standard_quiver("kronecker", 1), (1, 0), (2, 2), 2),
    (standard_quiver("kronecker", 2), (1, 0), (2, 2), 3),
    (standard_quiver("loop", 2), (0,), (2,), 3),
    (standard_quiver("loop", 1), (0,), (3,), 2),
    (standard_quiver("subspace", 3), (0, 0, 0, -1), (1, 1, 1, 2), 2),
    (Quiver(("a", "b", "c"), (("a", "b"), ("b", "c"), ("c", "a"))), (1, 0, -1), (1, 2, 1), 2),
]


@compiled
@pytest.mark.parametrize("Q,theta,d,q", CASES)
def test_backends_agree(Q, theta, d, q):
    t = _kernels.prepare(q, d, theta, Q.arrow_pairs)
    assert _kernels.run_census(t, backend="compiled") == _kernels.run_census(t, backend="python")


@compiled
def test_backends_agree_on_ranges():
    Q = standard_quiver("kronecker", 2)
    t = _kernels.prepare(3, (2, 2), (1, 0), Q.arrow_pairs)
    rng = random.Random(3)
    for _ in range(10):
        a = rng.randrange(t.n_points)
        b = rng.randrange(a, t.n_points + 1)
        assert _kernels.run_census(t, a, b, "compiled") == _kernels.run_census(t, a, b, "python")


def test_decode_type():
    t = _kernels.prepare(2, (2, 3), (1, 0), [(0, 1)])
    code = (1 + 3 * 3) + (1 + 0 * 3) * t.type_base  # radix (1, 3)
    assert _kernels.decode_type(code, t) == ((1, 3), (1, 0))


def test_env_forces_python(monkeypatch):
    monkeypatch.setenv("QUIVERMODULI_PURE_PYTHON", "1")
    assert _kernels.default_backend() == "python"


def test_unknown_backend():
    t = _kernels.prepare(2, (1,), (0,), [])
    with pytest.raises(ValueError):
        _kernels.run_census(t, backend="gpu")
