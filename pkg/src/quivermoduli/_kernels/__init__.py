"""Hot loop of the finite-field oracle: HN census of every point of R_d(F_q).

Two interchangeable backends share the tables built by :func:`prepare`:
the compiled ``_census`` extension (Cython) and the pure-Python ``census_py``.
The compiled one is used when importable, unless ``QUIVERMODULI_PURE_PYTHON``
is set.
"""
from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from ..fq import check_field, encode, subspaces
from . import census_py

try:
    from . import _census as _compiled
except ImportError:  # extension not built
    _compiled = None

BACKENDS = {"python": census_py.census}
if _compiled is not None:
    BACKENDS["compiled"] = _compiled.census


def default_backend() -> str:
    if os.environ.get("QUIVERMODULI_PURE_PYTHON") or _compiled is None:
        return "python"
    return "compiled"


@dataclass
class CensusTables:
    q: int
    nv: int
    dims: np.ndarray
    theta: np.ndarray
    src: np.ndarray
    tgt: np.ndarray
    eoff: np.ndarray       # first matrix-entry digit of each arrow
    n_entries: int
    qmax: int              # q ** max(dims)
    addt: np.ndarray       # addt[a * qmax + b] = code of a + b
    mult: np.ndarray       # mult[c * qmax + a] = code of c * a
    lowpos: np.ndarray     # position of the lowest non-zero digit of a code
    lowdig: np.ndarray     # that digit
    prev: np.ndarray       # code with that digit cleared
    sub_off: np.ndarray    # subspaces of vertex v are sub_off[v] .. sub_off[v+1]-1
    sub_dim: np.ndarray
    sub_basis: np.ndarray  # (n_sub, maxdim) basis codes
    member: np.ndarray     # (n_sub, qmax) uint8
    contain: np.ndarray    # (n_sub, n_sub) uint8, contain[a, b] = b is inside a
    radix: np.ndarray      # mixed-radix weights for dimension-vector codes
    type_base: int         # prod (d_i + 1)

    @property
    def n_points(self) -> int:
        return self.q ** self.n_entries


def prepare(q: int, dims, theta, arrows) -> CensusTables:
    check_field(q)
    dims = [int(x) for x in dims]
    nv = len(dims)
    maxdim = max(dims + [1])
    qmax = q ** maxdim
    addt = np.zeros(qmax * qmax, dtype=np.int64)
    mult = np.zeros(q * qmax, dtype=np.int64)
    vecs = [tuple((c // q ** k) % q for k in range(maxdim)) for c in range(qmax)]
    for a in range(qmax):
        for b in range(qmax):
            addt[a * qmax + b] = encode([x + y for x, y in zip(vecs[a], vecs[b])], q)
        for c in range(q):
            mult[c * qmax + a] = encode([c * x for x in vecs[a]], q)
    lowpos = np.zeros(qmax, dtype=np.int64)
    lowdig = np.zeros(qmax, dtype=np.int64)
    prev = np.zeros(qmax, dtype=np.int64)
    for c in range(1, qmax):
        k = next(i for i, x in enumerate(vecs[c]) if x)
        lowpos[c], lowdig[c] = k, vecs[c][k]
        prev[c] = c - vecs[c][k] * q ** k
    subs, off = [], [0]
    for n in dims:
        subs.extend(subspaces(n, q))
        off.append(len(subs))
    n_sub = len(subs)
    sub_dim = np.array([s.dim for s in subs], dtype=np.int64)
    sub_basis = np.zeros((n_sub, maxdim), dtype=np.int64)
    member = np.zeros((n_sub, qmax), dtype=np.uint8)
    for g, s in enumerate(subs):
        for k, b in enumerate(s.basis):
            sub_basis[g, k] = encode(b, q)
        for c in s.members:
            member[g, c] = 1
    contain = np.zeros((n_sub, n_sub), dtype=np.uint8)
    for v in range(nv):
        for a in range(off[v], off[v + 1]):
            for b in range(off[v], off[v + 1]):
                contain[a, b] = subs[b].members <= subs[a].members
    src = np.array([s for s, _ in arrows], dtype=np.int64)
    tgt = np.array([t for _, t in arrows], dtype=np.int64)
    eoff, acc = [], 0
    for s, t in arrows:
        eoff.append(acc)
        acc += dims[s] * dims[t]
    radix, r = [], 1
    for x in dims:
        radix.append(r)
        r *= x + 1
    return CensusTables(q, nv, np.array(dims, dtype=np.int64), np.array(theta, dtype=np.int64),
                        src, tgt, np.array(eoff, dtype=np.int64), acc, qmax, addt, mult,
                        lowpos, lowdig, prev, np.array(off, dtype=np.int64), sub_dim, sub_basis,
                        member, contain, np.array(radix, dtype=np.int64), r)


def decode_type(code: int, tables: CensusTables) -> tuple[tuple[int, ...], ...]:
    """Inverse of the HN-type encoding: base ``type_base`` digits, least significant first."""
    parts = []
    while code:
        code, part = divmod(code, tables.type_base)
        vec = []
        for x in tables.dims:
            part, r = divmod(part, int(x) + 1)
            vec.append(r)
        parts.append(tuple(vec))
    return tuple(parts)


def run_census(tables: CensusTables, start: int = 0, stop: int | None = None,
               backend: str | None = None) -> tuple[dict[int, int], int]:
    """Counts per encoded HN type and number of stable points over ``[start, stop)``."""
    stop = tables.n_points if stop is None else stop
    backend = backend or default_backend()
    if backend == "compiled" and tables.type_base ** (int(tables.dims.sum()) + 1) >= 2 ** 62:
        backend = "python"  # type codes would overflow int64
    try:
        fn = BACKENDS[backend]
    except KeyError:
        raise ValueError(f"backend {backend!r} unavailable; have {sorted(BACKENDS)}") from None
    return fn(tables, start, stop)
