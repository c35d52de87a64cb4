"""Linear algebra over small prime fields: vector codes, subspaces, ranks."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

PRIMES = (2, 3, 5)


def check_field(q: int) -> int:
    if q not in PRIMES:
        raise ValueError(f"field size must be one of {PRIMES}, got {q}")
    return q


def encode(v, q: int) -> int:
    """Vector (v_0, ..., v_{n-1}) -> sum v_k q^k."""
    code, base = 0, 1
    for x in v:
        code += (x % q) * base
        base *= q
    return code


def decode(code: int, n: int, q: int) -> tuple[int, ...]:
    out = []
    for _ in range(n):
        code, r = divmod(code, q)
        out.append(r)
    return tuple(out)


@dataclass(frozen=True)
class Subspace:
    dim: int
    basis: tuple[tuple[int, ...], ...]
    members: frozenset  # vector codes

    def __le__(self, other: "Subspace") -> bool:
        return self.members <= other.members


@lru_cache(maxsize=None)
def subspaces(n: int, q: int) -> tuple[Subspace, ...]:
    """All subspaces of F_q^n from reduced row echelon forms, by increasing dimension."""
    out = []
    for k in range(n + 1):
        for pivots in itertools.combinations(range(n), k):
            free = [(r, c) for r in range(k) for c in range(pivots[r] + 1, n) if c not in pivots]
            for values in itertools.product(range(q), repeat=len(free)):
                rows = [[0] * n for _ in range(k)]
                for r, p in enumerate(pivots):
                    rows[r][p] = 1
                for (r, c), x in zip(free, values):
                    rows[r][c] = x
                basis = tuple(tuple(r) for r in rows)
                out.append(Subspace(k, basis, frozenset(span_codes(basis, n, q))))
    return tuple(out)


def span_codes(basis, n: int, q: int) -> list[int]:
    codes = []
    for coeffs in itertools.product(range(q), repeat=len(basis)):
        v = [0] * n
        for c, b in zip(coeffs, basis):
            if c:
                for k in range(n):
                    v[k] = (v[k] + c * b[k]) % q
        codes.append(encode(v, q))
    return codes


def mat_vec(M, v, q: int) -> tuple[int, ...]:
    return tuple(sum(a * b for a, b in zip(row, v)) % q for row in M)


def rank(rows, q: int) -> int:
    """Rank of a matrix (list of rows) over F_q."""
    m = [list(r) for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] % q), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], q - 2, q)
        m[r] = [(x * inv) % q for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] % q:
                f = m[i][c]
                m[i] = [(x - f * y) % q for x, y in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return r
