"""Brute-force ground truth over F_q for q in {2, 3, 5}.

Representations are enumerated point by point; subrepresentations come from
row-echelon subspace tuples.  The point census (HN type of every point of R_d)
runs in :mod:`quivermoduli._kernels`, which has a compiled and a pure-Python
backend with identical output.
"""
from __future__ import annotations

import csv
import io
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import prod
from typing import Sequence

from . import _kernels
from .counting import Cycle
from .exactq import IntegralityError
from .fq import check_field, encode, mat_vec, rank, subspaces
from .framed import SizeGuardError
from .hn import betti_coprime, group_order, hn_rational
from .quiver import DimVector, Quiver, QuiverError, box, leq, slope, sub, theta_coprime, theta_value

DEFAULT_BUDGET = 2 ** 22
DEFAULT_MAX_SUBREPS = 200_000

HNType = tuple[DimVector, ...]


@dataclass(frozen=True)
class FqRep:
    """Matrices over F_q; ``matrices[a]`` has d_target rows and d_source columns."""
    quiver: Quiver
    q: int
    d: DimVector
    matrices: tuple[tuple[tuple[int, ...], ...], ...]

    def __post_init__(self):
        check_field(self.q)
        d = self.quiver.check(self.d)
        object.__setattr__(self, "d", d)
        if len(self.matrices) != len(self.quiver.arrows):
            raise QuiverError(f"expected {len(self.quiver.arrows)} matrices, got {len(self.matrices)}")
        mats = []
        for a, ((s, t), m) in enumerate(zip(self.quiver.arrow_pairs, self.matrices)):
            rows = tuple(tuple(int(x) % self.q for x in row) for row in m)
            if len(rows) != d[t] or any(len(r) != d[s] for r in rows):
                raise QuiverError(f"matrix of arrow {a} must be {d[t]}x{d[s]}")
            mats.append(rows)
        object.__setattr__(self, "matrices", tuple(mats))

    @classmethod
    def zero(cls, Q: Quiver, q: int, d: Sequence[int]) -> "FqRep":
        d = Q.check(d)
        return cls(Q, q, d, tuple(((0,) * d[s],) * d[t] for s, t in Q.arrow_pairs))

    @classmethod
    def from_point(cls, Q: Quiver, q: int, d: Sequence[int], p: int) -> "FqRep":
        """Point number p of R_d(F_q), in the digit layout used by the census kernels."""
        d = Q.check(d)
        mats = []
        for s, t in Q.arrow_pairs:
            cols = []
            for _ in range(d[s]):
                col = []
                for _ in range(d[t]):
                    p, r = divmod(p, q)
                    col.append(r)
                cols.append(col)
            mats.append(tuple(tuple(cols[c][r] for c in range(d[s])) for r in range(d[t])))
        return cls(Q, q, d, tuple(mats))

    def dim(self) -> int:
        return sum(self.d)

    def direct_sum(self, other: "FqRep") -> "FqRep":
        if other.quiver != self.quiver or other.q != self.q:
            raise QuiverError("direct sum needs the same quiver and field")
        d = tuple(a + b for a, b in zip(self.d, other.d))
        mats = []
        for (s, t), A, B in zip(self.quiver.arrow_pairs, self.matrices, other.matrices):
            rows = [tuple(r) + (0,) * other.d[s] for r in A]
            rows += [(0,) * self.d[s] + tuple(r) for r in B]
            mats.append(tuple(rows))
        return FqRep(self.quiver, self.q, d, tuple(mats))


def n_entries(Q: Quiver, d: Sequence[int]) -> int:
    return sum(d[s] * d[t] for s, t in Q.arrow_pairs)


def _subreps(M: FqRep, max_subreps: int = DEFAULT_MAX_SUBREPS) -> list[tuple]:
    Q, q, d = M.quiver, M.q, M.d
    choices = [subspaces(x, q) for x in d]
    if prod(len(c) for c in choices) > max_subreps:
        raise SizeGuardError(f"{prod(len(c) for c in choices)} subspace tuples exceed {max_subreps}")
    check_at = [[a for a, (s, t) in enumerate(Q.arrow_pairs) if max(s, t) == v] for v in range(Q.n)]
    out, chosen = [], [None] * Q.n

    def ok(a: int) -> bool:
        s, t = Q.arrow_pairs[a]
        target = chosen[t].members
        return all(encode(mat_vec(M.matrices[a], b, q), q) in target for b in chosen[s].basis)

    def rec(v: int):
        if v == Q.n:
            out.append(tuple(chosen))
            return
        for U in choices[v]:
            chosen[v] = U
            if all(ok(a) for a in check_at[v]):
                rec(v + 1)

    rec(0)
    return out


def subrep_dimvectors(M: FqRep, max_subreps: int = DEFAULT_MAX_SUBREPS) -> dict[DimVector, list[tuple]]:
    """Dimension vectors of all subrepresentations, each with its witnessing subspace tuples."""
    out: dict[DimVector, list[tuple]] = {}
    for U in _subreps(M, max_subreps):
        out.setdefault(tuple(u.dim for u in U), []).append(U)
    return out


def stability_status(M: FqRep, theta: Sequence[int]) -> str:
    theta = M.quiver.check(theta, "stability")
    d, n = M.d, M.dim()
    if n == 0:
        raise QuiverError("the zero representation has no slope")
    t = theta_value(theta, d)
    strict = False
    for e in subrep_dimvectors(M):
        if not any(e) or e == d:
            continue
        lhs, rhs = theta_value(theta, e) * n, t * sum(e)
        if lhs > rhs:
            return "unstable"
        strict = strict or lhs == rhs
    return "strictly semistable" if strict else "stable"


@dataclass(frozen=True)
class HNFiltration:
    chain: tuple[DimVector, ...]     # 0 = D_0 < D_1 < ... < D_s = d
    subreps: tuple[tuple, ...] = field(default=(), compare=False)

    @property
    def hn_type(self) -> HNType:
        return tuple(sub(b, a) for a, b in zip(self.chain, self.chain[1:]))


def hn_filtration(M: FqRep, theta: Sequence[int], order: random.Random | None = None) -> HNFiltration:
    """HN filtration by repeated scss of quotients.

    ``order`` shuffles the candidate list first; the result must not depend on it.
    """
    theta = M.quiver.check(theta, "stability")
    subs = _subreps(M)
    if order is not None:
        order.shuffle(subs)
    nv = M.quiver.n
    info = [(U, tuple(u.dim for u in U)) for U in subs]
    X, xd = next((U, e) for U, e in info if not any(e))
    chain, chosen = [xd], [X]
    while xd != M.d:
        best = None
        for U, e in info:
            if e == xd or not all(X[v] <= U[v] for v in range(nv)):
                continue
            f = sub(e, xd)
            key = (slope(theta, f), sum(f))
            if best is None or key > best[0]:
                best = (key, U, e)
        _, X, xd = best
        chain.append(xd)
        chosen.append(X)
    return HNFiltration(tuple(chain), tuple(chosen))


def hom_ext_dims(M: FqRep, N: FqRep) -> tuple[int, int]:
    """Kernel and cokernel dimensions of (f_i) -> (N_a f_s - f_t M_a)."""
    if M.quiver != N.quiver or M.q != N.q:
        raise QuiverError("Hom needs the same quiver and field")
    Q, q, d, e = M.quiver, M.q, M.d, N.d
    # unknown (v, r, c): entry (r, c) of f_v, an e_v x d_v matrix
    unknowns = {}
    for v in range(Q.n):
        for r in range(e[v]):
            for c in range(d[v]):
                unknowns[(v, r, c)] = len(unknowns)
    rows = []
    for (s, t), Ma, Na in zip(Q.arrow_pairs, M.matrices, N.matrices):
        # entry (r, c) of N_a f_s - f_t M_a, an e_t x d_s matrix
        for r in range(e[t]):
            for c in range(d[s]):
                row = [0] * len(unknowns)
                for k in range(e[s]):
                    row[unknowns[(s, k, c)]] += Na[r][k]
                for k in range(d[t]):
                    row[unknowns[(t, r, k)]] -= Ma[k][c]
                rows.append([x % q for x in row])
    rk = rank(rows, q) if rows and unknowns else 0
    return len(unknowns) - rk, len(rows) - rk


def cycle_rep(Q: Quiver, cycle: Cycle, q: int) -> FqRep:
    """M(w): basis b_k at the start of the k-th arrow, the k-th arrow sends b_k to b_{k+1}."""
    pairs = Q.arrow_pairs
    L = len(cycle.arrows)
    if L == 0:
        raise QuiverError("empty cycle")
    for k, a in enumerate(cycle.arrows):
        if pairs[a][1] != pairs[cycle.arrows[(k + 1) % L]][0]:
            raise QuiverError(f"arrows {cycle.arrows} do not form a cycle")
    where = [pairs[a][0] for a in cycle.arrows]
    local = []
    seen = [0] * Q.n
    for v in where:
        local.append(seen[v])
        seen[v] += 1
    d = tuple(seen)
    mats = [[[0] * d[s] for _ in range(d[t])] for s, t in pairs]
    for k, a in enumerate(cycle.arrows):
        k2 = (k + 1) % L
        mats[a][local[k2]][local[k]] = 1
    return FqRep(Q, q, d, tuple(tuple(tuple(r) for r in m) for m in mats))


@dataclass
class PointCounts:
    q: int
    d: DimVector
    theta: tuple[int, ...]
    total: int
    sst: int
    st: int
    group: int
    census: dict[HNType, int]

    def to_json(self) -> dict:
        return {"q": self.q, "d": list(self.d), "theta": list(self.theta), "R": self.total,
                "R_sst": self.sst, "R_st": self.st, "G": self.group,
                "census": [{"type": [list(p) for p in t], "count": c}
                           for t, c in sorted(self.census.items())]}


def census_csv(pc: PointCounts) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["hn_type", "count"])
    for t, c in sorted(pc.census.items()):
        w.writerow([";".join("(" + ",".join(map(str, p)) + ")" for p in t), c])
    return buf.getvalue()


def point_counts(Q: Quiver, theta: Sequence[int], d: Sequence[int], q: int,
                 budget: int = DEFAULT_BUDGET, backend: str | None = None,
                 workers: int = 1, chunks: int | None = None) -> PointCounts:
    """Full enumeration of R_d(F_q) with an HN census.

    With ``workers > 1`` disjoint point ranges run in separate processes; the
    reduction is a plain sum, so totals do not depend on scheduling.
    """
    check_field(q)
    d, theta = Q.check(d), Q.check(theta, "stability")
    if not any(d) or min(d) < 0:
        raise QuiverError(f"need a non-zero dimension vector, got {d}")
    points = q ** n_entries(Q, d)
    if points > budget:
        raise SizeGuardError(f"{points} points exceed the budget {budget}")
    tables = _kernels.prepare(q, d, theta, Q.arrow_pairs)
    n_chunks = chunks or max(1, workers)
    bounds = [points * k // n_chunks for k in range(n_chunks + 1)]
    jobs = [(tables, a, b, backend) for a, b in zip(bounds, bounds[1:]) if a < b]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_job, jobs))
    else:
        results = [_run_job(j) for j in jobs]
    counts: dict[int, int] = {}
    stable = 0
    for part, st in results:
        stable += st
        for code, c in part.items():
            counts[code] = counts.get(code, 0) + c
    census = {_kernels.decode_type(code, tables): c for code, c in counts.items()}
    return PointCounts(q, d, theta, points, census.get((d,), 0), stable,
                       group_order(d, q), census)


def _run_job(job):
    tables, a, b, backend = job
    return _kernels.run_census(tables, a, b, backend)


def hn_types(theta: Sequence[int], d: DimVector) -> list[HNType]:
    """All (d^1, ..., d^s) of non-zero parts summing to d with strictly decreasing slopes."""
    parts = [e for e in box(d) if any(e)]
    out = []

    def rec(rest, prev, acc):
        if not any(rest):
            out.append(tuple(acc))
            return
        for e in parts:
            if leq(e, rest):
                s = slope(theta, e)
                if prev is None or s < prev:
                    acc.append(e)
                    rec(sub(rest, e), s, acc)
                    acc.pop()

    rec(d, None, [])
    return sorted(out)


def census_expected(Q: Quiver, theta: tuple, hn_type: HNType, q: int, sst_ratio) -> Fraction:
    """q^(-sum_{k<l} <d^l,d^k>) prod_k (|R^sst_{d^k}|/|G_{d^k}|) |G_d| at the integer q."""
    expo = -sum(Q.euler_form(hn_type[l], hn_type[k])
                for k in range(len(hn_type)) for l in range(k + 1, len(hn_type)))
    d = tuple(map(sum, zip(*hn_type)))
    value = Fraction(q) ** expo * group_order(d, q)
    for part in hn_type:
        value *= sst_ratio(part)
    return value


def verify(Q: Quiver, theta: Sequence[int], d: Sequence[int], q: int,
           budget: int = DEFAULT_BUDGET, backend: str | None = None, workers: int = 1) -> dict:
    """Certify the counting formulas against brute force; JSON-ready pass/fail report."""
    d, theta = Q.check(d), Q.check(theta, "stability")
    pc = point_counts(Q, theta, d, q, budget, backend, workers)

    @lru_cache(maxsize=None)
    def sst_ratio(e: DimVector) -> Fraction:
        if e == d:
            return Fraction(pc.sst, pc.group)
        sub_pc = point_counts(Q, theta, e, q, budget, backend)
        return Fraction(sub_pc.sst, sub_pc.group)

    checks = []

    def record(name, expected, got):
        checks.append({"name": name, "pass": expected == got,
                       "expected": str(expected), "got": str(got)})

    record("census sums to |R|", pc.total, sum(pc.census.values()))
    record("P_d(q) * |G| = |R^sst|", hn_rational(Q, theta, d)(Fraction(q)) * pc.group, Fraction(pc.sst))
    for t in hn_types(theta, d):
        record(f"census {_fmt_type(t)}", census_expected(Q, theta, t, q, sst_ratio), Fraction(pc.census.get(t, 0)))
    if theta_coprime(Q, theta, d):
        record("|R^st| = |R^sst|", pc.sst, pc.st)
        try:
            b = betti_coprime(Q, theta, d)(Fraction(q))
        except IntegralityError as exc:
            checks.append({"name": "(q-1)|R^sst|/|G| = betti(q)", "pass": False,
                           "expected": "integer polynomial", "got": str(exc)})
        else:
            record("(q-1)|R^sst|/|G| = betti(q)", b, Fraction((q - 1) * pc.sst, pc.group))
    return {"quiver": Q.to_json(), "d": list(d), "theta": list(theta), "q": q,
            "counts": pc.to_json(), "checks": checks,
            "pass": all(c["pass"] for c in checks)}


def _fmt_type(t: HNType) -> str:
    return " > ".join("(" + ",".join(map(str, p)) + ")" for p in t)
