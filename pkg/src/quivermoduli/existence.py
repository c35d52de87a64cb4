"""Non-emptiness criteria for moduli of (semi)stable and simple representations."""
from __future__ import annotations

from functools import lru_cache
from typing import Sequence

from .quiver import DimVector, Quiver, QuiverError, box, leq, slope, sub, support, theta_value
from .roots import support_connected


@lru_cache(maxsize=None)
def _generic(Q: Quiver, e: DimVector, d: DimVector) -> bool:
    if not any(e) or e == d:
        return True
    rest = sub(d, e)
    # every e' <= e is checked, in increasing total dimension
    for e2 in sorted(box(e), key=sum):
        if _generic(Q, e2, e) and Q.euler_form(e2, rest) < 0:
            return False
    return True


def generic_subrep(Q: Quiver, e: Sequence[int], d: Sequence[int]) -> bool:
    """Whether a general representation of dimension d has a subrepresentation of dimension e."""
    e, d = Q.check(e), Q.check(d)
    if min(e) < 0 or not leq(e, d):
        raise QuiverError(f"need 0 <= e <= d, got e={e}, d={d}")
    return _generic(Q, e, d)


def _generic_subs(Q: Quiver, d: DimVector):
    return [e for e in box(d) if any(e) and _generic(Q, e, d)]


def _schofield_sst(Q, theta, d) -> bool:
    n, t = sum(d), theta_value(theta, d)
    return all(theta_value(theta, e) * n <= t * sum(e) for e in _generic_subs(Q, d))


@lru_cache(maxsize=None)
def _hn_sst(Q: Quiver, theta: tuple, d: DimVector) -> bool:
    # d is semistable-nonempty iff no decomposition d^1 + ... + d^s (s >= 2) into
    # sst-nonempty parts of strictly decreasing slope, pairwise <d^k, d^l> = 0 for k < l
    parts = [e for e in box(d) if any(e) and e != d]

    def search(rest: DimVector, prev_slope, chosen: list) -> bool:
        if not any(rest):
            return len(chosen) >= 2
        for e in parts:
            if not leq(e, rest):
                continue
            s = slope(theta, e)
            if prev_slope is not None and s >= prev_slope:
                continue
            if any(Q.euler_form(c, e) != 0 for c in chosen):
                continue
            if not _hn_sst(Q, theta, e):
                continue
            chosen.append(e)
            found = search(sub(rest, e), s, chosen)
            chosen.pop()
            if found:
                return True
        return False

    return not search(d, None, [])


def sst_nonempty(Q: Quiver, theta: Sequence[int], d: Sequence[int], method: str = "schofield") -> bool:
    d, theta = Q.check(d), Q.check(theta, "stability")
    if not any(d):
        raise QuiverError("d must be non-zero")
    if method == "schofield":
        return _schofield_sst(Q, theta, d)
    if method == "hn":
        return _hn_sst(Q, theta, d)
    raise ValueError(f"unknown method {method!r}")


def st_nonempty(Q: Quiver, theta: Sequence[int], d: Sequence[int]) -> bool:
    d, theta = Q.check(d), Q.check(theta, "stability")
    if not any(d):
        raise QuiverError("d must be non-zero")
    n, t = sum(d), theta_value(theta, d)
    return all(theta_value(theta, e) * n < t * sum(e) for e in _generic_subs(Q, d) if e != d)


def is_cyclic_support(Q: Quiver, d: Sequence[int]) -> bool:
    """supp(d) induces a single oriented cycle through each support vertex once."""
    supp = support(d)
    if not supp:
        return False
    sset = set(supp)
    inner = [(s, t) for s, t in Q.arrow_pairs if s in sset and t in sset]
    if len(inner) != len(supp):
        return False
    out = {}
    for s, t in inner:
        if s in out:
            return False
        out[s] = t
    # one orbit covering the whole support
    i, seen = supp[0], set()
    while i not in seen:
        seen.add(i)
        i = out.get(i)
        if i is None:
            return False
    return seen == sset and i == supp[0]


def simple_nonempty(Q: Quiver, d: Sequence[int]) -> bool:
    d = Q.check(d)
    if not any(d):
        raise QuiverError("d must be non-zero")
    if sum(d) == 1:
        return True
    if not support_connected(Q, d):
        return False
    if is_cyclic_support(Q, d):
        return all(d[i] == 1 for i in support(d))
    n = Q.n
    for i in support(d):
        ei = tuple(1 if k == i else 0 for k in range(n))
        if Q.euler_form(d, ei) > 0 or Q.euler_form(ei, d) > 0:
            return False
    return True


def al_quiver(Q: Quiver, vectors: Sequence[Sequence[int]]) -> Quiver:
    """Quiver on the parts with delta_kl - <d^k, d^l> arrows from k to l."""
    names = tuple(f"p{k}" for k in range(len(vectors)))
    arrows = []
    for k, a in enumerate(vectors):
        for l, b in enumerate(vectors):
            count = (1 if k == l else 0) - Q.euler_form(a, b)
            if count < 0:
                raise QuiverError(f"negative arrow count between parts {k} and {l}")
            arrows.extend([(names[k], names[l])] * count)
    return Quiver(names, tuple(arrows))


def st_nonempty_al(Q: Quiver, theta: Sequence[int], parts: Sequence[tuple[int, Sequence[int]]]) -> bool:
    """Stable non-emptiness of sum m_k d^k, given stable-nonempty parts d^k of one slope."""
    theta = Q.check(theta, "stability")
    if not parts:
        raise QuiverError("no parts given")
    mults = [int(m) for m, _ in parts]
    vectors = [Q.check(v) for _, v in parts]
    if any(m <= 0 for m in mults):
        raise QuiverError("multiplicities must be positive")
    total = tuple(sum(m * v[i] for m, v in zip(mults, vectors)) for i in range(Q.n))
    mu = slope(theta, total)
    for v in vectors:
        if slope(theta, v) != mu:
            raise QuiverError(f"part {v} does not have slope {mu}")
        if not st_nonempty(Q, theta, v):
            raise QuiverError(f"part {v} has no stable representations")
    return simple_nonempty(al_quiver(Q, vectors), tuple(mults))
