"""Pure-Python HN census backend."""
from __future__ import annotations


def census(t, start: int, stop: int):
    q, nv, qmax = t.q, t.nv, t.qmax
    dims = [int(x) for x in t.dims]
    theta = [int(x) for x in t.theta]
    src, tgt = [int(x) for x in t.src], [int(x) for x in t.tgt]
    eoff = [int(x) for x in t.eoff]
    na = len(src)
    addt, mult = t.addt.tolist(), t.mult.tolist()
    lowpos, lowdig, prev = t.lowpos.tolist(), t.lowdig.tolist(), t.prev.tolist()
    off = [int(x) for x in t.sub_off]
    sub_dim = t.sub_dim.tolist()
    bases = [[int(b) for b in row[:d]] for row, d in zip(t.sub_basis.tolist(), sub_dim)]
    member = [set(i for i, x in enumerate(row) if x) for row in t.member.tolist()]
    contain = t.contain.tolist()
    radix = [int(x) for x in t.radix]
    base = t.type_base
    n_entries = t.n_entries
    total_dim = sum(dims)
    # arrows to check once both endpoints are assigned
    check_at = [[a for a in range(na) if max(src[a], tgt[a]) == v] for v in range(nv)]
    n_src = [q ** dims[src[a]] for a in range(na)]

    counts: dict[int, int] = {}
    stable = 0
    for p in range(start, stop):
        digits = []
        x = p
        for _ in range(n_entries):
            x, r = divmod(x, q)
            digits.append(r)
        img = []
        for a in range(na):
            ds, dt = dims[src[a]], dims[tgt[a]]
            cols = []
            for c in range(ds):
                code, w = 0, 1
                for r in range(dt):
                    code += digits[eoff[a] + c * dt + r] * w
                    w *= q
                cols.append(code)
            table = [0] * n_src[a]
            for v in range(1, n_src[a]):
                table[v] = addt[table[prev[v]] * qmax + mult[lowdig[v] * qmax + cols[lowpos[v]]]]
            img.append(table)

        # all subrepresentations as tuples of global subspace indices
        subreps = []
        choice = [0] * nv

        def extend(v):
            if v == nv:
                subreps.append(tuple(choice))
                return
            for g in range(off[v], off[v + 1]):
                choice[v] = g
                ok = True
                for a in check_at[v]:
                    target = member[choice[tgt[a]]]
                    tab = img[a]
                    for b in bases[choice[src[a]]]:
                        if tab[b] not in target:
                            ok = False
                            break
                    if not ok:
                        break
                if ok:
                    extend(v + 1)

        extend(0)
        info = []
        for u in subreps:
            dv = [sub_dim[g] for g in u]
            info.append((u, sum(dv), sum(a * b for a, b in zip(theta, dv)),
                         sum(a * b for a, b in zip(radix, dv))))

        # HN type: repeatedly take the scss of the quotient by the current bottom
        x_u, x_dim, x_th, x_code = info[0]
        code, k = 0, 1
        while x_dim < total_dim:
            best = None
            for u, dim, th, pc in info:
                if dim <= x_dim:
                    continue
                if not all(contain[u[v]][x_u[v]] for v in range(nv)):
                    continue
                e, te = dim - x_dim, th - x_th
                if best is None:
                    best = (u, dim, th, pc, e, te)
                    continue
                be, bt = best[4], best[5]
                if te * be > bt * e or (te * be == bt * e and e > be):
                    best = (u, dim, th, pc, e, te)
            u, dim, th, pc, _, _ = best
            code += (pc - x_code) * k
            k *= base
            x_u, x_dim, x_th, x_code = u, dim, th, pc
        counts[code] = counts.get(code, 0) + 1
        if k == base:
            # semistable; stable unless a proper non-zero subrep has the same slope
            t_all = info[-1][2]
            if not any(0 < dim < total_dim and th * total_dim == t_all * dim
                       for _, dim, th, _ in info):
                stable += 1
    return counts, stable
