# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled HN census backend; same tables and output as ``census_py``."""
from libc.stdint cimport int64_t
from libc.stdlib cimport malloc, free

import numpy as np


cdef inline bint _arrows_ok(int v, int64_t *choice, int64_t *ck_off, int64_t *ck_list,
                            int64_t *src, int64_t *tgt, int64_t *sub_dim,
                            int64_t *sub_basis, int maxdim, unsigned char *member,
                            int64_t qmax, int64_t *img):
    cdef int64_t i, a, gs, gt, k, b
    for i in range(ck_off[v], ck_off[v + 1]):
        a = ck_list[i]
        gs = choice[src[a]]
        gt = choice[tgt[a]]
        for k in range(sub_dim[gs]):
            b = sub_basis[gs * maxdim + k]
            if not member[gt * qmax + img[a * qmax + b]]:
                return False
    return True


def census(t, int64_t start, int64_t stop):
    cdef int q = t.q, nv = t.nv
    cdef int64_t qmax = t.qmax
    cdef int na = len(t.src)
    cdef int n_entries = t.n_entries
    cdef int64_t base = t.type_base
    cdef int maxdim = t.sub_basis.shape[1]
    cdef int n_subsp = t.sub_dim.shape[0]

    cdef int64_t[::1] dims = np.ascontiguousarray(t.dims, dtype=np.int64)
    cdef int64_t[::1] theta = np.ascontiguousarray(t.theta, dtype=np.int64)
    cdef int64_t[::1] src = np.ascontiguousarray(t.src, dtype=np.int64)
    cdef int64_t[::1] tgt = np.ascontiguousarray(t.tgt, dtype=np.int64)
    cdef int64_t[::1] eoff = np.ascontiguousarray(t.eoff, dtype=np.int64)
    cdef int64_t[::1] addt = np.ascontiguousarray(t.addt, dtype=np.int64)
    cdef int64_t[::1] mult = np.ascontiguousarray(t.mult, dtype=np.int64)
    cdef int64_t[::1] lowpos = np.ascontiguousarray(t.lowpos, dtype=np.int64)
    cdef int64_t[::1] lowdig = np.ascontiguousarray(t.lowdig, dtype=np.int64)
    cdef int64_t[::1] prev = np.ascontiguousarray(t.prev, dtype=np.int64)
    cdef int64_t[::1] off = np.ascontiguousarray(t.sub_off, dtype=np.int64)
    cdef int64_t[::1] sub_dim = np.ascontiguousarray(t.sub_dim, dtype=np.int64)
    cdef int64_t[::1] sub_basis = np.ascontiguousarray(t.sub_basis, dtype=np.int64).reshape(-1)
    cdef unsigned char[::1] member = np.ascontiguousarray(t.member, dtype=np.uint8).reshape(-1)
    cdef unsigned char[::1] contain = np.ascontiguousarray(t.contain, dtype=np.uint8).reshape(-1)
    cdef int64_t[::1] radix = np.ascontiguousarray(t.radix, dtype=np.int64)

    # arrows checked once both endpoints are assigned
    pairs = list(zip(t.src.tolist(), t.tgt.tolist()))
    ck = [[n for n, st in enumerate(pairs) if max(st) == u] for u in range(nv)]
    cdef int64_t[::1] ck_off = np.cumsum([0] + [len(row) for row in ck], dtype=np.int64)
    cdef int64_t[::1] ck_list = np.array([n for row in ck for n in row] + [0], dtype=np.int64)

    cdef int64_t max_subs = 1
    cdef int v
    for v in range(nv):
        max_subs *= off[v + 1] - off[v]

    cdef int64_t total_dim = 0
    for v in range(nv):
        total_dim += dims[v]

    cdef int64_t *digits = <int64_t *> malloc(max(n_entries, 1) * sizeof(int64_t))
    cdef int64_t *img = <int64_t *> malloc(max(na, 1) * qmax * sizeof(int64_t))
    cdef int64_t *cols = <int64_t *> malloc(max(maxdim, 1) * sizeof(int64_t))
    cdef int64_t *choice = <int64_t *> malloc(max(nv, 1) * sizeof(int64_t))
    cdef int64_t *subs = <int64_t *> malloc(max_subs * max(nv, 1) * sizeof(int64_t))
    cdef int64_t *s_dim = <int64_t *> malloc(max_subs * sizeof(int64_t))
    cdef int64_t *s_th = <int64_t *> malloc(max_subs * sizeof(int64_t))
    cdef int64_t *s_pc = <int64_t *> malloc(max_subs * sizeof(int64_t))
    if not (digits and img and cols and choice and subs and s_dim and s_th and s_pc):
        raise MemoryError()

    cdef int64_t p, x, code, k, w, nsub, i, j, a, c, r, ds, dt, nsrc
    cdef int64_t x_i, best, be, bt, e, te, th_all
    cdef bint ok, semistable_stable
    counts = {}
    cdef int64_t stable = 0

    try:
        x = start
        for i in range(n_entries):
            digits[i] = x % q
            x //= q
        for p in range(start, stop):
            # image table of every arrow on every source vector code
            for a in range(na):
                ds = dims[src[a]]
                dt = dims[tgt[a]]
                for c in range(ds):
                    code = 0
                    w = 1
                    for r in range(dt):
                        code += digits[eoff[a] + c * dt + r] * w
                        w *= q
                    cols[c] = code
                nsrc = 1
                for c in range(ds):
                    nsrc *= q
                img[a * qmax] = 0
                for x in range(1, nsrc):
                    img[a * qmax + x] = addt[img[a * qmax + prev[x]] * qmax
                                             + mult[lowdig[x] * qmax + cols[lowpos[x]]]]

            # all subrepresentations
            nsub = 0
            v = 0
            choice[0] = off[0] - 1
            while v >= 0:
                choice[v] += 1
                if choice[v] >= off[v + 1]:
                    v -= 1
                    continue
                if not _arrows_ok(v, choice, &ck_off[0], &ck_list[0], &src[0], &tgt[0],
                                  &sub_dim[0], &sub_basis[0], maxdim, &member[0], qmax, img):
                    continue
                if v == nv - 1:
                    e = 0
                    te = 0
                    code = 0
                    for j in range(nv):
                        subs[nsub * nv + j] = choice[j]
                        k = sub_dim[choice[j]]
                        e += k
                        te += theta[j] * k
                        code += radix[j] * k
                    s_dim[nsub] = e
                    s_th[nsub] = te
                    s_pc[nsub] = code
                    nsub += 1
                    continue
                v += 1
                choice[v] = off[v] - 1

            # HN type by repeated scss of quotients
            x_i = 0
            code = 0
            w = 1
            while s_dim[x_i] < total_dim:
                best = -1
                be = 0
                bt = 0
                for i in range(nsub):
                    if s_dim[i] <= s_dim[x_i]:
                        continue
                    ok = True
                    for j in range(nv):
                        if not contain[subs[i * nv + j] * n_subsp + subs[x_i * nv + j]]:
                            ok = False
                            break
                    if not ok:
                        continue
                    e = s_dim[i] - s_dim[x_i]
                    te = s_th[i] - s_th[x_i]
                    if best < 0 or te * be > bt * e or (te * be == bt * e and e > be):
                        best = i
                        be = e
                        bt = te
                code += (s_pc[best] - s_pc[x_i]) * w
                w *= base
                x_i = best
            counts[code] = counts.get(code, 0) + 1
            if w == base:
                th_all = s_th[nsub - 1]
                semistable_stable = True
                for i in range(nsub):
                    if 0 < s_dim[i] < total_dim and s_th[i] * total_dim == th_all * s_dim[i]:
                        semistable_stable = False
                        break
                if semistable_stable:
                    stable += 1

            # next point
            for i in range(n_entries):
                digits[i] += 1
                if digits[i] < q:
                    break
                digits[i] = 0
    finally:
        free(digits); free(img); free(cols); free(choice)
        free(subs); free(s_dim); free(s_th); free(s_pc)
    return counts, stable
