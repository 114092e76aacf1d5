# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration kernels.

Mirrors ``_kernels_py`` exactly: same search order, same exact-integer
comparisons (128-bit products), same lexicographic tie-break, same return
values.  Masks fit in 64 bits; callers cap subset searches well below
that.
"""

from libc.stdlib cimport free, malloc

cdef extern from *:
    ctypedef long long int128 "__int128"

ctypedef unsigned long long u64
ctypedef long long i64


cdef inline int _ctz(u64 x) nogil:
    cdef int c = 0
    while not (x & 1):
        x >>= 1
        c += 1
    return c


cdef inline bint _mask_lex_less(u64 a, u64 b) nogil:
    cdef u64 la, lb
    while a and b:
        la = a & (~a + 1)
        lb = b & (~b + 1)
        if la != lb:
            return la < lb
        a ^= la
        b ^= lb
    return a == 0 and b != 0


cdef struct CSR:
    int *ptr
    int *nbr
    i64 *wgt


cdef CSR _build_adj(int n, int m, int[::1] eu, int[::1] ev, i64[::1] ew) nogil:
    cdef CSR adj
    cdef int i, u, v
    adj.ptr = <int *> malloc((n + 1) * sizeof(int))
    for i in range(n + 1):
        adj.ptr[i] = 0
    for i in range(m):
        if eu[i] != ev[i]:
            adj.ptr[eu[i] + 1] += 1
            adj.ptr[ev[i] + 1] += 1
    for i in range(n):
        adj.ptr[i + 1] += adj.ptr[i]
    adj.nbr = <int *> malloc(adj.ptr[n] * sizeof(int))
    adj.wgt = <i64 *> malloc(adj.ptr[n] * sizeof(i64))
    cdef int *fill = <int *> malloc(n * sizeof(int))
    for i in range(n):
        fill[i] = adj.ptr[i]
    for i in range(m):
        u = eu[i]
        v = ev[i]
        if u == v:
            continue
        adj.nbr[fill[u]] = v
        adj.wgt[fill[u]] = ew[i]
        fill[u] += 1
        adj.nbr[fill[v]] = u
        adj.wgt[fill[v]] = ew[i]
        fill[v] += 1
    free(fill)
    return adj


cdef void _free_adj(CSR adj) nogil:
    free(adj.ptr)
    free(adj.nbr)
    free(adj.wgt)


def min_ratio_cut(int n, i64[::1] vol, int[::1] eu, int[::1] ev, i64[::1] ew):
    """See _kernels_py.min_ratio_cut."""
    cdef int m = eu.shape[0]
    cdef CSR adj = _build_adj(n, m, eu, ev, ew)
    cdef i64 total = 0, cur_vol = 0, cur_cut = 0, bn = -1, bd = -1
    cdef u64 mask = 0, bmask = 0, k, bit
    cdef int b, j, u
    cdef bint entering, better
    cdef i64 w
    with nogil:
        for b in range(n):
            total += vol[b]
        for k in range(1, (<u64> 1) << n):
            b = _ctz(k)
            bit = (<u64> 1) << b
            entering = not (mask & bit)
            mask ^= bit
            if entering:
                cur_vol += vol[b]
            else:
                cur_vol -= vol[b]
            for j in range(adj.ptr[b], adj.ptr[b + 1]):
                u = adj.nbr[j]
                w = adj.wgt[j]
                if entering:
                    cur_cut += -w if (mask >> u) & 1 else w
                else:
                    cur_cut += w if (mask >> u) & 1 else -w
            if cur_vol > 0 and 2 * cur_vol <= total:
                better = False
                if bd < 0:
                    better = True
                elif <int128> cur_cut * bd < <int128> bn * cur_vol:
                    better = True
                elif <int128> cur_cut * bd == <int128> bn * cur_vol and _mask_lex_less(mask, bmask):
                    better = True
                if better:
                    bn = cur_cut
                    bd = cur_vol
                    bmask = mask
        _free_adj(adj)
    return bn, bd, int(bmask)


def max_skeleton_surplus(int n, i64[::1] vdeg, int[::1] eu, int[::1] ev,
                         i64[::1] ew, i64 dv, i64 de):
    """See _kernels_py.max_skeleton_surplus."""
    cdef int m = eu.shape[0]
    cdef CSR adj = _build_adj(n, m, eu, ev, ew)
    cdef int128 dv2 = <int128> dv * dv
    cdef int128 a_cand, a_best = 0
    cdef i64 s = 0, e = 0, be = -1, bs = -1
    cdef u64 mask = 0, bmask = 0, k, bit
    cdef int b, j, delta
    cdef bint entering, better
    with nogil:
        for k in range(1, (<u64> 1) << n):
            b = _ctz(k)
            bit = (<u64> 1) << b
            entering = not (mask & bit)
            mask ^= bit
            delta = 1 if entering else -1
            s += delta * vdeg[b]
            for j in range(adj.ptr[b], adj.ptr[b + 1]):
                if (mask >> adj.nbr[j]) & 1:
                    e += delta * adj.wgt[j]
            if s > 0:
                a_cand = <int128> e * dv2 - <int128> s * s * de
                better = False
                if bs < 0:
                    better = True
                elif a_cand * bs > a_best * s:
                    better = True
                elif a_cand * bs == a_best * s and _mask_lex_less(mask, bmask):
                    better = True
                if better:
                    be = e
                    bs = s
                    bmask = mask
                    a_best = a_cand
        _free_adj(adj)
    return be, bs, int(bmask)


def min_colorful_ratio(int m, i64[::1] fdeg, i64[::1] cdeg, int[::1] cptr,
                       int[::1] cidx, int nsub, i64 dtot):
    """See _kernels_py.min_colorful_ratio."""
    cdef int ncont = cdeg.shape[0]
    cdef int *cnt = <int *> malloc(ncont * sizeof(int))
    cdef i64 wsum = 0, psis = 0, bn = -1, bd = -1
    cdef u64 mask = 0, bmask = 0, k, bit
    cdef int b, j, c, old, new, delta
    cdef bint entering, was, now, better
    with nogil:
        for j in range(ncont):
            cnt[j] = 0
        for k in range(1, (<u64> 1) << m):
            b = _ctz(k)
            bit = (<u64> 1) << b
            entering = not (mask & bit)
            mask ^= bit
            delta = 1 if entering else -1
            wsum += delta * fdeg[b]
            for j in range(cptr[b], cptr[b + 1]):
                c = cidx[j]
                old = cnt[c]
                new = old + delta
                cnt[c] = new
                was = 0 < old < nsub
                now = 0 < new < nsub
                if was != now:
                    psis += cdeg[c] if now else -cdeg[c]
            if wsum > 0 and 2 * wsum <= dtot:
                better = False
                if bd < 0:
                    better = True
                elif <int128> psis * bd < <int128> bn * wsum:
                    better = True
                elif <int128> psis * bd == <int128> bn * wsum and _mask_lex_less(mask, bmask):
                    better = True
                if better:
                    bn = psis
                    bd = wsum
                    bmask = mask
        free(cnt)
    return bn, bd, int(bmask)


cdef struct BipState:
    i64 bn
    i64 bd
    u64 bmask_s
    u64 bmask_s1


cdef void _bip_dfs(int k, int n, i64 num, i64 vol_s, u64 mask_s, u64 mask_s1,
                   CSR *adj, i64 *vol, i64 *rem, char *state, BipState *best) nogil:
    cdef i64 to_out = 0, to_s1 = 0, to_s2 = 0
    cdef int j, u
    cdef bint better
    if best.bd > 0 and <int128> num * best.bd > <int128> best.bn * (vol_s + rem[k]):
        return
    if k == n:
        if vol_s > 0:
            better = False
            if best.bd < 0:
                better = True
            elif <int128> num * best.bd < <int128> best.bn * vol_s:
                better = True
            elif <int128> num * best.bd == <int128> best.bn * vol_s:
                if _mask_lex_less(mask_s, best.bmask_s):
                    better = True
                elif mask_s == best.bmask_s and _mask_lex_less(mask_s1, best.bmask_s1):
                    better = True
            if better:
                best.bn = num
                best.bd = vol_s
                best.bmask_s = mask_s
                best.bmask_s1 = mask_s1
        return
    for j in range(adj.ptr[k], adj.ptr[k + 1]):
        u = adj.nbr[j]
        if u < k:
            if state[u] == 0:
                to_out += adj.wgt[j]
            elif state[u] == 1:
                to_s1 += adj.wgt[j]
            else:
                to_s2 += adj.wgt[j]
    cdef u64 bit = (<u64> 1) << k
    state[k] = 0
    _bip_dfs(k + 1, n, num + to_s1 + to_s2, vol_s, mask_s, mask_s1, adj, vol, rem, state, best)
    state[k] = 1
    _bip_dfs(k + 1, n, num + to_out + 2 * to_s1, vol_s + vol[k],
             mask_s | bit, mask_s1 | bit, adj, vol, rem, state, best)
    if mask_s:
        state[k] = 2
        _bip_dfs(k + 1, n, num + to_out + 2 * to_s2, vol_s + vol[k],
                 mask_s | bit, mask_s1, adj, vol, rem, state, best)
    state[k] = 0


def min_bipartiteness(int n, i64[::1] vol, int[::1] eu, int[::1] ev, i64[::1] ew):
    """See _kernels_py.min_bipartiteness."""
    cdef int m = eu.shape[0]
    cdef CSR adj = _build_adj(n, m, eu, ev, ew)
    cdef i64 *volc = <i64 *> malloc(n * sizeof(i64))
    cdef i64 *rem = <i64 *> malloc((n + 1) * sizeof(i64))
    cdef char *state = <char *> malloc(n * sizeof(char))
    cdef BipState best
    cdef int k
    best.bn = -1
    best.bd = -1
    best.bmask_s = 0
    best.bmask_s1 = 0
    with nogil:
        for k in range(n):
            volc[k] = vol[k]
            state[k] = 0
        rem[n] = 0
        for k in range(n - 1, -1, -1):
            rem[k] = rem[k + 1] + volc[k]
        _bip_dfs(0, n, 0, 0, 0, 0, &adj, volc, rem, state, &best)
        free(volc)
        free(rem)
        free(state)
        _free_adj(adj)
    return best.bn, best.bd, int(best.bmask_s), int(best.bmask_s1)
