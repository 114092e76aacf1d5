"""Pure-Python enumeration kernels (fallback for the compiled extension).

Every kernel walks an exponential search space with incremental updates
and exact integer arithmetic, returning integer value pairs plus a bitmask
witness.  Ties are resolved toward the lexicographically-first witness
(masks ordered as sorted index tuples), so results are independent of
enumeration order and identical to the compiled backend bit for bit.
"""

from __future__ import annotations


def _mask_lex_less(a, b):
    """Tuple-lex order on bitmask subsets: {0} < {0,1} < {0,2} < {1}."""
    while a and b:
        la = a & -a
        lb = b & -b
        if la != lb:
            return la < lb
        a ^= la
        b ^= lb
    return a == 0 and b != 0


def _adjacency(n, eu, ev, ew):
    adj = [[] for _ in range(n)]
    for u, v, w in zip(eu, ev, ew):
        if u == v:
            continue
        adj[u].append((v, w))
        adj[v].append((u, w))
    return adj


def min_ratio_cut(n, vol, eu, ev, ew):
    """Minimize cut(S)/vol(S) over nonempty S with 2*vol(S) <= vol(V).

    Returns (cut, vol, mask); (-1, -1, 0) when no subset satisfies the
    volume cap (cannot happen for graphs with >= 2 positive-degree
    vertices).
    """
    vol = list(vol)
    adj = _adjacency(n, eu, ev, ew)
    total = sum(vol)
    bn = bd = -1
    bmask = 0
    mask = 0
    cur_vol = 0
    cur_cut = 0
    for k in range(1, 1 << n):
        b = (k & -k).bit_length() - 1
        bit = 1 << b
        entering = not (mask & bit)
        mask ^= bit
        if entering:
            cur_vol += vol[b]
            for u, w in adj[b]:
                cur_cut += -w if (mask >> u) & 1 else w
        else:
            cur_vol -= vol[b]
            for u, w in adj[b]:
                cur_cut += w if (mask >> u) & 1 else -w
        if cur_vol > 0 and 2 * cur_vol <= total:
            if (
                bd < 0
                or cur_cut * bd < bn * cur_vol
                or (cur_cut * bd == bn * cur_vol and _mask_lex_less(mask, bmask))
            ):
                bn, bd, bmask = cur_cut, cur_vol, mask
    return bn, bd, bmask


def max_skeleton_surplus(n, vdeg, eu, ev, ew, dv, de):
    """Maximize (e*dv^2 - s^2*de) / (s*dv*de) over nonempty vertex subsets.

    ``s`` is the degree mass of S, ``e`` the degree mass of edges inside
    S; ``dv``/``de`` are the full vertex/edge degree totals.  Returns
    (e, s, mask) of the maximizer.
    """
    vdeg = list(vdeg)
    adj = _adjacency(n, eu, ev, ew)
    dv2 = dv * dv
    be = bs = -1
    bmask = 0
    a_best = 0
    mask = 0
    s = 0
    e = 0
    for k in range(1, 1 << n):
        b = (k & -k).bit_length() - 1
        bit = 1 << b
        entering = not (mask & bit)
        mask ^= bit
        delta = 1 if entering else -1
        s += delta * vdeg[b]
        for u, w in adj[b]:
            if (mask >> u) & 1:
                e += delta * w
        if s > 0:
            a_cand = e * dv2 - s * s * de
            if (
                bs < 0
                or a_cand * bs > a_best * s
                or (a_cand * bs == a_best * s and _mask_lex_less(mask, bmask))
            ):
                be, bs, bmask, a_best = e, s, mask, a_cand
    return be, bs, bmask


def min_colorful_ratio(m, fdeg, cdeg, cptr, cidx, nsub, dtot):
    """Minimize expanding-mass / member-mass over cochains W at one level.

    Faces 0..m-1 carry degrees ``fdeg``; container c (one level up, with
    degree ``cdeg[c]`` and ``nsub`` subfaces) is expanding when the number
    of its subfaces inside W is strictly between 0 and ``nsub``.  Valid W
    satisfy 0 < 2*sum(fdeg over W) <= dtot.  Returns (psi, w, mask).
    """
    fdeg = list(fdeg)
    cdeg = list(cdeg)
    cptr = list(cptr)
    cidx = list(cidx)
    cnt = [0] * len(cdeg)
    bn = bd = -1
    bmask = 0
    mask = 0
    wsum = 0
    psis = 0
    for k in range(1, 1 << m):
        b = (k & -k).bit_length() - 1
        bit = 1 << b
        entering = not (mask & bit)
        mask ^= bit
        delta = 1 if entering else -1
        wsum += delta * fdeg[b]
        for j in range(cptr[b], cptr[b + 1]):
            c = cidx[j]
            old = cnt[c]
            new = old + delta
            cnt[c] = new
            if (0 < old < nsub) != (0 < new < nsub):
                psis += cdeg[c] if 0 < new < nsub else -cdeg[c]
        if wsum > 0 and 2 * wsum <= dtot:
            if (
                bd < 0
                or psis * bd < bn * wsum
                or (psis * bd == bn * wsum and _mask_lex_less(mask, bmask))
            ):
                bn, bd, bmask = psis, wsum, mask
    return bn, bd, bmask


def min_bipartiteness(n, vol, eu, ev, ew):
    """Minimize (cut(S) + 2 E(S1) + 2 E(S2)) / vol(S) over all (S, S1, S2).

    Depth-first search over vertex states {out, S1, S2} with a
    branch-and-bound prune (only strictly-worse subtrees are cut, so tie
    candidates survive for the lexicographic witness rule).  The first
    vertex placed in S always goes to S1, which both halves the search and
    canonicalizes the (S1, S2) swap.  Returns (num, vol, mask_s, mask_s1).
    """
    vol = list(vol)
    adj = _adjacency(n, eu, ev, ew)
    rem = [0] * (n + 1)
    for k in range(n - 1, -1, -1):
        rem[k] = rem[k + 1] + vol[k]
    state = [0] * n
    best = [-1, -1, 0, 0]

    def dfs(k, num, vol_s, mask_s, mask_s1):
        if best[1] > 0 and num * best[1] > best[0] * (vol_s + rem[k]):
            return
        if k == n:
            if vol_s > 0:
                better = (
                    best[1] < 0
                    or num * best[1] < best[0] * vol_s
                    or (
                        num * best[1] == best[0] * vol_s
                        and (
                            _mask_lex_less(mask_s, best[2])
                            or (
                                mask_s == best[2]
                                and _mask_lex_less(mask_s1, best[3])
                            )
                        )
                    )
                )
                if better:
                    best[0], best[1], best[2], best[3] = num, vol_s, mask_s, mask_s1
            return
        cut_out = 0
        to_out = 0
        to_s1 = 0
        to_s2 = 0
        for u, w in adj[k]:
            if u < k:
                st = state[u]
                if st == 0:
                    to_out += w
                elif st == 1:
                    to_s1 += w
                else:
                    to_s2 += w
        cut_out = to_s1 + to_s2
        bit = 1 << k
        state[k] = 0
        dfs(k + 1, num + cut_out, vol_s, mask_s, mask_s1)
        state[k] = 1
        dfs(
            k + 1,
            num + to_out + 2 * to_s1,
            vol_s + vol[k],
            mask_s | bit,
            mask_s1 | bit,
        )
        if mask_s:
            state[k] = 2
            dfs(k + 1, num + to_out + 2 * to_s2, vol_s + vol[k], mask_s | bit, mask_s1)
        state[k] = 0

    dfs(0, 0, 0, 0, 0)
    return best[0], best[1], best[2], best[3]
