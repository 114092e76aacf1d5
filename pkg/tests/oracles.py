"""Independent brute-force oracles used to freeze expected values.

Everything here recomputes quantities from first principles (itertools
enumeration, permutation chains, characteristic polynomials) without
touching the library's search/recursion paths, so a test comparing the
two is a genuine dual route.
"""

from fractions import Fraction
from itertools import combinations, permutations, product

from hdxwalk.complexes import norm


def chain_prob_by_permutation(x, k, upper_pred, m, lower_pred):
    """Joint chain probability by enumerating full vertex-removal orders."""
    d = x.dimension
    tops = x.faces(d)
    total = Fraction(0)
    weight = Fraction(1, len(tops))
    for top in tops:
        hits = 0
        orders = list(permutations(top))
        for order in orders:
            upper = tuple(sorted(order[: k + 1]))
            lower = tuple(sorted(order[: m + 1]))
            if upper_pred(upper) and lower_pred(lower):
                hits += 1
        total += weight * Fraction(hits, len(orders))
    return total


def brute_link_surplus(x, sigma):
    """Max (|E(S)|/|S| - |S|) over nonempty S in one link, or None."""
    verts = []
    vdeg = []
    for rho in x.cofaces(sigma):
        v = next(iter(set(rho) - set(sigma)))
        verts.append(v)
        vdeg.append(x.degree(rho))
    edges = {}
    for rho in x.cofaces(sigma):
        for rho2 in x.cofaces(rho):
            pair = tuple(sorted(set(rho2) - set(sigma)))
            edges[pair] = x.degree(rho2)
    if not edges:
        return None
    dv = sum(vdeg)
    de = sum(edges.values())
    best = None
    index = {v: k for k, v in enumerate(verts)}
    for r in range(1, len(verts) + 1):
        for subset in combinations(verts, r):
            s = Fraction(sum(vdeg[index[v]] for v in subset), dv)
            inside = set(subset)
            e = Fraction(
                sum(w for pair, w in edges.items() if set(pair) <= inside), de
            )
            val = e / s - s
            if best is None or val > best:
                best = val
    return best


def brute_alpha(x):
    """Exact skeleton constant by full enumeration, floored at zero."""
    best = Fraction(0)
    for j in range(-1, x.dimension - 1):
        for sigma in x.faces(j):
            val = brute_link_surplus(x, sigma)
            if val is not None and val > best:
                best = val
    return best


def brute_epsilon(x):
    """Exact colorful constant by enumerating every admissible cochain."""
    best = None
    for i in range(x.dimension):
        faces = x.faces(i)
        for r in range(1, len(faces) + 1):
            for members in combinations(faces, r):
                w = x.cochain(i, members)
                wn = norm(w)
                if wn == 0 or wn > Fraction(1, 2):
                    continue
                mem = set(members)
                psi = [
                    tau
                    for tau in x.faces(i + 1)
                    if 0
                    < sum(1 for s in combinations(tau, i + 1) if s in mem)
                    < i + 2
                ]
                val = norm(x.cochain(i + 1, psi)) / wn
                if best is None or val < best:
                    best = val
    return best


def brute_conductance(g):
    """Exact conductance by subset enumeration with Fractions."""
    n = g.order()
    vols = [g.total_degree(v) for v in range(n)]
    total = sum(vols)
    best = None
    for mask in range(1, 1 << n):
        vol = sum(vols[v] for v in range(n) if (mask >> v) & 1)
        if vol == 0 or 2 * vol > total:
            continue
        cut = sum(
            w
            for u, v, w in g.edges
            if ((mask >> u) & 1) != ((mask >> v) & 1)
        )
        val = Fraction(cut, vol)
        if best is None or val < best:
            best = val
    return best


def brute_bipartiteness(g):
    """Exact bipartiteness ratio by enumerating all 3-colorings."""
    n = g.order()
    vols = [g.total_degree(v) for v in range(n)]
    best = None
    for states in product((0, 1, 2), repeat=n):
        vol = sum(vols[v] for v in range(n) if states[v])
        if vol == 0:
            continue
        num = 0
        for u, v, w in g.edges:
            su, sv = states[u], states[v]
            if (su == 0) != (sv == 0):
                num += w
            elif su != 0 and su == sv:
                num += 2 * w
        val = Fraction(num, vol)
        if best is None or val < best:
            best = val
    return best


def charpoly_eigenvalues(g, digits=50):
    """Eigenvalues of the normalized adjacency via its rational similar matrix.

    D^(1/2) A D^(1/2) is similar to A D (rational entries), so the exact
    characteristic polynomial has Fraction coefficients; its roots are
    found with mpmath at high precision.
    """
    import mpmath

    n = g.order()
    # M[u][v] = A(u,v) / deg(v): the rational matrix A D similar to the
    # normalized adjacency
    m = [[Fraction(0)] * n for _ in range(n)]
    for u, v, w in g.edges:
        m[u][v] += w
        m[v][u] += w
    for v in range(n):
        m[v][v] += g.self_loop_weight[v]
    for u in range(n):
        for v in range(n):
            m[u][v] = Fraction(m[u][v], g.total_degree(v))
    # Faddeev-LeVerrier for exact characteristic polynomial coefficients
    coeffs = [Fraction(1)]
    mk = [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]

    def matmul(p, q):
        return [
            [sum(p[i][k] * q[k][j] for k in range(n)) for j in range(n)]
            for i in range(n)
        ]

    mm = mk
    for k in range(1, n + 1):
        mm = matmul(m, mm)
        ck = -sum(mm[i][i] for i in range(n)) / k
        coeffs.append(ck)
        for i in range(n):
            mm[i][i] += ck
    with mpmath.workdps(digits):
        roots = mpmath.polyroots(
            [mpmath.mpf(c.numerator) / mpmath.mpf(c.denominator) for c in coeffs],
            maxsteps=200,
        )
        return sorted((float(mpmath.re(r)) for r in roots), reverse=True)
