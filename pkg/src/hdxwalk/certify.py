"""Exact expansion constants, closed-form mixing bounds, proof-trace checks.

The four extremal searches (skeleton surplus, colorful ratio, conductance,
bipartiteness) run exhaustively through the kernel backend below their
configured caps and return exact rationals plus extremal witnesses; ties
go to the lexicographically-first witness.  Above the caps the exact ops
raise TooLargeForExact; sampled / heuristic estimates are available but
always flagged as uncertified.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import numpy as np

from . import kernels
from .cascade import container, fat_cascade, full_levels
from .complexes import chain_joint_prob, norm
from .errors import (
    AlphaTooLarge,
    BadFatness,
    BoundViolated,
    DimensionTooSmall,
    TooLargeForExact,
)
from .spectral import cheeger_check, normalized_adjacency, spectrum, trevisan_check
from .walk import build_igraph, lazy_igraph

EXACT = "exact"
SAMPLED = "sampled"
HEURISTIC = "heuristic"


@dataclass(frozen=True)
class Caps:
    """Exact-mode enumeration caps (configuration, not constants)."""

    subset: int = 22       # 2^n searches: conductance, skeleton links
    partition: int = 15    # 3^n search: bipartiteness
    epsilon: int = 20      # 2^|X(i)| per level for the colorful ratio


DEFAULT_CAPS = Caps()


def _mask_faces(mask, faces):
    return tuple(faces[k] for k in range(len(faces)) if (mask >> k) & 1)


def _parallel_map(fn, items, threads):
    if threads <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


# ---------------------------------------------------------------------------
# skeleton expansion


def _link_skeleton(x, sigma):
    """Vertices and edges of the link's underlying graph, with degrees.

    Returns (vertex list, vertex degrees, edge index arrays, edge degrees);
    vertex entries are original vertex indices of the complex.
    """
    verts = []
    vdeg = []
    pos = {}
    for rho in x.cofaces(sigma):
        v = next(iter(set(rho) - set(sigma)))
        pos[v] = len(verts)
        verts.append(v)
        vdeg.append(x.degree(rho))
    seen = set()
    eu, ev, ew = [], [], []
    for rho in x.cofaces(sigma):
        for rho2 in x.cofaces(rho):
            if rho2 in seen:
                continue
            seen.add(rho2)
            pair = sorted(set(rho2) - set(sigma))
            eu.append(pos[pair[0]])
            ev.append(pos[pair[1]])
            ew.append(x.degree(rho2))
    return verts, vdeg, eu, ev, ew


def _alpha_links(x):
    """Faces whose links constrain skeleton expansion (link dim >= 1)."""
    out = []
    for j in range(-1, x.dimension - 1):
        out.extend(x.faces(j))
    return out


def skeleton_alpha(x, mode=EXACT, cap=None, trials=2000, seed=0, threads=1):
    """Smallest alpha for which every link obeys the skeleton-expansion bound.

    Exact mode enumerates, for every face sigma (including the empty face)
    with a link of dimension >= 1 and every nonempty vertex subset S of the
    link, the surplus ``|E(S)|_norm / |S|_norm - |S|_norm``, and returns
    the maximum floored at zero.  Sampled mode draws random subsets and
    yields an uncertified lower estimate.

    Returns (alpha, flag, witness); witness is (sigma, S) as faces of the
    complex.
    """
    cap = DEFAULT_CAPS.subset if cap is None else cap
    sigmas = _alpha_links(x)
    if mode == EXACT:
        for sigma in sigmas:
            if len(x.cofaces(sigma)) > cap:
                raise TooLargeForExact(
                    f"link of {sigma} has {len(x.cofaces(sigma))} vertices; "
                    f"subset cap is {cap} (use sampled mode)"
                )

    gen = np.random.Generator(np.random.Philox(key=seed)) if mode == SAMPLED else None

    def one(sigma):
        verts, vdeg, eu, ev, ew = _link_skeleton(x, sigma)
        if not ew:
            return None
        dv = sum(vdeg)
        de = sum(ew)
        n = len(verts)
        if mode == EXACT:
            e, s, mask = kernels.max_skeleton_surplus(n, vdeg, eu, ev, ew, dv, de)
        else:
            e, s, mask = _sample_surplus(n, vdeg, eu, ev, ew, dv, de, trials, gen)
        if s <= 0:
            return None
        value = Fraction(e * dv * dv - s * s * de, s * dv * de)
        members = tuple(verts[k] for k in range(n) if (mask >> k) & 1)
        return value, (sigma, members)

    results = _parallel_map(one, sigmas, threads if mode == EXACT else 1)
    best = None
    witness = ((), ())
    for res in results:
        if res is None:
            continue
        value, wit = res
        if best is None or value > best:
            best, witness = value, wit
    if best is None:
        best = Fraction(0)
    flag = EXACT if mode == EXACT else SAMPLED
    return max(Fraction(0), best), flag, witness


def _sample_surplus(n, vdeg, eu, ev, ew, dv, de, trials, gen):
    best = None
    adj = [[] for _ in range(n)]
    for u, v, w in zip(eu, ev, ew):
        adj[u].append((v, w))
        adj[v].append((u, w))
    for _ in range(trials):
        bits = gen.integers(0, 2, size=n)
        if not bits.any():
            continue
        s = sum(vdeg[k] for k in range(n) if bits[k])
        e = sum(
            w
            for u, v, w in zip(eu, ev, ew)
            if bits[u] and bits[v]
        )
        a = e * dv * dv - s * s * de
        if best is None or a * best[1] > best[0] * s:
            mask = sum(1 << k for k in range(n) if bits[k])
            best = (a, s, e, mask)
    if best is None:
        return -1, -1, 0
    return best[2], best[1], best[3]


# ---------------------------------------------------------------------------
# colorful expansion


def _level_arrays(x, i):
    faces = x.faces(i)
    fidx = {f: k for k, f in enumerate(faces)}
    conts = x.faces(i + 1)
    cidx_of = {c: k for k, c in enumerate(conts)}
    fdeg = [x.degree(f) for f in faces]
    cdeg = [x.degree(c) for c in conts]
    cptr = [0]
    cidx = []
    for f in faces:
        for c in x.cofaces(f):
            cidx.append(cidx_of[c])
        cptr.append(len(cidx))
    return faces, fdeg, cdeg, cptr, cidx


def colorful_epsilon(x, mode=EXACT, cap=None, trials=2000, seed=0, threads=1):
    """Worst ratio of expanding mass to member mass over half-or-smaller cochains.

    Exact mode scans every cochain W with 0 < norm(W) <= 1/2 at every level
    below the top; sampled mode draws random cochains and reports an
    uncertified estimate.  Returns (epsilon, flag, witness) with witness
    (level, member faces).
    """
    cap = DEFAULT_CAPS.epsilon if cap is None else cap
    d = x.dimension
    if mode == EXACT:
        for i in range(d):
            if len(x.faces(i)) > cap:
                raise TooLargeForExact(
                    f"|X({i})| = {len(x.faces(i))} faces; epsilon cap is {cap} "
                    f"(use sampled mode)"
                )
    gen = np.random.Generator(np.random.Philox(key=seed)) if mode == SAMPLED else None

    def one(i):
        faces, fdeg, cdeg, cptr, cidx = _level_arrays(x, i)
        dtot = x.degree_sum(i)
        if mode == EXACT:
            psi, w, mask = kernels.min_colorful_ratio(
                len(faces), fdeg, cdeg, cptr, cidx, i + 2, dtot
            )
        else:
            psi, w, mask = _sample_colorful(
                len(faces), fdeg, cdeg, cptr, cidx, i + 2, dtot, trials, gen
            )
        if w <= 0:
            return None
        value = Fraction(psi * dtot, w * x.degree_sum(i + 1))
        return value, (i, _mask_faces(mask, faces))

    if d < 1:
        raise DimensionTooSmall("colorful expansion needs dimension >= 1")
    results = _parallel_map(one, list(range(d)), threads if mode == EXACT else 1)
    best = None
    witness = (None, ())
    for res in results:
        if res is None:
            continue
        value, wit = res
        if best is None or value < best:
            best, witness = value, wit
    if best is None:
        raise TooLargeForExact("sampling found no admissible cochain; raise trials")
    flag = EXACT if mode == EXACT else SAMPLED
    return best, flag, witness


def _sample_colorful(m, fdeg, cdeg, cptr, cidx, nsub, dtot, trials, gen):
    best = None
    for _ in range(trials):
        bits = gen.integers(0, 2, size=m)
        w = sum(fdeg[k] for k in range(m) if bits[k])
        if w == 0 or 2 * w > dtot:
            continue
        cnt = [0] * len(cdeg)
        for k in range(m):
            if bits[k]:
                for j in range(cptr[k], cptr[k + 1]):
                    cnt[cidx[j]] += 1
        psi = sum(cdeg[c] for c in range(len(cdeg)) if 0 < cnt[c] < nsub)
        if best is None or psi * best[1] < best[0] * w:
            mask = sum(1 << k for k in range(m) if bits[k])
            best = (psi, w, mask)
    if best is None:
        return -1, -1, 0
    return best


# ---------------------------------------------------------------------------
# conductance and bipartiteness


def _graph_arrays(g):
    vol = [g.total_degree(v) for v in range(g.order())]
    eu = [e[0] for e in g.edges]
    ev = [e[1] for e in g.edges]
    ew = [e[2] for e in g.edges]
    return vol, eu, ev, ew


def conductance(g, cap=None):
    """Exact min of cut weight over volume, subsets up to half the volume."""
    value, _ = conductance_with_witness(g, cap)
    return value


def conductance_with_witness(g, cap=None):
    cap = DEFAULT_CAPS.subset if cap is None else cap
    n = g.order()
    if n > cap:
        raise TooLargeForExact(f"{n} vertices; subset cap is {cap}")
    vol, eu, ev, ew = _graph_arrays(g)
    num, den, mask = kernels.min_ratio_cut(n, vol, eu, ev, ew)
    if den <= 0:
        raise TooLargeForExact("no subset satisfies the volume cap")
    return Fraction(num, den), _mask_faces(mask, g.vertices)


def bipartiteness_ratio(g, cap=None):
    """Exact min of (cut + 2 within-side mass) over volume, all 3-colorings."""
    value, _ = bipartiteness_with_witness(g, cap)
    return value


def bipartiteness_with_witness(g, cap=None):
    cap = DEFAULT_CAPS.partition if cap is None else cap
    n = g.order()
    if n > cap:
        raise TooLargeForExact(f"{n} vertices; partition cap is {cap}")
    vol, eu, ev, ew = _graph_arrays(g)
    num, den, mask_s, mask_s1 = kernels.min_bipartiteness(n, vol, eu, ev, ew)
    if den <= 0:
        raise TooLargeForExact("graph has no vertices")
    witness = (_mask_faces(mask_s, g.vertices), _mask_faces(mask_s1, g.vertices))
    return Fraction(num, den), witness


def bipartiteness_heuristic(g, trials=50, seed=0):
    """Greedy local-search upper bound on the bipartiteness ratio (uncertified)."""
    n = g.order()
    gen = np.random.Generator(np.random.Philox(key=seed))
    vol = [g.total_degree(v) for v in range(n)]

    def objective(state):
        num = 0
        for u, v, w in g.edges:
            su, sv = state[u], state[v]
            if (su == 0) != (sv == 0):
                num += w
            elif su != 0 and su == sv:
                num += 2 * w
        vs = sum(vol[v] for v in range(n) if state[v])
        return num, vs

    best = None
    for _ in range(trials):
        state = [int(s) for s in gen.integers(0, 3, size=n)]
        if not any(state):
            state[0] = 1
        cur = objective(state)
        improved = True
        while improved:
            improved = False
            for v in range(n):
                orig = state[v]
                for cand in (0, 1, 2):
                    if cand == orig:
                        continue
                    state[v] = cand
                    num, vs = objective(state)
                    if vs > 0 and num * cur[1] < cur[0] * vs:
                        cur = (num, vs)
                        orig = cand
                        improved = True
                    else:
                        state[v] = orig
        if cur[1] > 0 and (best is None or cur[0] * best[1] < best[0] * cur[1]):
            best = cur
    if best is None:
        return Fraction(0)
    return Fraction(best[0], best[1])


# ---------------------------------------------------------------------------
# closed-form bounds


def alpha_threshold(d):
    """Largest admissible skeleton constant for the colorful-expansion bound."""
    return (2 ** (1 / 2**d) - 1) / math.sqrt(2)


def theorem_epsilon(d, alpha):
    """Colorful-expansion constant guaranteed by skeleton expansion alpha."""
    if d < 1:
        raise DimensionTooSmall("need dimension >= 1")
    a = float(alpha)
    thr = alpha_threshold(d)
    if not a < thr:
        raise AlphaTooLarge(f"alpha {a} >= threshold {thr}")
    return ((2 ** (1 / 2**d) - 1 - math.sqrt(2) * a) / (2 * math.sqrt(2) * d)) ** d


def clamp_epsilon(eps):
    """Clamp the colorful constant to 1 (returns value, clamped-flag)."""
    e = float(eps)
    return (1.0, True) if e > 1.0 else (e, False)


def theorem_mu(d, eps):
    """Mixing rate bound from the colorful constant (clamped to 1)."""
    if d <= 1:
        raise DimensionTooSmall("mixing bound needs dimension > 1")
    e, _ = clamp_epsilon(eps)
    return 1.0 - e * e / (2.0 * (d + 1) ** 2)


def theorem_mu_from_alpha(d, alpha):
    """Mixing rate bound straight from the skeleton constant."""
    if d <= 1:
        raise DimensionTooSmall("mixing bound needs dimension > 1")
    a = float(alpha)
    thr = alpha_threshold(d)
    if not a < thr:
        raise AlphaTooLarge(f"alpha {a} >= threshold {thr}")
    base = (2 ** (1 / 2**d) - 1 - math.sqrt(2) * a) / (2 * math.sqrt(2) * d)
    return 1.0 - base ** (2 * d) / (2.0 * (d + 1) ** 2)


def stronger_mu(i, alpha):
    """Per-level mixing rate bound from the skeleton constant."""
    a = float(alpha)
    thr = alpha_threshold(i + 1)
    if not a < thr:
        raise AlphaTooLarge(f"alpha {a} >= level-{i} threshold {thr}")
    base = (2 ** (1 / 2 ** (i + 1)) - 1 - math.sqrt(2) * a) / (
        2 * math.sqrt(2) * (i + 1)
    )
    return 1.0 - base ** (2 * (i + 1)) / (2.0 * (i + 2) ** 2)


# ---------------------------------------------------------------------------
# lemma / theorem verifiers


@dataclass(frozen=True)
class CheckRow:
    name: str
    where: object
    lhs: object
    rhs: object

    @property
    def margin(self):
        return self.rhs - self.lhs


@dataclass(frozen=True)
class CheckReport:
    rows: tuple

    @property
    def passed(self):
        return True  # rows only exist when their check held; failures raise


def verify_conductance_lemma(x, eps, cap=None):
    """Conductance of every level graph is at least eps / (i + 2)."""
    rows = []
    for i in range(x.dimension):
        g = build_igraph(x, i)
        phi = conductance(g, cap)
        bound = Fraction(eps) / (i + 2)
        if phi < bound:
            raise BoundViolated("conductance-lemma", i, phi, bound)
        rows.append(CheckRow("conductance-lemma", i, bound, phi))
    return CheckReport(tuple(rows))


def verify_bipartiteness_lemma(x, cap=None):
    """Bipartiteness ratio of every level-i graph (i >= 1) is >= 1/(i+2)."""
    rows = []
    for i in range(1, x.dimension):
        g = build_igraph(x, i)
        beta = bipartiteness_ratio(g, cap)
        bound = Fraction(1, i + 2)
        if beta < bound:
            raise BoundViolated("bipartiteness-lemma", i, beta, bound)
        rows.append(CheckRow("bipartiteness-lemma", i, bound, beta))
    return CheckReport(tuple(rows))


def _joint(x, hi, hi_set, lo, lo_set, negate):
    hi_pred = lambda f: f in hi_set
    if negate:
        lo_pred = lambda f: f not in lo_set
    else:
        lo_pred = lambda f: f in lo_set
    return chain_joint_prob(x, hi, hi_pred, lo, lo_pred)


def verify_proof_trace(x, w, eta, c, alpha=None, cap=None):
    """Evaluate the eight cascade inequalities on one concrete instance.

    All probabilities are exact rationals computed from the face-chain
    identities, so every comparison is exact.  ``alpha`` defaults to the
    exact skeleton constant of the complex.  Raises BoundViolated with the
    inequality name, the level, and both sides; returns the full margin
    table when everything holds.
    """
    eta = Fraction(eta)
    c = Fraction(c)
    if not 0 < eta < 1:
        raise BadFatness(f"fatness {eta} outside (0, 1)")
    if c > Fraction(1, 2):
        raise ValueError(f"split constant {c} must be <= 1/2")
    if alpha is None:
        alpha, _, _ = skeleton_alpha(x, cap=cap)
    alpha = Fraction(alpha)
    i = w.dimension
    cascade = fat_cascade(x, w, eta)
    fulls = full_levels(x, w, eta)
    s_sets = {j: cascade.level(j).members for j in range(-1, i + 1)}
    f_sets = {j: fulls.level(j).members for j in range(0, i + 2)}
    w_norm = norm(w)
    s_norm = {j: norm(cascade.level(j)) for j in range(-1, i + 1)}

    # Pr[S^k & not S^(k-1)] for k = 0..i ; level -1 events use the empty face
    split = {}
    for k in range(0, i + 1):
        split[k] = _joint(x, k, s_sets[k], k - 1, s_sets[k - 1], True)

    rows = []

    def check(name, where, lhs, rhs, sense_le):
        ok = lhs <= rhs if sense_le else lhs >= rhs
        if not ok:
            raise BoundViolated(name, where, lhs, rhs)
        rows.append(CheckRow(name, where, lhs, rhs))

    # 1. base mass dominates every fat level: |W| >= eta^(2^(i-j)-1) |S^j|
    for j in range(-1, i + 1):
        check("base-vs-fat", j, w_norm, eta ** (2 ** (i - j) - 1) * s_norm[j], False)

    # 2. base mass decomposes along the cascade
    for j in range(-1, i + 1):
        bound = s_norm[j] + sum(split[k] for k in range(j + 1, i + 1))
        check("base-decomposition", j, w_norm, bound, True)

    # 3. some dimension splits off enough mass (only under the norm hypothesis)
    hypothesis = w_norm < eta ** (2 ** (i + 1) - 1)
    good = tuple(
        j for j in range(0, i + 1) if split[j] >= c**j / (i + 1) * w_norm
    )
    if hypothesis and not good:
        raise BoundViolated("split-dimension-exists", None, 0, 1)
    rows.append(
        CheckRow("split-dimension-exists", good if hypothesis else "hypothesis-skipped",
                 w_norm, eta ** (2 ** (i + 1) - 1))
    )

    # 4. container mass lower bound on non-fat (j-1)-faces
    gamma_set = container(x, w).members
    for j in range(0, i + 1):
        lhs = _joint(x, i + 1, gamma_set, j - 1, s_sets[j - 1], True)
        check("container-lower", j, lhs, eta ** (2 ** (i - j) - 1) * split[j], False)

    # 5. full (i+1)-mass upper bound via the skeleton constant
    for j in range(0, i + 1):
        lhs = _joint(x, i + 1, f_sets[i + 1], j - 1, s_sets[j - 1], True)
        bound = (eta ** (2 ** (i - j)) + alpha) * split[j] + sum(
            (k + 1) * (eta ** (2 ** (i - k)) + alpha) * split[k]
            for k in range(j + 1, i + 1)
        )
        check("full-upper", j, lhs, bound, True)

    # 6. full (i+1)-mass decomposes along full levels
    for j in range(0, i + 1):
        lhs = _joint(x, i + 1, f_sets[i + 1], j - 1, s_sets[j - 1], True)
        bound = _joint(x, j + 1, f_sets[j + 1], j - 1, s_sets[j - 1], True) + sum(
            _joint(x, k, f_sets[k], k - 1, f_sets[k - 1], True)
            for k in range(j + 2, i + 2)
        )
        check("full-chain-decomposition", j, lhs, bound, True)

    # 7. a full face over a non-full face is found by one vertex removal
    for k in range(1, i + 2):
        lhs = _joint(x, k, f_sets[k], k - 1, f_sets[k - 1], True)
        rhs = k * _joint(x, k, f_sets[k], k - 2, s_sets[k - 2], True)
        check("full-vs-nonfat-step", k, lhs, rhs, True)

    # 8. link expansion bounds full mass over non-fat faces
    for k in range(1, i + 2):
        lhs = _joint(x, k, f_sets[k], k - 2, s_sets[k - 2], True)
        rhs = (eta ** (2 ** (i - k + 1)) + alpha) * _joint(
            x, k - 1, s_sets[k - 1], k - 2, s_sets[k - 2], True
        )
        check("link-expansion-step", k, lhs, rhs, True)

    return CheckReport(tuple(rows))


def mu_vs_spectrum(x, eps=None, caps=None, allowance=0.0):
    """Every level's spectral mixing rate beats the closed-form bound.

    Uses the lazy graph at level 0 (self-loops kill negative eigenvalues)
    and the plain graph above; the clamped colorful constant feeds the
    bound.  The eigensolver residual plus ``allowance`` sits on the
    permissive side.
    """
    caps = caps or DEFAULT_CAPS
    d = x.dimension
    if d <= 1:
        raise DimensionTooSmall("spectral consequence needs dimension > 1")
    if eps is None:
        eps, _, _ = colorful_epsilon(x, cap=caps.epsilon)
    mu = theorem_mu(d, eps)
    rows = []
    for i in range(d):
        g = build_igraph(x, i)
        if i == 0:
            g = lazy_igraph(g)
        spec = spectrum(normalized_adjacency(g))
        rate = spec.mixing_rate()
        bound = mu + spec.residual + allowance
        if rate > bound:
            raise BoundViolated("mu-vs-spectrum", i, rate, bound)
        rows.append(CheckRow("mu-vs-spectrum", i, rate, bound))
    return CheckReport(tuple(rows))


def random_proof_instances(x, count, seed):
    """Deterministic stream of (W, eta, c) proof-trace instances."""
    gen = np.random.Generator(np.random.Philox(key=seed))
    d = x.dimension
    out = []
    for _ in range(count):
        i = int(gen.integers(0, d))
        faces = x.faces(i)
        bits = gen.integers(0, 2, size=len(faces))
        members = [f for f, b in zip(faces, bits) if b]
        den = int(gen.integers(2, 13))
        eta = Fraction(int(gen.integers(1, den)), den)
        den_c = int(gen.integers(2, 13))
        c = Fraction(int(gen.integers(1, den_c // 2 + 1)), den_c)
        out.append((x.cochain(i, members), eta, c))
    return out


# ---------------------------------------------------------------------------
# certificate


@dataclass
class ExpansionCertificate:
    """Exact expansion constants of one complex, with per-field provenance."""

    alpha: Fraction | None = None
    epsilon: Fraction | None = None
    conductance: dict = field(default_factory=dict)
    bipartiteness: dict = field(default_factory=dict)
    mu: dict = field(default_factory=dict)
    flags: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)


def _fmt_fraction(q):
    return f"{q.numerator}/{q.denominator}"


def _fmt_float(v):
    return format(v, ".12g")


def build_certificate(x, caps=None, sampled=False, trials=2000, seed=0, threads=1):
    """Assemble alpha, epsilon, conductance, bipartiteness and mu bounds.

    Exact computations that exceed their caps either fall back to flagged
    sampled/heuristic estimates (``sampled=True``) or propagate
    TooLargeForExact.
    """
    caps = caps or DEFAULT_CAPS
    cert = ExpansionCertificate()
    d = x.dimension

    def faces_payload(faces):
        return [x.face_label(f) for f in faces]

    try:
        alpha, flag, wit = skeleton_alpha(x, cap=caps.subset, threads=threads)
    except TooLargeForExact:
        if not sampled:
            raise
        alpha, flag, wit = skeleton_alpha(
            x, mode=SAMPLED, cap=caps.subset, trials=trials, seed=seed
        )
    cert.alpha = alpha
    cert.flags["alpha"] = flag
    cert.witnesses["alpha"] = {
        "sigma": x.face_label(wit[0]),
        "subset": [x.vertex_labels[v] for v in wit[1]],
    }

    try:
        eps, flag, wit = colorful_epsilon(x, cap=caps.epsilon, threads=threads)
    except TooLargeForExact:
        if not sampled:
            raise
        eps, flag, wit = colorful_epsilon(
            x, mode=SAMPLED, cap=caps.epsilon, trials=trials, seed=seed
        )
    cert.epsilon = eps
    cert.flags["epsilon"] = flag
    cert.witnesses["epsilon"] = {"level": wit[0], "members": faces_payload(wit[1])}

    for i in range(d):
        g = build_igraph(x, i)
        phi, wits = conductance_with_witness(g, caps.subset)
        cert.conductance[i] = phi
        cert.flags[f"conductance[{i}]"] = EXACT
        cert.witnesses[f"conductance[{i}]"] = faces_payload(wits)
        if i >= 1:
            try:
                beta, bwit = bipartiteness_with_witness(g, caps.partition)
                bflag = EXACT
                payload = {
                    "S": faces_payload(bwit[0]),
                    "S1": faces_payload(bwit[1]),
                }
            except TooLargeForExact:
                if not sampled:
                    raise
                beta = bipartiteness_heuristic(g, trials=max(trials // 40, 5), seed=seed)
                bflag = HEURISTIC
                payload = {}
            cert.bipartiteness[i] = beta
            cert.flags[f"bipartiteness[{i}]"] = bflag
            cert.witnesses[f"bipartiteness[{i}]"] = payload

    if d > 1 and cert.epsilon is not None:
        e_clamped, clamped = clamp_epsilon(cert.epsilon)
        cert.mu["thm2"] = theorem_mu(d, cert.epsilon)
        cert.flags["epsilon_clamped"] = str(clamped).lower()
        try:
            cert.mu["thm3"] = theorem_mu_from_alpha(d, cert.alpha)
        except AlphaTooLarge:
            cert.mu["thm3"] = None
        stronger = {}
        for i in range(d):
            try:
                stronger[i] = stronger_mu(i, cert.alpha)
            except AlphaTooLarge:
                stronger[i] = None
        cert.mu["stronger"] = stronger
    return cert


def certificate_jsonable(cert):
    """Plain-dict form: rationals as p/q strings, floats at 12 digits."""
    out = {
        "alpha": _fmt_fraction(cert.alpha) if cert.alpha is not None else None,
        "epsilon": _fmt_fraction(cert.epsilon) if cert.epsilon is not None else None,
        "conductance": {
            str(i): _fmt_fraction(v) for i, v in sorted(cert.conductance.items())
        },
        "bipartiteness": {
            str(i): _fmt_fraction(v) for i, v in sorted(cert.bipartiteness.items())
        },
        "mu": {},
        "flags": dict(sorted(cert.flags.items())),
        "witnesses": {k: cert.witnesses[k] for k in sorted(cert.witnesses)},
    }
    for key, val in cert.mu.items():
        if key == "stronger":
            out["mu"]["stronger"] = {
                str(i): (_fmt_float(v) if v is not None else None)
                for i, v in sorted(val.items())
            }
        else:
            out["mu"][key] = _fmt_float(val) if val is not None else None
    return out
