"""Complex families for fixtures and experiments, plus partite machinery.

Deterministic families (complete, complete multipartite) and a seeded
random family: full lower skeleton, each top face kept independently with
probability p, then pruned back to a pure complex (pruning only removes
faces, never adds, so it cannot bias toward expansion).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from .complexes import build_complex
from .errors import (
    BoundViolated,
    EmptyAfterPruning,
    NonPositiveC,
    NotPartiteRegular,
    TooFewVertices,
    TooLargeForExact,
)
from .spectral import spectrum

_ALPHABET = "abcdefghijklmnopqrstuvwxyz"


def _labels(n):
    if n <= len(_ALPHABET):
        return [_ALPHABET[k] for k in range(n)]
    return [f"v{k:03d}" for k in range(n)]


def complete_complex(n, d):
    """All (d+1)-subsets of n vertices as maximal faces."""
    if n < d + 1:
        raise TooFewVertices(f"need at least {d + 1} vertices, got {n}")
    labels = _labels(n)
    return build_complex(combinations(labels, d + 1))


def complete_multipartite_complex(part_sizes):
    """Maximal faces are all transversals: one vertex per part.

    Parts are labeled a1..aN, b1..bN, ...; the result is partite regular
    with closed-form containment constants.
    """
    sizes = list(part_sizes)
    if not sizes or any(s < 1 for s in sizes):
        raise TooFewVertices("every part needs at least one vertex")
    parts = [
        [f"{_ALPHABET[p]}{k + 1}" for k in range(s)] for p, s in enumerate(sizes)
    ]
    tops = [[]]
    for part in parts:
        tops = [t + [v] for t in tops for v in part]
    return build_complex(tops)


def random_lm_complex(n, d, p, seed):
    """Random pure d-complex: keep each top face of [n] with probability p.

    Starts conceptually from the full (d-1)-skeleton; faces left under no
    surviving top face are pruned away (iterated until pure), which is the
    same as taking the downward closure of the kept top faces.  Vertices
    may disappear; the level graphs may come out disconnected.
    """
    if not 0 < p <= 1:
        raise ValueError(f"probability {p} outside (0, 1]")
    if n < d + 1:
        raise TooFewVertices(f"need at least {d + 1} vertices, got {n}")
    labels = _labels(n)
    gen = np.random.Generator(np.random.Philox(key=seed))
    kept = [top for top in combinations(labels, d + 1) if gen.random() < p]
    if not kept:
        raise EmptyAfterPruning(f"no top face survived at p={p}, seed={seed}")
    return build_complex(kept)


# ---------------------------------------------------------------------------
# partite regularity


@dataclass(frozen=True)
class PartiteStructure:
    """Vertex partition plus the containment constants k[I -> J]."""

    parts: tuple          # tuple of tuples of vertex indices
    constants: dict       # (I, J) color tuples -> count

    def part_of(self, vertex):
        for c, part in enumerate(self.parts):
            if vertex in part:
                return c
        raise KeyError(vertex)


@dataclass(frozen=True)
class PartiteFailure:
    reason: str           # "NotColorable" | "NotRegular"
    witness: tuple


def _color_vertices(x):
    """Greedy propagation of the (d+1)-coloring induced by the top faces."""
    d = x.dimension
    color = {}
    tops = x.faces(d)
    pending = True
    while pending:
        pending = False
        uncolored_tops = []
        for top in tops:
            cols = [color.get(v) for v in top]
            missing = [k for k, c in enumerate(cols) if c is None]
            if not missing:
                continue
            if len(missing) == 1:
                known = [c for c in cols if c is not None]
                if len(set(known)) == len(known):
                    free = set(range(d + 1)) - set(known)
                    color[top[missing[0]]] = free.pop()
                    pending = True
                    continue
            uncolored_tops.append((top, missing, cols))
        if not pending and uncolored_tops:
            top, missing, cols = uncolored_tops[0]
            known = [c for c in cols if c is not None]
            free = sorted(set(range(d + 1)) - set(known))
            if len(free) < len(missing) or len(set(known)) != len(known):
                return None, top
            for slot, col in zip(missing, free):
                color[top[slot]] = col
            pending = True
    for top in tops:
        cols = [color[v] for v in top]
        if len(set(cols)) != d + 1:
            return None, top
    return color, None


def check_partite_regular(x):
    """Verify the induced coloring and all containment constants.

    Returns a PartiteStructure on success, otherwise a PartiteFailure
    naming the first violated condition with a witness (a return value,
    not an exception).
    """
    d = x.dimension
    color, bad = _color_vertices(x)
    if color is None:
        return PartiteFailure("NotColorable", (x.face_label(bad),))
    parts = tuple(
        tuple(sorted(v for v in range(x.num_vertices()) if color[v] == c))
        for c in range(d + 1)
    )
    by_sig = {}
    for i in range(0, d + 1):
        for f in x.faces(i):
            sig = tuple(sorted(color[v] for v in f))
            if len(set(sig)) != len(sig):
                return PartiteFailure("NotColorable", (x.face_label(f),))
            by_sig.setdefault(sig, []).append(f)
    by_sig[()] = [()]
    constants = {}
    colors = tuple(range(d + 1))
    for jsize in range(1, d + 2):
        for j_set in combinations(colors, jsize):
            supers = by_sig.get(j_set, [])
            for isize in range(0, jsize):
                for i_set in combinations(j_set, isize):
                    bases = by_sig.get(i_set, [])
                    if not bases:
                        continue
                    counts = [
                        sum(1 for t in supers if set(b).issubset(t)) for b in bases
                    ]
                    if len(set(counts)) > 1:
                        lo = counts.index(min(counts))
                        hi = counts.index(max(counts))
                        return PartiteFailure(
                            "NotRegular",
                            (
                                i_set,
                                j_set,
                                x.face_label(bases[lo]),
                                counts[lo],
                                x.face_label(bases[hi]),
                                counts[hi],
                            ),
                        )
                    constants[(i_set, j_set)] = counts[0]
    return PartiteStructure(parts, constants)


# ---------------------------------------------------------------------------
# skeleton mixing


@dataclass(frozen=True)
class SkeletonMixingReport:
    lambda2_tilde: float       # max normalized second eigenvalue over pairs
    permissive: float          # same plus eigensolver residual
    pair_rows: int             # bipartite mixing inequalities checked
    subset_rows: int           # skeleton inequalities checked

    @property
    def passed(self):
        return True


def skeleton_mixing_check(x, cap=22):
    """Bipartite mixing on every part pair, then the skeleton inequality.

    Needs a partite regular complex.  The per-pair bound is checked for
    every S in one side and T in the other, exactly (the normalized second
    eigenvalue enters on the permissive side, padded by the residual); the
    skeleton inequality ``|E(S)| <= |S| (|S| + lambda2~)`` in degree-norm
    form is then checked for every vertex subset of the complex.
    """
    structure = check_partite_regular(x)
    if isinstance(structure, PartiteFailure):
        raise NotPartiteRegular(f"{structure.reason}: {structure.witness}")
    d = x.dimension
    if d < 1:
        return SkeletonMixingReport(0.0, 0.0, 0, 0)
    if x.num_vertices() > cap:
        raise TooLargeForExact(f"{x.num_vertices()} vertices; subset cap is {cap}")

    edge_set = set(x.faces(1)) if d >= 1 else set()
    lam_raw = 0.0
    lam_perm = 0.0
    pair_rows = 0
    for i in range(d + 1):
        for j in range(i + 1, d + 1):
            vi = structure.parts[i]
            vj = structure.parts[j]
            k_ij = structure.constants[((i,), (i, j))]
            k_ji = structure.constants[((j,), (i, j))]
            nodes = list(vi) + list(vj)
            pos = {v: k for k, v in enumerate(nodes)}
            adj = np.zeros((len(nodes), len(nodes)))
            edges = []
            for u in vi:
                for v in vj:
                    e = (u, v) if u < v else (v, u)
                    if e in edge_set:
                        adj[pos[u], pos[v]] = adj[pos[v], pos[u]] = 1.0
                        edges.append((u, v))
            spec = spectrum(adj)
            scale = (k_ij * k_ji) ** 0.5
            lam_raw = max(lam_raw, spec.lambda2 / scale)
            lam_perm = max(lam_perm, (spec.lambda2 + spec.residual) / scale)
            pair_rows += _check_bipartite_mixing(
                vi, vj, edges, (spec.lambda2 + spec.residual) / scale
            )

    lam_frac = Fraction(max(lam_perm, 0.0))
    subset_rows = 0
    verts = list(range(x.num_vertices()))
    vdeg = [x.degree((v,)) for v in verts]
    dv = x.degree_sum(0)
    de = x.degree_sum(1)
    edge_list = [(e[0], e[1], x.degree(e)) for e in x.faces(1)]
    for mask in range(0, 1 << len(verts)):
        s_mass = Fraction(
            sum(vdeg[k] for k in range(len(verts)) if (mask >> k) & 1), dv
        )
        e_mass = Fraction(
            sum(w for u, v, w in edge_list if (mask >> u) & 1 and (mask >> v) & 1),
            de,
        )
        bound = s_mass * s_mass + s_mass * lam_frac
        if e_mass > bound:
            raise BoundViolated("skeleton-mixing", mask, e_mass, bound)
        subset_rows += 1
    return SkeletonMixingReport(lam_raw, lam_perm, pair_rows, subset_rows)


def _check_bipartite_mixing(vi, vj, edges, lam):
    """EGL-style bound |E(S,T)|/|E| <= sqrt(r) (sqrt(r) + lam), exactly."""
    lam_frac = Fraction(max(lam, 0.0))
    total = len(edges)
    rows = 0
    idx_i = {v: k for k, v in enumerate(vi)}
    idx_j = {v: k for k, v in enumerate(vj)}
    for smask in range(1, 1 << len(vi)):
        s_count = bin(smask).count("1")
        for tmask in range(1, 1 << len(vj)):
            t_count = bin(tmask).count("1")
            est = sum(
                1
                for u, v in edges
                if (smask >> idx_i[u]) & 1 and (tmask >> idx_j[v]) & 1
            )
            lhs = Fraction(est, total)
            r = Fraction(s_count * t_count, len(vi) * len(vj))
            # lhs <= r + sqrt(r) lam  <=>  lhs <= r or (lhs - r)^2 <= r lam^2
            if lhs > r and (lhs - r) ** 2 > r * lam_frac * lam_frac:
                raise BoundViolated(
                    "bipartite-mixing", (smask, tmask), lhs, r
                )
            rows += 1
    return rows


def ramanujan_q0(d, c):
    """Thickness threshold ``(sqrt(2) c / (2**(1/2**d) - 1))**2``."""
    if not c > 0:
        raise NonPositiveC(f"constant must be positive, got {c}")
    return (2.0**0.5 * c / (2 ** (1 / 2**d) - 1)) ** 2
